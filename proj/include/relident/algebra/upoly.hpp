#ifndef RELIDENT_ALGEBRA_UPOLY_HPP
#define RELIDENT_ALGEBRA_UPOLY_HPP

#include "relident/algebra/poly.hpp"

#include <optional>
#include <vector>

namespace relident {

/// Dense univariate polynomial over Q; coeffs[i] multiplies t^i and the
/// leading coefficient is nonzero (the zero polynomial has no coefficients).
class UPoly {
  public:
    UPoly() = default;
    explicit UPoly(std::vector<Rational> coeffs);
    /// Requires p to involve at most the variable v.
    static UPoly from_poly(const Poly& p, Var v);
    Poly to_poly(Var v) const;

    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& leading() const { return c_.back(); }

    Rational evaluate(const Rational& t) const;
    int sign_at(const Rational& t) const { return sign(evaluate(t)); }
    /// Sign as t -> +inf (positive=true) or -inf.
    int sign_at_infinity(bool positive) const;
    UPoly derivative() const;
    /// Positive rational multiple with coprime integer coefficients.
    UPoly primitive() const;
    UPoly monic() const;

    friend UPoly operator+(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const UPoly& a, const Rational& s);
    friend bool operator==(const UPoly&, const UPoly&) = default;

    std::string to_string(const std::string& var = "t") const;

  private:
    void trim();
    std::vector<Rational> c_;
};

/// Quotient and remainder of a by b (b nonzero).
std::pair<UPoly, UPoly> divrem(const UPoly& a, const UPoly& b);
/// Monic gcd; gcd(0,0) = 0.
UPoly gcd(const UPoly& a, const UPoly& b);
/// f / gcd(f, f'), primitive.
UPoly squarefree_part(const UPoly& f);

/// Interval endpoint that may be infinite.
struct Bound {
    Rational value;
    int infinity = 0;  // -1, 0 or +1

    static Bound finite(const Rational& v) { return {v, 0}; }
    static Bound minus_infinity() { return {Rational(0), -1}; }
    static Bound plus_infinity() { return {Rational(0), 1}; }
};

/// Number of distinct real roots of f in the open interval (lo, hi).
int sturm_count(const UPoly& f, const Bound& lo, const Bound& hi);
int sturm_count(const UPoly& f);

/// Isolating interval for one real root. When lo == hi the root is exactly
/// lo; otherwise the root is the unique one in the open interval (lo, hi)
/// and the squarefree part changes sign strictly between the endpoints.
struct RootInterval {
    Rational lo;
    Rational hi;
    bool exact() const { return lo == hi; }
};

/// One interval per distinct real root, sorted increasingly and disjoint.
std::vector<RootInterval> isolate_real_roots(const UPoly& f);

/// Shrinks an isolating interval of the squarefree polynomial f until its
/// width is at most `width` (or the root becomes exact).
RootInterval refine(const UPoly& f, RootInterval iv, const Rational& width);

/// Distinct rational roots, increasing.
std::vector<Rational> rational_roots(const UPoly& f);

/// Smallest-denominator rational in the closed interval [lo, hi].
Rational simplest_rational_between(const Rational& lo, const Rational& hi);

/// Sign variations of the coefficient sequence (zeros skipped).
int coefficient_sign_variations(const UPoly& f);

/// Bound B with every real root in (-B, B).
Rational cauchy_root_bound(const UPoly& f);

}  // namespace relident

#endif
