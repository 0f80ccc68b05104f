#ifndef RELIDENT_ALGEBRA_POLY_HPP
#define RELIDENT_ALGEBRA_POLY_HPP

#include "relident/algebra/rational.hpp"
#include "relident/algebra/variable.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace relident {

struct VarPower {
    Var var;
    std::uint32_t exp = 0;

    friend bool operator==(const VarPower&, const VarPower&) = default;
};

/// Power product with no zero exponents, stored sorted by variable id.
class Monomial {
  public:
    Monomial() = default;
    explicit Monomial(Var v, std::uint32_t exp = 1);
    /// Accepts any order and repeated variables; zero exponents are dropped.
    explicit Monomial(std::vector<VarPower> factors);

    const std::vector<VarPower>& factors() const { return factors_; }
    bool is_one() const { return factors_.empty(); }
    std::uint32_t total_degree() const;
    std::uint32_t degree(Var v) const;
    bool contains(Var v) const { return degree(v) != 0; }

    bool divides(const Monomial& other) const;
    /// Requires divides(other): returns other / *this.
    Monomial quotient_of(const Monomial& other) const;
    Monomial lcm(const Monomial& other) const;
    /// Removes v entirely.
    Monomial without(Var v) const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial&, const Monomial&) = default;

    /// Lexicographic order where a smaller variable id ranks higher. This is
    /// the storage order of Poly terms; it is a genuine term order.
    static int compare_lex_id(const Monomial& a, const Monomial& b);

    /// Canonical printing form, variables sorted by name: "x^2*y".
    std::string to_string() const;

    std::size_t hash() const;

  private:
    std::vector<VarPower> factors_;
};

struct Term {
    Monomial mono;
    Rational coeff;
};

/// Sparse multivariate polynomial over the rationals. Terms are kept with
/// nonzero coefficients in descending Monomial::compare_lex_id order, so two
/// equal polynomials have identical term vectors.
class Poly {
  public:
    Poly() = default;
    Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
    Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    Poly(int c) : Poly(Rational(c)) {}   // NOLINT(google-explicit-constructor)
    explicit Poly(Var v, std::uint32_t exp = 1);
    Poly(const Monomial& m, const Rational& c);

    static Poly var(std::string_view name) { return Poly(Var(name)); }
    /// Builds from arbitrary terms; duplicates are summed and zeros dropped.
    static Poly from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    /// Value of a constant polynomial; zero for the zero polynomial.
    Rational constant_value() const;
    /// Coefficient of the monomial 1.
    Rational constant_term() const;
    Rational coefficient(const Monomial& m) const;

    /// First term in storage order.
    const Term& leading_term() const { return terms_.front(); }

    std::uint32_t total_degree() const;
    std::uint32_t degree(Var v) const;
    bool contains(Var v) const;
    /// Variables sorted by id.
    std::vector<Var> variables() const;

    Poly derivative(Var v) const;
    Poly substitute(Var v, const Poly& value) const;
    Poly substitute(const std::unordered_map<Var, Poly>& values) const;
    /// Replaces the listed variables by rationals, keeping the others.
    Poly evaluate_partial(const std::unordered_map<Var, Rational>& values) const;
    /// Requires every variable to be assigned.
    Rational evaluate(const std::unordered_map<Var, Rational>& values) const;
    /// Renames variables; unmapped variables are kept.
    Poly rename(const std::unordered_map<Var, Var>& mapping) const;

    /// Groups terms by their monomial in the `main` variables. The values are
    /// the coefficient polynomials in the remaining variables; entries are in
    /// canonical (printing) order of the main monomials.
    std::vector<std::pair<Monomial, Poly>> collect(const std::vector<Var>& main) const;

    /// Coefficients as a univariate polynomial in v, index = power.
    std::vector<Poly> coefficients_in(Var v) const;

    /// Multiplies by a positive rational so that coefficients are coprime
    /// integers. Returns the zero polynomial unchanged.
    Poly primitive_part() const;
    /// Scales so that the coefficient of the canonical leading term is 1.
    Poly monic() const;
    /// Scales by a nonzero rational so the canonical leading coefficient is
    /// positive and the coefficients are coprime integers.
    Poly normalized() const;
    /// Sign of the leading coefficient in canonical (printing) order.
    int canonical_leading_sign() const;
    const Term& canonical_leading_term() const;

    Poly pow(std::uint32_t n) const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const Rational& c);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
    friend Poly operator*(Poly a, long c) { return a *= Rational(c); }
    friend Poly operator*(long c, Poly a) { return a *= Rational(c); }
    friend Poly operator*(Poly a, int c) { return a *= Rational(c); }
    friend Poly operator*(int c, Poly a) { return a *= Rational(c); }
    friend Poly operator-(Poly a);

    friend bool operator==(const Poly& a, const Poly& b);

    /// Canonical text: terms by descending total degree then by variable
    /// names, explicit signs, e.g. "x^2 - 2*x*y + 1/3".
    std::string to_string() const;
    std::size_t hash() const;

  private:
    explicit Poly(std::vector<Term> sorted_terms, bool /*trusted*/) : terms_(std::move(sorted_terms)) {}
    std::vector<Term> terms_;
};

/// Multiplies two polynomials term by term.
Poly multiply(const Poly& a, const Poly& b);

/// Exact quotient a / b if b divides a, nullopt otherwise.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

/// Canonical-order comparison of monomials used for printing: higher total
/// degree first, then lexicographic on (name, exponent) pairs.
bool canonical_monomial_greater(const Monomial& a, const Monomial& b);

/// Sum over a list, useful for building fixtures.
Poly sum(const std::vector<Poly>& ps);

}  // namespace relident

template <>
struct std::hash<relident::Monomial> {
    std::size_t operator()(const relident::Monomial& m) const noexcept { return m.hash(); }
};

template <>
struct std::hash<relident::Poly> {
    std::size_t operator()(const relident::Poly& p) const noexcept { return p.hash(); }
};

#endif
