#ifndef RELIDENT_DIFFALG_RATIONAL_EXPR_HPP
#define RELIDENT_DIFFALG_RATIONAL_EXPR_HPP

#include "relident/algebra/parse.hpp"
#include "relident/algebra/poly.hpp"

#include <string>
#include <utility>
#include <vector>

namespace relident {

/// Rational function num / den with the denominator kept as a product of
/// primitive factors with multiplicities. Factors are only split as far as
/// they were built; a factor is cancelled whenever it divides the numerator
/// exactly, so repeated differentiation does not square denominators.
class RationalExpr {
  public:
    struct Factor {
        Poly base;  // primitive, positive canonical leading coefficient
        std::uint32_t exp;
    };

    RationalExpr() = default;
    RationalExpr(Poly num);  // NOLINT(google-explicit-constructor)
    RationalExpr(Poly num, const Poly& den);
    static RationalExpr from_fraction(const Fraction& f) { return RationalExpr(f.num, f.den); }

    const Poly& numerator() const { return num_; }
    const std::vector<Factor>& factors() const { return factors_; }
    /// Product of the factors.
    Poly denominator() const;
    bool is_polynomial() const { return factors_.empty(); }
    bool is_zero() const { return num_.is_zero(); }

    RationalExpr derivative(Var v) const;
    RationalExpr substitute(const std::unordered_map<Var, Poly>& values) const;
    std::vector<Var> variables() const;

    friend RationalExpr operator+(const RationalExpr& a, const RationalExpr& b);
    friend RationalExpr operator-(const RationalExpr& a, const RationalExpr& b);
    friend RationalExpr operator*(const RationalExpr& a, const RationalExpr& b);
    friend RationalExpr operator/(const RationalExpr& a, const RationalExpr& b);
    friend RationalExpr operator-(const RationalExpr& a);

    /// Same rational function (cross-multiplication test).
    friend bool equivalent(const RationalExpr& a, const RationalExpr& b);

    /// "num" or "(num)/(den)".
    std::string to_string() const;

  private:
    void add_factor(const Poly& base, std::uint32_t exp);
    void cancel();
    RationalExpr with_denominator_exps(const std::vector<Factor>& target) const;

    Poly num_;
    std::vector<Factor> factors_;
};

}  // namespace relident

#endif
