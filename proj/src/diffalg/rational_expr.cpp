#include "relident/diffalg/rational_expr.hpp"

#include <algorithm>
#include <climits>
#include <set>
#include <stdexcept>

namespace relident {

RationalExpr::RationalExpr(Poly num) : num_(std::move(num)) {}

RationalExpr::RationalExpr(Poly num, const Poly& den) : num_(std::move(num)) {
    if (den.is_zero()) throw std::domain_error("rational expression with zero denominator");
    if (den.is_constant()) {
        num_ *= Rational(1) / den.constant_value();
        return;
    }
    add_factor(den, 1);
    cancel();
}

void RationalExpr::add_factor(const Poly& base, std::uint32_t exp) {
    if (exp == 0) return;
    if (base.is_constant()) {
        const Rational c = base.constant_value();
        Rational s = 1;
        for (std::uint32_t i = 0; i < exp; ++i) s *= c;
        num_ *= Rational(1) / s;
        return;
    }
    // Pull out variables dividing every term so that x*(a+b) is kept as the
    // two factors x and a+b.
    for (Var v : base.variables()) {
        std::uint32_t low = UINT32_MAX;
        for (const auto& t : base.terms()) low = std::min(low, t.mono.degree(v));
        if (low == 0) continue;
        const Poly power(Monomial(v, low), Rational(1));
        if (base.size() == 1 && low == 1 && base.variables().size() == 1) break;
        add_factor(*divide_exact(base, power), exp);
        for (std::uint32_t i = 0; i < low; ++i) add_factor(Poly(v), exp);
        return;
    }
    const Poly norm = base.normalized();
    // base = scale * norm
    const Rational scale = base.canonical_leading_term().coeff / norm.canonical_leading_term().coeff;
    Rational s = 1;
    for (std::uint32_t i = 0; i < exp; ++i) s *= scale;
    num_ *= Rational(1) / s;
    for (auto& f : factors_) {
        if (f.base == norm) {
            f.exp += exp;
            return;
        }
    }
    factors_.push_back({norm, exp});
}

void RationalExpr::cancel() {
    if (num_.is_zero()) {
        factors_.clear();
        return;
    }
    for (auto& f : factors_) {
        while (f.exp > 0) {
            auto q = divide_exact(num_, f.base);
            if (!q) break;
            num_ = std::move(*q);
            --f.exp;
        }
    }
    std::erase_if(factors_, [](const Factor& f) { return f.exp == 0; });
    std::sort(factors_.begin(), factors_.end(),
              [](const Factor& a, const Factor& b) { return a.base.to_string() < b.base.to_string(); });
}

Poly RationalExpr::denominator() const {
    Poly d(1);
    for (const auto& f : factors_) d *= f.base.pow(f.exp);
    return d;
}

RationalExpr RationalExpr::with_denominator_exps(const std::vector<Factor>& target) const {
    // Rewrites *this over `target`, which must dominate our factors.
    RationalExpr out;
    out.num_ = num_;
    for (const auto& t : target) {
        std::uint32_t have = 0;
        for (const auto& f : factors_) {
            if (f.base == t.base) have = f.exp;
        }
        if (t.exp > have) out.num_ *= t.base.pow(t.exp - have);
    }
    out.factors_ = target;
    return out;
}

namespace {

std::vector<RationalExpr::Factor> merge_max(const std::vector<RationalExpr::Factor>& a,
                                            const std::vector<RationalExpr::Factor>& b) {
    std::vector<RationalExpr::Factor> out = a;
    for (const auto& f : b) {
        auto it = std::find_if(out.begin(), out.end(), [&](const auto& g) { return g.base == f.base; });
        if (it == out.end()) {
            out.push_back(f);
        } else {
            it->exp = std::max(it->exp, f.exp);
        }
    }
    return out;
}

}  // namespace

RationalExpr operator+(const RationalExpr& a, const RationalExpr& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const auto common = merge_max(a.factors_, b.factors_);
    RationalExpr out = a.with_denominator_exps(common);
    out.num_ += b.with_denominator_exps(common).num_;
    out.cancel();
    return out;
}

RationalExpr operator-(const RationalExpr& a) {
    RationalExpr out = a;
    out.num_ = -out.num_;
    return out;
}

RationalExpr operator-(const RationalExpr& a, const RationalExpr& b) { return a + (-b); }

RationalExpr operator*(const RationalExpr& a, const RationalExpr& b) {
    RationalExpr out;
    out.num_ = a.num_ * b.num_;
    if (out.num_.is_zero()) return out;
    out.factors_ = a.factors_;
    for (const auto& f : b.factors_) out.add_factor(f.base, f.exp);
    out.cancel();
    return out;
}

RationalExpr operator/(const RationalExpr& a, const RationalExpr& b) {
    if (b.is_zero()) throw std::domain_error("division by a zero rational expression");
    RationalExpr inv;
    inv.num_ = b.denominator();
    inv.add_factor(b.num_, 1);
    return a * inv;
}

RationalExpr RationalExpr::derivative(Var v) const {
    // d(N / prod f^e) = (N' prod f - N sum e f' prod_{g != f} g) / prod f^(e+1)
    // restricted to factors that involve v.
    std::vector<std::size_t> moving;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i].base.contains(v)) moving.push_back(i);
    }
    RationalExpr out;
    out.factors_ = factors_;
    if (moving.empty()) {
        out.num_ = num_.derivative(v);
        out.cancel();
        return out;
    }
    Poly prod(1);
    for (std::size_t i : moving) prod *= factors_[i].base;
    Poly acc = num_.derivative(v) * prod;
    for (std::size_t i : moving) {
        Poly rest(1);
        for (std::size_t j : moving) {
            if (j != i) rest *= factors_[j].base;
        }
        acc -= num_ * factors_[i].base.derivative(v) * rest * Rational(static_cast<long>(factors_[i].exp));
    }
    for (std::size_t i : moving) ++out.factors_[i].exp;
    out.num_ = std::move(acc);
    out.cancel();
    return out;
}

RationalExpr RationalExpr::substitute(const std::unordered_map<Var, Poly>& values) const {
    RationalExpr out(num_.substitute(values));
    for (const auto& f : factors_) {
        const Poly b = f.base.substitute(values);
        if (b.is_zero()) throw std::domain_error("substitution makes a denominator vanish");
        RationalExpr inv;
        inv.num_ = Poly(1);
        inv.add_factor(b, f.exp);
        out = out * inv;
    }
    return out;
}

std::vector<Var> RationalExpr::variables() const {
    std::set<Var> vs;
    for (Var v : num_.variables()) vs.insert(v);
    for (const auto& f : factors_) {
        for (Var v : f.base.variables()) vs.insert(v);
    }
    return {vs.begin(), vs.end()};
}

bool equivalent(const RationalExpr& a, const RationalExpr& b) {
    return a.num_ * b.denominator() == b.num_ * a.denominator();
}

std::string RationalExpr::to_string() const {
    if (factors_.empty()) return num_.to_string();
    std::string den;
    for (const auto& f : factors_) {
        if (!den.empty()) den += "*";
        den += "(" + f.base.to_string() + ")";
        if (f.exp > 1) den += "^" + std::to_string(f.exp);
    }
    return "(" + num_.to_string() + ")/" + (factors_.size() == 1 && factors_[0].exp == 1 ? den : "(" + den + ")");
}

}  // namespace relident
