#include "relident/algebra/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace relident {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(Var v, std::uint32_t exp) {
    if (exp > 0) factors_.push_back({v, exp});
}

Monomial::Monomial(std::vector<VarPower> factors) {
    std::sort(factors.begin(), factors.end(), [](const VarPower& a, const VarPower& b) { return a.var < b.var; });
    for (const auto& f : factors) {
        if (f.exp == 0) continue;
        if (!factors_.empty() && factors_.back().var == f.var) {
            factors_.back().exp += f.exp;
        } else {
            factors_.push_back(f);
        }
    }
}

std::uint32_t Monomial::total_degree() const {
    std::uint32_t d = 0;
    for (const auto& f : factors_) d += f.exp;
    return d;
}

std::uint32_t Monomial::degree(Var v) const {
    for (const auto& f : factors_) {
        if (f.var == v) return f.exp;
        if (v < f.var) break;
    }
    return 0;
}

bool Monomial::divides(const Monomial& other) const {
    std::size_t j = 0;
    for (const auto& f : factors_) {
        while (j < other.factors_.size() && other.factors_[j].var < f.var) ++j;
        if (j == other.factors_.size() || other.factors_[j].var != f.var || other.factors_[j].exp < f.exp) {
            return false;
        }
    }
    return true;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
    Monomial out;
    std::size_t i = 0;
    for (const auto& f : other.factors_) {
        std::uint32_t e = f.exp;
        if (i < factors_.size() && factors_[i].var == f.var) {
            e -= factors_[i].exp;
            ++i;
        }
        if (e > 0) out.factors_.push_back({f.var, e});
    }
    return out;
}

Monomial Monomial::lcm(const Monomial& other) const {
    Monomial out;
    std::size_t i = 0;
    std::size_t j = 0;
    const auto& a = factors_;
    const auto& b = other.factors_;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].var < b[j].var)) {
            out.factors_.push_back(a[i++]);
        } else if (i == a.size() || b[j].var < a[i].var) {
            out.factors_.push_back(b[j++]);
        } else {
            out.factors_.push_back({a[i].var, std::max(a[i].exp, b[j].exp)});
            ++i;
            ++j;
        }
    }
    return out;
}

Monomial Monomial::without(Var v) const {
    Monomial out;
    for (const auto& f : factors_) {
        if (f.var != v) out.factors_.push_back(f);
    }
    return out;
}

Monomial operator*(const Monomial& x, const Monomial& y) {
    Monomial out;
    out.factors_.reserve(x.factors_.size() + y.factors_.size());
    std::size_t i = 0;
    std::size_t j = 0;
    const auto& a = x.factors_;
    const auto& b = y.factors_;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].var < b[j].var)) {
            out.factors_.push_back(a[i++]);
        } else if (i == a.size() || b[j].var < a[i].var) {
            out.factors_.push_back(b[j++]);
        } else {
            out.factors_.push_back({a[i].var, a[i].exp + b[j].exp});
            ++i;
            ++j;
        }
    }
    return out;
}

int Monomial::compare_lex_id(const Monomial& a, const Monomial& b) {
    std::size_t i = 0;
    std::size_t j = 0;
    const auto& x = a.factors_;
    const auto& y = b.factors_;
    while (i < x.size() && j < y.size()) {
        if (x[i].var == y[j].var) {
            if (x[i].exp != y[j].exp) return x[i].exp > y[j].exp ? 1 : -1;
            ++i;
            ++j;
        } else {
            return x[i].var < y[j].var ? 1 : -1;
        }
    }
    if (i < x.size()) return 1;
    if (j < y.size()) return -1;
    return 0;
}

namespace {

std::vector<VarPower> by_name(const std::vector<VarPower>& factors) {
    std::vector<VarPower> sorted = factors;
    std::sort(sorted.begin(), sorted.end(),
              [](const VarPower& a, const VarPower& b) { return a.var.name() < b.var.name(); });
    return sorted;
}

}  // namespace

std::string Monomial::to_string() const {
    if (factors_.empty()) return "1";
    std::string out;
    for (const auto& f : by_name(factors_)) {
        if (!out.empty()) out += '*';
        out += f.var.name();
        if (f.exp != 1) out += "^" + std::to_string(f.exp);
    }
    return out;
}

std::size_t Monomial::hash() const {
    std::size_t h = 1469598103934665603ULL;
    for (const auto& f : factors_) {
        h ^= (static_cast<std::size_t>(f.var.id()) << 20) ^ f.exp;
        h *= 1099511628211ULL;
    }
    return h;
}

bool canonical_monomial_greater(const Monomial& a, const Monomial& b) {
    const auto da = a.total_degree();
    const auto db = b.total_degree();
    if (da != db) return da > db;
    const auto fa = by_name(a.factors());
    const auto fb = by_name(b.factors());
    const std::size_t n = std::min(fa.size(), fb.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto& na = fa[i].var.name();
        const auto& nb = fb[i].var.name();
        if (na != nb) return na < nb;
        if (fa[i].exp != fb[i].exp) return fa[i].exp > fb[i].exp;
    }
    return fa.size() < fb.size();
}

// -------------------------------------------------------------------- Poly

namespace {

bool term_greater(const Term& a, const Term& b) { return Monomial::compare_lex_id(a.mono, b.mono) > 0; }

Rational rational_pow(const Rational& base, std::uint32_t e) {
    Integer num;
    Integer den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
    Rational out(num, den);
    out.canonicalize();
    return out;
}

}  // namespace

Poly::Poly(const Rational& c) {
    if (!relident::is_zero(c)) {
        terms_.push_back({Monomial(), c});
        terms_.back().coeff.canonicalize();
    }
}

Poly::Poly(Var v, std::uint32_t exp) { terms_.push_back({Monomial(v, exp), Rational(1)}); }

Poly::Poly(const Monomial& m, const Rational& c) {
    if (!relident::is_zero(c)) {
        terms_.push_back({m, c});
        terms_.back().coeff.canonicalize();
    }
}

Poly Poly::from_terms(std::vector<Term> terms) {
    for (auto& t : terms) t.coeff.canonicalize();
    std::sort(terms.begin(), terms.end(), term_greater);
    std::vector<Term> out;
    out.reserve(terms.size());
    for (auto& t : terms) {
        if (!out.empty() && out.back().mono == t.mono) {
            out.back().coeff += t.coeff;
        } else {
            if (!out.empty() && relident::is_zero(out.back().coeff)) out.pop_back();
            out.push_back(std::move(t));
        }
    }
    if (!out.empty() && relident::is_zero(out.back().coeff)) out.pop_back();
    return Poly(std::move(out), true);
}

Rational Poly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw std::logic_error("constant_value of non-constant polynomial " + to_string());
    return terms_[0].coeff;
}

Rational Poly::constant_term() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
    return Rational(0);
}

Rational Poly::coefficient(const Monomial& m) const {
    for (const auto& t : terms_) {
        if (t.mono == m) return t.coeff;
    }
    return Rational(0);
}

std::uint32_t Poly::total_degree() const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
    return d;
}

std::uint32_t Poly::degree(Var v) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree(v));
    return d;
}

bool Poly::contains(Var v) const {
    for (const auto& t : terms_) {
        if (t.mono.contains(v)) return true;
    }
    return false;
}

std::vector<Var> Poly::variables() const {
    std::vector<Var> vs;
    for (const auto& t : terms_) {
        for (const auto& f : t.mono.factors()) vs.push_back(f.var);
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

Poly Poly::derivative(Var v) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
        const auto e = t.mono.degree(v);
        if (e == 0) continue;
        std::vector<VarPower> fs = t.mono.factors();
        for (auto& f : fs) {
            if (f.var == v) f.exp -= 1;
        }
        out.push_back({Monomial(std::move(fs)), t.coeff * e});
    }
    return from_terms(std::move(out));
}

Poly Poly::substitute(Var v, const Poly& value) const {
    std::unordered_map<Var, Poly> m;
    m.emplace(v, value);
    return substitute(m);
}

Poly Poly::substitute(const std::unordered_map<Var, Poly>& values) const {
    // Powers of each substituted value are memoised per call.
    std::unordered_map<Var, std::vector<Poly>> powers;
    auto power_of = [&](Var v, std::uint32_t e) -> const Poly& {
        auto& list = powers[v];
        if (list.empty()) list.push_back(Poly(1));
        while (list.size() <= e) list.push_back(list.back() * values.at(v));
        return list[e];
    };
    std::vector<Term> plain;
    Poly acc;
    for (const auto& t : terms_) {
        std::vector<VarPower> kept;
        std::vector<VarPower> replaced;
        for (const auto& f : t.mono.factors()) {
            (values.count(f.var) ? replaced : kept).push_back(f);
        }
        if (replaced.empty()) {
            plain.push_back(t);
            continue;
        }
        Poly piece(Monomial(std::move(kept)), t.coeff);
        for (const auto& f : replaced) piece = piece * power_of(f.var, f.exp);
        acc += piece;
    }
    return acc + from_terms(std::move(plain));
}

Poly Poly::evaluate_partial(const std::unordered_map<Var, Rational>& values) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Rational c = t.coeff;
        std::vector<VarPower> kept;
        for (const auto& f : t.mono.factors()) {
            auto it = values.find(f.var);
            if (it == values.end()) {
                kept.push_back(f);
            } else {
                c *= rational_pow(it->second, f.exp);
            }
        }
        if (!relident::is_zero(c)) out.push_back({Monomial(std::move(kept)), c});
    }
    return from_terms(std::move(out));
}

Rational Poly::evaluate(const std::unordered_map<Var, Rational>& values) const {
    Rational acc = 0;
    for (const auto& t : terms_) {
        Rational c = t.coeff;
        for (const auto& f : t.mono.factors()) {
            auto it = values.find(f.var);
            if (it == values.end()) throw std::invalid_argument("evaluate: unassigned variable " + f.var.name());
            c *= rational_pow(it->second, f.exp);
        }
        acc += c;
    }
    return acc;
}

Poly Poly::rename(const std::unordered_map<Var, Var>& mapping) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        std::vector<VarPower> fs = t.mono.factors();
        for (auto& f : fs) {
            auto it = mapping.find(f.var);
            if (it != mapping.end()) f.var = it->second;
        }
        out.push_back({Monomial(std::move(fs)), t.coeff});
    }
    return from_terms(std::move(out));
}

std::vector<std::pair<Monomial, Poly>> Poly::collect(const std::vector<Var>& main) const {
    std::unordered_map<Var, bool> is_main;
    for (Var v : main) is_main[v] = true;
    std::unordered_map<Monomial, std::vector<Term>> groups;
    std::vector<Monomial> order;
    for (const auto& t : terms_) {
        std::vector<VarPower> head;
        std::vector<VarPower> rest;
        for (const auto& f : t.mono.factors()) (is_main.count(f.var) ? head : rest).push_back(f);
        Monomial key(std::move(head));
        auto [it, inserted] = groups.try_emplace(key);
        if (inserted) order.push_back(key);
        it->second.push_back({Monomial(std::move(rest)), t.coeff});
    }
    std::sort(order.begin(), order.end(), canonical_monomial_greater);
    std::vector<std::pair<Monomial, Poly>> out;
    out.reserve(order.size());
    for (const auto& key : order) out.emplace_back(key, from_terms(std::move(groups[key])));
    return out;
}

std::vector<Poly> Poly::coefficients_in(Var v) const {
    std::vector<std::vector<Term>> buckets(degree(v) + 1);
    for (const auto& t : terms_) {
        const auto e = t.mono.degree(v);
        buckets[e].push_back({t.mono.without(v), t.coeff});
    }
    std::vector<Poly> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
    return out;
}

Poly Poly::primitive_part() const {
    if (terms_.empty()) return *this;
    Integer g = 0;
    Integer l = 1;
    for (const auto& t : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
    }
    Rational scale(l, g);
    scale.canonicalize();
    Poly out = *this;
    out *= scale;
    return out;
}

const Term& Poly::canonical_leading_term() const {
    if (terms_.empty()) throw std::logic_error("canonical_leading_term of zero polynomial");
    const Term* best = &terms_[0];
    for (const auto& t : terms_) {
        if (canonical_monomial_greater(t.mono, best->mono)) best = &t;
    }
    return *best;
}

int Poly::canonical_leading_sign() const {
    if (terms_.empty()) return 0;
    return relident::sign(canonical_leading_term().coeff);
}

Poly Poly::monic() const {
    if (terms_.empty()) return *this;
    Rational inv = 1 / canonical_leading_term().coeff;
    Poly out = *this;
    out *= inv;
    return out;
}

Poly Poly::normalized() const {
    Poly p = primitive_part();
    if (p.canonical_leading_sign() < 0) p *= Rational(-1);
    return p;
}

Poly Poly::pow(std::uint32_t n) const {
    Poly result(1);
    Poly base = *this;
    while (n > 0) {
        if (n & 1U) result = result * base;
        n >>= 1U;
        if (n > 0) base = base * base;
    }
    return result;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.terms_.empty()) return *this;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        int c = 0;
        if (i == terms_.size()) {
            c = -1;
        } else if (j == o.terms_.size()) {
            c = 1;
        } else {
            c = Monomial::compare_lex_id(terms_[i].mono, o.terms_[j].mono);
        }
        if (c > 0) {
            out.push_back(std::move(terms_[i++]));
        } else if (c < 0) {
            out.push_back(o.terms_[j++]);
        } else {
            Rational s = terms_[i].coeff + o.terms_[j].coeff;
            if (!relident::is_zero(s)) out.push_back({std::move(terms_[i].mono), std::move(s)});
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly& Poly::operator*=(const Poly& o) {
    *this = multiply(*this, o);
    return *this;
}

Poly& Poly::operator*=(const Rational& c) {
    if (relident::is_zero(c)) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coeff *= c;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) { return multiply(a, b); }

Poly operator-(Poly a) {
    for (auto& t : a.terms_) t.coeff = -t.coeff;
    return a;
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        if (a.terms_[i].coeff != b.terms_[i].coeff || !(a.terms_[i].mono == b.terms_[i].mono)) return false;
    }
    return true;
}

Poly multiply(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    if (a.size() == 1 && a.terms()[0].mono.is_one()) return b * a.terms()[0].coeff;
    if (b.size() == 1 && b.terms()[0].mono.is_one()) return a * b.terms()[0].coeff;
    std::unordered_map<Monomial, Rational> acc;
    acc.reserve(a.size() * b.size());
    for (const auto& s : a.terms()) {
        for (const auto& t : b.terms()) {
            auto [it, inserted] = acc.try_emplace(s.mono * t.mono, s.coeff * t.coeff);
            if (!inserted) it->second += s.coeff * t.coeff;
        }
    }
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc) {
        if (!is_zero(c)) terms.push_back({m, std::move(c)});
    }
    return Poly::from_terms(std::move(terms));
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::invalid_argument("divide_exact by zero polynomial");
    if (b.is_constant()) return a * (1 / b.constant_value());
    const Term& lead = b.leading_term();
    Poly rem = a;
    std::vector<Term> quot;
    while (!rem.is_zero()) {
        const Term& lt = rem.leading_term();
        if (!lead.mono.divides(lt.mono)) return std::nullopt;
        Term q{lead.mono.quotient_of(lt.mono), lt.coeff / lead.coeff};
        rem -= b * Poly(q.mono, q.coeff);
        quot.push_back(std::move(q));
    }
    return Poly::from_terms(std::move(quot));
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<const Term*> order;
    order.reserve(terms_.size());
    for (const auto& t : terms_) order.push_back(&t);
    std::sort(order.begin(), order.end(),
              [](const Term* x, const Term* y) { return canonical_monomial_greater(x->mono, y->mono); });
    std::ostringstream out;
    bool first = true;
    for (const Term* t : order) {
        const bool negative = relident::sign(t->coeff) < 0;
        if (first) {
            if (negative) out << '-';
        } else {
            out << (negative ? " - " : " + ");
        }
        Rational mag = abs(t->coeff);
        if (t->mono.is_one()) {
            out << relident::to_string(mag);
        } else {
            if (mag != 1) out << relident::to_string(mag) << '*';
            out << t->mono.to_string();
        }
        first = false;
    }
    return out.str();
}

std::size_t Poly::hash() const {
    std::size_t h = terms_.size();
    for (const auto& t : terms_) {
        h = h * 1000003ULL ^ t.mono.hash();
        h = h * 1000003ULL ^ hash_value(t.coeff);
    }
    return h;
}

Poly sum(const std::vector<Poly>& ps) {
    Poly acc;
    for (const auto& p : ps) acc += p;
    return acc;
}

}  // namespace relident
