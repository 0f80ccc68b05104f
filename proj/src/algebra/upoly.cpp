#include "relident/algebra/upoly.hpp"

#include "relident/algebra/matrix.hpp"
#include "relident/algebra/modular.hpp"

#include <algorithm>
#include <stdexcept>

namespace relident {

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    for (auto& c : c_) c.canonicalize();
    trim();
}

void UPoly::trim() {
    while (!c_.empty() && relident::is_zero(c_.back())) c_.pop_back();
}

UPoly UPoly::from_poly(const Poly& p, Var v) {
    std::vector<Rational> c(p.degree(v) + 1);
    for (const auto& t : p.terms()) {
        const auto d = t.mono.degree(v);
        if (t.mono.factors().size() > (d ? 1u : 0u)) {
            throw std::invalid_argument("polynomial is not univariate in " + v.name() + ": " + p.to_string());
        }
        c[d] += t.coeff;
    }
    return UPoly(std::move(c));
}

Poly UPoly::to_poly(Var v) const {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!relident::is_zero(c_[i])) terms.push_back({Monomial(v, static_cast<std::uint32_t>(i)), c_[i]});
    }
    return Poly::from_terms(std::move(terms));
}

Rational UPoly::evaluate(const Rational& t) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

int UPoly::sign_at_infinity(bool positive) const {
    if (c_.empty()) return 0;
    const int s = sign(c_.back());
    return (positive || degree() % 2 == 0) ? s : -s;
}

UPoly UPoly::derivative() const {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
    return UPoly(std::move(d));
}

UPoly UPoly::primitive() const {
    if (c_.empty()) return *this;
    Integer g = 0;
    Integer l = 1;
    for (const auto& c : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    }
    Rational s(l, g);
    s.canonicalize();
    return *this * s;
}

UPoly UPoly::monic() const {
    if (c_.empty()) return *this;
    return *this * (Rational(1) / c_.back());
}

UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + b * Rational(-1); }

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(c));
}

UPoly operator*(const UPoly& a, const Rational& s) {
    std::vector<Rational> c = a.c_;
    for (auto& x : c) x *= s;
    return UPoly(std::move(c));
}

std::string UPoly::to_string(const std::string& var) const { return to_poly(Var(var)).to_string(); }

std::pair<UPoly, UPoly> divrem(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> r = a.coeffs();
    const int db = b.degree();
    if (a.degree() < db) return {UPoly(), a};
    std::vector<Rational> q(a.degree() - db + 1);
    const Rational inv = Rational(1) / b.leading();
    for (int k = a.degree(); k >= db; --k) {
        if (relident::is_zero(r[k])) continue;
        const Rational f = r[k] * inv;
        q[k - db] = f;
        for (int i = 0; i <= db; ++i) r[k - db + i] -= f * b.coeffs()[i];
    }
    return {UPoly(std::move(q)), UPoly(std::move(r))};
}

namespace {

using ModPoly = std::vector<std::uint64_t>;  // low degree first, trimmed

void trim_mod(ModPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

ModPoly monic_gcd_mod(ModPoly a, ModPoly b, std::uint64_t p) {
    trim_mod(a);
    trim_mod(b);
    while (!b.empty()) {
        const std::uint64_t inv = pow_mod(b.back(), p - 2, p);
        while (a.size() >= b.size()) {
            const std::uint64_t f = mul_mod(a.back(), inv, p);
            const std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) {
                const std::uint64_t t = mul_mod(f, b[i], p);
                a[shift + i] = a[shift + i] >= t ? a[shift + i] - t : a[shift + i] + p - t;
            }
            trim_mod(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    const std::uint64_t inv = pow_mod(a.back(), p - 2, p);
    for (auto& c : a) c = mul_mod(c, inv, p);
    return a;
}

std::vector<Integer> integer_coeffs(const UPoly& f) {
    const UPoly prim = f.primitive();
    std::vector<Integer> out;
    for (const auto& c : prim.coeffs()) out.push_back(c.get_num());
    return out;
}

}  // namespace

// Small-prime modular gcd: images of gcd mod p, scaled to the gcd of the
// leading coefficients, are combined by Chinese remaindering until the lift
// stabilizes and divides both inputs.
UPoly gcd(const UPoly& a, const UPoly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.degree() == 0 || b.degree() == 0) return UPoly({Rational(1)});
    const auto x = integer_coeffs(a);
    const auto y = integer_coeffs(b);
    Integer lead;
    mpz_gcd(lead.get_mpz_t(), x.back().get_mpz_t(), y.back().get_mpz_t());
    const UPoly pa = a.primitive();
    const UPoly pb = b.primitive();

    std::size_t best = std::min(x.size(), y.size());
    std::vector<Integer> acc;
    Integer modulus = 1;
    UPoly previous;
    std::uint64_t p = std::uint64_t{1} << 62;
    for (;;) {
        p = previous_prime(p);
        const std::uint64_t lead_p = mpz_fdiv_ui(lead.get_mpz_t(), p);
        if (lead_p == 0) continue;
        ModPoly xp(x.size());
        ModPoly yp(y.size());
        for (std::size_t i = 0; i < x.size(); ++i) xp[i] = mpz_fdiv_ui(x[i].get_mpz_t(), p);
        for (std::size_t i = 0; i < y.size(); ++i) yp[i] = mpz_fdiv_ui(y[i].get_mpz_t(), p);
        ModPoly g = monic_gcd_mod(std::move(xp), std::move(yp), p);
        if (g.size() == 1) return UPoly({Rational(1)});
        if (g.size() > best) continue;  // unlucky prime
        for (auto& c : g) c = mul_mod(c, lead_p, p);
        if (g.size() < best || acc.empty()) {
            best = g.size();
            acc.assign(g.size(), Integer(0));
            modulus = 1;
            previous = UPoly();
        }
        const std::uint64_t m_inv = pow_mod(mpz_fdiv_ui(modulus.get_mpz_t(), p), p - 2, p);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const std::uint64_t have = mpz_fdiv_ui(acc[i].get_mpz_t(), p);
            const std::uint64_t diff = g[i] >= have ? g[i] - have : g[i] + p - have;
            acc[i] += modulus * Integer(static_cast<unsigned long>(mul_mod(diff, m_inv, p)));
        }
        modulus *= Integer(static_cast<unsigned long>(p));
        const Integer half = modulus / 2;
        std::vector<Rational> lifted;
        for (const auto& c : acc) lifted.emplace_back(c > half ? Integer(c - modulus) : c);
        UPoly candidate = UPoly(std::move(lifted)).primitive();
        if (candidate == previous && divrem(pa, candidate).second.is_zero() && divrem(pb, candidate).second.is_zero()) {
            return candidate.monic();
        }
        previous = std::move(candidate);
    }
}

UPoly squarefree_part(const UPoly& f) {
    if (f.degree() <= 0) return f.primitive();
    const UPoly g = gcd(f, f.derivative());
    return divrem(f, g).first.primitive();
}

namespace {

std::vector<UPoly> sturm_sequence(const UPoly& f) {
    std::vector<UPoly> seq{f, f.derivative().primitive()};
    while (!seq.back().is_zero() && seq.back().degree() > 0) {
        UPoly r = divrem(seq[seq.size() - 2], seq.back()).second;
        if (r.is_zero()) break;
        seq.push_back((r * Rational(-1)).primitive());
    }
    if (seq.back().is_zero()) seq.pop_back();
    return seq;
}

int variations(const std::vector<int>& signs) {
    int v = 0;
    int last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

int variations_at(const std::vector<UPoly>& seq, const Bound& b) {
    std::vector<int> signs;
    signs.reserve(seq.size());
    for (const auto& p : seq) {
        signs.push_back(b.infinity ? p.sign_at_infinity(b.infinity > 0) : p.sign_at(b.value));
    }
    return variations(signs);
}

bool less(const Bound& a, const Bound& b) {
    if (a.infinity != b.infinity && (a.infinity != 0 || b.infinity != 0)) return a.infinity < b.infinity;
    return a.infinity == 0 && a.value < b.value;
}

class Isolator {
  public:
    explicit Isolator(const UPoly& f) : f_(squarefree_part(f)), seq_(sturm_sequence(f_)) {}

    const UPoly& squarefree() const { return f_; }

    // Distinct roots in (a, b], valid for finite a < b.
    int count_half_open(const Rational& a, const Rational& b) const {
        return variations_at(seq_, Bound::finite(a)) - variations_at(seq_, Bound::finite(b));
    }

    int count_open(const Bound& lo, const Bound& hi) const {
        if (f_.degree() <= 0 || !less(lo, hi)) return 0;
        int n = variations_at(seq_, lo) - variations_at(seq_, hi);
        if (hi.infinity == 0 && f_.sign_at(hi.value) == 0) --n;
        return n;
    }

    void isolate(const Rational& a, const Rational& b, int count, std::vector<RootInterval>& out) const {
        // Invariant: `count` roots in (a, b], f(a) != 0.
        if (count == 0) return;
        if (count == 1) {
            if (f_.sign_at(b) == 0) {
                out.push_back({b, b});
            } else {
                out.push_back({a, b});
            }
            return;
        }
        Rational m = (a + b) / 2;
        const int left = count_half_open(a, m);
        if (f_.sign_at(m) == 0) {
            isolate(a, m, left, out);  // includes the exact root m
            isolate_after_root(m, b, count - left, out);
            return;
        }
        isolate(a, m, left, out);
        isolate(m, b, count - left, out);
    }

  private:
    // Roots in (m, b] where f(m) == 0: move the left end off the root.
    void isolate_after_root(const Rational& m, const Rational& b, int count, std::vector<RootInterval>& out) const {
        if (count == 0) return;
        Rational step = (b - m) / 2;
        while (true) {
            const Rational a = m + step;
            if (f_.sign_at(a) != 0 && count_half_open(m, a) == 0) {
                isolate(a, b, count, out);
                return;
            }
            step /= 2;
        }
    }

    UPoly f_;
    std::vector<UPoly> seq_;
};

}  // namespace

int sturm_count(const UPoly& f, const Bound& lo, const Bound& hi) {
    if (f.is_zero()) throw std::invalid_argument("sturm_count of the zero polynomial");
    return Isolator(f).count_open(lo, hi);
}

int sturm_count(const UPoly& f) { return sturm_count(f, Bound::minus_infinity(), Bound::plus_infinity()); }

Rational cauchy_root_bound(const UPoly& f) {
    Rational m = 0;
    for (int i = 0; i < f.degree(); ++i) m = std::max(m, Rational(abs(f.coeffs()[i] / f.leading())));
    return m + 1;
}

std::vector<RootInterval> isolate_real_roots(const UPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("isolate_real_roots of the zero polynomial");
    Isolator iso(f);
    const UPoly& g = iso.squarefree();
    if (g.degree() <= 0) return {};
    Rational bound = cauchy_root_bound(g);
    while (g.sign_at(-bound) == 0) bound += 1;
    std::vector<RootInterval> out;
    iso.isolate(-bound, bound, iso.count_half_open(-bound, bound), out);
    return out;
}

RootInterval refine(const UPoly& f, RootInterval iv, const Rational& width) {
    if (iv.exact()) return iv;
    const UPoly g = squarefree_part(f);
    int slo = g.sign_at(iv.lo);
    while (iv.hi - iv.lo > width) {
        const Rational m = (iv.lo + iv.hi) / 2;
        const int sm = g.sign_at(m);
        if (sm == 0) return {m, m};
        if (sm == slo) {
            iv.lo = m;
        } else {
            iv.hi = m;
        }
    }
    return iv;
}

Rational simplest_rational_between(const Rational& lo_in, const Rational& hi_in) {
    Rational lo = lo_in;
    Rational hi = hi_in;
    if (lo > hi) std::swap(lo, hi);
    if (lo <= 0 && hi >= 0) return Rational(0);
    if (hi < 0) return -simplest_rational_between(-hi, -lo);
    // Continued-fraction descent on 0 < lo <= hi.
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    if (Rational(fl) == lo) return lo;
    if (Rational(fl + 1) <= hi) return Rational(fl + 1);
    const Rational frac_lo = lo - Rational(fl);
    const Rational frac_hi = hi - Rational(fl);
    const Rational inner = simplest_rational_between(Rational(1) / frac_hi, Rational(1) / frac_lo);
    Rational out = Rational(fl) + Rational(1) / inner;
    out.canonicalize();
    return out;
}

std::vector<Rational> rational_roots(const UPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("rational_roots of the zero polynomial");
    const UPoly g = squarefree_part(f);
    if (g.degree() <= 0) return {};
    const Integer lc = abs(g.leading().get_num());
    const Rational width = Rational(1) / Rational(2 * lc * lc);
    std::vector<Rational> out;
    for (auto iv : isolate_real_roots(g)) {
        if (!iv.exact()) {
            iv = refine(g, iv, width);
            if (!iv.exact()) {
                const Rational cand = simplest_rational_between(iv.lo, iv.hi);
                if (g.sign_at(cand) == 0) iv = {cand, cand};
            }
        }
        if (iv.exact()) out.push_back(iv.lo);
    }
    return out;
}

int coefficient_sign_variations(const UPoly& f) {
    std::vector<int> signs;
    for (const auto& c : f.coeffs()) signs.push_back(sign(c));
    return variations(signs);
}

}  // namespace relident
