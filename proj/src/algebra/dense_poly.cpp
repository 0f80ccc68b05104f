#include "dense_poly.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace relident::detail {

Layout::Layout(const MonomialOrder& completed_order) {
    int pos = 0;
    for (const auto& blk : completed_order.blocks()) {
        const int b = static_cast<int>(deg_pos_.size());
        deg_pos_.push_back(pos);
        const int first = static_cast<int>(vars_.size());
        for (Var v : blk) {
            if (!index_.emplace(v, static_cast<int>(vars_.size())).second) {
                throw std::invalid_argument("variable listed twice in monomial order: " + v.name());
            }
            vars_.push_back(v);
            block_of_.push_back(b);
        }
        const int count = static_cast<int>(blk.size());
        exp_pos_.resize(vars_.size());
        for (int k = 0; k < count; ++k) {
            // Reverse lexicographic tie-break: the last variable of the block
            // is compared first, and a smaller exponent wins.
            exp_pos_[first + k] = pos + 1 + (count - 1 - k);
        }
        pos += 1 + count;
    }
    key_len_ = pos;
}

int Layout::index_of(Var v) const {
    auto it = index_.find(v);
    if (it == index_.end()) throw std::invalid_argument("variable not in monomial order: " + v.name());
    return it->second;
}

void Layout::encode(const Monomial& m, std::int32_t* key) const {
    std::fill(key, key + key_len_, 0);
    for (const auto& f : m.factors()) {
        const int i = index_of(f.var);
        key[exp_pos_[i]] = -static_cast<std::int32_t>(f.exp);
        key[deg_pos_[block_of_[i]]] += static_cast<std::int32_t>(f.exp);
    }
}

Monomial Layout::decode(const std::int32_t* key) const {
    std::vector<VarPower> fs;
    for (int i = 0; i < nvars(); ++i) {
        const auto e = exponent(key, i);
        if (e) fs.push_back({vars_[i], e});
    }
    return Monomial(std::move(fs));
}

void Layout::lcm(const std::int32_t* a, const std::int32_t* b, std::int32_t* out) const {
    std::fill(out, out + key_len_, 0);
    for (int i = 0; i < nvars(); ++i) {
        const int p = exp_pos_[i];
        out[p] = std::min(a[p], b[p]);
        out[deg_pos_[block_of_[i]]] -= out[p];
    }
}

std::uint64_t Layout::support_mask(const std::int32_t* key) const {
    std::uint64_t mask = 0;
    for (int i = 0; i < nvars(); ++i) {
        if (key[exp_pos_[i]] != 0) mask |= std::uint64_t{1} << (i % 64);
    }
    return mask;
}

DPoly to_dense(const Poly& p, const Layout& layout, Rational* scale) {
    const int len = layout.key_len();
    std::vector<std::pair<std::vector<std::int32_t>, Rational>> terms;
    terms.reserve(p.size());
    Integer g = 0;
    Integer l = 1;
    for (const auto& t : p.terms()) {
        std::vector<std::int32_t> key(len);
        layout.encode(t.mono, key.data());
        terms.emplace_back(std::move(key), t.coeff);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
    }
    std::sort(terms.begin(), terms.end(),
              [len](const auto& a, const auto& b) { return Layout::compare(a.first.data(), b.first.data(), len) > 0; });
    DPoly out;
    out.keys.reserve(terms.size() * len);
    out.coeffs.reserve(terms.size());
    if (g == 0) g = 1;
    for (auto& [key, c] : terms) {
        out.keys.insert(out.keys.end(), key.begin(), key.end());
        Rational scaled = c * l / g;
        out.coeffs.push_back(scaled.get_num());
    }
    if (!out.empty()) out.sugar = layout.total_degree(out.key(0, len));
    for (std::size_t i = 0; i < out.size(); ++i) out.sugar = std::max(out.sugar, layout.total_degree(out.key(i, len)));
    if (scale) {
        *scale = Rational(g, l);
        scale->canonicalize();
    }
    return out;
}

Poly to_poly(const DPoly& p, const Layout& layout, const Rational& scale) {
    std::vector<Term> terms;
    terms.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        terms.push_back({layout.decode(p.key(i, layout.key_len())), Rational(p.coeffs[i]) * scale});
    }
    return Poly::from_terms(std::move(terms));
}

void make_primitive(DPoly& p) {
    if (p.empty()) return;
    Integer g = 0;
    for (const auto& c : p.coeffs) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    if (sgn(p.coeffs[0]) < 0) g = -g;
    if (g != 1) {
        for (auto& c : p.coeffs) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    }
}

namespace {

// out = a * h[from..] - b * (m * g[1..])
DPoly combine(const DPoly& h, std::size_t from, const Integer& a, const DPoly& g, const std::int32_t* m,
              const Integer& b, int len) {
    DPoly out;
    const std::size_t nh = h.size() - from;
    const std::size_t ng = g.size() - 1;
    out.keys.reserve((nh + ng) * len);
    out.coeffs.reserve(nh + ng);
    std::vector<std::int32_t> shifted(len);
    std::size_t i = from;
    std::size_t j = 1;
    const bool a_one = a == 1;
    auto shift = [&](std::size_t idx) {
        const std::int32_t* k = g.key(idx, len);
        for (int p = 0; p < len; ++p) shifted[p] = k[p] + m[p];
    };
    if (j < g.size()) shift(j);
    Integer tmp;
    while (i < h.size() || j < g.size()) {
        int c = 0;
        if (i == h.size()) {
            c = -1;
        } else if (j == g.size()) {
            c = 1;
        } else {
            c = Layout::compare(h.key(i, len), shifted.data(), len);
        }
        if (c > 0) {
            out.keys.insert(out.keys.end(), h.key(i, len), h.key(i, len) + len);
            if (a_one) {
                out.coeffs.push_back(h.coeffs[i]);
            } else {
                out.coeffs.emplace_back(h.coeffs[i] * a);
            }
            ++i;
        } else if (c < 0) {
            out.keys.insert(out.keys.end(), shifted.begin(), shifted.end());
            out.coeffs.emplace_back(-(g.coeffs[j] * b));
            ++j;
            if (j < g.size()) shift(j);
        } else {
            tmp = h.coeffs[i] * a;
            mpz_submul(tmp.get_mpz_t(), g.coeffs[j].get_mpz_t(), b.get_mpz_t());
            if (sgn(tmp) != 0) {
                out.keys.insert(out.keys.end(), shifted.begin(), shifted.end());
                out.coeffs.push_back(tmp);
            }
            ++i;
            ++j;
            if (j < g.size()) shift(j);
        }
    }
    return out;
}

void remove_joint_content(DPoly& h, std::size_t from, DPoly& r, Rational* multiplier) {
    Integer g = 0;
    for (std::size_t i = from; i < h.size(); ++i) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), h.coeffs[i].get_mpz_t());
        if (g == 1) return;
    }
    for (const auto& c : r.coeffs) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) return;
    }
    if (g == 0 || g == 1) return;
    for (std::size_t i = from; i < h.size(); ++i) mpz_divexact(h.coeffs[i].get_mpz_t(), h.coeffs[i].get_mpz_t(), g.get_mpz_t());
    for (auto& c : r.coeffs) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    if (multiplier) *multiplier /= g;
}

}  // namespace

DPoly s_polynomial(const DPoly& f, const DPoly& g, const Layout& layout) {
    const int len = layout.key_len();
    std::vector<std::int32_t> l(len);
    layout.lcm(f.key(0, len), g.key(0, len), l.data());
    std::vector<std::int32_t> mf(len);
    std::vector<std::int32_t> mg(len);
    for (int p = 0; p < len; ++p) {
        mf[p] = l[p] - f.key(0, len)[p];
        mg[p] = l[p] - g.key(0, len)[p];
    }
    DPoly shifted;
    shifted.keys.resize(f.keys.size());
    shifted.coeffs = f.coeffs;
    for (std::size_t i = 0; i < f.size(); ++i) {
        for (int p = 0; p < len; ++p) shifted.keys[i * len + p] = f.keys[i * len + p] + mf[p];
    }
    Integer d;
    Integer a;
    Integer b;
    mpz_gcd(d.get_mpz_t(), f.coeffs[0].get_mpz_t(), g.coeffs[0].get_mpz_t());
    mpz_divexact(a.get_mpz_t(), g.coeffs[0].get_mpz_t(), d.get_mpz_t());
    mpz_divexact(b.get_mpz_t(), f.coeffs[0].get_mpz_t(), d.get_mpz_t());
    DPoly out = combine(shifted, 1, a, g, mg.data(), b, len);
    out.sugar = std::max(f.sugar + layout.total_degree(mf.data()), g.sugar + layout.total_degree(mg.data()));
    return out;
}

DPoly reduce_full(DPoly h, const std::vector<Reducer>& reducers, const Layout& layout, const Deadline& deadline,
                  Rational* multiplier, bool tail) {
    const int len = layout.key_len();
    DPoly r;
    std::size_t start = 0;
    std::size_t steps = 0;
    std::vector<std::int32_t> m(len);
    Integer d;
    Integer a;
    Integer b;
    while (start < h.size()) {
        const std::int32_t* lead = h.key(start, len);
        const std::uint64_t mask = layout.support_mask(lead);
        const Reducer* found = nullptr;
        for (const auto& red : reducers) {
            if ((red.lead_mask & ~mask) != 0) continue;
            if (layout.divides(red.poly->key(0, len), lead)) {
                found = &red;
                break;
            }
        }
        if (!found) {
            if (!tail) {
                if (r.empty() && start == 0) return h;
                r.keys.insert(r.keys.end(), h.keys.begin() + static_cast<std::ptrdiff_t>(start * len), h.keys.end());
                r.coeffs.insert(r.coeffs.end(), h.coeffs.begin() + static_cast<std::ptrdiff_t>(start), h.coeffs.end());
                break;
            }
            r.keys.insert(r.keys.end(), lead, lead + len);
            r.coeffs.push_back(std::move(h.coeffs[start]));
            ++start;
            continue;
        }
        const DPoly& g = *found->poly;
        const std::int32_t* glead = g.key(0, len);
        for (int p = 0; p < len; ++p) m[p] = lead[p] - glead[p];
        mpz_gcd(d.get_mpz_t(), h.coeffs[start].get_mpz_t(), g.coeffs[0].get_mpz_t());
        mpz_divexact(a.get_mpz_t(), g.coeffs[0].get_mpz_t(), d.get_mpz_t());
        mpz_divexact(b.get_mpz_t(), h.coeffs[start].get_mpz_t(), d.get_mpz_t());
        if (sgn(a) < 0) {
            a = -a;
            b = -b;
        }
        const std::uint32_t sugar = std::max(h.sugar, g.sugar + layout.total_degree(m.data()));
        h = combine(h, start + 1, a, g, m.data(), b, len);
        h.sugar = sugar;
        start = 0;
        if (a != 1) {
            for (auto& c : r.coeffs) c *= a;
            if (multiplier) *multiplier *= a;
        }
        if (++steps % 16 == 0) {
            deadline.check("polynomial reduction");
            remove_joint_content(h, start, r, multiplier);
        }
    }
    r.sugar = h.sugar;
    return r;
}

}  // namespace relident::detail
