#include "relident/algebra/groebner.hpp"

#include "dense_poly.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace relident {

using detail::DPoly;
using detail::Layout;
using detail::Reducer;

namespace {

struct Pair {
    std::size_t i;
    std::size_t j;
    std::vector<std::int32_t> lcm;
    std::uint32_t sugar;
};

struct PairLess {
    int len;
    // Sugar first for degree-compatible orders; pure lex uses the normal
    // strategy (smallest lcm in the order), which swells far less there.
    bool by_sugar = true;
    bool operator()(const Pair& a, const Pair& b) const {
        if (by_sugar && a.sugar != b.sugar) return a.sugar < b.sugar;
        const int c = Layout::compare(a.lcm.data(), b.lcm.data(), len);
        if (c != 0) return c < 0;
        if (a.j != b.j) return a.j < b.j;
        return a.i < b.i;
    }
};

std::uint32_t max_term_degree(const DPoly& p, const Layout& layout) {
    std::uint32_t d = 0;
    for (std::size_t i = 0; i < p.size(); ++i) d = std::max(d, layout.total_degree(p.key(i, layout.key_len())));
    return d;
}

bool keys_equal(const std::int32_t* a, const std::int32_t* b, int len) { return Layout::compare(a, b, len) == 0; }

class Buchberger {
  public:
    Buchberger(const Layout& layout, const GroebnerLimits& limits, GroebnerStats* stats, bool by_sugar)
        : layout_(layout), len_(layout.key_len()), limits_(limits), deadline_(limits.effective_deadline()),
          stats_(stats), pairs_(PairLess{layout.key_len(), by_sugar}) {}

    // Returns false when the unit ideal was detected.
    bool run(std::vector<DPoly> gens) {
        std::sort(gens.begin(), gens.end(), [this](const DPoly& a, const DPoly& b) {
            return Layout::compare(a.key(0, len_), b.key(0, len_), len_) < 0;
        });
        for (auto& g : gens) {
            DPoly h = detail::reduce_full(std::move(g), reducers(), layout_, deadline_);
            if (!insert(std::move(h))) return false;
        }
        while (!pairs_.empty()) {
            deadline_.check("groebner basis");
            Pair p = *pairs_.begin();
            pairs_.erase(pairs_.begin());
            if (stats_) ++stats_->pairs_reduced;
            DPoly s = detail::s_polynomial(store_[p.i], store_[p.j], layout_);
            DPoly h = detail::reduce_full(std::move(s), reducers(), layout_, deadline_);
            if (h.empty()) {
                if (stats_) ++stats_->zero_reductions;
                continue;
            }
            if (!insert(std::move(h))) return false;
        }
        return true;
    }

    // Interreduced active elements, ascending by leading monomial.
    std::vector<DPoly> reduced_basis() {
        std::vector<std::size_t> idx(active_.begin(), active_.end());
        std::sort(idx.begin(), idx.end(), [this](std::size_t a, std::size_t b) {
            return Layout::compare(store_[a].key(0, len_), store_[b].key(0, len_), len_) < 0;
        });
        std::vector<DPoly> out;
        for (std::size_t k = 0; k < idx.size(); ++k) {
            std::vector<Reducer> others;
            for (std::size_t other : idx) {
                if (other != idx[k]) others.push_back({&store_[other], layout_.support_mask(store_[other].key(0, len_))});
            }
            DPoly r = detail::reduce_full(store_[idx[k]], others, layout_, deadline_);
            detail::make_primitive(r);
            out.push_back(std::move(r));
        }
        return out;
    }

  private:
    std::vector<Reducer> reducers() const {
        std::vector<Reducer> out;
        out.reserve(active_.size());
        for (std::size_t i : active_) out.push_back({&store_[i], masks_[i]});
        return out;
    }

    bool insert(DPoly h) {
        if (h.empty()) return true;
        detail::make_primitive(h);
        if (layout_.is_one(h.key(0, len_))) return false;
        if (max_term_degree(h, layout_) > limits_.max_degree) {
            throw ResourceExceeded("degree", "groebner basis element of degree " +
                                                 std::to_string(max_term_degree(h, layout_)));
        }
        const std::size_t hi = store_.size();
        store_.push_back(std::move(h));
        masks_.push_back(layout_.support_mask(store_[hi].key(0, len_)));
        if (store_.size() > limits_.max_basis) {
            throw ResourceExceeded("basis size", std::to_string(store_.size()) + " polynomials");
        }
        update(hi);
        if (stats_) stats_->max_basis_size = std::max(stats_->max_basis_size, active_.size());
        return true;
    }

    // Gebauer-Moeller installation of a new element.
    void update(std::size_t hi) {
        const std::int32_t* lh = store_[hi].key(0, len_);
        struct Cand {
            std::size_t g;
            std::vector<std::int32_t> lcm;
            bool coprime;
        };
        std::vector<Cand> cands;
        for (std::size_t g : active_) {
            Cand c{g, std::vector<std::int32_t>(len_), layout_.coprime(lh, store_[g].key(0, len_))};
            layout_.lcm(lh, store_[g].key(0, len_), c.lcm.data());
            cands.push_back(std::move(c));
        }
        if (stats_) stats_->pairs_considered += cands.size();
        // Chain criterion among new pairs: drop (h,g1) when some other new pair
        // has an lcm properly dividing lcm(h,g1); among equal lcms keep one,
        // preferring a coprime pair.
        std::vector<bool> keep(cands.size(), true);
        for (std::size_t a = 0; a < cands.size(); ++a) {
            for (std::size_t b = 0; b < cands.size() && keep[a]; ++b) {
                if (a == b || !keep[b]) continue;
                if (!layout_.divides(cands[b].lcm.data(), cands[a].lcm.data())) continue;
                if (!keys_equal(cands[a].lcm.data(), cands[b].lcm.data(), len_)) {
                    keep[a] = false;
                } else if (cands[b].coprime || !cands[a].coprime) {
                    if (cands[b].coprime != cands[a].coprime || b < a) keep[a] = false;
                }
            }
        }
        // Old pairs made redundant by h.
        std::vector<std::int32_t> l1(len_);
        std::vector<std::int32_t> l2(len_);
        for (auto it = pairs_.begin(); it != pairs_.end();) {
            const std::int32_t* l = it->lcm.data();
            bool drop = false;
            if (layout_.divides(lh, l)) {
                layout_.lcm(store_[it->i].key(0, len_), lh, l1.data());
                layout_.lcm(store_[it->j].key(0, len_), lh, l2.data());
                drop = !keys_equal(l1.data(), l, len_) && !keys_equal(l2.data(), l, len_);
            }
            it = drop ? pairs_.erase(it) : std::next(it);
        }
        for (std::size_t a = 0; a < cands.size(); ++a) {
            if (!keep[a] || cands[a].coprime) continue;
            const std::uint32_t sugar =
                std::max(store_[hi].sugar + layout_.total_degree(cands[a].lcm.data()) - layout_.total_degree(lh),
                         store_[cands[a].g].sugar + layout_.total_degree(cands[a].lcm.data()) -
                             layout_.total_degree(store_[cands[a].g].key(0, len_)));
            pairs_.insert(Pair{cands[a].g, hi, std::move(cands[a].lcm), sugar});
        }
        std::vector<std::size_t> next;
        for (std::size_t g : active_) {
            if (!layout_.divides(lh, store_[g].key(0, len_))) next.push_back(g);
        }
        next.push_back(hi);
        active_ = std::move(next);
    }

    const Layout& layout_;
    int len_;
    const GroebnerLimits& limits_;
    Deadline deadline_;
    GroebnerStats* stats_;
    std::deque<DPoly> store_;
    std::vector<std::uint64_t> masks_;
    std::vector<std::size_t> active_;
    std::set<Pair, PairLess> pairs_;
};

Poly monic_poly(const DPoly& p, const Layout& layout) {
    return to_poly(p, layout, Rational(1) / Rational(p.coeffs[0]));
}

std::vector<Poly> nonzero(const std::vector<Poly>& ps) {
    std::vector<Poly> out;
    for (const auto& p : ps) {
        if (!p.is_zero()) out.push_back(p);
    }
    return out;
}

}  // namespace

namespace {

bool is_pure_lex(const MonomialOrder& order) {
    return order.blocks().size() > 1 &&
           std::all_of(order.blocks().begin(), order.blocks().end(), [](const auto& b) { return b.size() == 1; });
}

}  // namespace

std::vector<Poly> groebner_basis(const std::vector<Poly>& gens, const MonomialOrder& order,
                                 const GroebnerLimits& limits, GroebnerStats* stats) {
    const std::vector<Poly> input = nonzero(gens);
    if (input.empty()) return {};
    for (const auto& g : input) {
        if (g.is_constant()) return {Poly(1)};
    }
    const MonomialOrder full = order.completed_for(input);
    const Layout layout(full);
    std::vector<DPoly> dense;
    dense.reserve(input.size());
    for (const auto& g : input) {
        dense.push_back(detail::to_dense(g, layout));
        detail::make_primitive(dense.back());
    }
    Buchberger bb(layout, limits, stats, !is_pure_lex(full));
    if (!bb.run(std::move(dense))) return {Poly(1)};
    std::vector<Poly> out;
    for (const auto& p : bb.reduced_basis()) out.push_back(monic_poly(p, layout));
    return out;
}

struct NormalFormReducer::Impl {
    MonomialOrder order;
    Layout layout;
    std::deque<DPoly> store;
    std::vector<Reducer> reducers;

    Impl(const std::vector<Poly>& basis, const MonomialOrder& o)
        : order(o.completed_for(basis)), layout(order) {
        for (const auto& b : basis) {
            if (b.is_zero()) throw std::invalid_argument("normal_form: zero polynomial in basis");
            store.push_back(detail::to_dense(b, layout));
            detail::make_primitive(store.back());
            reducers.push_back({&store.back(), layout.support_mask(store.back().key(0, layout.key_len()))});
        }
    }

    Poly reduce_known(const Poly& f) const {
        if (f.is_zero()) return f;
        Rational scale;
        DPoly h = detail::to_dense(f, layout, &scale);
        Rational multiplier(1);
        DPoly r = detail::reduce_full(std::move(h), reducers, layout, Deadline{}, &multiplier);
        return to_poly(r, layout, scale / multiplier);
    }

    Poly reduce(const Poly& f) const {
        std::vector<Var> extra;
        for (Var v : f.variables()) {
            if (!layout.has(v)) extra.push_back(v);
        }
        if (extra.empty()) return reduce_known(f);
        // Variables unknown to the basis never occur in a leading monomial, so
        // reduce each coefficient of f viewed as a polynomial in them.
        Poly out;
        for (const auto& [mono, coeff] : f.collect(extra)) {
            out += reduce_known(coeff) * Poly(mono, Rational(1));
        }
        return out;
    }
};

NormalFormReducer::NormalFormReducer(const std::vector<Poly>& basis, const MonomialOrder& order)
    : impl_(std::make_unique<Impl>(basis, order)) {}
NormalFormReducer::~NormalFormReducer() = default;
NormalFormReducer::NormalFormReducer(NormalFormReducer&&) noexcept = default;
NormalFormReducer& NormalFormReducer::operator=(NormalFormReducer&&) noexcept = default;

Poly NormalFormReducer::reduce(const Poly& f) const { return impl_->reduce(f); }
const MonomialOrder& NormalFormReducer::order() const { return impl_->order; }

Poly normal_form(const Poly& f, const std::vector<Poly>& basis, const MonomialOrder& order) {
    std::vector<Poly> all = basis;
    all.push_back(f);
    return NormalFormReducer(basis, order.completed_for(all)).reduce(f);
}

Poly s_polynomial(const Poly& f, const Poly& g, const MonomialOrder& order) {
    const Term lf = order.leading_term(f);
    const Term lg = order.leading_term(g);
    const Monomial l = lf.mono.lcm(lg.mono);
    return Poly(lf.mono.quotient_of(l), Rational(1) / lf.coeff) * f -
           Poly(lg.mono.quotient_of(l), Rational(1) / lg.coeff) * g;
}

std::vector<Poly> eliminate(const std::vector<Poly>& gens, const std::vector<Var>& drop, const MonomialOrder& keep,
                            const GroebnerLimits& limits) {
    const std::unordered_set<Var> dropped(drop.begin(), drop.end());
    std::vector<std::vector<Var>> blocks{drop};
    for (const auto& b : keep.blocks()) {
        std::vector<Var> kept;
        for (Var v : b) {
            if (!dropped.count(v)) kept.push_back(v);
        }
        blocks.push_back(std::move(kept));
    }
    const auto basis = groebner_basis(gens, MonomialOrder::block(std::move(blocks)), limits);
    std::vector<Poly> out;
    for (const auto& p : basis) {
        const bool free = std::none_of(drop.begin(), drop.end(), [&](Var v) { return p.contains(v); });
        if (free) out.push_back(p);
    }
    return out;
}

bool is_unit_ideal(const std::vector<Poly>& basis) {
    return std::any_of(basis.begin(), basis.end(), [](const Poly& p) { return p.is_constant() && !p.is_zero(); });
}

namespace {

class IndependentSetSearch {
  public:
    IndependentSetSearch(std::size_t nvars, std::vector<std::vector<std::size_t>> supports)
        : n_(nvars), supports_(std::move(supports)), in_(nvars, false), by_var_(nvars) {
        for (std::size_t s = 0; s < supports_.size(); ++s) {
            for (std::size_t v : supports_[s]) by_var_[v].push_back(s);
        }
    }

    int run() {
        dfs(0, 0);
        return best_;
    }

  private:
    bool can_add(std::size_t v) const {
        for (std::size_t s : by_var_[v]) {
            const bool covered = std::all_of(supports_[s].begin(), supports_[s].end(),
                                             [&](std::size_t w) { return w == v || in_[w]; });
            if (covered) return false;
        }
        return true;
    }

    void dfs(std::size_t i, int size) {
        if (size + static_cast<int>(n_ - i) <= best_) return;
        if (i == n_) {
            best_ = size;
            return;
        }
        if (can_add(i)) {
            in_[i] = true;
            dfs(i + 1, size + 1);
            in_[i] = false;
        }
        dfs(i + 1, size);
    }

    std::size_t n_;
    std::vector<std::vector<std::size_t>> supports_;
    std::vector<bool> in_;
    std::vector<std::vector<std::size_t>> by_var_;
    int best_ = -1;
};

}  // namespace

int ideal_dimension(const std::vector<Poly>& basis, const MonomialOrder& order) {
    const std::vector<Poly> gb = nonzero(basis);
    if (is_unit_ideal(gb)) return -1;
    const MonomialOrder full = order.completed_for(gb);
    const std::vector<Var> vars = full.variables();
    std::unordered_map<Var, std::size_t> index;
    for (std::size_t i = 0; i < vars.size(); ++i) index.emplace(vars[i], i);
    std::vector<std::vector<std::size_t>> supports;
    for (const auto& p : gb) {
        std::vector<std::size_t> s;
        const Term lead = full.leading_term(p);
        for (const auto& f : lead.mono.factors()) s.push_back(index.at(f.var));
        supports.push_back(std::move(s));
    }
    return IndependentSetSearch(vars.size(), std::move(supports)).run();
}

std::vector<Monomial> standard_monomials(const std::vector<Poly>& basis, const MonomialOrder& order,
                                         std::size_t limit) {
    const std::vector<Poly> gb = nonzero(basis);
    if (is_unit_ideal(gb)) return {};
    const MonomialOrder full = order.completed_for(gb);
    std::vector<Monomial> leads;
    for (const auto& p : gb) leads.push_back(full.leading_term(p).mono);
    auto standard = [&](const Monomial& m) {
        return std::none_of(leads.begin(), leads.end(), [&](const Monomial& l) { return l.divides(m); });
    };
    std::vector<Monomial> out{Monomial()};
    std::unordered_set<Monomial> seen{Monomial()};
    for (std::size_t k = 0; k < out.size(); ++k) {
        for (Var v : full.variables()) {
            Monomial next = out[k] * Monomial(v);
            if (seen.count(next) || !standard(next)) continue;
            seen.insert(next);
            out.push_back(std::move(next));
            if (out.size() > limit) {
                throw ResourceExceeded("standard monomials", "quotient larger than " + std::to_string(limit) +
                                                                 " (ideal not zero-dimensional?)");
            }
        }
    }
    std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return full.compare(a, b) < 0; });
    return out;
}

}  // namespace relident
