#include "relident/diffalg/io.hpp"

#include "relident/algebra/groebner.hpp"
#include "relident/algebra/modular.hpp"
#include "relident/algebra/random.hpp"
#include "relident/diffalg/jet.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace relident {

RationalExpr lie_derivative(const Model& model, const RationalExpr& e) {
    const auto states = model.state_vars();
    const std::unordered_set<std::string> inputs(model.inputs.begin(), model.inputs.end());
    RationalExpr acc;
    for (std::size_t i = 0; i < states.size(); ++i) {
        RationalExpr d = e.derivative(states[i]);
        if (!d.is_zero()) acc = acc + d * model.dynamics[i];
    }
    for (Var v : e.variables()) {
        const auto [base, order] = split_jet(v);
        if (!inputs.count(base)) continue;
        RationalExpr d = e.derivative(v);
        if (!d.is_zero()) acc = acc + d * RationalExpr(Poly(jet_var(base, order + 1)));
    }
    return acc;
}

namespace {

struct Row {
    unsigned order;
    std::size_t output;
};

class ModPoint {
  public:
    explicit ModPoint(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t value(Var v) {
        auto it = values_.find(v);
        if (it != values_.end()) return it->second;
        const std::uint64_t x = rng_.nonzero_mod(kEvalPrime);
        values_.emplace(v, x);
        return x;
    }

    std::uint64_t eval(const Poly& p) {
        for (Var v : p.variables()) value(v);
        auto r = evaluate_mod(p, values_, kEvalPrime);
        if (!r) throw std::runtime_error("coefficient denominator divisible by the evaluation prime");
        return *r;
    }

    // Value of a rational expression; nullopt when the denominator vanishes.
    std::optional<std::uint64_t> eval(const RationalExpr& e) {
        const std::uint64_t d = eval(e.denominator());
        if (d == 0) return std::nullopt;
        return mul_mod(eval(e.numerator()), pow_mod(d, kEvalPrime - 2, kEvalPrime), kEvalPrime);
    }

  private:
    Rng rng_;
    std::unordered_map<Var, std::uint64_t> values_;
};

// Incremental echelon basis mod p.
class ModSpan {
  public:
    bool add_if_independent(std::vector<std::uint64_t> row) {
        const std::uint64_t p = kEvalPrime;
        for (const auto& [col, basis] : rows_) {
            if (row[col] == 0) continue;
            const std::uint64_t f = row[col];
            for (std::size_t k = 0; k < row.size(); ++k) row[k] = (row[k] + p - mul_mod(f, basis[k], p)) % p;
        }
        std::size_t col = 0;
        while (col < row.size() && row[col] == 0) ++col;
        if (col == row.size()) return false;
        const std::uint64_t inv = pow_mod(row[col], p - 2, p);
        for (auto& x : row) x = mul_mod(x, inv, p);
        for (auto& [c, basis] : rows_) {
            if (basis[col] == 0) continue;
            const std::uint64_t f = basis[col];
            for (std::size_t k = 0; k < row.size(); ++k) basis[k] = (basis[k] + p - mul_mod(f, row[k], p)) % p;
        }
        rows_.emplace_back(col, std::move(row));
        return true;
    }

  private:
    std::vector<std::pair<std::size_t, std::vector<std::uint64_t>>> rows_;
};

bool parameter_only(const Poly& p, const std::unordered_set<Var>& params) {
    const auto vs = p.variables();
    return !vs.empty() && std::all_of(vs.begin(), vs.end(), [&](Var v) { return params.count(v) != 0; });
}

unsigned output_order(const Poly& p, const std::string& output) {
    unsigned best = 0;
    for (Var v : p.variables()) {
        const auto [base, order] = split_jet(v);
        if (base == output) best = std::max(best, order);
    }
    return best;
}

// Pivot preference: lowest total degree, then lowest derivative order, then
// canonical text.
std::tuple<std::uint32_t, unsigned, std::string> pivot_key(const Monomial& m) {
    unsigned order = 0;
    for (const auto& f : m.factors()) order = std::max(order, split_jet(f.var).second);
    return {m.total_degree(), order, m.to_string()};
}

}  // namespace

IOResult io_polynomials(const Model& model, const IOOptions& options) {
    model.validate();
    const std::size_t n = model.states.size();
    const unsigned cap = options.max_prolong ? options.max_prolong : static_cast<unsigned>(std::max<std::size_t>(n, 1));
    const auto states = model.state_vars();
    const auto params = model.param_vars();
    const std::unordered_set<Var> param_set(params.begin(), params.end());
    const std::size_t k = model.outputs.size();

    // Lie derivatives L^j h_i, computed on demand.
    std::vector<std::vector<RationalExpr>> lie(k);
    auto derivative_of = [&](std::size_t i, unsigned j) -> const RationalExpr& {
        auto& seq = lie[i];
        if (seq.empty()) seq.push_back(model.outputs[i].expr);
        while (seq.size() <= j) seq.push_back(lie_derivative(model, seq.back()));
        return seq[j];
    };

    // Rows in orderly sequence; a row joins the basis when its state gradient
    // is independent of the earlier ones. The first dependent row of each
    // output fixes the order of its relation.
    ModPoint point(mix_seed(options.seed, 0x10));
    ModSpan span;
    std::vector<Row> basis;
    std::vector<std::optional<unsigned>> rel_order(k);
    std::vector<std::size_t> basis_before(k);
    for (unsigned j = 0; j <= 2 * cap; ++j) {
        bool pending = false;
        for (std::size_t i = 0; i < k; ++i) {
            if (rel_order[i]) continue;
            pending = true;
            const RationalExpr& e = derivative_of(i, j);
            std::vector<std::uint64_t> grad(n);
            for (std::size_t s = 0; s < n; ++s) {
                auto g = point.eval(e.derivative(states[s]));
                if (!g) throw std::runtime_error("random evaluation point hits a denominator zero");
                grad[s] = *g;
            }
            if (span.add_if_independent(grad)) {
                basis.push_back({j, i});
            } else {
                rel_order[i] = j;
                basis_before[i] = basis.size();
            }
        }
        if (!pending) break;
    }

    IOResult result;
    result.selection_rule = "minimal differential order, then fewest terms, then canonical text";
    std::set<std::string> seen_side;
    for (std::size_t i = 0; i < k; ++i) {
        const std::string& name = model.outputs[i].name;
        if (!rel_order[i] || *rel_order[i] > cap) {
            throw EliminationIncomplete("no input-output relation for output '" + name + "' within " +
                                        std::to_string(cap) + " prolongations");
        }
        // Prolongation levels: the rows strictly before the target in the
        // orderly sequence; on failure also all rows up to the target order,
        // then one more order each time, up to 2n.
        std::optional<Poly> chosen;
        std::string failure;
        for (unsigned extra = 0; !chosen && *rel_order[i] + extra <= std::max(2 * cap, *rel_order[i]); ++extra) {
            std::vector<Row> rows(basis.begin(), basis.begin() + static_cast<std::ptrdiff_t>(basis_before[i]));
            if (extra > 0) {
                rows.clear();
                for (std::size_t o = 0; o < k; ++o) {
                    for (unsigned j = 0; j <= *rel_order[i] + extra - 1; ++j) {
                        if (o != i || j < *rel_order[i]) rows.push_back({j, o});
                    }
                }
            }
            rows.push_back({*rel_order[i], i});
            std::vector<Poly> eqs;
            std::vector<Poly> factors;
            std::vector<Var> jets;
            for (const auto& r : rows) {
                const RationalExpr& e = derivative_of(r.output, r.order);
                const Var jv = jet_var(model.outputs[r.output].name, r.order);
                jets.push_back(jv);
                eqs.push_back(Poly(jv) * e.denominator() - e.numerator());
                for (const auto& f : e.factors()) {
                    if (std::find(factors.begin(), factors.end(), f.base) == factors.end()) factors.push_back(f.base);
                    if (parameter_only(f.base, param_set) && seen_side.insert(f.base.to_string()).second) {
                        result.side_conditions.push_back({f.base, RelOp::ne});
                    }
                }
            }
            std::vector<Var> drop = states;
            if (!factors.empty()) {
                const Var w("__w_sat");
                Poly prod(1);
                for (const auto& f : factors) prod *= f;
                eqs.push_back(Poly(w) * prod - 1);
                drop.push_back(w);
            }
            std::sort(jets.begin(), jets.end(), [](Var a, Var b) {
                const auto ja = split_jet(a);
                const auto jb = split_jet(b);
                if (ja.second != jb.second) return ja.second > jb.second;
                return ja.first < jb.first;
            });
            jets.erase(std::unique(jets.begin(), jets.end()), jets.end());
            std::vector<Var> keep = jets;
            keep.insert(keep.end(), params.begin(), params.end());
            const auto order = MonomialOrder::block({drop, keep});
            std::vector<Poly> gb;
            try {
                gb = groebner_basis(eqs, order, options.limits);
            } catch (const ResourceExceeded& e) {
                throw;
            }
            const Var target = jet_var(name, *rel_order[i]);
            std::vector<Poly> candidates;
            for (const auto& g : gb) {
                const bool free = std::none_of(drop.begin(), drop.end(), [&](Var v) { return g.contains(v); });
                bool has_output = false;
                for (Var v : g.variables()) {
                    if (split_jet(v).first == name) has_output = true;
                }
                if (free && has_output) candidates.push_back(g);
            }
            if (candidates.empty()) {
                failure = "elimination ideal has no relation involving " + target.name();
                continue;
            }
            std::sort(candidates.begin(), candidates.end(), [&](const Poly& a, const Poly& b) {
                const unsigned oa = output_order(a, name);
                const unsigned ob = output_order(b, name);
                if (oa != ob) return oa < ob;
                if (a.size() != b.size()) return a.size() < b.size();
                return a.to_string() < b.to_string();
            });
            chosen = candidates.front();
        }
        if (!chosen) throw EliminationIncomplete("output '" + name + "': " + failure);
        result.polys.push_back(normalize_io(name, *chosen, params));
    }
    return result;
}

IOPolynomial normalize_io(const std::string& output, const Poly& p, const std::vector<Var>& params) {
    if (p.is_zero()) throw std::invalid_argument("normalize_io of the zero polynomial");
    const std::unordered_set<Var> param_set(params.begin(), params.end());
    std::vector<Var> diff_vars;
    for (Var v : p.variables()) {
        if (!param_set.count(v)) diff_vars.push_back(v);
    }
    const auto groups = p.collect(diff_vars);  // canonical order of differential monomials
    IOPolynomial out;
    out.output = output;
    out.order = output_order(p, output);

    const Poly* constant_mono = nullptr;
    Rational constant_value;
    for (const auto& [mono, coeff] : groups) {
        if (coeff.is_constant()) {
            constant_value = coeff.constant_value();
            out.normalization = "scaled so that the coefficient of " + Poly(mono, Rational(1)).to_string() + " is 1";
            constant_mono = &coeff;
            break;
        }
    }
    Poly scaled = p;
    if (constant_mono) {
        scaled *= Rational(1) / constant_value;
    } else {
        const auto& [mono, coeff] = *std::min_element(groups.begin(), groups.end(), [](const auto& a, const auto& b) {
            return pivot_key(a.first) < pivot_key(b.first);
        });
        const Poly norm = coeff.normalized();
        scaled *= norm.canonical_leading_term().coeff / coeff.canonical_leading_term().coeff;
        out.denominator = norm;
        out.normalization = "divided by the coefficient " + norm.to_string() + " of " +
                            Poly(mono, Rational(1)).to_string();
    }
    out.polynomial = scaled;

    std::vector<std::pair<Poly, Poly>> classes;  // normalized coefficient -> monomials
    std::unordered_map<Poly, std::size_t> index;
    for (const auto& [mono, coeff] : scaled.collect(diff_vars)) {
        if (coeff.is_constant()) {
            out.m0 += Poly(mono, coeff.constant_value());
            continue;
        }
        if (!out.denominator.is_constant()) {
            if (auto q = divide_exact(coeff, out.denominator); q && q->is_constant()) {
                out.m0 += Poly(mono, q->constant_value());
                continue;
            }
        }
        const Poly key = coeff.normalized();
        const Rational lambda = coeff.canonical_leading_term().coeff / key.canonical_leading_term().coeff;
        auto [it, fresh] = index.emplace(key, classes.size());
        if (fresh) classes.emplace_back(key, Poly());
        classes[it->second].second += Poly(mono, lambda);
    }
    for (auto& [coeff, monos] : classes) out.terms.push_back({monos, coeff});
    return out;
}

ExhaustiveSummary exhaustive_summary(const std::vector<IOPolynomial>& polys,
                                     const std::vector<Relation>& side_conditions) {
    ExhaustiveSummary s;
    s.side_conditions = side_conditions;
    for (std::size_t pi = 0; pi < polys.size(); ++pi) {
        const auto& p = polys[pi];
        if (!p.denominator.is_constant()) {
            const Relation r{p.denominator, RelOp::ne};
            if (std::find(s.side_conditions.begin(), s.side_conditions.end(), r) == s.side_conditions.end()) {
                s.side_conditions.push_back(r);
            }
        }
        for (std::size_t ti = 0; ti < p.terms.size(); ++ti) {
            s.entries.push_back({RationalExpr(p.terms[ti].coefficient, p.denominator), pi, ti});
        }
    }
    // Fingerprint: value at point A over value at point B, mod p. Equal for
    // entries that differ by a constant; confirmed exactly below.
    ModPoint a(0xA11CE);
    ModPoint b(0xB0B);
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<std::size_t>> buckets;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> prints(s.entries.size());
    for (std::size_t i = 0; i < s.entries.size(); ++i) {
        const auto& e = s.entries[i].value;
        const auto va = a.eval(e);
        const auto vb = b.eval(e);
        if (va && vb && *vb != 0) {
            prints[i] = {mul_mod(*va, pow_mod(*vb, kEvalPrime - 2, kEvalPrime), kEvalPrime), 0};
        } else {
            prints[i] = {0, i + 1};  // no usable fingerprint: compare exactly against everything
        }
    }
    auto proportional = [](const RationalExpr& x, const RationalExpr& y) {
        const Poly l = x.numerator() * y.denominator();
        const Poly r = y.numerator() * x.denominator();
        return l.normalized() == r.normalized();
    };
    std::vector<std::size_t> class_of(s.entries.size(), SIZE_MAX);
    for (std::size_t i = 0; i < s.entries.size(); ++i) {
        auto& bucket = buckets[prints[i]];
        std::size_t found = SIZE_MAX;
        for (std::size_t j : bucket) {
            if (proportional(s.entries[i].value, s.entries[j].value)) {
                found = class_of[j];
                break;
            }
        }
        if (found == SIZE_MAX && prints[i].second != 0) {
            for (std::size_t j = 0; j < i && found == SIZE_MAX; ++j) {
                if (proportional(s.entries[i].value, s.entries[j].value)) found = class_of[j];
            }
        }
        if (found == SIZE_MAX) {
            found = s.classes.size();
            s.classes.emplace_back();
            const auto& v = s.entries[i].value;
            s.representatives.push_back(RationalExpr(v.numerator().normalized(), v.denominator()));
        }
        class_of[i] = found;
        s.classes[found].push_back(i);
        bucket.push_back(i);
    }
    return s;
}

namespace {

using Series = std::vector<std::uint64_t>;

Series series_mul(const Series& a, const Series& b, std::uint64_t p) {
    const std::size_t n = a.size();
    Series out(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; i + j < n; ++j) {
            if (b[j]) out[i + j] = (out[i + j] + mul_mod(a[i], b[j], p)) % p;
        }
    }
    return out;
}

}  // namespace

WronskianResult wronskian_check(const std::vector<Poly>& family, unsigned trials, std::uint64_t seed) {
    WronskianResult res;
    res.size = family.size();
    const std::size_t n = family.size();
    if (n == 0) {
        res.pass = true;
        return res;
    }
    const std::uint64_t p = kEvalPrime;
    // Formal jets as truncated power series: y[j](t) = sum_k Y_{j+k} t^k / k!,
    // so that row r of the Wronskian is r! times the t^r coefficient.
    std::map<std::string, unsigned> top;  // base -> highest jet order used
    for (const auto& m : family) {
        for (Var v : m.variables()) {
            const auto [base, order] = split_jet(v);
            top[base] = std::max(top[base], order);
        }
    }
    std::vector<std::uint64_t> inv_fact(n, 1);
    for (std::size_t k = 1; k < n; ++k) inv_fact[k] = mul_mod(inv_fact[k - 1], pow_mod(k, p - 2, p), p);
    Rng rng(seed);
    for (unsigned trial = 0; trial < std::max(1u, trials); ++trial) {
        ++res.trials;
        std::map<std::string, std::vector<std::uint64_t>> values;
        for (const auto& [base, order] : top) {
            auto& vals = values[base];
            for (std::size_t j = 0; j < order + n; ++j) vals.push_back(signed_mod(rng.uniform(-999, 999), p));
        }
        std::unordered_map<Var, Series> series;
        auto series_of = [&](Var v) -> const Series& {
            auto it = series.find(v);
            if (it != series.end()) return it->second;
            const auto [base, order] = split_jet(v);
            Series s(n);
            for (std::size_t kk = 0; kk < n; ++kk) s[kk] = mul_mod(values[base][order + kk], inv_fact[kk], p);
            return series.emplace(v, std::move(s)).first->second;
        };
        std::vector<std::vector<std::uint64_t>> w(n, std::vector<std::uint64_t>(n));
        for (std::size_t c = 0; c < n; ++c) {
            Series acc(n, 0);
            for (const auto& t : family[c].terms()) {
                Series term(n, 0);
                auto coeff = rational_mod(t.coeff, p);
                term[0] = coeff.value_or(0);
                for (const auto& f : t.mono.factors()) {
                    for (std::uint32_t e = 0; e < f.exp; ++e) term = series_mul(term, series_of(f.var), p);
                }
                for (std::size_t kk = 0; kk < n; ++kk) acc[kk] = (acc[kk] + term[kk]) % p;
            }
            for (std::size_t r = 0; r < n; ++r) w[r][c] = acc[r];
        }
        if (determinant_mod(std::move(w), p) != 0) {
            res.pass = true;
            return res;
        }
    }
    return res;
}

WronskianResult wronskian_check(const IOPolynomial& p, unsigned trials, std::uint64_t seed) {
    std::vector<Poly> family;
    for (const auto& t : p.terms) family.push_back(t.monomials);
    return wronskian_check(family, trials, seed);
}

Model augment_initial_conditions(const Model& model) {
    model.validate();
    Model out = model;
    std::unordered_set<std::string> taken(model.states.begin(), model.states.end());
    taken.insert(model.inputs.begin(), model.inputs.end());
    taken.insert(model.params.begin(), model.params.end());
    for (const auto& o : model.outputs) taken.insert(o.name);
    auto fresh = [&](const std::string& name) {
        if (!taken.insert(name).second) throw ModelError("initial-condition parameter name already in use: " + name);
        out.params.push_back(name);
        return Var(name);
    };
    std::unordered_map<Var, Poly> at_zero;
    std::vector<Var> value_params;
    std::vector<Var> rate_params;
    for (const auto& s : model.states) {
        value_params.push_back(fresh(s + "0"));
        rate_params.push_back(fresh(s + "p0"));
        at_zero.emplace(Var(s), Poly(value_params.back()));
    }
    for (const auto& u : model.inputs) at_zero.emplace(Var(u), Poly(fresh(u + "0")));
    for (std::size_t i = 0; i < model.states.size(); ++i) {
        const RationalExpr g = model.dynamics[i].substitute(at_zero);
        out.constraints.add({Poly(rate_params[i]) * g.denominator() - g.numerator(), RelOp::eq});
        for (const auto& f : g.factors()) {
            const bool uses_initial = std::any_of(value_params.begin(), value_params.end(),
                                                  [&](Var v) { return f.base.contains(v); });
            if (uses_initial) out.constraints.add({f.base, RelOp::ne});
        }
    }
    return out;
}

}  // namespace relident
