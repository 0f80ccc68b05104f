#ifndef RELIDENT_TEST_PROPERTIES_HPP
#define RELIDENT_TEST_PROPERTIES_HPP

// Randomized property suites shared by the property tests and the
// acceptance runner. Each returns counts plus the first failing instance.

#include "models.hpp"

#include "relident/algebra/groebner.hpp"
#include "relident/algebra/random.hpp"
#include "relident/algebra/upoly.hpp"
#include "relident/identtree/tree.hpp"
#include "relident/semialg/decide.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <set>
#include <string>

namespace relident::testing {

struct PropertyReport {
    std::size_t instances = 0;
    std::size_t failures = 0;
    std::size_t inconclusive = 0;
    double seconds = 0;
    std::string first_failure;

    bool ok() const { return failures == 0; }
    void fail(const std::string& what) {
        if (failures++ == 0) first_failure = what;
    }
};

inline PropertyReport timed(std::size_t n, const std::function<void(std::size_t, PropertyReport&)>& body) {
    PropertyReport r;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < n; ++i) {
        ++r.instances;
        body(i, r);
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

inline Poly random_poly(Rng& rng, const std::vector<Var>& vars, int terms, int max_deg, int max_coeff) {
    Poly p;
    for (int t = 0; t < terms; ++t) {
        Poly m(rng.uniform(-max_coeff, max_coeff));
        int budget = static_cast<int>(rng.uniform(0, max_deg));
        for (Var v : vars) {
            const int e = static_cast<int>(rng.uniform(0, budget));
            budget -= e;
            if (e) m *= Poly(v, static_cast<std::uint32_t>(e));
        }
        p += m;
    }
    return p;
}

/// Reduced basis properties: generators and S-polynomials reduce to zero,
/// elements are monic and mutually reduced, generator order is irrelevant.
inline PropertyReport groebner_property(std::size_t n, std::uint64_t seed) {
    const std::vector<Var> vars{Var("x"), Var("y"), Var("z")};
    return timed(n, [&](std::size_t i, PropertyReport& r) {
        Rng rng(mix_seed(seed, i));
        std::vector<Poly> gens;
        const int count = static_cast<int>(rng.uniform(2, 3));
        for (int k = 0; k < count; ++k) gens.push_back(random_poly(rng, vars, static_cast<int>(rng.uniform(2, 4)), 3, 5));
        const auto order = rng.uniform(0, 1) ? MonomialOrder::lex(vars) : MonomialOrder::grevlex(vars);
        std::vector<Poly> gb;
        try {
            gb = groebner_basis(gens, order);
        } catch (const ResourceExceeded&) {
            ++r.inconclusive;
            return;
        }
        std::string tag = "instance " + std::to_string(i) + ": ";
        for (const auto& g : gens) {
            if (!normal_form(g, gb, order).is_zero()) return r.fail(tag + "generator " + g.to_string() + " not reduced to 0");
        }
        for (std::size_t a = 0; a < gb.size(); ++a) {
            if (order.leading_term(gb[a]).coeff != 1) return r.fail(tag + "basis element not monic");
            std::vector<Poly> others;
            for (std::size_t b = 0; b < gb.size(); ++b) {
                if (b != a) others.push_back(gb[b]);
            }
            if (normal_form(gb[a], others, order) != gb[a]) return r.fail(tag + "basis not reduced");
            for (std::size_t b = a + 1; b < gb.size(); ++b) {
                if (!normal_form(s_polynomial(gb[a], gb[b], order), gb, order).is_zero()) {
                    return r.fail(tag + "S-polynomial does not reduce to 0");
                }
            }
        }
        std::vector<Poly> shuffled(gens.rbegin(), gens.rend());
        if (groebner_basis(shuffled, order) != gb) return r.fail(tag + "basis depends on generator order");
    });
}

/// Products of linear factors with known rational roots and positive
/// quadratics: Sturm counts and isolating intervals match the planted roots.
inline PropertyReport sturm_property(std::size_t n, std::uint64_t seed) {
    return timed(n, [&](std::size_t i, PropertyReport& r) {
        Rng rng(mix_seed(seed, i));
        std::set<Rational> roots;
        UPoly f(std::vector<Rational>{Rational(rng.uniform(1, 4))});
        const int linear = static_cast<int>(rng.uniform(0, 5));
        for (int k = 0; k < linear; ++k) {
            Rational root(rng.uniform(-20, 20), rng.uniform(1, 6));
            root.canonicalize();
            roots.insert(root);
            const int mult = static_cast<int>(rng.uniform(1, 2));
            for (int e = 0; e < mult; ++e) f = f * UPoly(std::vector<Rational>{-root, Rational(1)});
        }
        const int quadratics = static_cast<int>(rng.uniform(0, 2));
        for (int k = 0; k < quadratics; ++k) {
            const Rational b(rng.uniform(-5, 5));
            const Rational c = b * b / 4 + Rational(rng.uniform(1, 9), rng.uniform(1, 3));
            f = f * UPoly(std::vector<Rational>{c, b, Rational(1)});
        }
        const std::string tag = "instance " + std::to_string(i) + ": ";
        if (sturm_count(f) != static_cast<int>(roots.size())) return r.fail(tag + "Sturm count differs from planted roots");
        const auto isolated = isolate_real_roots(f);
        if (isolated.size() != roots.size()) return r.fail(tag + "isolation found a different number of roots");
        auto it = roots.begin();
        for (std::size_t k = 0; k < isolated.size(); ++k, ++it) {
            if (*it < isolated[k].lo || *it > isolated[k].hi) return r.fail(tag + "root outside its interval");
            if (k && isolated[k - 1].hi > isolated[k].lo) return r.fail(tag + "intervals overlap");
        }
        std::vector<Rational> rational = rational_roots(f);
        if (std::set<Rational>(rational.begin(), rational.end()) != roots) return r.fail(tag + "rational roots differ");
    });
}

inline SemiAlgebraicSystem random_system(Rng& rng, const std::vector<Var>& vars, int relations, int max_deg) {
    SemiAlgebraicSystem sys;
    sys.variables = vars;
    for (int k = 0; k < relations; ++k) {
        const auto op = static_cast<RelOp>(rng.uniform(0, 5));
        sys.add({random_poly(rng, vars, static_cast<int>(rng.uniform(1, 3)), max_deg, 4), op});
    }
    return sys;
}

/// encode(S) projected to the original variables is S: at random rational
/// points, each auxiliary equation is univariate and has a real root exactly
/// when the point satisfies S.
inline PropertyReport encode_projection_property(std::size_t n, std::uint64_t seed) {
    const std::vector<Var> vars{Var("a"), Var("b")};
    return timed(n, [&](std::size_t i, PropertyReport& r) {
        Rng rng(mix_seed(seed, i));
        const auto sys = random_system(rng, vars, static_cast<int>(rng.uniform(1, 4)), 2);
        const auto enc = encode(sys);
        for (int trial = 0; trial < 8; ++trial) {
            std::unordered_map<Var, Rational> at;
            for (Var v : vars) at.emplace(v, Rational(rng.uniform(-6, 6), rng.uniform(1, 2)));
            bool solvable = true;
            for (const auto& e : enc.equations) {
                const Poly rest = e.evaluate_partial(at);
                const auto vs = rest.variables();
                if (vs.empty()) {
                    solvable = solvable && rest.is_zero();
                } else if (vs.size() == 1) {
                    solvable = solvable && sturm_count(UPoly::from_poly(rest, vs.front())) > 0;
                } else {
                    return r.fail("instance " + std::to_string(i) + ": auxiliary variables are coupled");
                }
            }
            if (solvable != sys.satisfied_at(at)) {
                return r.fail("instance " + std::to_string(i) + ": projection differs at a sample point of " +
                              sys.to_string());
            }
        }
    });
}

/// Decisions on random two-variable systems against a grid search over
/// [-10, 10]^2 with step 1/4: a grid point forbids Empty, and every NonEmpty
/// verdict must carry a witness that satisfies the system.
inline PropertyReport semialg_grid_property(std::size_t n, std::uint64_t seed, double budget_secs = 2.0) {
    const std::vector<Var> vars{Var("a"), Var("b")};
    return timed(n, [&](std::size_t i, PropertyReport& r) {
        Rng rng(mix_seed(seed, i));
        const auto sys = random_system(rng, vars, static_cast<int>(rng.uniform(1, 3)), 2);
        bool grid_hit = false;
        for (int ia = -40; ia <= 40 && !grid_hit; ++ia) {
            for (int ib = -40; ib <= 40 && !grid_hit; ++ib) {
                grid_hit = sys.satisfied_at({{vars[0], Rational(ia, 4)}, {vars[1], Rational(ib, 4)}});
            }
        }
        SemialgOptions options;
        options.seed = seed;
        options.budget_secs = budget_secs;
        const auto verdict = is_empty(sys, options);
        const std::string tag = "instance " + std::to_string(i) + " (" + sys.to_string() + "): ";
        if (verdict.status == Emptiness::Unknown) {
            ++r.inconclusive;
            return;
        }
        if (verdict.status == Emptiness::Empty && grid_hit) return r.fail(tag + "Empty but a grid point satisfies it");
        if (verdict.status == Emptiness::NonEmpty && !witness_satisfies(sys, verdict)) return r.fail(tag + "bad witness");
    });
}

/// Toy models built from independent one-state blocks x' = -c(block) x with
/// c a product or a sum of the block's parameters, all positive. A parameter
/// is identifiable relative to S exactly when the rest of its block is in S,
/// so the expected tree follows from a combinatorial oracle.
struct ToyModel {
    Model model;
    std::vector<std::vector<std::string>> blocks;
};

inline ToyModel random_toy_model(Rng& rng) {
    ToyModel toy;
    const int nblocks = static_cast<int>(rng.uniform(1, 2));
    int next = 0;
    for (int b = 0; b < nblocks; ++b) {
        const int size = static_cast<int>(rng.uniform(1, 3 - b));
        const bool product = rng.uniform(0, 1);
        std::vector<std::string> names;
        std::string c;
        for (int k = 0; k < size; ++k) {
            names.push_back("p" + std::to_string(++next));
            if (k) c += product ? "*" : "+";
            c += names.back();
        }
        const std::string state = "x" + std::to_string(b + 1);
        toy.model.states.push_back(state);
        toy.model.params.insert(toy.model.params.end(), names.begin(), names.end());
        toy.model.dynamics.push_back(expr("-(" + c + ")*" + state));
        toy.model.outputs.push_back({"y" + std::to_string(b + 1), expr(state)});
        toy.blocks.push_back(names);
    }
    for (const auto& p : toy.model.params) {
        for (auto& rel : parse_relation(p + " > 0")) toy.model.constraints.add(rel);
    }
    return toy;
}

inline std::vector<ParamList> expected_toy_tree(const ToyModel& toy) {
    auto identifiable = [&](const std::set<std::string>& known, const std::string& p) {
        for (const auto& block : toy.blocks) {
            if (std::find(block.begin(), block.end(), p) == block.end()) continue;
            return std::all_of(block.begin(), block.end(), [&](const std::string& q) { return q == p || known.count(q); });
        }
        return false;
    };
    std::function<std::vector<ParamList>(const std::set<std::string>&)> complete = [&](const std::set<std::string>& known) {
        std::vector<std::string> yes;
        std::vector<std::string> no;
        for (const auto& p : toy.model.params) {
            if (known.count(p)) continue;
            (identifiable(known, p) ? yes : no).push_back(p);
        }
        if (yes.empty() && no.empty()) return std::vector<ParamList>{{}};
        std::vector<ParamList> out;
        if (!yes.empty()) {
            auto next = known;
            ParamList run;
            for (const auto& p : yes) {
                next.insert(p);
                run.push_back({p, true});
            }
            for (const auto& tail : complete(next)) {
                ParamList l = run;
                l.insert(l.end(), tail.begin(), tail.end());
                out.push_back(l);
            }
            return out;
        }
        for (const auto& p : no) {
            auto next = known;
            next.insert(p);
            for (const auto& tail : complete(next)) {
                ParamList l{{p, false}};
                l.insert(l.end(), tail.begin(), tail.end());
                out.push_back(l);
            }
        }
        return out;
    };
    auto lists = complete({});
    canonicalize(lists, toy.model.params);
    return lists;
}

inline PropertyReport toy_tree_property(std::size_t n, std::uint64_t seed) {
    return timed(n, [&](std::size_t i, PropertyReport& r) {
        Rng rng(mix_seed(seed, i));
        const auto toy = random_toy_model(rng);
        const auto io = io_polynomials(toy.model);
        const auto summary = exhaustive_summary(io.polys, io.side_conditions);
        TreeOptions options;
        options.semialg.seed = seed;
        options.semialg.budget_secs = 10;
        options.verify_cache = true;
        IdentifiabilityOracle oracle(make_context(toy.model.param_vars(), summary, toy.model.constraints), options);
        const auto tree = identifiability_tree(oracle);
        const std::string tag = "instance " + std::to_string(i) + ": ";
        if (tree.partial()) return r.fail(tag + "undetermined tests");
        IdentTree expected = tree;
        expected.lists = expected_toy_tree(toy);
        if (tree.lists != expected.lists) {
            return r.fail(tag + "tree " + tree_to_text(tree) + " expected " + tree_to_text(expected));
        }
        if (!verify_complexity_bound(tree).holds) return r.fail(tag + "test count above the bound");
        // Every mark must agree with a test against everything before it;
        // repeated queries hit the cache and are recomputed fresh.
        for (const auto& list : tree.lists) {
            std::set<std::string> known;
            for (const auto& p : list) {
                try {
                    const auto status = oracle.relative_identifiability(known, p.name).status;
                    const auto want = p.identifiable ? Identifiability::Identifiable : Identifiability::NotIdentifiable;
                    if (status != want) return r.fail(tag + "mark of " + p.name + " disagrees with a direct test");
                } catch (const std::logic_error& e) {
                    return r.fail(tag + e.what());
                }
                known.insert(p.name);
            }
        }
    });
}

}  // namespace relident::testing

#endif
