#include "relident/semialg/decide.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace relident {

const char* to_string(Emptiness e) {
    switch (e) {
        case Emptiness::Empty: return "Empty";
        case Emptiness::NonEmpty: return "NonEmpty";
        case Emptiness::Unknown: return "Unknown";
    }
    return "?";
}

namespace {

using Json = nlohmann::ordered_json;

std::string rational_text(const Rational& r) { return r.get_str(); }

Json point_json(const AlgebraicPoint& p) {
    Json out;
    out["eliminant"] = p.eliminant.to_string("t");
    out["root_interval"] = {rational_text(p.root.lo), rational_text(p.root.hi)};
    Json coords = Json::object();
    for (const auto& [v, g] : p.coordinates) coords[v.name()] = g.to_string("t");
    out["coordinates"] = coords;
    return out;
}

// Whether a relation in the single variable x holds somewhere on the real
// line. Isolating intervals have endpoints off the roots, so one sample per
// gap between roots plus one on each side covers every sign region.
bool univariate_satisfiable(const Relation& r, Var x) {
    const UPoly f = UPoly::from_poly(r.poly, x);
    const auto roots = isolate_real_roots(f);
    if (r.op == RelOp::eq) return !roots.empty();
    if (r.op == RelOp::ne) return true;
    if ((r.op == RelOp::le || r.op == RelOp::ge) && !roots.empty()) return true;
    std::vector<Rational> samples;
    if (roots.empty()) {
        samples.emplace_back(0);
    } else {
        samples.push_back(roots.front().lo - 1);
        samples.push_back(roots.back().hi + 1);
        for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
            const Rational& a = roots[i].hi;
            const Rational& b = roots[i + 1].lo;
            samples.push_back(a < b ? Rational((a + b) / 2) : a);
        }
    }
    const int want = r.op == RelOp::gt || r.op == RelOp::ge ? 1 : -1;
    return std::any_of(samples.begin(), samples.end(), [&](const Rational& t) { return f.sign_at(t) == want; });
}

Json poly_list(const std::vector<Poly>& ps) {
    Json out = Json::array();
    for (const auto& p : ps) out.push_back(p.to_string());
    return out;
}

// Rationals p/q with |p| <= h and 1 <= q <= h, by height, then magnitude,
// positive first.
std::vector<Rational> candidate_values(unsigned h) {
    std::vector<std::pair<std::pair<unsigned, Rational>, Rational>> keyed;
    keyed.push_back({{0, Rational(0)}, Rational(0)});
    for (unsigned q = 1; q <= h; ++q) {
        for (unsigned p = 1; p <= h; ++p) {
            if (std::gcd(p, q) != 1) continue;
            const Rational v(p, q);
            const unsigned height = std::max(p, q);
            keyed.push_back({{2 * height, v}, v});
            keyed.push_back({{2 * height + 1, v}, -v});
        }
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        if (a.first.first / 2 != b.first.first / 2) return a.first.first / 2 < b.first.first / 2;
        if (a.first.second != b.first.second) return a.first.second < b.first.second;
        return a.first.first < b.first.first;
    });
    std::vector<Rational> out;
    for (auto& k : keyed) out.push_back(k.second);
    return out;
}

class WitnessSearch {
  public:
    WitnessSearch(const SemiAlgebraicSystem& sys, const Deadline& deadline) : sys_(sys), deadline_(deadline) {
        for (const auto& r : sys.relations()) {
            if (r.op == RelOp::eq) continue;
            checks_.push_back({r, r.poly.variables()});
        }
    }

    std::optional<RationalPoint> run(unsigned height) {
        for (unsigned h = 1; h <= height; ++h) {
            values_ = candidate_values(h);
            point_.clear();
            if (dfs(sys_.equations)) {
                RationalPoint out;
                for (Var v : sys_.variables) out.emplace_back(v, point_.at(v));
                return out;
            }
        }
        return std::nullopt;
    }

  private:
    struct Check {
        Relation rel;
        std::vector<Var> vars;
    };

    bool assigned(Var v) const { return point_.count(v) != 0; }

    // Relations mentioning v whose variables are now all assigned.
    bool consistent_after(Var v) const {
        for (const auto& c : checks_) {
            if (std::find(c.vars.begin(), c.vars.end(), v) == c.vars.end()) continue;
            if (!std::all_of(c.vars.begin(), c.vars.end(), [&](Var w) { return assigned(w); })) continue;
            if (!c.rel.holds_at(point_)) return false;
        }
        return true;
    }

    bool try_value(const std::vector<Poly>& eqs, Var v, const Rational& value) {
        point_[v] = value;
        bool found = false;
        if (consistent_after(v)) {
            std::vector<Poly> next;
            next.reserve(eqs.size());
            const std::unordered_map<Var, Rational> one{{v, value}};
            for (const auto& e : eqs) next.push_back(e.contains(v) ? e.evaluate_partial(one) : e);
            found = dfs(next);
        }
        if (!found) point_.erase(v);
        return found;
    }

    bool dfs(const std::vector<Poly>& input) {
        deadline_.check("witness search");
        std::vector<Poly> eqs;
        for (const auto& e : input) {
            if (e.is_zero()) continue;
            if (e.is_constant()) return false;
            eqs.push_back(e);
        }
        const auto free_var = std::find_if(sys_.variables.begin(), sys_.variables.end(),
                                           [&](Var v) { return !assigned(v); });
        if (free_var == sys_.variables.end()) return eqs.empty() && sys_.satisfied_at(point_);

        // An equation in a single variable fixes it.
        const Poly* forced = nullptr;
        for (const auto& e : eqs) {
            if (e.variables().size() == 1 && (!forced || e.total_degree() < forced->total_degree())) forced = &e;
        }
        if (forced) {
            const Var v = forced->variables().front();
            for (const auto& r : rational_roots(UPoly::from_poly(*forced, v))) {
                if (try_value(eqs, v, r)) return true;
            }
            return false;
        }
        // Prefer variables that no equation determines linearly.
        Var pick = *free_var;
        for (Var v : sys_.variables) {
            if (assigned(v)) continue;
            const bool linear = std::any_of(eqs.begin(), eqs.end(), [&](const Poly& e) { return e.degree(v) == 1; });
            if (!linear) {
                pick = v;
                break;
            }
        }
        for (const auto& value : values_) {
            if (try_value(eqs, pick, value)) return true;
        }
        return false;
    }

    const SemiAlgebraicSystem& sys_;
    const Deadline& deadline_;
    std::vector<Check> checks_;
    std::vector<Rational> values_;
    std::unordered_map<Var, Rational> point_;
};

GroebnerLimits limits_for(const SemialgOptions& o, const Deadline& d) {
    GroebnerLimits l;
    l.max_degree = o.max_degree;
    l.max_basis = o.max_basis;
    l.max_seconds = 1e12;
    l.deadline = d;
    return l;
}

// Determinant of a small polynomial matrix, fraction-free elimination.
Poly poly_determinant(std::vector<std::vector<Poly>> m) {
    const std::size_t n = m.size();
    Poly sign(1);
    Poly prev(1);
    for (std::size_t k = 0; k < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t r = k + 1;
            while (r < n && m[r][k].is_zero()) ++r;
            if (r == n) return Poly();
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                const Poly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = *divide_exact(num, prev);
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > (1ULL << 40)) return r;
    }
    return r;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        f(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// F together with the (c+1)-minors of [Jac F; z - p]; nullopt past the cap.
std::optional<std::vector<Poly>> critical_system(const std::vector<Poly>& f, const std::vector<Var>& vars, std::size_t c,
                                                 const std::vector<Rational>& p, std::size_t cap,
                                                 const Deadline& deadline) {
    const std::size_t n = vars.size();
    std::vector<std::vector<Poly>> rows;
    for (const auto& g : f) {
        std::vector<Poly> row;
        for (Var v : vars) row.push_back(g.derivative(v));
        rows.push_back(std::move(row));
    }
    std::vector<Poly> dist;
    for (std::size_t i = 0; i < n; ++i) dist.push_back(Poly(vars[i]) - p[i]);
    rows.push_back(std::move(dist));
    if (c + 1 > n) return f;  // rank is at most n <= c always
    if (binomial(rows.size(), c + 1) * binomial(n, c + 1) > cap) return std::nullopt;
    std::vector<Poly> out = f;
    std::set<std::string> seen;
    for_each_subset(rows.size(), c + 1, [&](const std::vector<std::size_t>& rs) {
        for_each_subset(n, c + 1, [&](const std::vector<std::size_t>& cs) {
            deadline.check("critical-point minors");
            std::vector<std::vector<Poly>> m;
            for (auto r : rs) {
                std::vector<Poly> row;
                for (auto col : cs) row.push_back(rows[r][col]);
                m.push_back(std::move(row));
            }
            Poly d = poly_determinant(std::move(m));
            if (d.is_zero()) return;
            d = d.normalized();
            if (seen.insert(d.to_string()).second) out.push_back(std::move(d));
        });
    });
    return out;
}

EmptinessVerdict verdict(Emptiness s, std::string stage, Json cert) {
    EmptinessVerdict v;
    v.status = s;
    v.stage = std::move(stage);
    v.certificate = std::move(cert);
    return v;
}

}  // namespace

Json EmptinessVerdict::to_json() const {
    Json out;
    out["status"] = relident::to_string(status);
    out["stage"] = stage;
    out["certificate"] = certificate;
    if (rational_witness) {
        Json w = Json::object();
        for (const auto& [v, x] : *rational_witness) w[v.name()] = rational_text(x);
        out["witness"] = w;
    }
    if (algebraic_witness) out["algebraic_witness"] = point_json(*algebraic_witness);
    return out;
}

std::uint64_t system_fingerprint(const SemiAlgebraicSystem& sys) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](const std::string& s) {
        for (unsigned char ch : s) {
            h ^= ch;
            h *= 1099511628211ULL;
        }
        h ^= 0xff;
        h *= 1099511628211ULL;
    };
    for (Var v : sys.variables) mix(v.name());
    mix(sys.to_string());
    return h;
}

std::optional<RationalPoint> rational_witness_search(const SemiAlgebraicSystem& sys, unsigned height,
                                                     const Deadline& deadline) {
    WitnessSearch search(sys, deadline);
    try {
        return search.run(height);
    } catch (const ResourceExceeded&) {
        return std::nullopt;
    }
}

EmptinessVerdict critical_point_emptiness(const EncodedSystem& enc, const std::vector<Poly>& basis, Rng& rng,
                                          const SemialgOptions& options, const Deadline& deadline) {
    const auto vars = enc.all_variables();
    const auto order = MonomialOrder::grevlex(vars);
    const auto limits = limits_for(options, deadline);
    const int dim = ideal_dimension(basis, order);
    const std::size_t c = vars.size() - static_cast<std::size_t>(dim);
    std::vector<Poly> f;
    for (const auto& e : enc.equations) {
        if (!e.is_zero() && std::find(f.begin(), f.end(), e) == f.end()) f.push_back(e);
    }
    const bool complete = f.size() == c;
    Json attempts = Json::array();

    auto random_point = [&] {
        std::vector<Rational> p;
        for (std::size_t i = 0; i < vars.size(); ++i) p.emplace_back(rng.uniform(-9, 9));
        return p;
    };
    auto point_text = [&](const std::vector<Rational>& p) {
        Json j = Json::object();
        for (std::size_t i = 0; i < vars.size(); ++i) j[vars[i].name()] = rational_text(p[i]);
        return j;
    };

    for (unsigned attempt = 0; attempt < options.critical_retries; ++attempt) {
        const auto p = random_point();
        Json note;
        note["base_point"] = point_text(p);
        const auto crit = critical_system(f, vars, c, p, options.max_minors, deadline);
        if (!crit) {
            note["outcome"] = "too many minors";
            attempts.push_back(note);
            break;
        }
        const auto g = groebner_basis(*crit, order, limits);
        if (is_unit_ideal(g)) {
            if (complete) {
                Json cert{{"kind", "no critical points"}, {"codimension", c}, {"base_point", point_text(p)}};
                return verdict(Emptiness::Empty, "critical points", cert);
            }
            note["outcome"] = "no critical points, not a complete intersection";
        } else if (ideal_dimension(g, order) != 0) {
            note["outcome"] = "critical locus not finite";
            attempts.push_back(note);
            continue;
        } else {
            const auto rs = real_solutions_zero_dim(g, vars, rng, limits);
            if (rs.count > 0) {
                Json cert{{"kind", "real critical point"},
                          {"method", rs.method},
                          {"real_critical_points", rs.count},
                          {"base_point", point_text(p)}};
                EmptinessVerdict v = verdict(Emptiness::NonEmpty, "critical points", cert);
                for (const auto& pt : rs.points) {
                    if (verify_point(f, pt)) {
                        v.algebraic_witness = pt;
                        break;
                    }
                }
                return v;
            }
            if (complete) {
                Json cert{{"kind", "zero real critical points"}, {"codimension", c}, {"base_point", point_text(p)}};
                if (rs.eliminant) cert["eliminant"] = rs.eliminant->to_string("t");
                return verdict(Emptiness::Empty, "critical points", cert);
            }
            note["outcome"] = "no real critical points, not a complete intersection";
        }
        // The variety lies inside the complete intersection cut out by c
        // random combinations of the equations; emptiness there suffices.
        std::vector<Poly> combos;
        for (std::size_t j = 0; j < c; ++j) {
            Poly s;
            for (const auto& e : f) s += e * Rational(rng.uniform(-9, 9));
            combos.push_back(s);
        }
        const auto gc = groebner_basis(combos, order, limits);
        if (ideal_dimension(gc, order) != dim) {
            note["relaxation"] = "combinations not a complete intersection";
            attempts.push_back(note);
            continue;
        }
        const auto crit2 = critical_system(combos, vars, c, p, options.max_minors, deadline);
        if (!crit2) {
            attempts.push_back(note);
            break;
        }
        const auto g2 = groebner_basis(*crit2, order, limits);
        const bool unit2 = is_unit_ideal(g2);
        if (!unit2 && ideal_dimension(g2, order) != 0) {
            note["relaxation"] = "critical locus not finite";
            attempts.push_back(note);
            continue;
        }
        if (unit2 || real_solutions_zero_dim(g2, vars, rng, limits).count == 0) {
            Json cert{{"kind", "zero real critical points"},
                      {"codimension", c},
                      {"complete_intersection", poly_list(combos)},
                      {"base_point", point_text(p)}};
            return verdict(Emptiness::Empty, "critical points", cert);
        }
        note["relaxation"] = "real critical points on the relaxation";
        attempts.push_back(note);
    }
    return verdict(Emptiness::Unknown, "critical points", Json{{"attempts", attempts}});
}

EmptinessVerdict is_empty(const SemiAlgebraicSystem& input, const SemialgOptions& options) {
    const Deadline overall = Deadline::after_seconds(options.budget_secs);
    Rng rng(mix_seed(options.seed, system_fingerprint(input)));
    const auto& shares = options.stage_shares;
    auto stage_deadline = [&](std::size_t k) {
        double rest = 0;
        for (std::size_t i = k; i < shares.size(); ++i) rest += shares[i];
        return rest > 0 ? overall.fraction(shares[k] / rest) : overall;
    };
    Json report = Json::array();
    auto note = [&](const std::string& stage, const std::string& what) {
        report.push_back(Json{{"stage", stage}, {"outcome", what}});
    };

    // Constant relations decide themselves.
    SemiAlgebraicSystem sys;
    sys.variables = input.variables;
    for (const auto& r : input.relations()) {
        if (!r.poly.is_constant()) {
            sys.add(r);
        } else if (!r.holds_at({})) {
            return verdict(Emptiness::Empty, "constant", Json{{"kind", "false constant relation"}, {"relation", r.to_string()}});
        }
    }
    for (const auto& r : sys.relations()) {
        const auto xs = r.poly.variables();
        if (xs.size() == 1 && !univariate_satisfiable(r, xs.front())) {
            return verdict(Emptiness::Empty, "univariate",
                           Json{{"kind", "unsatisfiable univariate relation"}, {"relation", r.to_string()}});
        }
    }
    if (sys.relations().empty()) {
        EmptinessVerdict v = verdict(Emptiness::NonEmpty, "trivial", Json{{"kind", "no conditions"}});
        RationalPoint origin;
        for (Var x : sys.variables) origin.emplace_back(x, Rational(0));
        v.rational_witness = origin;
        return v;
    }

    // Stage 1: no complex solutions at all.
    try {
        const auto relaxed = complex_relaxation(sys);
        const auto basis = groebner_basis(relaxed.equations, MonomialOrder::grevlex(relaxed.all_variables()),
                                          limits_for(options, stage_deadline(0)));
        if (is_unit_ideal(basis)) {
            return verdict(Emptiness::Empty, "unit ideal",
                           Json{{"kind", "unit ideal"}, {"generators", poly_list(relaxed.equations)}});
        }
        note("unit ideal", "proper ideal");
    } catch (const ResourceExceeded& e) {
        note("unit ideal", e.what());
    }

    // Stage 2: small rational witness.
    if (auto w = rational_witness_search(sys, options.witness_height, stage_deadline(1))) {
        EmptinessVerdict v = verdict(Emptiness::NonEmpty, "rational witness",
                                     Json{{"kind", "rational point"}, {"height_bound", options.witness_height}});
        v.rational_witness = std::move(w);
        return v;
    }
    note("rational witness", "none found");

    // Stage 3: exact real counting for finitely many solutions.
    const auto enc = encode(sys);
    const auto vars = enc.all_variables();
    const auto order = MonomialOrder::grevlex(vars);
    std::vector<Poly> basis;
    int dim = -2;
    try {
        const Deadline d = stage_deadline(2);
        basis = groebner_basis(enc.equations, order, limits_for(options, d));
        if (is_unit_ideal(basis)) {
            return verdict(Emptiness::Empty, "unit ideal",
                           Json{{"kind", "unit ideal"}, {"generators", poly_list(enc.equations)}});
        }
        dim = ideal_dimension(basis, order);
        if (dim == 0) {
            const auto rs = real_solutions_zero_dim(basis, vars, rng, limits_for(options, d));
            Json cert{{"kind", rs.count == 0 ? "zero real count" : "real solutions"},
                      {"method", rs.method},
                      {"real_solutions", rs.count}};
            if (rs.eliminant) cert["eliminant"] = rs.eliminant->to_string("t");
            if (rs.count == 0) return verdict(Emptiness::Empty, "real count", cert);
            EmptinessVerdict v = verdict(Emptiness::NonEmpty, "real count", cert);
            if (!rs.points.empty()) v.algebraic_witness = rs.points.front();
            return v;
        }
        note("real count", "positive dimension " + std::to_string(dim));
    } catch (const ResourceExceeded& e) {
        note("real count", e.what());
    }

    // Stage 4: critical points of a distance function.
    if (dim > 0) {
        try {
            EmptinessVerdict v = critical_point_emptiness(enc, basis, rng, options, stage_deadline(3));
            if (v.status != Emptiness::Unknown) return v;
            note("critical points", v.certificate.dump());
        } catch (const ResourceExceeded& e) {
            note("critical points", e.what());
        }
    }
    return verdict(Emptiness::Unknown, report.empty() ? "none" : report.back()["stage"].get<std::string>(),
                   Json{{"kind", "undecided"}, {"report", report}});
}

bool witness_satisfies(const SemiAlgebraicSystem& sys, const EmptinessVerdict& verdict) {
    if (verdict.status != Emptiness::NonEmpty) return false;
    if (verdict.rational_witness) {
        std::unordered_map<Var, Rational> at;
        for (const auto& [v, x] : *verdict.rational_witness) at.emplace(v, x);
        for (Var v : sys.variables) {
            if (!at.count(v)) return false;
        }
        return sys.satisfied_at(at);
    }
    if (verdict.algebraic_witness) {
        const auto& pt = *verdict.algebraic_witness;
        if (!verify_point(encode(sys).equations, pt)) return false;
        for (const auto& r : sys.relations()) {
            const int s = pt.sign_of(r.poly);
            const bool ok = r.op == RelOp::eq ? s == 0
                            : r.op == RelOp::ne ? s != 0
                            : r.op == RelOp::lt ? s < 0
                            : r.op == RelOp::le ? s <= 0
                            : r.op == RelOp::gt ? s > 0
                                                : s >= 0;
            if (!ok) return false;
        }
        return true;
    }
    return false;
}

}  // namespace relident
