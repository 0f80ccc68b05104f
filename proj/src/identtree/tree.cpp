#include "relident/identtree/tree.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace relident {

using Json = nlohmann::ordered_json;

Var IdentContext::tilde_of(Var p) const {
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (params[i] == p) return tilde[i];
    }
    throw std::invalid_argument("not a parameter: " + p.name());
}

IdentContext make_context(const std::vector<Var>& params, const ExhaustiveSummary& summary,
                          const ConstraintSet& constraints, bool use_constraints) {
    IdentContext ctx;
    ctx.params = params;
    for (Var p : params) ctx.tilde.emplace_back(p.name() + "~");
    ctx.summary = summary.representatives;
    if (!use_constraints) return ctx;
    ctx.constraints = constraints.relations;
    for (const auto& r : summary.side_conditions) {
        if (std::find(ctx.side_conditions.begin(), ctx.side_conditions.end(), r) == ctx.side_conditions.end()) {
            ctx.side_conditions.push_back(r);
        }
    }
    return ctx;
}

SemiAlgebraicSystem build_relident_system(const IdentContext& ctx, const std::set<std::string>& known,
                                          const std::string& candidate) {
    if (known.count(candidate)) throw std::invalid_argument("candidate is already known: " + candidate);
    std::unordered_map<Var, Var> rename;
    for (std::size_t i = 0; i < ctx.params.size(); ++i) rename.emplace(ctx.params[i], ctx.tilde[i]);
    auto tilde = [&](const Poly& p) { return p.rename(rename); };

    SemiAlgebraicSystem sys;
    sys.variables = ctx.params;
    sys.variables.insert(sys.variables.end(), ctx.tilde.begin(), ctx.tilde.end());
    const Var v("_v");
    sys.variables.push_back(v);

    for (const auto& r : ctx.constraints) sys.add(r);
    for (const auto& r : ctx.constraints) sys.add({tilde(r.poly), r.op});
    for (const auto& r : ctx.side_conditions) {
        sys.add(r);
        sys.add({tilde(r.poly), r.op});
    }
    for (Var p : ctx.params) {
        if (known.count(p.name())) sys.add_equation(Poly(p) - Poly(ctx.tilde_of(p)));
    }
    for (const auto& c : ctx.summary) {
        const Poly n = c.numerator();
        const Poly d = c.denominator();
        sys.add_equation(n * tilde(d) - tilde(n) * d);
        if (!d.is_constant()) {
            sys.add({d, RelOp::ne});
            sys.add({tilde(d), RelOp::ne});
        }
    }
    const Var cand(candidate);
    sys.add_equation(Poly(v) * (Poly(cand) - Poly(ctx.tilde_of(cand))) - 1);
    return sys;
}

const char* to_string(Identifiability r) {
    switch (r) {
        case Identifiability::Identifiable: return "Identifiable";
        case Identifiability::NotIdentifiable: return "NotIdentifiable";
        case Identifiability::Undetermined: return "Undetermined";
    }
    return "?";
}

std::optional<TestResult> TestCache::find(const Key& key) const {
    std::lock_guard lock(mutex_);
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void TestCache::insert(const Key& key, TestResult result) {
    std::lock_guard lock(mutex_);
    entries_.emplace(key, std::move(result));
}

std::size_t TestCache::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

IdentifiabilityOracle::IdentifiabilityOracle(IdentContext ctx, TreeOptions options)
    : ctx_(std::move(ctx)), options_(options) {}

TestResult IdentifiabilityOracle::run(const std::set<std::string>& known, const std::string& candidate) const {
    TestResult r;
    r.verdict = is_empty(build_relident_system(ctx_, known, candidate), options_.semialg);
    switch (r.verdict.status) {
        case Emptiness::Empty: r.status = Identifiability::Identifiable; break;
        case Emptiness::NonEmpty: r.status = Identifiability::NotIdentifiable; break;
        case Emptiness::Unknown: r.status = Identifiability::Undetermined; break;
    }
    return r;
}

TestResult IdentifiabilityOracle::relative_identifiability(const std::set<std::string>& known,
                                                           const std::string& candidate) {
    const TestCache::Key key{known, candidate};
    if (auto hit = cache_.find(key)) {
        ++hits_;
        if (options_.verify_cache) {
            const auto fresh = run(known, candidate);
            if (fresh.status != hit->status) {
                throw std::logic_error("cached answer differs from a fresh test for " + candidate);
            }
        }
        return *hit;
    }
    ++tests_;
    TestResult r = run(known, candidate);
    cache_.insert(key, r);
    return r;
}

void canonicalize(std::vector<ParamList>& lists, const std::vector<std::string>& declaration_order) {
    std::unordered_map<std::string, std::size_t> rank;
    for (std::size_t i = 0; i < declaration_order.size(); ++i) rank.emplace(declaration_order[i], i);
    for (auto& list : lists) {
        auto it = list.begin();
        while (it != list.end()) {
            if (!it->identifiable) {
                ++it;
                continue;
            }
            auto end = std::find_if(it, list.end(), [](const MarkedParam& p) { return !p.identifiable; });
            std::sort(it, end, [&](const MarkedParam& a, const MarkedParam& b) { return rank.at(a.name) < rank.at(b.name); });
            it = end;
        }
    }
    std::sort(lists.begin(), lists.end());
    lists.erase(std::unique(lists.begin(), lists.end()), lists.end());
}

namespace {

class TreeBuilder {
  public:
    TreeBuilder(IdentifiabilityOracle& oracle, IdentTree& tree) : oracle_(oracle), tree_(tree) {
        for (Var p : oracle.context().params) order_.push_back(p.name());
    }

    // Completions of a prefix with parameter set `known`, as suffixes.
    const std::vector<ParamList>& complete(const std::set<std::string>& known) {
        if (auto it = memo_.find(known); it != memo_.end()) return it->second;
        std::vector<ParamList> suffixes;
        std::vector<std::string> remaining;
        for (const auto& p : order_) {
            if (!known.count(p)) remaining.push_back(p);
        }
        if (remaining.empty()) {
            suffixes.emplace_back();
            return memo_.emplace(known, std::move(suffixes)).first->second;
        }
        std::vector<std::string> identifiable;
        std::vector<std::string> other;
        for (const auto& p : remaining) {
            const auto r = oracle_.relative_identifiability(known, p);
            if (r.status == Identifiability::Identifiable) {
                identifiable.push_back(p);
            } else if (r.status == Identifiability::NotIdentifiable) {
                other.push_back(p);
            } else {
                tree_.undetermined.push_back({std::vector<std::string>(known.begin(), known.end()), p});
            }
        }
        if (!identifiable.empty()) {
            std::set<std::string> next = known;
            ParamList run;
            for (const auto& p : identifiable) {
                next.insert(p);
                run.push_back({p, true});
            }
            for (const auto& tail : complete(next)) {
                ParamList s = run;
                s.insert(s.end(), tail.begin(), tail.end());
                suffixes.push_back(std::move(s));
            }
        } else {
            for (const auto& p : other) {
                std::set<std::string> next = known;
                next.insert(p);
                for (const auto& tail : complete(next)) {
                    ParamList s{{p, false}};
                    s.insert(s.end(), tail.begin(), tail.end());
                    suffixes.push_back(std::move(s));
                }
            }
        }
        return memo_.emplace(known, std::move(suffixes)).first->second;
    }

  private:
    IdentifiabilityOracle& oracle_;
    IdentTree& tree_;
    std::vector<std::string> order_;
    std::map<std::set<std::string>, std::vector<ParamList>> memo_;
};

}  // namespace

IdentTree identifiability_tree(IdentifiabilityOracle& oracle) {
    IdentTree tree;
    for (Var p : oracle.context().params) tree.parameters.push_back(p.name());
    const std::size_t tests_before = oracle.tests();
    const std::size_t hits_before = oracle.cache_hits();
    TreeBuilder builder(oracle, tree);
    tree.lists = builder.complete({});
    canonicalize(tree.lists, tree.parameters);
    auto by_text = [](const Undetermined& a, const Undetermined& b) {
        return std::tie(a.known, a.candidate) < std::tie(b.known, b.candidate);
    };
    std::sort(tree.undetermined.begin(), tree.undetermined.end(), by_text);
    tree.emptiness_tests = oracle.tests() - tests_before;
    tree.cache_hits = oracle.cache_hits() - hits_before;
    return tree;
}

BoundReport verify_complexity_bound(const IdentTree& tree) {
    BoundReport r;
    r.m = tree.parameters.size();
    std::set<std::string> slashed;
    for (const auto& list : tree.lists) {
        for (const auto& p : list) {
            if (!p.identifiable) slashed.insert(p.name);
        }
    }
    r.nu = slashed.size();
    r.tests = tree.emptiness_tests;
    r.bound = ((2 * r.m - r.nu + 2) << r.nu) / 2;
    r.holds = r.tests <= r.bound;
    return r;
}

Json explain_witness(IdentifiabilityOracle& oracle, const std::set<std::string>& known, const std::string& candidate) {
    const auto r = oracle.relative_identifiability(known, candidate);
    if (r.status != Identifiability::NotIdentifiable) throw std::runtime_error("no witness stored for " + candidate);
    const auto& ctx = oracle.context();
    Json out;
    out["known"] = known;
    out["candidate"] = candidate;
    Json theta = Json::object();
    Json other = Json::object();
    if (r.verdict.rational_witness) {
        std::unordered_map<Var, Rational> at(r.verdict.rational_witness->begin(), r.verdict.rational_witness->end());
        for (std::size_t i = 0; i < ctx.params.size(); ++i) {
            theta[ctx.params[i].name()] = at.at(ctx.params[i]).get_str();
            other[ctx.params[i].name()] = at.at(ctx.tilde[i]).get_str();
        }
        Json values = Json::array();
        for (const auto& c : ctx.summary) {
            const Rational d = c.denominator().evaluate(at);
            std::unordered_map<Var, Rational> at_tilde;
            for (std::size_t i = 0; i < ctx.params.size(); ++i) at_tilde.emplace(ctx.params[i], at.at(ctx.tilde[i]));
            const Rational value = c.numerator().evaluate(at) / d;
            const Rational value_tilde = c.numerator().evaluate(at_tilde) / c.denominator().evaluate(at_tilde);
            Json entry;
            entry["entry"] = c.to_string();
            entry["value"] = value.get_str();
            entry["value_tilde"] = value_tilde.get_str();
            values.push_back(entry);
        }
        out["summary_values"] = values;
    } else if (r.verdict.algebraic_witness) {
        auto box = r.verdict.algebraic_witness->box();
        auto approx = [](const Interval& iv) { return Rational((iv.lo + iv.hi) / 2).get_d(); };
        for (std::size_t i = 0; i < ctx.params.size(); ++i) {
            theta[ctx.params[i].name()] = approx(box.at(ctx.params[i]));
            other[ctx.params[i].name()] = approx(box.at(ctx.tilde[i]));
        }
        out["algebraic"] = r.verdict.to_json()["algebraic_witness"];
    } else {
        throw std::runtime_error("verdict for " + candidate + " carries no explicit point");
    }
    out["theta"] = theta;
    out["theta_tilde"] = other;
    return out;
}

Json tree_to_json(const IdentTree& tree, const std::string& watermark) {
    Json out;
    if (!watermark.empty()) out["watermark"] = watermark;
    out["parameters"] = tree.parameters;
    Json lists = Json::array();
    for (const auto& list : tree.lists) {
        Json l = Json::array();
        for (const auto& p : list) l.push_back({{"name", p.name}, {"identifiable", p.identifiable}});
        lists.push_back(l);
    }
    out["lists"] = lists;
    Json und = Json::array();
    for (const auto& u : tree.undetermined) und.push_back({{"known", u.known}, {"candidate", u.candidate}});
    out["undetermined"] = und;
    const auto bound = verify_complexity_bound(tree);
    out["stats"] = {{"emptiness_tests", tree.emptiness_tests}, {"cache_hits", tree.cache_hits}, {"bound", bound.bound}};
    return out;
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string tree_to_dot(const IdentTree& tree, const std::string& watermark) {
    std::ostringstream out;
    out << "digraph identifiability {\n";
    if (!watermark.empty()) out << "  label=\"" << dot_escape(watermark) << "\";\n";
    out << "  root [label=\"\", shape=point];\n";
    // Shared-prefix trie; lists are already sorted, so node numbering is stable.
    std::map<std::vector<MarkedParam>, std::string> ids;
    std::size_t next = 0;
    for (const auto& list : tree.lists) {
        std::vector<MarkedParam> prefix;
        std::string parent = "root";
        for (const auto& p : list) {
            prefix.push_back(p);
            auto [it, fresh] = ids.emplace(prefix, "n" + std::to_string(next));
            if (fresh) {
                ++next;
                const std::string label = (p.identifiable ? "" : "/") + p.name;
                out << "  " << it->second << " [label=\"" << dot_escape(label) << "\", style="
                    << (p.identifiable ? "solid" : "dashed") << "];\n";
                out << "  " << parent << " -> " << it->second << ";\n";
            }
            parent = it->second;
        }
    }
    out << "}\n";
    return out.str();
}

std::string tree_to_text(const IdentTree& tree) {
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < tree.lists.size(); ++i) {
        out << (i ? ", " : "") << "[";
        for (std::size_t j = 0; j < tree.lists[i].size(); ++j) {
            const auto& p = tree.lists[i][j];
            out << (j ? ", " : "") << (p.identifiable ? "" : "/") << p.name;
        }
        out << "]";
    }
    out << "}";
    return out.str();
}

}  // namespace relident
