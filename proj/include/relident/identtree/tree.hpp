#ifndef RELIDENT_IDENTTREE_TREE_HPP
#define RELIDENT_IDENTTREE_TREE_HPP

#include "relident/diffalg/io.hpp"
#include "relident/semialg/decide.hpp"

#include <json.hpp>

#include <map>
#include <mutex>
#include <set>
#include <string>
#include <vector>

namespace relident {

/// Everything a relative identifiability test needs: the summary, the
/// parameter constraints and a disjoint tilde copy of the parameters.
struct IdentContext {
    std::vector<Var> params;
    std::vector<Var> tilde;
    /// Representatives of the exhaustive summary, one equality each.
    std::vector<RationalExpr> summary;
    /// Constraints on the parameters (empty with --no-constraints).
    std::vector<Relation> constraints;
    /// Nonvanishing model denominators. Dropped together with the
    /// constraints; denominators of summary entries are always kept.
    std::vector<Relation> side_conditions;

    Var tilde_of(Var p) const;
};

IdentContext make_context(const std::vector<Var>& params, const ExhaustiveSummary& summary,
                          const ConstraintSet& constraints, bool use_constraints = true);

/// Variables: params, tilde params, then v. Both constraint copies, the side
/// conditions on both copies, theta = theta~ for known parameters, the
/// cross-multiplied summary equalities and v*(candidate - candidate~) = 1.
SemiAlgebraicSystem build_relident_system(const IdentContext& ctx, const std::set<std::string>& known,
                                          const std::string& candidate);

enum class Identifiability { Identifiable, NotIdentifiable, Undetermined };
const char* to_string(Identifiability r);

struct TestResult {
    Identifiability status = Identifiability::Undetermined;
    EmptinessVerdict verdict;
};

/// Results keyed by (set of known parameters, candidate). Safe for
/// concurrent use.
class TestCache {
  public:
    using Key = std::pair<std::set<std::string>, std::string>;

    std::optional<TestResult> find(const Key& key) const;
    /// Keeps the first stored result when two writers race.
    void insert(const Key& key, TestResult result);
    std::size_t size() const;

  private:
    mutable std::mutex mutex_;
    std::map<Key, TestResult> entries_;
};

struct TreeOptions {
    SemialgOptions semialg{};
    /// Recompute every cached answer and throw on disagreement.
    bool verify_cache = false;
};

class IdentifiabilityOracle {
  public:
    IdentifiabilityOracle(IdentContext ctx, TreeOptions options);

    /// Cached relative identifiability test; counts fresh emptiness tests.
    TestResult relative_identifiability(const std::set<std::string>& known, const std::string& candidate);

    const IdentContext& context() const { return ctx_; }
    std::size_t tests() const { return tests_; }
    std::size_t cache_hits() const { return hits_; }

  private:
    TestResult run(const std::set<std::string>& known, const std::string& candidate) const;

    IdentContext ctx_;
    TreeOptions options_;
    TestCache cache_;
    std::size_t tests_ = 0;
    std::size_t hits_ = 0;
};

struct MarkedParam {
    std::string name;
    bool identifiable = true;
    friend bool operator==(const MarkedParam&, const MarkedParam&) = default;
    friend auto operator<=>(const MarkedParam&, const MarkedParam&) = default;
};

using ParamList = std::vector<MarkedParam>;

struct Undetermined {
    std::vector<std::string> known;
    std::string candidate;
};

struct IdentTree {
    std::vector<std::string> parameters;
    std::vector<ParamList> lists;
    std::vector<Undetermined> undetermined;
    std::size_t emptiness_tests = 0;
    std::size_t cache_hits = 0;

    bool partial() const { return !undetermined.empty(); }
};

/// Sorts each maximal run of identifiable parameters by declaration order
/// and the lists lexicographically by (name, mark).
void canonicalize(std::vector<ParamList>& lists, const std::vector<std::string>& declaration_order);

/// Recursive construction: append every parameter identifiable relative to
/// the prefix, otherwise branch on each non-identifiable one. Completions
/// are memoized per prefix set.
IdentTree identifiability_tree(IdentifiabilityOracle& oracle);

struct BoundReport {
    std::size_t m = 0;
    std::size_t nu = 0;
    std::size_t tests = 0;
    /// (2m - nu + 2) * 2^(nu-1); an integer since 2m - nu + 2 is even when nu = 0.
    std::size_t bound = 0;
    bool holds = false;
};

/// nu counts parameters slashed in at least one list.
BoundReport verify_complexity_bound(const IdentTree& tree);

/// Two parameter vectors with equal summaries, from a stored NonEmpty
/// verdict. Throws std::runtime_error when no witness is stored.
nlohmann::ordered_json explain_witness(IdentifiabilityOracle& oracle, const std::set<std::string>& known,
                                       const std::string& candidate);

nlohmann::ordered_json tree_to_json(const IdentTree& tree, const std::string& watermark = {});
std::string tree_to_dot(const IdentTree& tree, const std::string& watermark = {});
std::string tree_to_text(const IdentTree& tree);

}  // namespace relident

#endif
