#include "relident/identtree/tree.hpp"

#include "models.hpp"

#include <doctest.h>

#include <algorithm>

using namespace relident;
using relident::testing::batch_reactor;
using relident::testing::make_model;

namespace {

IdentTree tree_for(const Model& model, bool use_constraints, IdentifiabilityOracle** keep = nullptr) {
    const auto io = io_polynomials(model);
    const auto summary = exhaustive_summary(io.polys, io.side_conditions);
    static std::vector<std::unique_ptr<IdentifiabilityOracle>> oracles;
    oracles.push_back(std::make_unique<IdentifiabilityOracle>(
        make_context(model.param_vars(), summary, model.constraints, use_constraints), TreeOptions{}));
    if (keep) *keep = oracles.back().get();
    return identifiability_tree(*oracles.back());
}

ParamList parse_list(std::initializer_list<const char*> names) {
    ParamList out;
    for (std::string n : names) {
        if (n.front() == '/') {
            out.push_back({n.substr(1), false});
        } else {
            out.push_back({n, true});
        }
    }
    return out;
}

}  // namespace

TEST_CASE("one parameter exponential growth is identifiable") {
    Model m = make_model({"x"}, {"theta"}, {"theta*x"}, {{"y", "x"}});
    const auto tree = tree_for(m, false);
    CHECK(tree_to_text(tree) == "{[theta]}");
    CHECK(tree.undetermined.empty());
}

TEST_CASE("batch reactor tree with positivity") {
    const Model model = batch_reactor(true);
    const auto tree = tree_for(model, true);
    std::vector<ParamList> expected{parse_list({"mu", "/K_S", "Y", "m"}), parse_list({"mu", "/Y", "K_S", "m"}),
                                    parse_list({"mu", "/m", "K_S", "Y"})};
    canonicalize(expected, tree.parameters);
    CHECK(tree.lists == expected);
    CHECK(tree.undetermined.empty());
    const auto bound = verify_complexity_bound(tree);
    CHECK(bound.holds);
    MESSAGE(tree_to_text(tree) << " tests=" << tree.emptiness_tests);
}

TEST_CASE("batch reactor tree without constraints") {
    const auto tree = tree_for(batch_reactor(false), false);
    CHECK(tree.undetermined.empty());
    std::vector<ParamList> expected;
    std::vector<std::string> rest{"K_S", "Y", "m"};
    do {
        ParamList l{{"mu", true}};
        for (const auto& p : rest) l.push_back({p, false});
        expected.push_back(l);
    } while (std::next_permutation(rest.begin(), rest.end()));
    canonicalize(expected, tree.parameters);
    CHECK(tree.lists == expected);
    CHECK(verify_complexity_bound(tree).holds);
    MESSAGE(tree_to_text(tree) << " tests=" << tree.emptiness_tests);
}

TEST_CASE("batch reactor with both states observed") {
    Model model = batch_reactor(true);
    model.outputs = {{"y1", relident::testing::expr("x")}, {"y2", relident::testing::expr("s")}};
    const auto tree = tree_for(model, true);
    CHECK(tree_to_text(tree) == "{[mu, K_S, Y, m]}");
    CHECK(tree.undetermined.empty());
}
