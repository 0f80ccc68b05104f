#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "properties.hpp"

using namespace relident::testing;

namespace {

constexpr std::uint64_t seed = 20240601;
constexpr double suite_limit_secs = 60.0;

void report(const char* name, const PropertyReport& r) {
    MESSAGE(std::string(name) << ": " << r.instances << " instances, " << r.failures << " failures, " << r.inconclusive
                 << " inconclusive, " << r.seconds << " s");
    CHECK_MESSAGE(r.ok(), r.first_failure);
    CHECK(r.seconds < suite_limit_secs);
}

}  // namespace

TEST_CASE("groebner bases of random systems") { report("groebner", groebner_property(200, seed)); }

TEST_CASE("sturm sequences of planted-root univariates") { report("sturm", sturm_property(200, seed)); }

TEST_CASE("encoding projects onto the original set") { report("encode", encode_projection_property(100, seed)); }

TEST_CASE("emptiness decisions against a grid") {
    const auto r = semialg_grid_property(100, seed);
    report("semialg", r);
    CHECK(r.inconclusive == 0);
}

TEST_CASE("toy model trees match the combinatorial oracle") { report("toy trees", toy_tree_property(20, seed)); }
