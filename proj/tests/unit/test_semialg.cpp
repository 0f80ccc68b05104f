#include "printing.hpp"

#include "relident/algebra/parse.hpp"
#include "relident/semialg/decide.hpp"

#include <doctest.h>

using namespace relident;

namespace {

SemiAlgebraicSystem system_of(std::initializer_list<const char*> relations) {
    SemiAlgebraicSystem sys;
    for (const char* r : relations) {
        for (const auto& rel : parse_relation(r)) sys.add(rel);
    }
    return sys;
}

EmptinessVerdict decide(std::initializer_list<const char*> relations) {
    SemialgOptions o;
    o.budget_secs = 20;
    return is_empty(system_of(relations), o);
}

}  // namespace

TEST_CASE("encoding") {
    const auto enc = encode(system_of({"t - s != 0"}));
    REQUIRE(enc.equations.size() == 1);
    REQUIRE(enc.auxiliary.size() == 1);
    CHECK(enc.equations[0] == (parse_poly("t - s") * Poly(enc.auxiliary[0]) - 1));

    const auto pos = encode(system_of({"mu > 0"}));
    const Poly v(pos.auxiliary.at(0));
    CHECK(pos.equations.at(0) == parse_poly("mu") * v * v - 1);

    const auto mixed = encode(system_of({"x < 0", "y >= 1", "z <= 0", "x*y = 2"}));
    CHECK(mixed.equations.size() == 4);
    CHECK(mixed.auxiliary.size() == 3);
    CHECK(mixed.provenance.size() == 3);
    CHECK(encode(SemiAlgebraicSystem{}).equations.empty());
}

TEST_CASE("emptiness examples") {
    CHECK(decide({"x^2 + 1 = 0"}).status == Emptiness::Empty);
    CHECK(decide({"x = 0", "x = 1"}).status == Emptiness::Empty);
    CHECK(decide({"x^2 + y^2 + 1 = 0"}).status == Emptiness::Empty);
    CHECK(decide({"x*y - 1 = 0", "x + y = 0"}).status == Emptiness::Empty);
    CHECK(decide({"x > 0", "x < 0"}).status == Emptiness::Empty);
    CHECK(decide({"x^2 + y^2 < 0"}).status == Emptiness::Empty);
    CHECK(decide({"x^2 - 2*x + 2 <= 0"}).status == Emptiness::Empty);

    const SemiAlgebraicSystem circle = system_of({"x^2 + y^2 - 1 = 0"});
    const auto c = is_empty(circle);
    CHECK(c.status == Emptiness::NonEmpty);
    CHECK(witness_satisfies(circle, c));

    const SemiAlgebraicSystem sqrt2 = system_of({"x^2 - 2 = 0", "x > 0"});
    const auto s = is_empty(sqrt2);
    CHECK(s.status == Emptiness::NonEmpty);
    CHECK(s.algebraic_witness.has_value());
    CHECK(witness_satisfies(sqrt2, s));

    const SemiAlgebraicSystem curve = system_of({"x^2 + y^2 - 3 = 0", "x*y - 1 > 0"});
    const auto cv = is_empty(curve);
    CHECK(cv.status == Emptiness::NonEmpty);
    CHECK(witness_satisfies(curve, cv));

    const auto one_var = is_empty(system_of({"-3*a^2 - 2 > 0", "2*a^2 > 0", "-b + 1 != 0"}));
    CHECK(one_var.status == Emptiness::Empty);
    CHECK(one_var.stage == "univariate");
    CHECK(decide({"(x-1)^2*(x-2) > 0", "y > 0"}).status == Emptiness::NonEmpty);

    const auto trivial = is_empty(SemiAlgebraicSystem{});
    CHECK(trivial.status == Emptiness::NonEmpty);
}

TEST_CASE("rational witness search") {
    auto w = rational_witness_search(system_of({"x - 1 = 0"}), 8, Deadline::after_seconds(5));
    REQUIRE(w);
    CHECK(w->at(0).second == 1);
    CHECK_FALSE(rational_witness_search(system_of({"x^2 - 2 = 0"}), 8, Deadline::after_seconds(5)));

    // Two parameter vectors of the batch reactor with the same summary.
    const auto sys = system_of({"mu*K_S*Y - mt*Kt*Yt = 0", "-3*Y*m + 2*mu + 3*Yt*mt_m - 2*mt = 0",
                                "3*Y^2*m^2 - 4*Y*m*mu + mu^2 - 3*Yt^2*mt_m^2 + 4*Yt*mt_m*mt - mt^2 = 0",
                                "Y^3*m^3 - 2*Y^2*m^2*mu + Y*m*mu^2 - Yt^3*mt_m^3 + 2*Yt^2*mt_m^2*mt - Yt*mt_m*mt^2 = 0",
                                "mu - mt = 0", "v*(K_S - Kt) - 1 = 0", "mu > 0", "K_S > 0", "Y > 0", "m > 0", "mt > 0",
                                "Kt > 0", "Yt > 0", "mt_m > 0"});
    const auto found = rational_witness_search(sys, 2, Deadline::after_seconds(10));
    REQUIRE(found);
    std::unordered_map<Var, Rational> at(found->begin(), found->end());
    CHECK(sys.satisfied_at(at));
}

TEST_CASE("real counting") {
    const auto order = MonomialOrder::grevlex({Var("x"), Var("y")});
    CHECK(real_count_zero_dim(groebner_basis({parse_poly("x^2 - 2"), parse_poly("y - x")}, order), order) == 2);
    CHECK(real_count_zero_dim(groebner_basis({parse_poly("x^2 + 1"), parse_poly("y")}, order), order) == 0);
    CHECK(real_count_zero_dim(groebner_basis({parse_poly("x"), parse_poly("y")}, order), order) == 1);
    CHECK(real_count_zero_dim(groebner_basis({parse_poly("x^2"), parse_poly("y^2")}, order), order) == 1);

    Rng rng(3);
    const auto rs = real_solutions_zero_dim({parse_poly("x^2 - 2"), parse_poly("y - x")}, {Var("x"), Var("y")}, rng);
    CHECK(rs.count == 2);
    CHECK(rs.method == "shape position");
    for (const auto& p : rs.points) {
        CHECK(verify_point({parse_poly("x^2 - 2"), parse_poly("y - x")}, p));
        CHECK(p.sign_of(parse_poly("x*y - 2")) == 0);
    }
    CHECK(rs.points.at(0).sign_of(parse_poly("x")) == -1);
    CHECK(rs.points.at(1).sign_of(parse_poly("x - 1")) == 1);

    const auto fat = real_solutions_zero_dim({parse_poly("x^2"), parse_poly("x*y"), parse_poly("y^2")},
                                             {Var("x"), Var("y")}, rng);
    CHECK(fat.count == 1);
}

TEST_CASE("verdicts are deterministic") {
    const auto sys = system_of({"x^2 + y^2 - 1 = 0", "x - y > 1/3"});
    const auto a = is_empty(sys);
    const auto b = is_empty(sys);
    CHECK(a.to_json().dump() == b.to_json().dump());
}
