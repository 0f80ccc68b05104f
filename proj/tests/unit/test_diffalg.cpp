#include "models.hpp"
#include "printing.hpp"

#include "relident/algebra/parse.hpp"
#include "relident/diffalg/io.hpp"

#include <doctest.h>

using namespace relident;
using relident::testing::batch_reactor;
using relident::testing::expr;
using relident::testing::make_model;

namespace {

// True when a = c*b for a nonzero rational c.
bool proportional(const Poly& a, const Poly& b) { return a.normalized() == b.normalized(); }

}  // namespace

TEST_CASE("lie derivative along the batch reactor") {
    const Model m = batch_reactor();
    CHECK(equivalent(lie_derivative(m, expr("x")), expr("mu*s*x/(K_S+s) - m*Y*x")));
    CHECK(lie_derivative(m, expr("mu")).is_zero());
    const Model lin = make_model({"x"}, {}, {"x"}, {{"y", "x"}});
    CHECK(equivalent(lie_derivative(lin, expr("x^2")), expr("2*x^2")));
}

TEST_CASE("lie derivative promotes input jets") {
    Model m = make_model({"x"}, {"a"}, {"a*x + u"}, {{"y", "x"}});
    m.inputs = {"u"};
    CHECK(equivalent(lie_derivative(m, expr("x + u")), expr("a*x + u + u[1]")));
}

TEST_CASE("batch reactor input-output polynomial") {
    const auto res = io_polynomials(batch_reactor());
    REQUIRE(res.polys.size() == 1);
    const Poly expected = parse_poly(
        "(Y^3*m^3 - 2*Y^2*m^2*mu + Y*m*mu^2)*y^3 + (3*Y^2*m^2 - 4*Y*m*mu + mu^2)*y^2*y[1]"
        " + K_S*Y*mu*(y*y[2] - y[1]^2) + (3*Y*m - 2*mu)*y*y[1]^2 + y[1]^3");
    const auto& io = res.polys[0];
    CHECK(proportional(io.polynomial, expected));
    CHECK(io.order == 2);
    CHECK(io.m0 == parse_poly("y[1]^3"));
    CHECK(io.terms.size() == 4);
    CHECK(io.denominator == Poly(1));
    CHECK(wronskian_check(io).pass);
}

TEST_CASE("small relations") {
    const auto lin = io_polynomials(make_model({"x"}, {"theta"}, {"theta*x"}, {{"y", "x"}}));
    CHECK(proportional(lin.polys.at(0).polynomial, parse_poly("y[1] - theta*y")));

    const auto dbl = io_polynomials(make_model({"x1", "x2"}, {"theta"}, {"theta*x2", "0"}, {{"y", "x1"}}));
    CHECK(proportional(dbl.polys.at(0).polynomial, parse_poly("y[2]")));
    CHECK(dbl.polys.at(0).terms.empty());
}

TEST_CASE("normalization") {
    const std::vector<Var> params{Var("theta")};
    const auto p = normalize_io("y", parse_poly("2*y[1] - 2*theta*y"), params);
    CHECK(p.polynomial == parse_poly("y[1] - theta*y"));
    REQUIRE(p.terms.size() == 1);
    CHECK(p.terms[0].coefficient == parse_poly("theta"));

    // No parameter-free coefficient: divide by the pivot's coefficient.
    const std::vector<Var> ab{Var("a"), Var("b")};
    const auto q = normalize_io("y", parse_poly("a*y[1] + b*y"), ab);
    CHECK(q.denominator == Poly(Var("b")));
    CHECK(q.m0 == parse_poly("y"));
    REQUIRE(q.terms.size() == 1);
    CHECK(q.terms[0].coefficient == Poly(Var("a")));
}

TEST_CASE("exhaustive summary of the batch reactor") {
    const auto res = io_polynomials(batch_reactor());
    const auto s = exhaustive_summary(res.polys, res.side_conditions);
    REQUIRE(s.representatives.size() == 4);
    std::vector<Poly> expected{parse_poly("mu*K_S*Y"), parse_poly("-3*Y*m + 2*mu"),
                               parse_poly("3*Y^2*m^2 - 4*Y*m*mu + mu^2"),
                               parse_poly("Y^3*m^3 - 2*Y^2*m^2*mu + Y*m*mu^2")};
    for (const auto& e : expected) {
        bool found = false;
        for (const auto& r : s.representatives) found = found || (r.is_polynomial() && proportional(r.numerator(), e));
        CHECK_MESSAGE(found, e.to_string());
    }
}

TEST_CASE("summary is scale invariant and merges proportional entries") {
    const std::vector<Var> params{Var("a"), Var("b")};
    const auto p = normalize_io("y", parse_poly("y[2] + a*y[1] + 2*a*y + b*y^2"), params);
    const auto q = normalize_io("y", parse_poly("3*y[2] + 3*a*y[1] + 6*a*y + 3*b*y^2"), params);
    const auto sp = exhaustive_summary({p});
    const auto sq = exhaustive_summary({q});
    CHECK(sp.entries.size() == 2);
    CHECK(sp.representatives.size() == 2);
    REQUIRE(sq.representatives.size() == sp.representatives.size());
    for (std::size_t i = 0; i < sp.representatives.size(); ++i) {
        CHECK(sp.representatives[i].to_string() == sq.representatives[i].to_string());
    }
    const auto both = exhaustive_summary({p, q});
    CHECK(both.entries.size() == 4);
    CHECK(both.classes.size() == 2);
}

TEST_CASE("wronskian") {
    CHECK_FALSE(wronskian_check(std::vector<Poly>{parse_poly("y"), parse_poly("2*y")}).pass);
    CHECK(wronskian_check(std::vector<Poly>{parse_poly("y"), parse_poly("y[1]")}).pass);
    CHECK_FALSE(wronskian_check(std::vector<Poly>{parse_poly("y"), parse_poly("y[1]"), parse_poly("y + y[1]")}).pass);
    const auto a = wronskian_check(std::vector<Poly>{parse_poly("y^2"), parse_poly("y*y[1]")}, 3, 7);
    const auto b = wronskian_check(std::vector<Poly>{parse_poly("y^2"), parse_poly("y*y[1]")}, 3, 7);
    CHECK(a.pass == b.pass);
    CHECK(a.trials == b.trials);
}

TEST_CASE("initial condition augmentation") {
    const Model aug = augment_initial_conditions(batch_reactor(false));
    CHECK(aug.params == std::vector<std::string>{"mu", "K_S", "Y", "m", "x0", "xp0", "s0", "sp0"});
    std::size_t eqs = 0;
    std::size_t nes = 0;
    for (const auto& r : aug.constraints.relations) {
        if (r.op == RelOp::eq) ++eqs;
        if (r.op == RelOp::ne) {
            ++nes;
            CHECK(r.poly.normalized() == parse_poly("K_S + s0"));
        }
    }
    CHECK(eqs == 2);
    CHECK(nes == 1);

    const Model lin = augment_initial_conditions(make_model({"x"}, {"theta"}, {"theta*x"}, {{"y", "x"}}));
    REQUIRE(lin.constraints.relations.size() == 1);
    CHECK(proportional(lin.constraints.relations[0].poly, parse_poly("xp0 - theta*x0")));

    const Model zero = augment_initial_conditions(make_model({"x"}, {}, {"0"}, {{"y", "x"}}));
    REQUIRE(zero.constraints.relations.size() == 1);
    CHECK(proportional(zero.constraints.relations[0].poly, parse_poly("xp0")));
}
