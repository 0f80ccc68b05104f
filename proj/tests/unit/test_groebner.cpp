#include "doctest.h"
#include "printing.hpp"

#include "relident/algebra/groebner.hpp"
#include "relident/algebra/parse.hpp"

using namespace relident;

namespace {

std::vector<Poly> polys(std::initializer_list<const char*> texts) {
    std::vector<Poly> out;
    for (const char* t : texts) out.push_back(parse_poly(t));
    return out;
}

MonomialOrder lex_xy() { return MonomialOrder::lex(make_vars({"x", "y"})); }

}  // namespace

TEST_CASE("normal form examples") {
    CHECK(normal_form(parse_poly("x^2"), polys({"x"}), lex_xy()).is_zero());
    CHECK(normal_form(parse_poly("x^2 + y"), polys({"x"}), lex_xy()) == parse_poly("y"));
    const auto order = MonomialOrder::grevlex(make_vars({"x", "y"}));
    const auto basis = polys({"x^2 + y^2 - 1", "x - y"});
    const Poly r = normal_form(parse_poly("x*y - 1"), basis, order);
    for (const auto& t : r.terms()) {
        for (const auto& b : basis) CHECK_FALSE(order.leading_term(b).mono.divides(t.mono));
    }
    CHECK(normal_form(r, basis, order) == r);
}

TEST_CASE("groebner basis examples") {
    CHECK(groebner_basis(polys({"x + 1", "x + 2"}), lex_xy()) == polys({"1"}));
    CHECK(groebner_basis(polys({"x"}), lex_xy()) == polys({"x"}));
    const auto gb = groebner_basis(polys({"x^2 + y^2 - 1", "x - y"}), lex_xy());
    CHECK(std::find(gb.begin(), gb.end(), parse_poly("y^2 - 1/2")) != gb.end());
    CHECK(std::find(gb.begin(), gb.end(), parse_poly("x - y")) != gb.end());
}

TEST_CASE("groebner basis of a cyclic system is closed under S-polynomials") {
    const auto order = MonomialOrder::grevlex(make_vars({"a", "b", "c", "d"}));
    const auto gens = polys({"a+b+c+d", "a*b+b*c+c*d+d*a", "a*b*c+b*c*d+c*d*a+d*a*b", "a*b*c*d-1"});
    const auto gb = groebner_basis(gens, order);
    for (const auto& g : gens) CHECK(normal_form(g, gb, order).is_zero());
    for (std::size_t i = 0; i < gb.size(); ++i) {
        for (std::size_t j = i + 1; j < gb.size(); ++j) {
            CHECK(normal_form(s_polynomial(gb[i], gb[j], order), gb, order).is_zero());
        }
    }
    CHECK(ideal_dimension(gb, order) == 1);
}

TEST_CASE("elimination examples") {
    const auto keep = MonomialOrder::grevlex(make_vars({"x", "y"}));
    CHECK(eliminate(polys({"x - t^2", "y - t^3"}), make_vars({"t"}), keep) == polys({"x^3 - y^2"}));
    CHECK(eliminate(polys({"x - 1"}), make_vars({"z"}), keep) == polys({"x - 1"}));
    CHECK(eliminate(polys({"x - t", "y - t"}), make_vars({"t"}), keep) == polys({"x - y"}));
}

TEST_CASE("ideal dimension examples") {
    const auto order = MonomialOrder::grevlex(make_vars({"x", "y"}));
    CHECK(ideal_dimension(polys({"1"}), order) == -1);
    CHECK(ideal_dimension(polys({"x^2 + y^2 - 1"}), order) == 1);
    CHECK(ideal_dimension(polys({"x", "y"}), order) == 0);
    CHECK(ideal_dimension({}, order) == 2);
}

TEST_CASE("standard monomials of a zero-dimensional ideal") {
    const auto order = MonomialOrder::grevlex(make_vars({"x", "y"}));
    const auto gb = groebner_basis(polys({"x^2 - 2", "y^2 - 3"}), order);
    CHECK(standard_monomials(gb, order).size() == 4);
}

TEST_CASE("caps are reported, not ignored") {
    GroebnerLimits limits;
    limits.max_basis = 4;
    const auto order = MonomialOrder::grevlex(make_vars({"a", "b", "c", "d"}));
    const auto gens = polys({"a+b+c+d", "a*b+b*c+c*d+d*a", "a*b*c+b*c*d+c*d*a+d*a*b", "a*b*c*d-1"});
    CHECK_THROWS_AS(groebner_basis(gens, order, limits), ResourceExceeded);
    limits = GroebnerLimits{};
    limits.max_degree = 2;
    CHECK_THROWS_AS(groebner_basis(gens, order, limits), ResourceExceeded);
}
