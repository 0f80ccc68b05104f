#ifndef RELIDENT_TEST_MODELS_HPP
#define RELIDENT_TEST_MODELS_HPP

#include "relident/algebra/parse.hpp"
#include "relident/diffalg/model.hpp"

#include <initializer_list>
#include <string>
#include <utility>

namespace relident::testing {

inline RationalExpr expr(std::string_view text) { return RationalExpr::from_fraction(parse_fraction(text)); }

inline Model make_model(std::vector<std::string> states, std::vector<std::string> params,
                        std::initializer_list<const char*> dynamics,
                        std::initializer_list<std::pair<const char*, const char*>> outputs) {
    Model m;
    m.states = std::move(states);
    m.params = std::move(params);
    for (const char* d : dynamics) m.dynamics.push_back(expr(d));
    for (const auto& [name, e] : outputs) m.outputs.push_back({name, expr(e)});
    return m;
}

inline Model batch_reactor(bool positive = true) {
    Model m = make_model({"x", "s"}, {"mu", "K_S", "Y", "m"},
                         {"mu*s*x/(K_S+s) - m*Y*x", "-mu*s*x/(Y*(K_S+s))"}, {{"y", "x"}});
    if (positive) {
        for (const char* v : {"mu", "K_S", "Y", "m"}) {
            for (auto& r : parse_relation(std::string(v) + " > 0")) m.constraints.add(r);
        }
    }
    return m;
}

}  // namespace relident::testing

#endif
