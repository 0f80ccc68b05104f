#ifndef RELIDENT_TESTS_PRINTING_HPP
#define RELIDENT_TESTS_PRINTING_HPP

#include "doctest.h"
#include "relident/algebra/poly.hpp"

#include <sstream>

namespace doctest {

template <>
struct StringMaker<relident::Poly> {
    static String convert(const relident::Poly& p) { return p.to_string().c_str(); }
};

template <>
struct StringMaker<std::vector<relident::Poly>> {
    static String convert(const std::vector<relident::Poly>& ps) {
        std::string out = "{";
        for (std::size_t i = 0; i < ps.size(); ++i) out += (i ? ", " : "") + ps[i].to_string();
        return (out + "}").c_str();
    }
};

}  // namespace doctest

#endif
