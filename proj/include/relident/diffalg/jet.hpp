#ifndef RELIDENT_DIFFALG_JET_HPP
#define RELIDENT_DIFFALG_JET_HPP

#include "relident/algebra/variable.hpp"

#include <optional>
#include <string>
#include <utility>

namespace relident {

/// Variable standing for the order-th derivative of `base`: "y", "y[1]", ...
Var jet_var(const std::string& base, unsigned order);

/// Splits "y[2]" into ("y", 2) and "y" into ("y", 0).
std::pair<std::string, unsigned> split_jet(Var v);

}  // namespace relident

#endif
