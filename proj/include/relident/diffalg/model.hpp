#ifndef RELIDENT_DIFFALG_MODEL_HPP
#define RELIDENT_DIFFALG_MODEL_HPP

#include "relident/diffalg/rational_expr.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace relident {

enum class RelOp { eq, ne, lt, le, gt, ge };

const char* to_string(RelOp op);
/// Relation with the operands swapped (a op b  <=>  b flip(op) a).
RelOp flipped(RelOp op);

/// poly op 0
struct Relation {
    Poly poly;
    RelOp op = RelOp::eq;

    bool holds_at(const std::unordered_map<Var, Rational>& point) const;
    std::string to_string() const;
    friend bool operator==(const Relation&, const Relation&) = default;
};

struct ConstraintSet {
    std::vector<Relation> relations;

    bool empty() const { return relations.empty(); }
    /// Appends unless an identical relation is already present.
    void add(Relation r);
};

/// Parses "lhs op rhs" into a relation poly op 0. Rational sides are cleared
/// by multiplying with the squared denominator (sign preserving) and the
/// denominator's nonvanishing is appended as a separate relation.
std::vector<Relation> parse_relation(std::string_view text);

struct Output {
    std::string name;
    RationalExpr expr;
};

/// Parametrized ODE model: states' = dynamics, outputs = h(states, inputs, params).
struct Model {
    std::vector<std::string> states;
    std::vector<std::string> inputs;
    std::vector<std::string> params;
    std::vector<RationalExpr> dynamics;  // aligned with states
    std::vector<Output> outputs;
    ConstraintSet constraints;

    std::vector<Var> state_vars() const { return make_vars(states); }
    std::vector<Var> input_vars() const { return make_vars(inputs); }
    std::vector<Var> param_vars() const { return make_vars(params); }

    /// Throws ModelError on duplicate or undeclared identifiers.
    void validate() const;
};

class ModelError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace relident

#endif
