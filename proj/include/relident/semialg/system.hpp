#ifndef RELIDENT_SEMIALG_SYSTEM_HPP
#define RELIDENT_SEMIALG_SYSTEM_HPP

#include "relident/diffalg/model.hpp"

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace relident {

/// Finite conjunction of polynomial sign conditions, each compared with 0.
struct SemiAlgebraicSystem {
    std::vector<Var> variables;
    std::vector<Poly> equations;
    std::vector<Relation> strict;     // lt / gt
    std::vector<Relation> nonstrict;  // le / ge
    std::vector<Poly> disequations;

    /// Files a relation under its kind. Variables not yet listed are appended.
    void add(const Relation& r);
    void add_equation(const Poly& p) { add({p, RelOp::eq}); }
    /// All conditions as relations, equations first.
    std::vector<Relation> relations() const;
    bool satisfied_at(const std::unordered_map<Var, Rational>& point) const;
    std::string to_string() const;

  private:
    void note_variables(const Poly& p);
};

/// Purely equational form: each sign condition gets one auxiliary variable.
struct EncodedSystem {
    std::vector<Var> original;
    std::vector<Var> auxiliary;
    std::vector<Poly> equations;
    /// Auxiliary variable name -> the relation it encodes.
    std::map<std::string, std::string> provenance;

    std::vector<Var> all_variables() const;
};

/// p != 0 -> p*v - 1, p > 0 -> p*v^2 - 1, p < 0 -> p*v^2 + 1,
/// p >= 0 -> p - w^2, p <= 0 -> p + w^2; equations pass through.
EncodedSystem encode(const SemiAlgebraicSystem& sys);

/// Equations plus one Rabinowitsch variable per strict or != condition;
/// nonstrict conditions are dropped. Has the same complex solutions as the
/// encoding projected to the original variables, so a unit ideal here
/// proves the real set empty.
EncodedSystem complex_relaxation(const SemiAlgebraicSystem& sys);

}  // namespace relident

#endif
