#include "relident/semialg/system.hpp"

#include <algorithm>
#include <sstream>

namespace relident {

void SemiAlgebraicSystem::note_variables(const Poly& p) {
    for (Var v : p.variables()) {
        if (std::find(variables.begin(), variables.end(), v) == variables.end()) variables.push_back(v);
    }
}

void SemiAlgebraicSystem::add(const Relation& r) {
    note_variables(r.poly);
    switch (r.op) {
    case RelOp::eq:
        if (std::find(equations.begin(), equations.end(), r.poly) == equations.end()) equations.push_back(r.poly);
        break;
    case RelOp::ne:
        if (std::find(disequations.begin(), disequations.end(), r.poly) == disequations.end()) {
            disequations.push_back(r.poly);
        }
        break;
    case RelOp::lt:
    case RelOp::gt:
        if (std::find(strict.begin(), strict.end(), r) == strict.end()) strict.push_back(r);
        break;
    case RelOp::le:
    case RelOp::ge:
        if (std::find(nonstrict.begin(), nonstrict.end(), r) == nonstrict.end()) nonstrict.push_back(r);
        break;
    }
}

std::vector<Relation> SemiAlgebraicSystem::relations() const {
    std::vector<Relation> out;
    for (const auto& e : equations) out.push_back({e, RelOp::eq});
    out.insert(out.end(), strict.begin(), strict.end());
    out.insert(out.end(), nonstrict.begin(), nonstrict.end());
    for (const auto& d : disequations) out.push_back({d, RelOp::ne});
    return out;
}

bool SemiAlgebraicSystem::satisfied_at(const std::unordered_map<Var, Rational>& point) const {
    const auto rels = relations();
    return std::all_of(rels.begin(), rels.end(), [&](const Relation& r) { return r.holds_at(point); });
}

std::string SemiAlgebraicSystem::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& r : relations()) {
        out << (first ? "" : "; ") << r.to_string();
        first = false;
    }
    return out.str();
}

std::vector<Var> EncodedSystem::all_variables() const {
    std::vector<Var> out = original;
    out.insert(out.end(), auxiliary.begin(), auxiliary.end());
    return out;
}

namespace {

Var fresh_aux(EncodedSystem& enc, char kind, const Relation& source) {
    const Var v("_" + std::string(1, kind) + std::to_string(enc.auxiliary.size() + 1));
    enc.auxiliary.push_back(v);
    enc.provenance.emplace(v.name(), source.to_string());
    return v;
}

}  // namespace

EncodedSystem encode(const SemiAlgebraicSystem& sys) {
    EncodedSystem enc;
    enc.original = sys.variables;
    enc.equations = sys.equations;
    for (const auto& r : sys.strict) {
        const Poly v(fresh_aux(enc, 'v', r));
        const Poly sq = v * v;
        enc.equations.push_back(r.op == RelOp::gt ? r.poly * sq - 1 : r.poly * sq + 1);
    }
    for (const auto& r : sys.nonstrict) {
        const Poly w(fresh_aux(enc, 'w', r));
        enc.equations.push_back(r.op == RelOp::ge ? r.poly - w * w : r.poly + w * w);
    }
    for (const auto& d : sys.disequations) {
        const Poly v(fresh_aux(enc, 'v', {d, RelOp::ne}));
        enc.equations.push_back(d * v - 1);
    }
    return enc;
}

EncodedSystem complex_relaxation(const SemiAlgebraicSystem& sys) {
    EncodedSystem enc;
    enc.original = sys.variables;
    enc.equations = sys.equations;
    std::vector<Poly> seen;
    auto add = [&](const Relation& r) {
        const Poly key = r.poly.normalized();
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) return;
        seen.push_back(key);
        const Poly v(fresh_aux(enc, 'r', r));
        enc.equations.push_back(key * v - 1);
    };
    for (const auto& r : sys.strict) add(r);
    for (const auto& d : sys.disequations) add({d, RelOp::ne});
    return enc;
}

}  // namespace relident
