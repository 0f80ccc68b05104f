#include "relident/diffalg/jet.hpp"
#include "relident/diffalg/model.hpp"

#include <set>
#include <unordered_set>

namespace relident {

Var jet_var(const std::string& base, unsigned order) {
    if (order == 0) return Var(base);
    return Var(base + "[" + std::to_string(order) + "]");
}

std::pair<std::string, unsigned> split_jet(Var v) {
    const std::string& n = v.name();
    if (!n.empty() && n.back() == ']') {
        const auto open = n.rfind('[');
        if (open != std::string::npos) {
            return {n.substr(0, open), static_cast<unsigned>(std::stoul(n.substr(open + 1, n.size() - open - 2)))};
        }
    }
    return {n, 0};
}

const char* to_string(RelOp op) {
    switch (op) {
        case RelOp::eq: return "=";
        case RelOp::ne: return "!=";
        case RelOp::lt: return "<";
        case RelOp::le: return "<=";
        case RelOp::gt: return ">";
        case RelOp::ge: return ">=";
    }
    return "?";
}

RelOp flipped(RelOp op) {
    switch (op) {
        case RelOp::lt: return RelOp::gt;
        case RelOp::le: return RelOp::ge;
        case RelOp::gt: return RelOp::lt;
        case RelOp::ge: return RelOp::le;
        default: return op;
    }
}

bool Relation::holds_at(const std::unordered_map<Var, Rational>& point) const {
    const int s = sign(poly.evaluate(point));
    switch (op) {
        case RelOp::eq: return s == 0;
        case RelOp::ne: return s != 0;
        case RelOp::lt: return s < 0;
        case RelOp::le: return s <= 0;
        case RelOp::gt: return s > 0;
        case RelOp::ge: return s >= 0;
    }
    return false;
}

std::string Relation::to_string() const { return poly.to_string() + " " + relident::to_string(op) + " 0"; }

void ConstraintSet::add(Relation r) {
    for (const auto& existing : relations) {
        if (existing == r) return;
    }
    relations.push_back(std::move(r));
}

std::vector<Relation> parse_relation(std::string_view text) {
    static const std::pair<const char*, RelOp> ops[] = {{"==", RelOp::eq}, {"!=", RelOp::ne}, {"<=", RelOp::le},
                                                        {">=", RelOp::ge}, {"<", RelOp::lt},  {">", RelOp::gt},
                                                        {"=", RelOp::eq}};
    std::size_t at = std::string_view::npos;
    std::size_t len = 0;
    RelOp op = RelOp::eq;
    for (const auto& [tok, o] : ops) {
        const auto pos = text.find(tok);
        if (pos != std::string_view::npos && (at == std::string_view::npos || pos < at)) {
            at = pos;
            len = std::char_traits<char>::length(tok);
            op = o;
        } else if (pos != std::string_view::npos && pos == at && std::char_traits<char>::length(tok) > len) {
            len = std::char_traits<char>::length(tok);
            op = o;
        }
    }
    if (at == std::string_view::npos) throw ParseError("expected a relation (=, !=, <, <=, >, >=)", 1, 1);
    Fraction lhs;
    Fraction rhs;
    try {
        lhs = parse_fraction(text.substr(0, at));
    } catch (const ParseError& e) {
        throw ParseError(e.message(), e.line(), e.column());
    }
    try {
        rhs = parse_fraction(text.substr(at + len));
    } catch (const ParseError& e) {
        throw ParseError(e.message(), e.line(), e.line() == 1 ? e.column() + static_cast<int>(at + len) : e.column());
    }
    // lhs.num/lhs.den - rhs.num/rhs.den = (lhs.num*rhs.den - rhs.num*lhs.den) / (lhs.den*rhs.den)
    const Poly num = lhs.num * rhs.den - rhs.num * lhs.den;
    const Poly den = lhs.den * rhs.den;
    std::vector<Relation> out;
    if (den.is_constant()) {
        out.push_back({num * (Rational(1) / den.constant_value()), op});
        return out;
    }
    // Multiplying by den^2 > 0 keeps the sign of the relation.
    out.push_back({op == RelOp::eq || op == RelOp::ne ? num : num * den, op});
    out.push_back({den, RelOp::ne});
    return out;
}

void Model::validate() const {
    std::unordered_set<std::string> seen;
    auto declare = [&](const std::string& name, const char* role) {
        if (name.empty()) throw ModelError(std::string("empty ") + role + " name");
        if (!seen.insert(name).second) throw ModelError("duplicate identifier: " + name);
    };
    for (const auto& s : states) declare(s, "state");
    for (const auto& s : inputs) declare(s, "input");
    for (const auto& s : params) declare(s, "parameter");
    for (const auto& o : outputs) declare(o.name, "output");
    if (dynamics.size() != states.size()) throw ModelError("every state needs exactly one equation");
    std::unordered_set<std::string> usable(states.begin(), states.end());
    usable.insert(inputs.begin(), inputs.end());
    usable.insert(params.begin(), params.end());
    auto check = [&](const RationalExpr& e, const std::string& where) {
        for (Var v : e.variables()) {
            if (!usable.count(v.name())) throw ModelError("undeclared identifier '" + v.name() + "' in " + where);
        }
    };
    for (std::size_t i = 0; i < states.size(); ++i) check(dynamics[i], "equation of " + states[i]);
    for (const auto& o : outputs) check(o.expr, "output " + o.name);
    const std::unordered_set<std::string> pset(params.begin(), params.end());
    for (const auto& r : constraints.relations) {
        for (Var v : r.poly.variables()) {
            if (!pset.count(v.name())) {
                throw ModelError("constraint '" + r.to_string() + "' uses non-parameter identifier '" + v.name() + "'");
            }
        }
    }
    if (outputs.empty()) throw ModelError("model has no outputs");
}

}  // namespace relident
