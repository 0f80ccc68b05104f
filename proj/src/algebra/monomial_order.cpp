#include "relident/algebra/monomial_order.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace relident {

MonomialOrder MonomialOrder::lex(std::vector<Var> vars) {
    MonomialOrder o;
    o.kind_ = OrderKind::lex;
    for (Var v : vars) o.blocks_.push_back({v});
    return o;
}

MonomialOrder MonomialOrder::grevlex(std::vector<Var> vars) {
    MonomialOrder o;
    o.kind_ = OrderKind::grevlex;
    o.blocks_.push_back(std::move(vars));
    return o;
}

MonomialOrder MonomialOrder::block(std::vector<std::vector<Var>> blocks) {
    MonomialOrder o;
    o.kind_ = OrderKind::block_elimination;
    for (auto& b : blocks) {
        if (!b.empty()) o.blocks_.push_back(std::move(b));
    }
    return o;
}

MonomialOrder MonomialOrder::elimination(std::vector<Var> drop, const MonomialOrder& keep) {
    std::vector<std::vector<Var>> blocks;
    blocks.push_back(std::move(drop));
    for (const auto& b : keep.blocks()) blocks.push_back(b);
    return block(std::move(blocks));
}

std::vector<Var> MonomialOrder::variables() const {
    std::vector<Var> out;
    for (const auto& b : blocks_) out.insert(out.end(), b.begin(), b.end());
    return out;
}

bool MonomialOrder::contains(Var v) const {
    for (const auto& b : blocks_) {
        if (std::find(b.begin(), b.end(), v) != b.end()) return true;
    }
    return false;
}

MonomialOrder MonomialOrder::completed_for(const std::vector<Poly>& polys) const {
    std::unordered_set<Var> known;
    for (Var v : variables()) {
        if (!known.insert(v).second) throw std::invalid_argument("monomial order lists a variable twice: " + v.name());
    }
    std::set<Var, VarNameLess> extra;
    for (const auto& p : polys) {
        for (Var v : p.variables()) {
            if (!known.count(v)) extra.insert(v);
        }
    }
    if (extra.empty()) return *this;
    MonomialOrder o = *this;
    std::vector<Var> tail(extra.begin(), extra.end());
    if (o.kind_ == OrderKind::lex) {
        for (Var v : tail) o.blocks_.push_back({v});
    } else if (o.kind_ == OrderKind::grevlex && o.blocks_.size() == 1) {
        o.blocks_[0].insert(o.blocks_[0].end(), tail.begin(), tail.end());
    } else {
        o.blocks_.push_back(std::move(tail));
    }
    return o;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
    for (const auto& blk : blocks_) {
        std::uint32_t da = 0;
        std::uint32_t db = 0;
        for (Var v : blk) {
            da += a.degree(v);
            db += b.degree(v);
        }
        if (da != db) return da > db ? 1 : -1;
        for (auto it = blk.rbegin(); it != blk.rend(); ++it) {
            const auto ea = a.degree(*it);
            const auto eb = b.degree(*it);
            if (ea != eb) return ea < eb ? 1 : -1;
        }
    }
    return 0;
}

Term MonomialOrder::leading_term(const Poly& p) const {
    if (p.is_zero()) throw std::invalid_argument("leading_term of zero polynomial");
    const Term* best = &p.terms()[0];
    for (const auto& t : p.terms()) {
        if (compare(t.mono, best->mono) > 0) best = &t;
    }
    return *best;
}

std::string MonomialOrder::describe() const {
    std::string out;
    switch (kind_) {
        case OrderKind::lex: out = "lex"; break;
        case OrderKind::grevlex: out = "grevlex"; break;
        case OrderKind::block_elimination: out = "block"; break;
    }
    out += "(";
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        if (b) out += kind_ == OrderKind::lex ? " > " : " >> ";
        if (kind_ != OrderKind::lex) out += "[";
        for (std::size_t i = 0; i < blocks_[b].size(); ++i) {
            if (i) out += ", ";
            out += blocks_[b][i].name();
        }
        if (kind_ != OrderKind::lex) out += "]";
    }
    return out + ")";
}

}  // namespace relident
