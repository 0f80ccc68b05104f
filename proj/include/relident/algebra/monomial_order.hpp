#ifndef RELIDENT_ALGEBRA_MONOMIAL_ORDER_HPP
#define RELIDENT_ALGEBRA_MONOMIAL_ORDER_HPP

#include "relident/algebra/poly.hpp"

#include <string>
#include <vector>

namespace relident {

enum class OrderKind { lex, grevlex, block_elimination };

/// A term order over an explicit, ordered variable list.
///
/// Block orders compare the first block by graded reverse lexicographic
/// order, then the next block, and so on, so any polynomial whose leading
/// monomial lies outside the first block is free of the first block's
/// variables. Lex is the degenerate case of singleton blocks.
class MonomialOrder {
  public:
    static MonomialOrder lex(std::vector<Var> vars);
    static MonomialOrder grevlex(std::vector<Var> vars);
    static MonomialOrder block(std::vector<std::vector<Var>> blocks);
    /// Eliminates `drop` (first block) from the rest. The kept block uses
    /// `keep`'s own blocks when given, so orders nest.
    static MonomialOrder elimination(std::vector<Var> drop, const MonomialOrder& keep);

    OrderKind kind() const { return kind_; }
    /// Groups of variables compared by grevlex, first block most significant.
    const std::vector<std::vector<Var>>& blocks() const { return blocks_; }
    std::vector<Var> variables() const;
    bool contains(Var v) const;

    /// Same order with any unlisted variables of `polys` appended as a final
    /// grevlex block, sorted by name.
    MonomialOrder completed_for(const std::vector<Poly>& polys) const;

    /// Three-way comparison; positive when a > b.
    int compare(const Monomial& a, const Monomial& b) const;
    /// Leading term of p under this order.
    Term leading_term(const Poly& p) const;

    std::string describe() const;

  private:
    OrderKind kind_ = OrderKind::grevlex;
    std::vector<std::vector<Var>> blocks_;
};

}  // namespace relident

#endif
