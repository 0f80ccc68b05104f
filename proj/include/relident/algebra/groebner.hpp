#ifndef RELIDENT_ALGEBRA_GROEBNER_HPP
#define RELIDENT_ALGEBRA_GROEBNER_HPP

#include "relident/algebra/monomial_order.hpp"
#include "relident/algebra/poly.hpp"
#include "relident/algebra/resource.hpp"

#include <memory>
#include <vector>

namespace relident {

struct GroebnerStats {
    std::size_t pairs_considered = 0;
    std::size_t pairs_reduced = 0;
    std::size_t zero_reductions = 0;
    std::size_t max_basis_size = 0;
};

/// Reduced Groebner basis of the ideal generated by `gens`, monic, sorted by
/// increasing leading monomial. Variables missing from `order` are appended
/// (see MonomialOrder::completed_for). The unit ideal yields {1}; an all-zero
/// input yields the empty list.
/// Throws ResourceExceeded when a cap in `limits` is hit.
std::vector<Poly> groebner_basis(const std::vector<Poly>& gens, const MonomialOrder& order,
                                 const GroebnerLimits& limits = {}, GroebnerStats* stats = nullptr);

/// Remainder of multivariate division of f by `basis` (any list of nonzero
/// polynomials). No term of the result is divisible by a leading monomial.
Poly normal_form(const Poly& f, const std::vector<Poly>& basis, const MonomialOrder& order);

/// S-polynomial lcm/LT(f)*f - lcm/LT(g)*g.
Poly s_polynomial(const Poly& f, const Poly& g, const MonomialOrder& order);

/// Generators of the elimination ideal <gens> ∩ Q[remaining variables],
/// computed with a block order placing `drop` first and `keep` after.
std::vector<Poly> eliminate(const std::vector<Poly>& gens, const std::vector<Var>& drop, const MonomialOrder& keep,
                            const GroebnerLimits& limits = {});

bool is_unit_ideal(const std::vector<Poly>& basis);

/// Krull dimension from the leading monomials of a Groebner basis: the size
/// of a maximal set of variables containing no leading monomial's support.
/// The variable universe is `order`'s variables plus those of the basis.
/// Returns -1 for the unit ideal.
int ideal_dimension(const std::vector<Poly>& basis, const MonomialOrder& order);

/// Monomials outside the leading-term ideal, ascending in `order`. Requires
/// a zero-dimensional Groebner basis; throws ResourceExceeded past `limit`.
std::vector<Monomial> standard_monomials(const std::vector<Poly>& basis, const MonomialOrder& order,
                                         std::size_t limit = 100000);

/// Reusable division by a fixed basis, for repeated normal forms.
class NormalFormReducer {
  public:
    NormalFormReducer(const std::vector<Poly>& basis, const MonomialOrder& order);
    ~NormalFormReducer();
    NormalFormReducer(NormalFormReducer&&) noexcept;
    NormalFormReducer& operator=(NormalFormReducer&&) noexcept;

    Poly reduce(const Poly& f) const;
    const MonomialOrder& order() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace relident

#endif
