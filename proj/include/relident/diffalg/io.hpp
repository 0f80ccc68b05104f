#ifndef RELIDENT_DIFFALG_IO_HPP
#define RELIDENT_DIFFALG_IO_HPP

#include "relident/algebra/resource.hpp"
#include "relident/diffalg/model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace relident {

class EliminationIncomplete : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Time derivative of e along the model: states follow their equations and
/// an input jet u[j] becomes u[j+1]. Parameters are constant.
RationalExpr lie_derivative(const Model& model, const RationalExpr& e);

/// One coefficient class of an input-output polynomial: `coefficient`
/// (over IOPolynomial::denominator) multiplies the differential polynomial
/// `monomials`.
struct IOTerm {
    Poly monomials;
    Poly coefficient;
};

struct IOPolynomial {
    std::string output;
    /// The relation itself, scaled by the normalization. When `denominator`
    /// is not 1 the normalized relation is polynomial / denominator.
    Poly polynomial;
    /// Parameter-dependent coefficient classes, canonical order.
    std::vector<IOTerm> terms;
    /// Part with parameter-free coefficients.
    Poly m0;
    Poly denominator{1};
    /// Human-readable description of the scaling that was applied.
    std::string normalization;
    /// Highest derivative order of the output in the relation.
    unsigned order = 0;
};

struct IOOptions {
    /// Cap on output derivative order; 0 means the number of states.
    unsigned max_prolong = 0;
    GroebnerLimits limits{};
    std::uint64_t seed = 1;
};

struct IOResult {
    std::vector<IOPolynomial> polys;
    /// Parameter-only denominators that must not vanish.
    std::vector<Relation> side_conditions;
    std::string selection_rule;
};

/// One input-output relation per output, states eliminated.
/// Throws EliminationIncomplete or ResourceExceeded.
IOResult io_polynomials(const Model& model, const IOOptions& options = {});

/// Splits p into parameter-dependent coefficient classes (coefficients equal
/// up to a rational constant share one class) and scales it: by a
/// parameter-free coefficient when one exists, otherwise by the coefficient
/// of the pivot: the differential monomial of lowest total degree, then
/// lowest derivative order, then first in canonical text.
IOPolynomial normalize_io(const std::string& output, const Poly& p, const std::vector<Var>& params);

struct SummaryEntry {
    RationalExpr value;
    std::size_t poly_index = 0;
    std::size_t term_index = 0;
};

struct ExhaustiveSummary {
    std::vector<SummaryEntry> entries;
    /// Indices into `entries`, one vector per class up to a constant factor.
    std::vector<std::vector<std::size_t>> classes;
    /// One per class, numerator scaled to positive canonical lead and
    /// coprime integer coefficients.
    std::vector<RationalExpr> representatives;
    std::vector<Relation> side_conditions;
};

ExhaustiveSummary exhaustive_summary(const std::vector<IOPolynomial>& polys,
                                     const std::vector<Relation>& side_conditions = {});

struct WronskianResult {
    bool pass = false;
    std::size_t size = 0;
    unsigned trials = 0;
};

/// Checks that the formal Wronskian of the monomial classes of p is not
/// identically zero by evaluating it at random jets mod a large prime.
/// Pass is certain; Fail is probabilistic.
WronskianResult wronskian_check(const IOPolynomial& p, unsigned trials = 5, std::uint64_t seed = 1);
/// Same, for an explicit family of differential polynomials.
WronskianResult wronskian_check(const std::vector<Poly>& family, unsigned trials = 5, std::uint64_t seed = 1);

/// Adds parameters v0 and vp0 for every state v, and the relation
/// vp0 = g_v(x0, u0, params) with denominators cleared and kept nonzero.
/// Inputs u receive a parameter u0.
Model augment_initial_conditions(const Model& model);

}  // namespace relident

#endif
