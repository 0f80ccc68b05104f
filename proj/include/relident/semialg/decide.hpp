#ifndef RELIDENT_SEMIALG_DECIDE_HPP
#define RELIDENT_SEMIALG_DECIDE_HPP

#include "relident/semialg/real_solve.hpp"
#include "relident/semialg/system.hpp"

#include <json.hpp>

#include <array>
#include <optional>

namespace relident {

enum class Emptiness { Empty, NonEmpty, Unknown };
const char* to_string(Emptiness e);

struct SemialgOptions {
    std::uint64_t seed = 1;
    /// Total wall-clock budget for one decision.
    double budget_secs = 60.0;
    /// Bound on numerator and denominator magnitude in the witness search.
    unsigned witness_height = 8;
    unsigned critical_retries = 3;
    /// Shares of the budget for: unit ideal, witness search, zero-dimensional
    /// counting, critical points. Unused time carries over.
    std::array<double, 4> stage_shares{0.1, 0.2, 0.3, 0.4};
    std::uint32_t max_degree = 40;
    std::size_t max_basis = 20000;
    /// Upper bound on minors in one critical-point system.
    std::size_t max_minors = 4000;
};

using RationalPoint = std::vector<std::pair<Var, Rational>>;

struct EmptinessVerdict {
    Emptiness status = Emptiness::Unknown;
    /// Stage that decided, or the last stage reached.
    std::string stage;
    /// Decisive data: proof tag and its inputs, or the resource report.
    nlohmann::ordered_json certificate = nlohmann::ordered_json::object();
    std::optional<RationalPoint> rational_witness;
    /// Real point of the encoded system (original and auxiliary variables).
    std::optional<AlgebraicPoint> algebraic_witness;

    nlohmann::ordered_json to_json() const;
};

/// Staged decision: complex relaxation, rational witness, zero-dimensional
/// real counting, critical points; Unknown when all of them give up.
EmptinessVerdict is_empty(const SemiAlgebraicSystem& sys, const SemialgOptions& options = {});

/// Depth-first search over small-height rationals with propagation through
/// univariate equations. Any returned point satisfies every relation exactly.
std::optional<RationalPoint> rational_witness_search(const SemiAlgebraicSystem& sys, unsigned height,
                                                     const Deadline& deadline);

/// For a positive-dimensional encoded ideal with Groebner basis `basis`
/// (grevlex over enc.all_variables()), decides real emptiness through the
/// critical points of the squared distance to random points.
EmptinessVerdict critical_point_emptiness(const EncodedSystem& enc, const std::vector<Poly>& basis, Rng& rng,
                                          const SemialgOptions& options, const Deadline& deadline);

/// Independent check of a NonEmpty verdict's witness against the original
/// system: exact evaluation for rational points, certified signs otherwise.
bool witness_satisfies(const SemiAlgebraicSystem& sys, const EmptinessVerdict& verdict);

/// Stable 64-bit fingerprint of the system text, for seeding.
std::uint64_t system_fingerprint(const SemiAlgebraicSystem& sys);

}  // namespace relident

#endif
