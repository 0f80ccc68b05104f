#ifndef RELIDENT_ALGEBRA_MODULAR_HPP
#define RELIDENT_ALGEBRA_MODULAR_HPP

#include "relident/algebra/matrix.hpp"
#include "relident/algebra/poly.hpp"

#include <optional>
#include <unordered_map>

namespace relident {

/// Prime used for probabilistic evaluations (2^61 - 1).
inline constexpr std::uint64_t kEvalPrime = 2305843009213693951ULL;

/// q mod p, or nullopt when p divides the denominator.
std::optional<std::uint64_t> rational_mod(const Rational& q, std::uint64_t p);
std::uint64_t signed_mod(std::int64_t v, std::uint64_t p);

/// Largest prime below `below` (below > 3). Walking down from 2^62 gives
/// the primes used for multimodular computations.
std::uint64_t previous_prime(std::uint64_t below);

/// Value of f mod p at the given residues; nullopt if a coefficient
/// denominator vanishes mod p. Every variable of f must be assigned.
std::optional<std::uint64_t> evaluate_mod(const Poly& f, const std::unordered_map<Var, std::uint64_t>& point,
                                          std::uint64_t p);

/// Rank of a matrix mod p (rows are consumed).
std::size_t rank_mod(std::vector<std::vector<std::uint64_t>> rows, std::uint64_t p);

}  // namespace relident

#endif
