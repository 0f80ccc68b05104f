#ifndef RELIDENT_SEMIALG_REAL_SOLVE_HPP
#define RELIDENT_SEMIALG_REAL_SOLVE_HPP

#include "relident/algebra/groebner.hpp"
#include "relident/algebra/random.hpp"
#include "relident/algebra/upoly.hpp"

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace relident {

/// Closed rational interval.
struct Interval {
    Rational lo;
    Rational hi;

    static Interval point(const Rational& x) { return {x, x}; }
    bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
    /// Sign when the interval excludes zero, otherwise 0.
    int sign() const { return sgn(lo) > 0 ? 1 : (sgn(hi) < 0 ? -1 : 0); }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval evaluate(const UPoly& f, const Interval& x);
Interval evaluate(const Poly& p, const std::unordered_map<Var, Interval>& box);

/// A real point given by a root of a squarefree univariate eliminant and
/// coordinates that are polynomials in that root.
struct AlgebraicPoint {
    UPoly eliminant;
    RootInterval root;
    std::vector<std::pair<Var, UPoly>> coordinates;

    /// Interval enclosure of each coordinate at the current root interval.
    std::unordered_map<Var, Interval> box() const;
    /// Halves the root interval width `steps` times.
    void refine(int steps);
    /// Exact sign of p at the point: 0 decided by reduction modulo the
    /// eliminant, otherwise by refinement until the enclosure excludes 0.
    int sign_of(const Poly& p, int max_refinements = 200) const;
};

/// p(coordinates(t)) reduced modulo the eliminant.
UPoly compose_mod(const Poly& p, const AlgebraicPoint& point);

/// Checks that the eliminant has exactly one real root in the interval and
/// that every generator vanishes at the point.
bool verify_point(const std::vector<Poly>& generators, const AlgebraicPoint& point);

struct RealSolutions {
    std::size_t count = 0;
    /// All real points when the shape-position method succeeded.
    std::vector<AlgebraicPoint> points;
    /// "unit ideal", "shape position" or "trace form".
    std::string method;
    /// Separating eliminant, when one was found.
    std::optional<UPoly> eliminant;
};

/// Distinct real solutions of a zero-dimensional system in `vars`. Tries up
/// to `retries` random separating forms, then the trace-form signature
/// (count only). Throws std::domain_error for positive-dimensional input
/// and ResourceExceeded on the limits.
RealSolutions real_solutions_zero_dim(const std::vector<Poly>& generators, const std::vector<Var>& vars, Rng& rng,
                                      const GroebnerLimits& limits = {}, unsigned retries = 3);

/// Number of distinct real solutions from a zero-dimensional Groebner basis,
/// by the signature of the trace form.
std::size_t real_count_zero_dim(const std::vector<Poly>& basis, const MonomialOrder& order,
                                std::size_t max_monomials = 400, const Deadline& deadline = {});

}  // namespace relident

#endif
