#include "relident/semialg/real_solve.hpp"

#include "relident/algebra/matrix.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace relident {

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Interval operator*(const Interval& a, const Interval& b) {
    const Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Interval evaluate(const UPoly& f, const Interval& x) {
    Interval acc = Interval::point(0);
    const auto& c = f.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + Interval::point(*it);
    return acc;
}

Interval evaluate(const Poly& p, const std::unordered_map<Var, Interval>& box) {
    Interval acc = Interval::point(0);
    for (const auto& t : p.terms()) {
        Interval term = Interval::point(t.coeff);
        for (const auto& f : t.mono.factors()) {
            const Interval& x = box.at(f.var);
            Interval power = x;
            for (std::uint32_t e = 1; e < f.exp; ++e) power = power * x;
            // Even powers are nonnegative; the product rule alone loses that.
            if (f.exp % 2 == 0 && x.contains_zero()) power.lo = 0;
            term = term * power;
        }
        acc = acc + term;
    }
    return acc;
}

std::unordered_map<Var, Interval> AlgebraicPoint::box() const {
    const Interval t{root.lo, root.hi};
    std::unordered_map<Var, Interval> out;
    for (const auto& [v, g] : coordinates) out.emplace(v, evaluate(g, t));
    return out;
}

void AlgebraicPoint::refine(int steps) {
    if (root.exact()) return;
    Rational width = (root.hi - root.lo);
    for (int i = 0; i < steps; ++i) width /= 2;
    root = relident::refine(eliminant, root, width);
}

UPoly compose_mod(const Poly& p, const AlgebraicPoint& point) {
    std::unordered_map<Var, const UPoly*> coords;
    for (const auto& [v, g] : point.coordinates) coords.emplace(v, &g);
    auto reduce = [&](const UPoly& f) { return divrem(f, point.eliminant).second; };
    UPoly acc;
    for (const auto& t : p.terms()) {
        UPoly term(std::vector<Rational>{t.coeff});
        for (const auto& f : t.mono.factors()) {
            auto it = coords.find(f.var);
            if (it == coords.end()) throw std::invalid_argument("point has no coordinate for " + f.var.name());
            for (std::uint32_t e = 0; e < f.exp; ++e) term = reduce(term * *it->second);
        }
        acc = acc + term;
    }
    return reduce(acc);
}

int AlgebraicPoint::sign_of(const Poly& p, int max_refinements) const {
    if (compose_mod(p, *this).is_zero()) return 0;
    AlgebraicPoint work = *this;
    for (int i = 0; i <= max_refinements; ++i) {
        if (work.root.exact()) {
            std::unordered_map<Var, Rational> at;
            for (const auto& [v, g] : work.coordinates) at.emplace(v, g.evaluate(work.root.lo));
            return sgn(p.evaluate(at));
        }
        const int s = evaluate(p, work.box()).sign();
        if (s != 0) return s;
        work.refine(4);
    }
    throw std::runtime_error("sign undecided after refinement");
}

bool verify_point(const std::vector<Poly>& generators, const AlgebraicPoint& point) {
    if (point.root.exact()) {
        if (point.eliminant.sign_at(point.root.lo) != 0) return false;
    } else if (sturm_count(point.eliminant, Bound::finite(point.root.lo), Bound::finite(point.root.hi)) != 1) {
        return false;
    }
    return std::all_of(generators.begin(), generators.end(),
                       [&](const Poly& g) { return compose_mod(g, point).is_zero(); });
}

std::size_t real_count_zero_dim(const std::vector<Poly>& basis, const MonomialOrder& order, std::size_t max_monomials,
                                const Deadline& deadline) {
    if (is_unit_ideal(basis)) return 0;
    const auto monos = standard_monomials(basis, order, max_monomials);
    const std::size_t d = monos.size();
    std::unordered_map<Monomial, std::size_t> index;
    for (std::size_t i = 0; i < d; ++i) index.emplace(monos[i], i);
    NormalFormReducer reducer(basis, order);
    auto coords = [&](const Monomial& m) {
        std::vector<Rational> v(d);
        const Poly r = reducer.reduce(Poly(m, Rational(1)));
        for (const auto& t : r.terms()) v[index.at(t.mono)] = t.coeff;
        return v;
    };
    std::vector<std::vector<std::vector<Rational>>> products(d, std::vector<std::vector<Rational>>(d));
    for (std::size_t i = 0; i < d; ++i) {
        deadline.check("trace form");
        for (std::size_t j = i; j < d; ++j) {
            products[i][j] = coords(monos[i] * monos[j]);
            if (j != i) products[j][i] = products[i][j];
        }
    }
    // trace of multiplication by b_c
    std::vector<Rational> tau(d);
    for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t k = 0; k < d; ++k) tau[c] += products[c][k][k];
    }
    QMatrix hermite(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        deadline.check("trace form");
        for (std::size_t j = i; j < d; ++j) {
            Rational s;
            for (std::size_t c = 0; c < d; ++c) s += tau[c] * products[i][j][c];
            hermite(i, j) = s;
            hermite(j, i) = s;
        }
    }
    const UPoly chi = characteristic_polynomial(hermite, deadline);
    std::vector<Rational> mirrored = chi.coeffs();
    for (std::size_t k = 1; k < mirrored.size(); k += 2) mirrored[k] = -mirrored[k];
    const int positive = coefficient_sign_variations(chi);
    const int negative = coefficient_sign_variations(UPoly(mirrored));
    return static_cast<std::size_t>(positive - negative);
}

namespace {

// Coordinates of normal forms in the standard monomial basis of a
// zero-dimensional quotient.
class Quotient {
  public:
    Quotient(std::vector<Poly> basis, const MonomialOrder& order, std::size_t limit)
        : basis_(std::move(basis)), monos_(standard_monomials(basis_, order, limit)), reducer_(basis_, order) {
        for (std::size_t i = 0; i < monos_.size(); ++i) index_.emplace(monos_[i], i);
    }

    std::size_t dimension() const { return monos_.size(); }

    std::vector<Rational> coords(const Poly& f) const {
        std::vector<Rational> v(monos_.size());
        const Poly r = reducer_.reduce(f);
        for (const auto& t : r.terms()) v[index_.at(t.mono)] = t.coeff;
        return v;
    }

    QMatrix multiplication(const Poly& f) const {
        QMatrix m(dimension(), dimension());
        for (std::size_t j = 0; j < dimension(); ++j) {
            const auto col = coords(f * Poly(monos_[j], Rational(1)));
            for (std::size_t i = 0; i < dimension(); ++i) m(i, j) = col[i];
        }
        return m;
    }

  private:
    std::vector<Poly> basis_;
    std::vector<Monomial> monos_;
    NormalFormReducer reducer_;
    std::unordered_map<Monomial, std::size_t> index_;
};

Poly compose(const UPoly& f, const Poly& x) {
    Poly acc;
    const auto& c = f.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + Poly(*it);
    return acc;
}

}  // namespace

RealSolutions real_solutions_zero_dim(const std::vector<Poly>& generators, const std::vector<Var>& vars, Rng& rng,
                                      const GroebnerLimits& limits, unsigned retries) {
    constexpr std::size_t kMaxQuotient = 400;
    RealSolutions out;
    const auto order = MonomialOrder::grevlex(vars);
    const auto basis = groebner_basis(generators, order, limits);
    if (is_unit_ideal(basis)) {
        out.method = "unit ideal";
        return out;
    }
    if (ideal_dimension(basis, order) != 0) throw std::domain_error("system is not zero-dimensional");
    const Quotient quotient(basis, order, kMaxQuotient);

    // A linear form l separates the points of a radical ideal exactly when
    // the characteristic polynomial of multiplication by l is squarefree;
    // then 1, l, ..., l^(D-1) is a basis of the quotient and every
    // coordinate is a polynomial in l.
    for (unsigned attempt = 0; attempt < retries; ++attempt) {
        limits.effective_deadline().check("real solving");
        Poly form;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            const std::int64_t w = attempt == 0 ? static_cast<std::int64_t>(i + 1)
                                                : rng.uniform(1, 40) * (rng.uniform(0, 1) ? 1 : -1);
            form += Poly(vars[i]) * Rational(w);
        }
        const UPoly chi = characteristic_polynomial(quotient.multiplication(form), limits.effective_deadline());
        const UPoly sq = squarefree_part(chi).monic();
        const Quotient* q = &quotient;
        std::optional<Quotient> radical;
        if (sq.degree() < chi.degree()) {
            std::vector<Poly> gens = basis;
            gens.push_back(compose(sq, form));
            radical.emplace(groebner_basis(gens, order, limits), order, kMaxQuotient);
            if (radical->dimension() != static_cast<std::size_t>(sq.degree())) continue;
            q = &*radical;
        }
        const std::size_t d = q->dimension();
        const QMatrix mult = q->multiplication(form);
        QMatrix krylov(d, d);
        std::vector<Rational> col = q->coords(Poly(1));
        for (std::size_t k = 0; k < d; ++k) {
            for (std::size_t i = 0; i < d; ++i) krylov(i, k) = col[i];
            col = mult.apply(col);
        }
        AlgebraicPoint shape{sq, {}, {}};
        bool ok = true;
        for (Var z : vars) {
            auto a = solve(krylov, q->coords(Poly(z)), limits.effective_deadline());
            if (!a) {
                ok = false;
                break;
            }
            shape.coordinates.emplace_back(z, UPoly(std::move(*a)));
        }
        if (!ok) continue;
        for (const auto& root : isolate_real_roots(sq)) {
            AlgebraicPoint p = shape;
            p.root = root;
            out.points.push_back(std::move(p));
        }
        out.count = out.points.size();
        out.method = "shape position";
        out.eliminant = sq;
        return out;
    }
    out.count = real_count_zero_dim(basis, order, kMaxQuotient, limits.effective_deadline());
    out.method = "trace form";
    return out;
}

}  // namespace relident
