#include "relident/algebra/modular.hpp"

#include <stdexcept>

namespace relident {

std::uint64_t signed_mod(std::int64_t v, std::uint64_t p) {
    const std::int64_t r = v % static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
}

std::uint64_t previous_prime(std::uint64_t below) {
    Integer c(static_cast<unsigned long>(below - 1));
    if (mpz_even_p(c.get_mpz_t())) c -= 1;
    while (mpz_probab_prime_p(c.get_mpz_t(), 30) == 0) c -= 2;
    return c.get_ui();
}

std::optional<std::uint64_t> rational_mod(const Rational& q, std::uint64_t p) {
    static_assert(sizeof(unsigned long) == 8, "64-bit unsigned long required");
    const std::uint64_t nn = mpz_fdiv_ui(q.get_num_mpz_t(), p);
    const std::uint64_t dd = mpz_fdiv_ui(q.get_den_mpz_t(), p);
    if (dd == 0) return std::nullopt;
    if (dd == 1) return nn;
    return mul_mod(nn, pow_mod(dd, p - 2, p), p);
}

std::optional<std::uint64_t> evaluate_mod(const Poly& f, const std::unordered_map<Var, std::uint64_t>& point,
                                          std::uint64_t p) {
    std::uint64_t acc = 0;
    std::unordered_map<Var, std::vector<std::uint64_t>> powers;
    for (const auto& t : f.terms()) {
        auto c = rational_mod(t.coeff, p);
        if (!c) return std::nullopt;
        std::uint64_t v = *c;
        for (const auto& fac : t.mono.factors()) {
            auto it = point.find(fac.var);
            if (it == point.end()) throw std::invalid_argument("evaluate_mod: unassigned variable " + fac.var.name());
            auto& pw = powers[fac.var];
            if (pw.empty()) pw.push_back(1);
            while (pw.size() <= fac.exp) pw.push_back(mul_mod(pw.back(), it->second, p));
            v = mul_mod(v, pw[fac.exp], p);
        }
        acc = (acc + v) % p;
    }
    return acc;
}

std::size_t rank_mod(std::vector<std::vector<std::uint64_t>> rows, std::uint64_t p) {
    std::size_t rank = 0;
    if (rows.empty()) return 0;
    const std::size_t cols = rows[0].size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] % p == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        const std::uint64_t inv = pow_mod(rows[rank][c], p - 2, p);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            const std::uint64_t f = mul_mod(rows[r][c], inv, p);
            if (f == 0) continue;
            for (std::size_t k = c; k < cols; ++k) rows[r][k] = (rows[r][k] + p - mul_mod(f, rows[rank][k], p)) % p;
        }
        ++rank;
    }
    return rank;
}

}  // namespace relident
