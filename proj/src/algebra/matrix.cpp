#include "relident/algebra/matrix.hpp"

#include "relident/algebra/modular.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace relident {

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

std::vector<Rational> QMatrix::apply(const std::vector<Rational>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector size mismatch");
    std::vector<Rational> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (!is_zero(data_[i * cols_ + j]) && !is_zero(v[j])) out[i] += data_[i * cols_ + j] * v[j];
        }
    }
    return out;
}

Rational QMatrix::trace() const {
    Rational t = 0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product size mismatch");
    QMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& x = a(i, k);
            if (is_zero(x)) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                if (!is_zero(b(k, j))) out(i, j) += x * b(k, j);
            }
        }
    }
    return out;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum size mismatch");
    QMatrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
    return out;
}

QMatrix operator*(const Rational& s, const QMatrix& a) {
    QMatrix out = a;
    for (auto& x : out.data_) x *= s;
    return out;
}

namespace {

// Row echelon form in place; returns pivot columns. `sign` flips on swaps.
std::vector<std::size_t> echelon(QMatrix& m, int* sign = nullptr, std::vector<Rational>* rhs = nullptr,
                                 const Deadline& deadline = {}) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        deadline.check("linear solve");
        std::size_t p = row;
        while (p < m.rows() && is_zero(m(p, col))) ++p;
        if (p == m.rows()) continue;
        if (p != row) {
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
            if (rhs) std::swap((*rhs)[p], (*rhs)[row]);
            if (sign) *sign = -*sign;
        }
        const Rational inv = Rational(1) / m(row, col);
        for (std::size_t i = row + 1; i < m.rows(); ++i) {
            if (is_zero(m(i, col))) continue;
            const Rational f = m(i, col) * inv;
            for (std::size_t j = col; j < m.cols(); ++j) {
                if (!is_zero(m(row, j))) m(i, j) -= f * m(row, j);
            }
            if (rhs) (*rhs)[i] -= f * (*rhs)[row];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

Rational determinant(QMatrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    int sign = 1;
    const auto pivots = echelon(m, &sign);
    if (pivots.size() < m.rows()) return 0;
    Rational d = sign;
    for (std::size_t i = 0; i < m.rows(); ++i) d *= m(i, i);
    return d;
}

std::size_t rank(QMatrix m) { return echelon(m).size(); }

std::optional<std::vector<Rational>> solve(QMatrix a, std::vector<Rational> b, const Deadline& deadline) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve: size mismatch");
    const auto pivots = echelon(a, nullptr, &b, deadline);
    for (std::size_t i = pivots.size(); i < a.rows(); ++i) {
        if (!is_zero(b[i])) return std::nullopt;
    }
    std::vector<Rational> x(a.cols());
    for (std::size_t k = pivots.size(); k-- > 0;) {
        const std::size_t col = pivots[k];
        Rational acc = b[k];
        for (std::size_t j = col + 1; j < a.cols(); ++j) {
            if (!is_zero(a(k, j))) acc -= a(k, j) * x[j];
        }
        x[col] = acc / a(k, col);
    }
    return x;
}

namespace {

// det(t*I - h) mod p, coefficients from degree 0 up, via Hessenberg form.
std::vector<std::uint64_t> charpoly_mod(std::vector<std::uint64_t> h, std::size_t n, std::uint64_t p) {
    auto at = [&](std::size_t i, std::size_t j) -> std::uint64_t& { return h[i * n + j]; };
    auto sub = [p](std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + p - b; };
    for (std::size_t k = 0; k + 2 < n; ++k) {
        std::size_t piv = k + 1;
        while (piv < n && at(piv, k) == 0) ++piv;
        if (piv == n) continue;
        if (piv != k + 1) {
            for (std::size_t j = 0; j < n; ++j) std::swap(at(piv, j), at(k + 1, j));
            for (std::size_t i = 0; i < n; ++i) std::swap(at(i, piv), at(i, k + 1));
        }
        const std::uint64_t inv = pow_mod(at(k + 1, k), p - 2, p);
        for (std::size_t i = k + 2; i < n; ++i) {
            if (at(i, k) == 0) continue;
            const std::uint64_t f = mul_mod(at(i, k), inv, p);
            for (std::size_t j = 0; j < n; ++j) at(i, j) = sub(at(i, j), mul_mod(f, at(k + 1, j), p));
            for (std::size_t r = 0; r < n; ++r) at(r, k + 1) = (at(r, k + 1) + mul_mod(f, at(r, i), p)) % p;
        }
    }
    // p_m = (t - h_mm) p_{m-1} - sum_{i<m} h_im prod_{j=i+1..m} h_{j,j-1} p_{i-1}
    std::vector<std::vector<std::uint64_t>> ps(n + 1);
    ps[0] = {1};
    for (std::size_t m = 1; m <= n; ++m) {
        std::vector<std::uint64_t> acc(m + 1, 0);
        const std::uint64_t d = at(m - 1, m - 1);
        for (std::size_t e = 0; e < m; ++e) {
            acc[e + 1] = (acc[e + 1] + ps[m - 1][e]) % p;
            acc[e] = sub(acc[e], mul_mod(d, ps[m - 1][e], p));
        }
        std::uint64_t prod = 1;
        for (std::size_t i = m - 1; i-- > 0;) {
            prod = mul_mod(prod, at(i + 1, i), p);
            if (prod == 0) break;
            const std::uint64_t f = mul_mod(at(i, m - 1), prod, p);
            if (f == 0) continue;
            for (std::size_t e = 0; e < ps[i].size(); ++e) acc[e] = sub(acc[e], mul_mod(f, ps[i][e], p));
        }
        ps[m] = std::move(acc);
    }
    return ps[n];
}

}  // namespace

UPoly characteristic_polynomial(const QMatrix& input, const Deadline& deadline) {
    const std::size_t n = input.rows();
    if (n != input.cols()) throw std::invalid_argument("characteristic polynomial of a non-square matrix");
    // Scale to an integer matrix L*A, whose characteristic polynomial has
    // coefficient L^(n-j) * chi_j at t^j, then reconstruct it from images
    // modulo 62-bit primes under a Hadamard bound on the principal minors.
    Integer scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), input(i, j).get_den_mpz_t());
        }
    }
    std::vector<Integer> a(n * n);
    double log2_entry = 0;
    for (std::size_t i = 0; i < n * n; ++i) {
        const Rational& q = input(i / n, i % n);
        a[i] = q.get_num() * (scale / q.get_den());
        if (sgn(a[i]) != 0) log2_entry = std::max(log2_entry, static_cast<double>(mpz_sizeinbase(a[i].get_mpz_t(), 2)));
    }
    double bound_bits = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        const double log2_binom = (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) / std::log(2.0);
        bound_bits = std::max(bound_bits, log2_binom + k * (0.5 * std::log2(static_cast<double>(k)) + log2_entry));
    }
    const std::size_t need_bits = static_cast<std::size_t>(bound_bits) + 3;

    std::vector<Integer> coeffs(n + 1);
    Integer modulus = 1;
    std::uint64_t p = std::uint64_t{1} << 62;
    std::vector<std::uint64_t> image(n * n);
    while (mpz_sizeinbase(modulus.get_mpz_t(), 2) <= need_bits) {
        deadline.check("characteristic polynomial");
        p = previous_prime(p);
        for (std::size_t i = 0; i < n * n; ++i) image[i] = mpz_fdiv_ui(a[i].get_mpz_t(), p);
        const auto r = charpoly_mod(image, n, p);
        const std::uint64_t m_inv = pow_mod(mpz_fdiv_ui(modulus.get_mpz_t(), p), p - 2, p);
        for (std::size_t e = 0; e <= n; ++e) {
            const std::uint64_t have = mpz_fdiv_ui(coeffs[e].get_mpz_t(), p);
            const std::uint64_t diff = r[e] >= have ? r[e] - have : r[e] + p - have;
            const std::uint64_t t = mul_mod(diff, m_inv, p);
            coeffs[e] += modulus * Integer(static_cast<unsigned long>(t));
        }
        modulus *= Integer(static_cast<unsigned long>(p));
    }
    const Integer half = modulus / 2;
    std::vector<Rational> out(n + 1);
    Integer power = 1;
    for (std::size_t e = n + 1; e-- > 0;) {
        if (coeffs[e] > half) coeffs[e] -= modulus;
        out[e] = Rational(coeffs[e], power);
        out[e].canonicalize();
        power *= scale;
    }
    return UPoly(std::move(out));
}

Integer bareiss_determinant(std::vector<std::vector<Integer>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(m[k][k]) == 0) {
            std::size_t p = k + 1;
            while (p < n && sgn(m[p][k]) == 0) ++p;
            if (p == n) return 0;
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mul_mod(r, a, p);
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t determinant_mod(std::vector<std::vector<std::uint64_t>> m, std::uint64_t p) {
    const std::size_t n = m.size();
    std::uint64_t det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m[piv][k] % p == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            std::swap(m[piv], m[k]);
            det = (p - det) % p;
        }
        det = mul_mod(det, m[k][k] % p, p);
        const std::uint64_t inv = pow_mod(m[k][k], p - 2, p);
        for (std::size_t i = k + 1; i < n; ++i) {
            const std::uint64_t f = mul_mod(m[i][k] % p, inv, p);
            if (f == 0) continue;
            for (std::size_t j = k; j < n; ++j) {
                m[i][j] = (m[i][j] % p + p - mul_mod(f, m[k][j] % p, p)) % p;
            }
        }
    }
    return det;
}

}  // namespace relident
