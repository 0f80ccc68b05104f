#ifndef RELIDENT_ALGEBRA_MATRIX_HPP
#define RELIDENT_ALGEBRA_MATRIX_HPP

#include "relident/algebra/rational.hpp"
#include "relident/algebra/resource.hpp"
#include "relident/algebra/upoly.hpp"

#include <optional>
#include <vector>

namespace relident {

/// Dense row-major matrix over Q.
class QMatrix {
  public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static QMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<Rational> apply(const std::vector<Rational>& v) const;
    Rational trace() const;

    friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator*(const Rational& s, const QMatrix& a);
    friend bool operator==(const QMatrix&, const QMatrix&) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

Rational determinant(QMatrix m);
std::size_t rank(QMatrix m);

/// Some x with a*x = b, or nullopt when inconsistent.
std::optional<std::vector<Rational>> solve(QMatrix a, std::vector<Rational> b, const Deadline& deadline = {});

/// det(t*I - m), exact: Hessenberg reduction modulo 62-bit primes and
/// Chinese remaindering up to a Hadamard bound on the coefficients.
UPoly characteristic_polynomial(const QMatrix& m, const Deadline& deadline = {});

/// Fraction-free determinant of an integer matrix (Bareiss).
Integer bareiss_determinant(std::vector<std::vector<Integer>> m);

/// Determinant modulo a prime p < 2^62.
std::uint64_t determinant_mod(std::vector<std::vector<std::uint64_t>> m, std::uint64_t p);

/// (a*b) mod p and a^e mod p without overflow.
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p);

}  // namespace relident

#endif
