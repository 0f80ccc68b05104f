#ifndef RELIDENT_ALGEBRA_RATIONAL_HPP
#define RELIDENT_ALGEBRA_RATIONAL_HPP

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>

namespace relident {

/// Arbitrary-precision integer.
using Integer = mpz_class;

/// Exact rational number. mpq_class keeps values in lowest terms with a
/// positive denominator, and zero is always 0/1.
using Rational = mpq_class;

inline int sign(const Rational& q) { return sgn(q); }
inline int sign(const Integer& z) { return sgn(z); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Decimal text form: "n" or "n/d".
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Parses "n" or "n/d" (optionally signed). Throws std::invalid_argument.
Rational parse_rational(const std::string& text);

std::size_t hash_value(const Rational& q);
std::size_t hash_value(const Integer& z);

/// Magnitude of numerator and denominator, whichever is larger.
Integer height(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace relident

#endif
