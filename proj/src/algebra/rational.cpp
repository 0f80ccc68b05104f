#include "relident/algebra/rational.hpp"

#include <functional>
#include <stdexcept>

namespace relident {

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Integer& z) { return z.get_str(); }

Rational parse_rational(const std::string& text) {
    Rational q;
    if (text.empty() || q.set_str(text, 10) != 0) {
        throw std::invalid_argument("not a rational number: '" + text + "'");
    }
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    q.canonicalize();
    return q;
}

std::size_t hash_value(const Integer& z) {
    // Limb-wise FNV style mix; stable for equal values.
    std::size_t h = static_cast<std::size_t>(sgn(z)) + 0x9e3779b97f4a7c15ULL;
    const std::size_t n = mpz_size(z.get_mpz_t());
    for (std::size_t i = 0; i < n; ++i) {
        h ^= static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), static_cast<mp_size_t>(i)));
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::size_t hash_value(const Rational& q) {
    return hash_value(q.get_num()) * 31 + hash_value(q.get_den());
}

Integer height(const Rational& q) {
    Integer n = abs(q.get_num());
    const Integer& d = q.get_den();
    return n > d ? n : d;
}

}  // namespace relident
