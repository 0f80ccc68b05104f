// Internal dense-exponent representation used by the Groebner engine.
#ifndef RELIDENT_SRC_ALGEBRA_DENSE_POLY_HPP
#define RELIDENT_SRC_ALGEBRA_DENSE_POLY_HPP

#include "relident/algebra/monomial_order.hpp"
#include "relident/algebra/poly.hpp"
#include "relident/algebra/resource.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace relident::detail {

/// Encodes monomials as int32 keys whose plain lexicographic comparison is
/// the term order. Per block b holding variables v_s..v_e the key stores
/// [deg_b, -e_e, ..., -e_s], so keys are additive under multiplication.
class Layout {
  public:
    explicit Layout(const MonomialOrder& completed_order);

    int nvars() const { return static_cast<int>(vars_.size()); }
    int key_len() const { return key_len_; }
    const std::vector<Var>& vars() const { return vars_; }
    int index_of(Var v) const;
    bool has(Var v) const { return index_.count(v) != 0; }

    void encode(const Monomial& m, std::int32_t* key) const;
    Monomial decode(const std::int32_t* key) const;
    std::uint32_t exponent(const std::int32_t* key, int var_index) const {
        return static_cast<std::uint32_t>(-key[exp_pos_[var_index]]);
    }

    bool divides(const std::int32_t* a, const std::int32_t* b) const {
        for (int p : exp_pos_) {
            if (a[p] < b[p]) return false;
        }
        return true;
    }
    bool coprime(const std::int32_t* a, const std::int32_t* b) const {
        for (int p : exp_pos_) {
            if (a[p] != 0 && b[p] != 0) return false;
        }
        return true;
    }
    void lcm(const std::int32_t* a, const std::int32_t* b, std::int32_t* out) const;
    std::uint32_t total_degree(const std::int32_t* key) const {
        std::uint32_t d = 0;
        for (int p : deg_pos_) d += static_cast<std::uint32_t>(key[p]);
        return d;
    }
    /// Bit i set when variable (i mod 64) occurs.
    std::uint64_t support_mask(const std::int32_t* key) const;
    bool is_one(const std::int32_t* key) const { return total_degree(key) == 0; }

    static int compare(const std::int32_t* a, const std::int32_t* b, int len) {
        for (int i = 0; i < len; ++i) {
            if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
        }
        return 0;
    }

  private:
    std::vector<Var> vars_;
    std::unordered_map<Var, int> index_;
    std::vector<int> exp_pos_;
    std::vector<int> deg_pos_;
    std::vector<int> block_of_;
    int key_len_ = 0;
};

/// Polynomial with integer coefficients, terms sorted by descending key.
struct DPoly {
    std::vector<std::int32_t> keys;
    std::vector<Integer> coeffs;
    std::uint32_t sugar = 0;

    std::size_t size() const { return coeffs.size(); }
    bool empty() const { return coeffs.empty(); }
    const std::int32_t* key(std::size_t i, int len) const { return keys.data() + i * static_cast<std::size_t>(len); }
};

/// Converts p to a primitive integer polynomial; `scale` receives the
/// rational s with p = s * result.
DPoly to_dense(const Poly& p, const Layout& layout, Rational* scale = nullptr);
Poly to_poly(const DPoly& p, const Layout& layout, const Rational& scale = Rational(1));

/// Divides all coefficients by their gcd and fixes the leading sign positive.
void make_primitive(DPoly& p);

/// Reducer basis entry with cached leading data.
struct Reducer {
    const DPoly* poly;
    std::uint64_t lead_mask;
};

/// S-polynomial of f and g with the usual sugar bookkeeping, not primitive.
DPoly s_polynomial(const DPoly& f, const DPoly& g, const Layout& layout);

/// Full (top and tail) reduction of h by the reducers, fraction free.
/// `multiplier`, when given, is multiplied by the factor applied to the
/// original h, so that multiplier * h_in - remainder lies in the ideal.
/// Throws ResourceExceeded when `deadline` expires.
DPoly reduce_full(DPoly h, const std::vector<Reducer>& reducers, const Layout& layout, const Deadline& deadline,
                  Rational* multiplier = nullptr, bool tail = true);

}  // namespace relident::detail

#endif
