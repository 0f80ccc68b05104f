#ifndef RELIDENT_ALGEBRA_VARIABLE_HPP
#define RELIDENT_ALGEBRA_VARIABLE_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace relident {

/// Interned variable identifier. Two Vars compare equal iff their names do.
/// The numeric id reflects interning order only; it carries no meaning for
/// monomial orders, which are always given explicitly.
class Var {
  public:
    Var() = default;
    explicit Var(std::string_view name);

    static Var from_id(std::uint32_t id) {
        Var v;
        v.id_ = id;
        return v;
    }

    std::uint32_t id() const { return id_; }
    const std::string& name() const;

    friend bool operator==(Var a, Var b) { return a.id_ == b.id_; }
    friend auto operator<=>(Var a, Var b) { return a.id_ <=> b.id_; }

  private:
    std::uint32_t id_ = 0;
};

/// Compares by name, used wherever output must not depend on interning order.
struct VarNameLess {
    bool operator()(Var a, Var b) const { return a.name() < b.name(); }
};

std::vector<Var> make_vars(const std::vector<std::string>& names);

}  // namespace relident

template <>
struct std::hash<relident::Var> {
    std::size_t operator()(relident::Var v) const noexcept { return v.id(); }
};

#endif
