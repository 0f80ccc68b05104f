#ifndef RELIDENT_ALGEBRA_RANDOM_HPP
#define RELIDENT_ALGEBRA_RANDOM_HPP

#include <cstdint>
#include <random>

namespace relident {

/// Seeded generator with a fixed integer mapping, so draws are identical
/// across standard library implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(next());
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x = next();
        while (x >= limit) x = next();
        return lo + static_cast<std::int64_t>(x % span);
    }

    /// Uniform residue in [1, p-1].
    std::uint64_t nonzero_mod(std::uint64_t p) { return 1 + static_cast<std::uint64_t>(uniform(0, static_cast<std::int64_t>(p - 2))); }

  private:
    std::mt19937_64 engine_;
};

/// Mixes a value into a seed (splitmix64 finalizer).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t value) {
    std::uint64_t z = seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace relident

#endif
