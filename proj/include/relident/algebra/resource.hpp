#ifndef RELIDENT_ALGEBRA_RESOURCE_HPP
#define RELIDENT_ALGEBRA_RESOURCE_HPP

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace relident {

/// Thrown when a computation hits a configured cap. Callers turn this into a
/// reported failure (elimination failure, Unknown verdict), never into a
/// guessed answer.
class ResourceExceeded : public std::runtime_error {
  public:
    ResourceExceeded(std::string limit, const std::string& detail)
        : std::runtime_error("resource limit exceeded (" + limit + "): " + detail), limit_(std::move(limit)) {}
    const std::string& limit() const { return limit_; }

  private:
    std::string limit_;
};

/// Wall-clock budget. A default-constructed deadline never expires.
class Deadline {
  public:
    using Clock = std::chrono::steady_clock;

    Deadline() = default;
    static Deadline after_seconds(double seconds) {
        Deadline d;
        if (seconds < 0 || seconds >= 1e12) return d;
        d.bounded_ = true;
        d.end_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
        return d;
    }

    bool bounded() const { return bounded_; }
    bool expired() const { return bounded_ && Clock::now() >= end_; }
    double remaining_seconds() const {
        if (!bounded_) return std::numeric_limits<double>::infinity();
        return std::chrono::duration<double>(end_ - Clock::now()).count();
    }
    /// The earlier of two deadlines.
    Deadline min(const Deadline& other) const {
        if (!bounded_) return other;
        if (!other.bounded_) return *this;
        return end_ <= other.end_ ? *this : other;
    }
    /// A sub-budget: `fraction` of what remains, capped by this deadline.
    Deadline fraction(double f) const {
        if (!bounded_) return *this;
        return after_seconds(std::max(0.0, remaining_seconds()) * f).min(*this);
    }
    void check(const char* where) const {
        if (expired()) throw ResourceExceeded("time", where);
    }

  private:
    bool bounded_ = false;
    Clock::time_point end_{};
};

/// Caps for a single Groebner computation. Defaults: total degree 40,
/// 20000 basis polynomials, 300 s.
struct GroebnerLimits {
    std::uint32_t max_degree = 40;
    std::size_t max_basis = 20000;
    double max_seconds = 300.0;
    /// Extra outer deadline (e.g. a stage budget); the earlier one wins.
    Deadline deadline{};

    Deadline effective_deadline() const { return Deadline::after_seconds(max_seconds).min(deadline); }
};

}  // namespace relident

#endif
