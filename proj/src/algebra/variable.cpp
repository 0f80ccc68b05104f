#include "relident/algebra/variable.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace relident {
namespace {

class Interner {
  public:
    Interner() { intern(""); }

    std::uint32_t intern(std::string_view name) {
        {
            std::shared_lock lock(mutex_);
            auto it = ids_.find(std::string(name));
            if (it != ids_.end()) return it->second;
        }
        std::unique_lock lock(mutex_);
        auto [it, inserted] = ids_.try_emplace(std::string(name), static_cast<std::uint32_t>(names_.size()));
        if (inserted) names_.emplace_back(name);
        return it->second;
    }

    const std::string& name(std::uint32_t id) {
        std::shared_lock lock(mutex_);
        // deque never relocates elements, so the reference outlives the lock.
        return names_.at(id);
    }

  private:
    std::shared_mutex mutex_;
    std::unordered_map<std::string, std::uint32_t> ids_;
    std::deque<std::string> names_;
};

Interner& interner() {
    static Interner instance;
    return instance;
}

}  // namespace

Var::Var(std::string_view name) : id_(interner().intern(name)) {}

const std::string& Var::name() const { return interner().name(id_); }

std::vector<Var> make_vars(const std::vector<std::string>& names) {
    std::vector<Var> out;
    out.reserve(names.size());
    for (const auto& n : names) out.emplace_back(n);
    return out;
}

}  // namespace relident
