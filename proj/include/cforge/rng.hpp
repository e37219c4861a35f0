#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace cforge {

// Seeded generator whose output sequence is identical on every platform.
// std::uniform_int_distribution and std::shuffle are implementation
// defined, so bounded draws and shuffling are done here.
class DeterministicRng {
  public:
    explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound);

    template <class T>
    void shuffle(std::vector<T> &items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            using std::swap;
            swap(items[i - 1], items[j]);
        }
    }

  private:
    std::mt19937_64 engine_;
};

// FNV-1a, stable across runs and compilers.
std::uint64_t stable_hash(std::string_view bytes, std::uint64_t seed = 0);

} // namespace cforge
