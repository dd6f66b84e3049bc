#ifndef TAGCOOP_RANDOM_HPP
#define TAGCOOP_RANDOM_HPP

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace tagcoop {

// Seeded random source with portable derived distributions.
//
// The standard distributions (uniform_int_distribution, shuffle, ...) are
// implementation-defined, so every draw used by the simulator goes through
// the helpers below to keep results bit-identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform double in [0, 1) with 53 bits of resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t uniform_below(std::uint64_t bound) {
    // Rejection on the top multiple of bound.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  // Fisher-Yates, drawing from the back.
  template <class T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  bool operator==(const Rng&) const = default;

 private:
  std::mt19937_64 engine_;
};

// splitmix64 finalizer; decorrelates neighbouring seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream seed for run `run_index` under `master_seed`.
constexpr std::uint64_t derive_run_seed(std::uint64_t master_seed,
                                        std::uint64_t run_index) {
  return mix_seed(mix_seed(master_seed) ^ mix_seed(run_index + 0x5851f42d4c957f2dULL));
}

}  // namespace tagcoop

#endif  // TAGCOOP_RANDOM_HPP
