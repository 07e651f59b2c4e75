#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace ftn {

// SplitMix64 finalizer: a bijective 64-bit mixer with full avalanche, used to
// derive statistically independent child seeds from (parent seed, index).
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Order-sensitive seed combiner: combine_seed(a, b) != combine_seed(b, a).
constexpr std::uint64_t combine_seed(std::uint64_t a, std::uint64_t b) noexcept {
  return mix64(a ^ (mix64(b) + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
}

// Salt for per-point seeds, taken from the bit pattern of the operating point
// itself rather than its position in the sweep grid, so that a given
// (seed, Eb/N0) pair reproduces the same frames no matter how the grid around
// it is arranged.
inline std::uint64_t ebn0_seed_salt(double ebn0_db) noexcept {
  return std::bit_cast<std::uint64_t>(ebn0_db);
}

// mt19937_64 with a hand-rolled Box-Muller transform. std::normal_distribution
// is implementation-defined, which would break bit-reproducibility across
// standard libraries; Box-Muller over the raw 64-bit stream is portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  int bit() { return static_cast<int>(gen_() >> 63); }

  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]: keeps the log finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ftn
