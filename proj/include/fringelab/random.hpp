#pragma once

// PCG-XSL-RR 128/64 (pcg64 with selectable stream). Each Seed maps to
// (state from master, increment from stream), so replicas indexed by stream
// draw from distinct LCG sequences. The algorithm is fixed: archived seeds
// reproduce exactly.

#include <cstdint>
#include <limits>

namespace fringelab {

struct Seed {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;

  friend bool operator==(const Seed&, const Seed&) = default;
};

class Pcg64 {
 public:
  using result_type = std::uint64_t;

  explicit Pcg64(Seed seed) {
    using u128 = unsigned __int128;
    inc_ = (static_cast<u128>(seed.stream) << 1) | 1u;
    state_ = 0;
    step();
    state_ += static_cast<u128>(mix(seed.master)) << 64 | mix(seed.master ^ 0x9e3779b97f4a7c15ULL);
    step();
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    step();
    const auto hi = static_cast<std::uint64_t>(state_ >> 64);
    const auto lo = static_cast<std::uint64_t>(state_);
    const unsigned rot = static_cast<unsigned>(state_ >> 122);
    const std::uint64_t x = hi ^ lo;
    return (x >> rot) | (x << ((64u - rot) & 63u));
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound) by Lemire's nearly-divisionless method.
  std::uint64_t below(std::uint64_t bound);

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  void step() {
    using u128 = unsigned __int128;
    constexpr u128 kMultiplier = (static_cast<u128>(0x2360ed051fc65da4ULL) << 64) | 0x4385df649fccf645ULL;
    state_ = state_ * kMultiplier + inc_;
  }

  unsigned __int128 state_;
  unsigned __int128 inc_;
};

inline std::uint64_t Pcg64::below(std::uint64_t bound) {
  using u128 = unsigned __int128;
  u128 m = static_cast<u128>((*this)()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<u128>((*this)()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace fringelab
