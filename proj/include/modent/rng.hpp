#pragma once

#include <cmath>
#include <cstdint>

namespace modent {

// Counter-based generator (splitmix64 core).  The stream for sample `index`
// under a given seed is a pure function of (seed, index), so a parallel sweep
// that assigns one stream per sample reproduces the serial reference bit for
// bit regardless of thread count or schedule.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t index)
      : state_(mix(seed ^ 0x243f6a8885a308d3ull) ^
               mix(index * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull)) {
    // burn two outputs to decorrelate neighbouring (seed, index) keys
    next_u64();
    next_u64();
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  // uniform in [0, 1), 53-bit resolution
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  // standard normal (Box-Muller, cosine branch)
  double normal() {
    double u1 = 0.0;
    do {
      u1 = next_double();
    } while (u1 <= 0.0);
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.28318530717958647692528676655900577 * u2);
  }

  // inclusive bounds
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next_u64() %
                                 static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace modent
