#pragma once

#include <cstdint>
#include <cmath>

// Small deterministic RNG used everywhere so outputs are byte-identical across
// platforms and library versions (std distributions are not pinned by the
// standard).

namespace hco {

inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t mix_seed(uint64_t a, uint64_t b) {
  uint64_t s = a ^ (0x9e3779b97f4a7c15ULL + (b << 6) + (b >> 2));
  return splitmix64(s);
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed ^ 0xd1b54a32d192ed03ULL) {
    // warm up so small seeds decorrelate
    next();
    next();
  }

  uint64_t next() { return splitmix64(state_); }

  // uniform in [0,1)
  double uniform() { return (next() >> 11) * 0x1.0p-53; }

  uint64_t below(uint64_t n) { return next() % n; }

  // standard normal via Box-Muller
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace hco
