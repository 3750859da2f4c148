#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace musecog {

// Counter-based PRNG: output i is a hash of (key, i), so streams derived via
// split() are independent of draw order and carry no shared mutable state.
// The mixer is the splitmix64 finalizer.
class Rng {
 public:
  explicit Rng(uint64_t seed) : key_(mix(seed ^ kKeyTag)) {}

  uint64_t next_u64() { return mix(key_ + (++counter_) * kGamma); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller with a cached spare.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * kPi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  // Unbiased integer in [0, n) via rejection.
  uint64_t below(uint64_t n) {
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return v % n;
  }

  // Derived stream keyed by (parent key, tag); draws from the child do not
  // disturb the parent.
  Rng split(uint64_t tag) const {
    Rng child(0);
    child.key_ = mix(key_ ^ mix(tag ^ kSplitTag));
    child.counter_ = 0;
    child.has_spare_ = false;
    return child;
  }

  Rng split(uint64_t a, uint64_t b) const { return split(a).split(b); }
  Rng split(uint64_t a, uint64_t b, uint64_t c) const {
    return split(a).split(b).split(c);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  static uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  static constexpr uint64_t kKeyTag = 0x6D757365636F675AULL;
  static constexpr uint64_t kSplitTag = 0x53504C4954544147ULL;
  static constexpr double kPi = 3.14159265358979323846;

  uint64_t key_ = 0;
  uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace musecog
