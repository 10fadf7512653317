#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace ptrrank {

// Deterministic RNG. mt19937_64 output is fixed by the standard, and the
// uniform/normal transforms are implemented here instead of <random>
// distributions (whose sequences are implementation-defined), so the same
// seed gives the same stream on every platform and compiler.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next_u64() { return eng_(); }

  // [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // inclusive range
  int uniform_int(int lo, int hi) {
    const auto span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(eng_() % span);
  }

  // Box-Muller, one cached draw.
  double normal(double mu = 0.0, double sigma = 1.0) {
    if (has_cached_) {
      has_cached_ = false;
      return mu + sigma * cached_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(theta);
    has_cached_ = true;
    return mu + sigma * r * std::cos(theta);
  }

  // Fisher-Yates, self-contained for cross-stdlib reproducibility.
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      const size_t j = static_cast<size_t>(uniform_int(0, static_cast<int>(i) - 1));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 eng_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace ptrrank
