#pragma once

#include <cstdint>
#include <random>

namespace besovtree {

inline constexpr std::uint64_t kDefaultSeed = 0x9e3779b97f4a7c15ULL;

// Deterministic uniform stream. mt19937_64 output is mandated by the
// standard, so runs reproduce across platforms; the double mapping is
// hand-rolled because std::uniform_real_distribution is not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // uniform in {0, ..., n-1}
  std::uint64_t below(std::uint64_t n) { return eng_() % n; }

  std::uint64_t bits() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace besovtree
