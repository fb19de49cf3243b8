#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "besovtree/rng.hpp"
#include "besovtree/tree.hpp"

namespace besovtree {

// Weight on the disc paired with an exponent p in (1, inf). The power
// family rho(z) = (1-|z|^2)^a is admissible for 0 <= a < 1; custom weights
// are caller-supplied samplers with no admissibility guarantee.
struct WeightSpec {
  enum class Kind { power, custom };
  Kind kind = Kind::power;
  double a = 0.0;  // power exponent
  double p = 2.0;
  std::function<double(std::complex<double>)> fn;

  double operator()(std::complex<double> z) const;
};

WeightSpec power_weight(double a, double p = 2.0);
WeightSpec custom_weight(std::function<double(std::complex<double>)> fn,
                         double p = 2.0);

// Strictly positive finite value per node.
struct TreeWeight {
  const Tree* tree = nullptr;
  std::vector<double> value;

  static TreeWeight from_values(const Tree& tree, std::vector<double> values);
};

enum class WeightMode { center, average };

// Discretize onto the boxes of a dyadic tree: sample at the box center, or
// take the box average (closed form for the power family, quadrature for
// custom weights). A power weight in center mode depends only on depth.
TreeWeight tree_weight(const WeightSpec& w, const Tree& tree,
                       WeightMode mode = WeightMode::center);

struct RegReport {
  double max_ratio;
  bool pass;
};

// Probe the oscillation rho(z)/rho(w) over pairs at pseudo-hyperbolic
// distance at most c, pushing z toward the boundary as the sample count
// grows. pass iff the observed ratio stays finite and under the ceiling.
RegReport reg_check(const WeightSpec& w, double c, int samples,
                    std::uint64_t seed = kDefaultSeed, double ceiling = 1e12);

}  // namespace besovtree
