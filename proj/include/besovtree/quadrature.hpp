#pragma once

#include <functional>
#include <vector>

#include "besovtree/tree.hpp"

namespace besovtree {

// Gauss-Legendre rule on [-1, 1], nodes ascending.
struct GaussRule {
  std::vector<double> node, weight;
};

// Cached; nodes found by Newton iteration on the Legendre recurrence.
const GaussRule& gauss_legendre(int order);

// Tensor rule for integral over the box of f(r, theta) dr dtheta.
template <class F>
double integrate_box(const Box& b, int order, F&& f) {
  const GaussRule& g = gauss_legendre(order);
  const double rm = 0.5 * (b.r_lo + b.r_hi), rh = 0.5 * (b.r_hi - b.r_lo);
  const double tm = 0.5 * (b.theta_lo + b.theta_hi),
               th = 0.5 * (b.theta_hi - b.theta_lo);
  double sum = 0.0;
  for (int i = 0; i < order; ++i) {
    const double r = rm + rh * g.node[i];
    double row = 0.0;
    for (int j = 0; j < order; ++j)
      row += g.weight[j] * f(r, tm + th * g.node[j]);
    sum += g.weight[i] * row;
  }
  return sum * rh * th;
}

// Order 8 checked against order 16; the refined value is kept when the two
// disagree by more than 1e-9 relative.
template <class F>
double integrate_box_checked(const Box& b, F&& f) {
  const double q8 = integrate_box(b, 8, f);
  const double q16 = integrate_box(b, 16, f);
  const double scale = std::abs(q16) > 1e-300 ? std::abs(q16) : 1.0;
  return std::abs(q8 - q16) > 1e-9 * scale ? q16 : q8;
}

// Absolute-tolerance adaptive Simpson on [a, b].
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol);

}  // namespace besovtree
