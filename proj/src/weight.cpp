#include "besovtree/weight.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "besovtree/quadrature.hpp"

namespace besovtree {

double WeightSpec::operator()(std::complex<double> z) const {
  if (kind == Kind::power) {
    const double s = 1.0 - std::norm(z);
    return std::pow(s, a);
  }
  return fn(z);
}

WeightSpec power_weight(double a, double p) {
  if (!(a >= 0.0 && a < 1.0))
    throw std::invalid_argument("power weight exponent must lie in [0, 1)");
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::invalid_argument("p must lie in (1, inf)");
  WeightSpec w;
  w.kind = WeightSpec::Kind::power;
  w.a = a;
  w.p = p;
  return w;
}

WeightSpec custom_weight(std::function<double(std::complex<double>)> fn,
                         double p) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::invalid_argument("p must lie in (1, inf)");
  WeightSpec w;
  w.kind = WeightSpec::Kind::custom;
  w.p = p;
  w.fn = std::move(fn);
  return w;
}

TreeWeight TreeWeight::from_values(const Tree& tree,
                                   std::vector<double> values) {
  if (values.size() != tree.size())
    throw std::invalid_argument("weight array must match the tree size");
  for (const double v : values)
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument("weight values must be positive and finite");
  TreeWeight tw;
  tw.tree = &tree;
  tw.value = std::move(values);
  return tw;
}

TreeWeight tree_weight(const WeightSpec& w, const Tree& tree,
                       WeightMode mode) {
  if (tree.kind() != TreeKind::dyadic)
    throw UnsupportedOperation("tree weight requires a dyadic tree");
  std::vector<double> values(tree.size());
  for (NodeId v = 0; v < tree.size(); ++v) {
    const Box b = box_geometry(tree, v);
    double val;
    if (mode == WeightMode::center) {
      // radial form for the power family keeps the value exactly equal
      // across a level (theta only enters through rounding)
      const double rc = 0.5 * (b.r_lo + b.r_hi);
      val = w.kind == WeightSpec::Kind::power
                ? std::pow(1.0 - rc * rc, w.a)
                : w(std::polar(rc, 0.5 * (b.theta_lo + b.theta_hi)));
    } else if (w.kind == WeightSpec::Kind::power) {
      // area average of (1-r^2)^a, radial part in closed form
      const double u_hi = 1.0 - b.r_lo * b.r_lo, u_lo = 1.0 - b.r_hi * b.r_hi;
      val = (std::pow(u_hi, w.a + 1.0) - std::pow(u_lo, w.a + 1.0)) /
            ((w.a + 1.0) * (u_hi - u_lo));
    } else {
      const double num = integrate_box_checked(
          b, [&](double r, double t) { return w(std::polar(r, t)) * r; });
      const double den =
          0.5 * (b.r_hi * b.r_hi - b.r_lo * b.r_lo) * (b.theta_hi - b.theta_lo);
      val = num / den;
    }
    if (!(val > 0.0) || !std::isfinite(val))
      throw std::invalid_argument("weight sample is not positive and finite");
    values[v] = val;
  }
  return TreeWeight::from_values(tree, std::move(values));
}

RegReport reg_check(const WeightSpec& w, double c, int samples,
                    std::uint64_t seed, double ceiling) {
  if (!(c > 0.0 && c < 1.0))
    throw std::invalid_argument("distance bound must lie in (0, 1)");
  if (samples < 1) throw std::invalid_argument("samples must be positive");
  Rng rng(seed);
  double max_ratio = 0.0;
  for (int i = 0; i < samples; ++i) {
    // log-uniform approach to the boundary, capped where 1 - |z|^2 still
    // carries ~13 good bits; deeper pairs would measure cancellation in
    // the evaluation rather than oscillation of the weight
    const int k = 1 + static_cast<int>(i % 40);
    const double t = std::ldexp(1.0, -k) * (0.5 + 0.5 * rng.uniform());
    const std::complex<double> z =
        std::polar(1.0 - t, rng.uniform(0.0, 2.0 * std::numbers::pi));
    // w at pseudo-hyperbolic distance |u| <= c from z
    const std::complex<double> u =
        std::polar(c * std::sqrt(rng.uniform()), rng.uniform(0.0, 2.0 * std::numbers::pi));
    const std::complex<double> zw = (z - u) / (1.0 - std::conj(z) * u);
    const double rz = w(z), rw = w(zw);
    double ratio;
    if (!(rz > 0.0) || !(rw > 0.0) || !std::isfinite(rz) || !std::isfinite(rw))
      ratio = std::numeric_limits<double>::infinity();
    else
      ratio = std::max(rz / rw, rw / rz);
    max_ratio = std::max(max_ratio, ratio);
  }
  return {max_ratio, std::isfinite(max_ratio) && max_ratio <= ceiling};
}

}  // namespace besovtree
