#pragma once

#include <complex>
#include <string>
#include <vector>

#include "besovtree/measure.hpp"
#include "besovtree/operators.hpp"
#include "besovtree/tree.hpp"
#include "besovtree/weight.hpp"

namespace besovtree {

// Analytic function on the unit disc held as a truncated power series.
// Evaluation is Horner on the stored coefficients; requests must stay in
// the open disc. Truncation error of the named families is the series
// tail, bounded in the usual geometric way at radius r < 1.
class AnalyticFunction {
 public:
  explicit AnalyticFunction(std::vector<std::complex<double>> coefficients,
                            std::string label = "");

  std::complex<double> operator()(std::complex<double> z) const;
  AnalyticFunction derivative() const;

  const std::vector<std::complex<double>>& coefficients() const {
    return coeffs_;
  }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::string& label() const { return label_; }

 private:
  std::vector<std::complex<double>> coeffs_;
  std::string label_;
};

// Named families: "poly:<c0,c1,...>" (real coefficients),
// "logkernel:<N>" (sum of z^n/n up to N), "lacunary:<K>"
// (sum of 2^(-k/2) z^(2^k) for k = 0..K).
AnalyticFunction parse_function(const std::string& name);
AnalyticFunction make_polynomial(const std::vector<double>& coefficients);
AnalyticFunction make_log_kernel(int terms);
AnalyticFunction make_lacunary(int top_scale);

// Fixed suite used by the norm-comparison studies.
std::vector<AnalyticFunction> builtin_suite();

struct BesovNormReport {
  double norm = 0.0;       // ((box_sum + tail_sum))^(1/p) + |f(0)|
  double box_sum = 0.0;    // integral over the tree's boxes of the p-energy
  double tail_sum = 0.0;   // residual annulus below the leaf level
  double constant_term = 0.0;  // |f(0)|
};

// Weighted Besov norm of f: p-energy |(1-|z|^2) f'|^p rho dA / (1-|z|^2)^2
// integrated per box of the dyadic tree (checked Gauss-Legendre rule), the
// residual annulus estimated per leaf sector by the same rule.
BesovNormReport besov_norm_continuum(const AnalyticFunction& f,
                                     const WeightSpec& w, double p,
                                     const Tree& tree);

// Discrete majorant of f on the tree: increments carry the sampled sup of
// |f'| per box scaled by the distance to the boundary at the argmax sample;
// the root increment is |f(0)|. phi sums the increments along root paths
// and extends to the leaves.
struct TreeMajorant {
  TreeFunction delta;
  TreeFunction phi;
};
TreeMajorant phi_majorant(const AnalyticFunction& f, const Tree& tree,
                          int grid = 8);

// Integral of |f'| along the ray of angle theta from 0 to radius (< 1),
// by adaptive quadrature to absolute tolerance 1e-9.
double radial_variation(const AnalyticFunction& f, double radius,
                        double theta);

// Dirichlet pairing of truncated series, constant term included:
// f(0) conj(g(0)) + sum n a_n conj(b_n).
std::complex<double> dirichlet_inner(const AnalyticFunction& f,
                                     const AnalyticFunction& g);

// Reproducing kernel of the Dirichlet pairing at z, as a function of w:
// 1 + log(1/(1 - w conj(z))).
std::complex<double> reproducing_kernel(std::complex<double> z,
                                        std::complex<double> w);

// |f(z) - <f, k_z>| with the pairing taken in closed coefficient form.
double reproducing_check(const AnalyticFunction& f, std::complex<double> z);

// Kernel transform of a per-box function h against an atomic measure:
// sum over atoms w of (1 + log(1/(1 - z conj(w)))) (|w|/conj(w)) h(box(w))
// times the atom mass. Requires the measure's atomic representation.
std::complex<double> theta_transform(const std::vector<double>& h,
                                     const TreeMeasure& mu,
                                     std::complex<double> z);

// Re(|w| (1-|z|^2) / (1 - z conj(w))): nonnegative on the closed disc, and
// bounded below by kKernelPositivityFloor when w lies in the closed
// successor region of the box of z, for boxes of depth >= 1.
double kernel_positivity(std::complex<double> z, std::complex<double> w);

// Empirical floor for the restricted positivity above, measured by dense
// deterministic sampling over depths 1..45 including the extreme corner
// configurations: the family minimum decreases monotonically in depth
// toward 0.5 / (1/4 + 4 pi^2) = 0.01258544..., attained in the deep-box
// corner limit (z at the inner-radius corner, w on the boundary at the far
// arc corner). Asserted by the acceptance suite.
inline constexpr double kKernelPositivityFloor = 0.0125;

}  // namespace besovtree
