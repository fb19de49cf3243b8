#include "besovtree/analytic.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

#include "besovtree/quadrature.hpp"

namespace besovtree {

AnalyticFunction::AnalyticFunction(
    std::vector<std::complex<double>> coefficients, std::string label)
    : coeffs_(std::move(coefficients)), label_(std::move(label)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

std::complex<double> AnalyticFunction::operator()(
    std::complex<double> z) const {
  if (std::abs(z) >= 1.0)
    throw std::domain_error("evaluation outside the open disc");
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * z + *it;
  return acc;
}

AnalyticFunction AnalyticFunction::derivative() const {
  std::vector<std::complex<double>> d;
  if (coeffs_.size() > 1) {
    d.reserve(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
      d.push_back(static_cast<double>(k) * coeffs_[k]);
  }
  return AnalyticFunction(std::move(d), label_.empty() ? "" : label_ + "'");
}

AnalyticFunction make_polynomial(const std::vector<double>& coefficients) {
  std::vector<std::complex<double>> c(coefficients.begin(),
                                      coefficients.end());
  std::string label = "poly:";
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", coefficients[i]);
    label += (i ? "," : "") + std::string(buf);
  }
  return AnalyticFunction(std::move(c), label);
}

AnalyticFunction make_log_kernel(int terms) {
  if (terms < 1) throw std::invalid_argument("logkernel wants >= 1 term");
  std::vector<std::complex<double>> c(terms + 1, 0.0);
  for (int n = 1; n <= terms; ++n) c[n] = 1.0 / n;
  return AnalyticFunction(std::move(c),
                          "logkernel:" + std::to_string(terms));
}

AnalyticFunction make_lacunary(int top_scale) {
  if (top_scale < 0 || top_scale > 16)
    throw std::invalid_argument("lacunary scale must lie in [0, 16]");
  std::vector<std::complex<double>> c((std::size_t{1} << top_scale) + 1, 0.0);
  for (int k = 0; k <= top_scale; ++k)
    c[std::size_t{1} << k] += std::pow(2.0, -0.5 * k);
  return AnalyticFunction(std::move(c),
                          "lacunary:" + std::to_string(top_scale));
}

AnalyticFunction parse_function(const std::string& name) {
  const auto colon = name.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("unknown function '" + name + "'");
  const std::string family = name.substr(0, colon);
  const std::string args = name.substr(colon + 1);
  if (family == "poly") {
    std::vector<double> coeffs;
    std::size_t pos = 0;
    while (pos <= args.size()) {
      const auto comma = args.find(',', pos);
      const std::string tok =
          args.substr(pos, comma == std::string::npos ? comma : comma - pos);
      char* end = nullptr;
      const double v = std::strtod(tok.c_str(), &end);
      if (tok.empty() || end != tok.c_str() + tok.size())
        throw std::invalid_argument("bad coefficient '" + tok + "'");
      coeffs.push_back(v);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return make_polynomial(coeffs);
  }
  char* end = nullptr;
  const long k = std::strtol(args.c_str(), &end, 10);
  if (args.empty() || end != args.c_str() + args.size())
    throw std::invalid_argument("bad argument '" + args + "'");
  if (family == "logkernel") return make_log_kernel(static_cast<int>(k));
  if (family == "lacunary") return make_lacunary(static_cast<int>(k));
  throw std::invalid_argument("unknown function family '" + family + "'");
}

std::vector<AnalyticFunction> builtin_suite() {
  std::vector<AnalyticFunction> suite;
  suite.push_back(make_polynomial({0, 1}));
  suite.push_back(make_polynomial({0.25, 1, -0.5, 0, 0.75, 0, -0.25, 0, 0.5}));
  suite.push_back(make_log_kernel(256));
  suite.push_back(make_lacunary(7));
  return suite;
}

BesovNormReport besov_norm_continuum(const AnalyticFunction& f,
                                     const WeightSpec& w, double p,
                                     const Tree& tree) {
  if (!(p > 1.0)) throw std::domain_error("p must lie in (1, inf)");
  if (tree.kind() != TreeKind::dyadic)
    throw UnsupportedOperation("continuum norm requires a dyadic tree");
  const AnalyticFunction df = f.derivative();
  const double inv_pi = std::numbers::inv_pi;
  const auto energy = [&](double r, double theta) {
    const std::complex<double> z = std::polar(r, theta);
    const double s = 1.0 - r * r;
    const double fp = std::abs(df(z));
    return std::pow(s * fp, p) * w(z) / (s * s) * r * inv_pi;
  };

  BesovNormReport rep;
  for (NodeId v = 0; v < tree.size(); ++v)
    rep.box_sum += integrate_box_checked(box_geometry(tree, v), energy);
  for (const NodeId v : tree.leaves()) {
    Box annulus = box_geometry(tree, v);
    annulus.r_lo = annulus.r_hi;
    annulus.r_hi = 1.0;
    rep.tail_sum += integrate_box_checked(annulus, energy);
  }
  rep.constant_term = std::abs(f(std::complex<double>(0.0)));
  rep.norm = std::pow(rep.box_sum + rep.tail_sum, 1.0 / p) + rep.constant_term;
  return rep;
}

TreeMajorant phi_majorant(const AnalyticFunction& f, const Tree& tree,
                          int grid) {
  if (tree.kind() != TreeKind::dyadic)
    throw UnsupportedOperation("majorant requires a dyadic tree");
  if (grid < 2) throw std::invalid_argument("grid must be >= 2");
  const AnalyticFunction df = f.derivative();

  TreeMajorant out;
  out.delta = make_tree_function(tree);
  out.delta.node[tree.root()] = std::abs(f(std::complex<double>(0.0)));
  for (NodeId v = 1; v < tree.size(); ++v) {
    const Box b = box_geometry(tree, v);
    double best = -1.0, best_r = b.r_lo;
    for (int i = 0; i < grid; ++i) {
      const double r = b.r_lo + (b.r_hi - b.r_lo) * i / (grid - 1);
      for (int j = 0; j < grid; ++j) {
        const double theta =
            b.theta_lo + (b.theta_hi - b.theta_lo) * j / (grid - 1);
        const double val = std::abs(df(std::polar(r, theta)));
        if (val > best) {
          best = val;
          best_r = r;
        }
      }
    }
    out.delta.node[v] = (1.0 - best_r) * best;
  }
  out.phi = hardy(out.delta, true);
  return out;
}

double radial_variation(const AnalyticFunction& f, double radius,
                        double theta) {
  if (!(radius >= 0.0 && radius < 1.0))
    throw std::domain_error("radius must lie in [0, 1)");
  const AnalyticFunction df = f.derivative();
  return adaptive_simpson(
      [&](double r) { return std::abs(df(std::polar(r, theta))); }, 0.0,
      radius, 1e-9);
}

std::complex<double> dirichlet_inner(const AnalyticFunction& f,
                                     const AnalyticFunction& g) {
  const auto& a = f.coefficients();
  const auto& b = g.coefficients();
  std::complex<double> s = a[0] * std::conj(b[0]);
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t k = 1; k < n; ++k)
    s += static_cast<double>(k) * a[k] * std::conj(b[k]);
  return s;
}

std::complex<double> reproducing_kernel(std::complex<double> z,
                                        std::complex<double> w) {
  return 1.0 - std::log(1.0 - w * std::conj(z));
}

double reproducing_check(const AnalyticFunction& f, std::complex<double> z) {
  // coefficients of k_z: 1, conj(z)^n / n
  const auto& a = f.coefficients();
  std::complex<double> pairing = a[0];
  std::complex<double> zbar_pow = std::conj(z);
  for (std::size_t n = 1; n < a.size(); ++n) {
    pairing += static_cast<double>(n) * a[n] *
               std::conj(zbar_pow / static_cast<double>(n));
    zbar_pow *= std::conj(z);
  }
  return std::abs(f(z) - pairing);
}

std::complex<double> theta_transform(const std::vector<double>& h,
                                     const TreeMeasure& mu,
                                     std::complex<double> z) {
  if (!mu.has_atoms())
    throw std::invalid_argument("measure lacks an atomic representation");
  if (h.size() != mu.tree().size())
    throw std::invalid_argument("function array must match the tree size");
  if (std::abs(z) >= 1.0)
    throw std::domain_error("evaluation outside the open disc");
  std::complex<double> s = 0.0;
  for (const MeasureAtom& atom : mu.atoms()) {
    const double aw = std::abs(atom.position);
    if (aw == 0.0) continue;  // the |w| factor kills the term
    const std::complex<double> g =
        (aw / std::conj(atom.position)) * h[atom.node];
    s += reproducing_kernel(atom.position, z) * g * atom.mass;
  }
  return s;
}

double kernel_positivity(std::complex<double> z, std::complex<double> w) {
  return (std::abs(w) * (1.0 - std::norm(z)) / (1.0 - z * std::conj(w)))
      .real();
}

}  // namespace besovtree
