#include "besovtree/carleson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace besovtree {

namespace {

double conjugate(double p) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::domain_error("p must lie in (1, inf)");
  return p / (p - 1.0);
}

void check_pair(const TreeMeasure& mu, const TreeWeight& rho) {
  if (&mu.tree() != rho.tree)
    throw std::invalid_argument("measure and weight live on different trees");
}

void check_test_function(const TreeFunction& g, const TreeMeasure& mu) {
  if (g.tree != &mu.tree() || g.node.size() != mu.tree().size() ||
      (!g.boundary.empty() && g.boundary.size() != mu.tree().size()))
    throw std::invalid_argument("function and measure live on different trees");
  for (const double v : g.node)
    if (v < 0) throw std::domain_error("test function must be nonnegative");
  if (g.has_boundary())
    for (const NodeId v : g.tree->leaves())
      if (g.boundary[v] < 0)
        throw std::domain_error("test function must be nonnegative");
}

// Subtree sums of a per-node array, bottom-up.
std::vector<double> subtree_sums(const Tree& t, const std::vector<double>& f) {
  std::vector<double> out(t.size());
  const auto& order = t.level_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    double s = f[*it];
    for (const NodeId c : t.children(*it)) s += out[c];
    out[*it] = s;
  }
  return out;
}

}  // namespace

TreeFunction sigma(const TreeMeasure& mu, const TreeWeight& rho, double p) {
  check_pair(mu, rho);
  const double q = conjugate(p);
  const Tree& t = mu.tree();
  TreeFunction out = make_tree_function(t);
  for (NodeId v = 0; v < t.size(); ++v)
    out.node[v] =
        std::pow(rho.value[v], 1.0 - q) * std::pow(mu.subtree_mass(v), q);
  return out;
}

TCReport tc_constant(const TreeMeasure& mu, const TreeWeight& rho, double p) {
  const Tree& t = mu.tree();
  const TreeFunction s = sigma(mu, rho, p);
  const std::vector<double> ssum = subtree_sums(t, s.node);

  TCReport rep;
  rep.per_node_ratio.assign(t.size(),
                            std::numeric_limits<double>::quiet_NaN());
  rep.constant = 0.0;
  rep.argmax_node = t.root();
  for (NodeId v = 0; v < t.size(); ++v) {
    if (mu.subtree_mass(v) > 0) {
      const double ratio = ssum[v] / mu.subtree_mass(v);
      rep.per_node_ratio[v] = ratio;
      if (ratio > rep.constant) {
        rep.constant = ratio;
        rep.argmax_node = v;
      }
    } else if (ssum[v] > 0) {
      rep.finite = false;  // sigma charges a mu-null successor set
    }
  }
  if (!rep.finite)
    rep.constant = std::numeric_limits<double>::infinity();
  return rep;
}

namespace {

// Rayleigh quotient ||I phi||_{L^p(mu)} / ||phi||_{L^p(rho)}.
double quotient(const TreeFunction& phi, const TreeMeasure& mu,
                const TreeWeight& rho, double p) {
  const TreeFunction u = hardy(phi, true);
  const double den = weighted_lp_norm(phi, rho, p);
  if (den == 0.0) return 0.0;
  return weighted_lp_norm(u, mu, p) / den;
}

}  // namespace

EmbeddingReport embedding_norm_quadratic(const TreeMeasure& mu,
                                         const TreeWeight& rho,
                                         double rel_tol, int max_iterations) {
  check_pair(mu, rho);
  const Tree& t = mu.tree();
  const std::size_t n = t.size();

  EmbeddingReport rep;
  rep.method = EmbeddingReport::Method::exact_quadratic;
  rep.witness = make_tree_function(t, 1.0);
  if (mu.total_mass() == 0.0) return rep;

  TreeFunction phi = rep.witness;
  double lambda = 0.0;
  bool converged = false;
  int it = 0;
  while (it < max_iterations) {
    ++it;
    // normalize in the weighted 2-norm
    double nrm2 = 0.0;
    for (NodeId v = 0; v < n; ++v)
      nrm2 += phi.node[v] * phi.node[v] * rho.value[v];
    const double nrm = std::sqrt(nrm2);
    if (nrm == 0.0) break;
    for (NodeId v = 0; v < n; ++v) phi.node[v] /= nrm;

    // apply the self-adjoint operator, tracking the Rayleigh quotient
    const TreeFunction u = hardy(phi, true);
    double q = 0.0;
    for (NodeId v = 0; v < n; ++v)
      q += u.node[v] * u.node[v] * mu.interior_mass(v);
    for (const NodeId v : t.leaves())
      q += u.boundary[v] * u.boundary[v] * mu.boundary_mass(v);

    TreeFunction next = hardy_adjoint(u, mu);
    for (NodeId v = 0; v < n; ++v) next.node[v] /= rho.value[v];

    if (it > 1 && std::abs(q - lambda) <= rel_tol * std::max(q, 1e-300)) {
      lambda = q;
      converged = true;
      break;
    }
    lambda = q;
    phi = std::move(next);
  }

  rep.iterations = it;
  rep.converged = converged;
  rep.norm_estimate = std::sqrt(std::max(lambda, 0.0));
  rep.witness = phi;
  rep.certified_lower = quotient(phi, mu, rho, 2.0);
  return rep;
}

EmbeddingReport embedding_norm_general(const TreeMeasure& mu,
                                       const TreeWeight& rho, double p,
                                       int restarts, std::uint64_t seed,
                                       double rel_tol, int max_iterations) {
  check_pair(mu, rho);
  conjugate(p);  // validates p
  const Tree& t = mu.tree();
  const std::size_t n = t.size();

  EmbeddingReport rep;
  rep.method = EmbeddingReport::Method::ascent;
  rep.witness = make_tree_function(t, 1.0);
  if (mu.total_mass() == 0.0) return rep;

  double best = -1.0;
  for (int r = 0; r <= restarts; ++r) {
    TreeFunction phi = make_tree_function(t, 1.0);
    if (r > 0) {
      Rng rng(seed + 0x9e3779b9u * static_cast<std::uint64_t>(r));
      if (r % 2 == 1) {
        for (NodeId v = 0; v < n; ++v) phi.node[v] = 0.05 + rng.uniform();
      } else {  // spiked start to escape reducible plateaus
        for (NodeId v = 0; v < n; ++v) phi.node[v] = 1e-3;
        phi.node[rng.below(n)] = 1.0;
      }
    }

    double value = quotient(phi, mu, rho, p);
    int it = 0;
    bool converged = false;
    while (it < max_iterations && value > 0.0) {
      ++it;
      const TreeFunction u = hardy(phi, true);
      TreeFunction up = u;
      for (NodeId v = 0; v < n; ++v)
        up.node[v] = std::pow(u.node[v], p - 1.0);
      for (const NodeId v : t.leaves())
        up.boundary[v] = std::pow(u.boundary[v], p - 1.0);
      TreeFunction next = hardy_adjoint(up, mu);
      bool all_zero = true;
      for (NodeId v = 0; v < n; ++v) {
        next.node[v] = std::pow(next.node[v] / rho.value[v], 1.0 / (p - 1.0));
        if (next.node[v] != 0.0) all_zero = false;
      }
      if (all_zero) break;
      const double nrm = weighted_lp_norm(next, rho, p);
      for (NodeId v = 0; v < n; ++v) next.node[v] /= nrm;
      phi = std::move(next);
      const double v2 = quotient(phi, mu, rho, p);
      if (std::abs(v2 - value) <= rel_tol * std::max(v2, 1e-300)) {
        value = v2;
        converged = true;
        break;
      }
      value = v2;
    }

    if (value > best) {
      best = value;
      rep.witness = phi;
      rep.iterations = it;
      rep.converged = converged;
    }
  }

  rep.norm_estimate = best;
  rep.certified_lower = quotient(rep.witness, mu, rho, p);
  return rep;
}

double dual_ratio(const TreeFunction& g, const TreeMeasure& mu,
                  const TreeWeight& rho, double p) {
  check_pair(mu, rho);
  const double q = conjugate(p);
  const Tree& t = mu.tree();
  check_test_function(g, mu);

  double den = 0.0;
  for (NodeId v = 0; v < t.size(); ++v)
    den += std::pow(g.node[v], q) * mu.interior_mass(v);
  for (const NodeId v : t.leaves())
    den += std::pow(g.boundary_value(v), q) * mu.boundary_mass(v);
  if (den <= 0.0)
    throw std::domain_error("test function vanishes mu-almost everywhere");

  const TreeFunction integrals = hardy_adjoint(g, mu);
  double num = 0.0;
  for (NodeId v = 0; v < t.size(); ++v)
    num += std::pow(integrals.node[v], q) * std::pow(rho.value[v], 1.0 - q);
  return num / den;
}

LevelSetReport level_sets(const TreeFunction& g, const TreeMeasure& mu,
                          double lambda) {
  if (!(lambda > 0.0)) throw std::domain_error("lambda must be positive");
  const Tree& t = mu.tree();
  const TreeFunction m = maximal(g, mu);
  LevelSetReport rep;
  rep.mask.assign(t.size(), 0);
  for (const NodeId v : t.level_order()) {
    if (m.node[v] > lambda) {
      rep.mask[v] = 1;
      rep.set.push_back(v);
      const std::int32_t par = t.parent(v);
      if (par < 0 || !rep.mask[par]) rep.minimal.push_back(v);
    }
  }
  return rep;
}

WeakTypeReport weak_type_check(const TreeFunction& g, const TreeMeasure& mu,
                               const TreeWeight& rho, double p,
                               double lambda) {
  WeakTypeReport rep;
  rep.lambda = lambda;
  const TCReport tc = tc_constant(mu, rho, p);
  rep.tc = tc.constant;
  if (!tc.finite) {
    rep.pass = false;
    rep.diagnostic = "tree condition constant is infinite";
    return rep;
  }
  const TreeFunction s = sigma(mu, rho, p);
  const LevelSetReport ls = level_sets(g, mu, lambda);
  double lhs = 0.0;
  for (const NodeId v : ls.set) lhs += s.node[v];
  rep.lhs = lhs;
  rep.rhs = tc.constant * integral_mu(g, mu) / lambda;
  rep.pass = lhs <= rep.rhs + 1e-12 * std::max(1.0, std::abs(rep.rhs));
  if (!rep.pass) rep.diagnostic = "superlevel sigma mass exceeds the bound";
  return rep;
}

MaximalCheckReport maximal_strong_check(const TreeFunction& g,
                                        const TreeMeasure& mu,
                                        const TreeWeight& rho, double p) {
  const double q = conjugate(p);
  const Tree& t = mu.tree();
  check_test_function(g, mu);
  MaximalCheckReport rep;
  const TCReport tc = tc_constant(mu, rho, p);
  rep.tc = tc.constant;

  double den = 0.0;
  for (NodeId v = 0; v < t.size(); ++v)
    den += std::pow(g.node[v], q) * mu.interior_mass(v);
  for (const NodeId v : t.leaves())
    den += std::pow(g.boundary_value(v), q) * mu.boundary_mass(v);
  if (den <= 0.0)
    throw std::domain_error("test function vanishes mu-almost everywhere");
  rep.rhs_base = den;

  const TreeFunction m = maximal(g, mu);
  const TreeFunction s = sigma(mu, rho, p);
  double lhs = 0.0;
  for (NodeId v = 0; v < t.size(); ++v)
    lhs += std::pow(m.node[v], q) * s.node[v];
  rep.lhs = lhs;
  rep.ratio = lhs / den;
  rep.normalized = tc.constant > 0 ? rep.ratio / tc.constant : 0.0;
  return rep;
}

double interpolation_constant(double p) {
  const double q = conjugate(p);
  return std::pow(q, q + 1.0) / std::pow(q - 1.0, q);
}

}  // namespace besovtree
