#include "besovtree/operators.hpp"

#include <cmath>
#include <limits>

namespace besovtree {

namespace {

void check_function(const TreeFunction& f) {
  if (f.tree == nullptr || f.node.size() != f.tree->size())
    throw std::invalid_argument("tree function does not match its tree");
  if (!f.boundary.empty() && f.boundary.size() != f.tree->size())
    throw std::invalid_argument("boundary array must match the tree size");
}

void check_same_tree(const TreeFunction& f, const TreeMeasure& mu) {
  check_function(f);
  if (f.tree != &mu.tree())
    throw std::invalid_argument("function and measure live on different trees");
}

void check_same_tree(const TreeFunction& f, const TreeWeight& rho) {
  check_function(f);
  if (f.tree != rho.tree)
    throw std::invalid_argument("function and weight live on different trees");
}

void check_nonnegative(const TreeFunction& g) {
  for (const double v : g.node)
    if (v < 0) throw std::domain_error("function must be nonnegative");
  if (g.has_boundary())
    for (const NodeId v : g.tree->leaves())
      if (g.boundary[v] < 0)
        throw std::domain_error("function must be nonnegative");
}

}  // namespace

TreeFunction make_tree_function(const Tree& tree, double fill,
                                bool with_boundary) {
  TreeFunction f;
  f.tree = &tree;
  f.node.assign(tree.size(), fill);
  if (with_boundary) f.boundary.assign(tree.size(), fill);
  return f;
}

TreeFunction backward_difference(const TreeFunction& psi) {
  check_function(psi);
  const Tree& t = *psi.tree;
  TreeFunction out = make_tree_function(t);
  for (NodeId v = 0; v < t.size(); ++v) {
    const std::int32_t p = t.parent(v);
    out.node[v] = p < 0 ? psi.node[v] : psi.node[v] - psi.node[p];
  }
  return out;
}

TreeFunction hardy(const TreeFunction& phi, bool with_boundary) {
  check_function(phi);
  const Tree& t = *phi.tree;
  TreeFunction out = make_tree_function(t, 0.0, with_boundary);
  for (const NodeId v : t.level_order()) {
    const std::int32_t p = t.parent(v);
    out.node[v] = p < 0 ? phi.node[v] : phi.node[v] + out.node[p];
  }
  if (with_boundary)
    for (const NodeId v : t.leaves()) out.boundary[v] = out.node[v];
  return out;
}

TreeFunction hardy_adjoint(const TreeFunction& g, const TreeMeasure& mu) {
  check_same_tree(g, mu);
  const Tree& t = *g.tree;
  TreeFunction out = make_tree_function(t);
  const auto& order = t.level_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId v = *it;
    double s = g.node[v] * mu.interior_mass(v);
    if (t.is_leaf(v)) s += g.boundary_value(v) * mu.boundary_mass(v);
    for (const NodeId c : t.children(v)) s += out.node[c];
    out.node[v] = s;
  }
  return out;
}

TreeFunction maximal(const TreeFunction& g, const TreeMeasure& mu) {
  check_same_tree(g, mu);
  check_nonnegative(g);
  const Tree& t = *g.tree;
  const TreeFunction integrals = hardy_adjoint(g, mu);
  constexpr double none = -std::numeric_limits<double>::infinity();
  std::vector<double> best(t.size(), none);
  TreeFunction out = make_tree_function(t);
  for (const NodeId v : t.level_order()) {
    const std::int32_t p = t.parent(v);
    double run = p < 0 ? none : best[p];
    if (mu.subtree_mass(v) > 0)
      run = std::max(run, integrals.node[v] / mu.subtree_mass(v));
    best[v] = run;
    out.node[v] = run == none ? 0.0 : run;
  }
  return out;
}

double tree_besov_norm(const TreeFunction& psi, const TreeWeight& rho,
                       double p) {
  if (!(p > 1.0)) throw std::domain_error("p must lie in (1, inf)");
  check_same_tree(psi, rho);
  const TreeFunction d = backward_difference(psi);
  double s = 0.0;
  for (NodeId v = 0; v < psi.tree->size(); ++v)
    s += std::pow(std::abs(d.node[v]), p) * rho.value[v];
  return std::pow(s, 1.0 / p);
}

double weighted_lp_norm(const TreeFunction& phi, const TreeWeight& rho,
                        double p) {
  if (!(p > 1.0)) throw std::domain_error("p must lie in (1, inf)");
  check_same_tree(phi, rho);
  double s = 0.0;
  for (NodeId v = 0; v < phi.tree->size(); ++v)
    s += std::pow(std::abs(phi.node[v]), p) * rho.value[v];
  return std::pow(s, 1.0 / p);
}

double weighted_lp_norm(const TreeFunction& phi, const TreeMeasure& mu,
                        double p) {
  if (!(p > 1.0)) throw std::domain_error("p must lie in (1, inf)");
  check_same_tree(phi, mu);
  const Tree& t = *phi.tree;
  double s = 0.0;
  for (NodeId v = 0; v < t.size(); ++v)
    s += std::pow(std::abs(phi.node[v]), p) * mu.interior_mass(v);
  for (const NodeId v : t.leaves())
    s += std::pow(std::abs(phi.boundary_value(v)), p) * mu.boundary_mass(v);
  return std::pow(s, 1.0 / p);
}

double inner_product_counting(const TreeFunction& f, const TreeFunction& g) {
  check_function(f);
  check_function(g);
  if (f.tree != g.tree)
    throw std::invalid_argument("functions live on different trees");
  double s = 0.0;
  for (NodeId v = 0; v < f.tree->size(); ++v) s += f.node[v] * g.node[v];
  return s;
}

double inner_product_mu(const TreeFunction& f, const TreeFunction& g,
                        const TreeMeasure& mu) {
  check_same_tree(f, mu);
  check_same_tree(g, mu);
  const Tree& t = *f.tree;
  double s = 0.0;
  for (NodeId v = 0; v < t.size(); ++v)
    s += f.node[v] * g.node[v] * mu.interior_mass(v);
  for (const NodeId v : t.leaves())
    s += f.boundary_value(v) * g.boundary_value(v) * mu.boundary_mass(v);
  return s;
}

double integral_mu(const TreeFunction& g, const TreeMeasure& mu) {
  check_same_tree(g, mu);
  const Tree& t = *g.tree;
  double s = 0.0;
  for (NodeId v = 0; v < t.size(); ++v) s += g.node[v] * mu.interior_mass(v);
  for (const NodeId v : t.leaves())
    s += g.boundary_value(v) * mu.boundary_mass(v);
  return s;
}

}  // namespace besovtree
