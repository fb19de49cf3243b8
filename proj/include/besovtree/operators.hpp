#pragma once

#include <vector>

#include "besovtree/measure.hpp"
#include "besovtree/tree.hpp"
#include "besovtree/weight.hpp"

namespace besovtree {

// Real-valued function on a tree, optionally extended to the boundary:
// one value per node plus, when present, a per-node array read at leaves
// (each leaf proxies its boundary arc). When a boundary value is needed
// and none is stored, the leaf's node value stands in.
struct TreeFunction {
  const Tree* tree = nullptr;
  std::vector<double> node;
  std::vector<double> boundary;  // empty, or one slot per node

  bool has_boundary() const { return !boundary.empty(); }
  double boundary_value(NodeId v) const {
    return boundary.empty() ? node[v] : boundary[v];
  }
};

TreeFunction make_tree_function(const Tree& tree, double fill = 0.0,
                                bool with_boundary = false);

// Backward difference along the root path: the root keeps its value, every
// other node gets value minus parent value. Inverse of the summation
// operator below.
TreeFunction backward_difference(const TreeFunction& psi);

// Summation operator: value at alpha is the sum of phi over the root-to-
// alpha path. with_boundary extends to leaves as root-to-leaf sums.
TreeFunction hardy(const TreeFunction& phi, bool with_boundary = false);

// Adjoint against the measure: value at alpha is the integral of g over
// the closed successor set S-bar(alpha), boundary part included.
TreeFunction hardy_adjoint(const TreeFunction& g, const TreeMeasure& mu);

// Maximal function: best average of g over the closed successor sets of
// the ancestors, running top-down; zero-mass ancestors contribute no
// candidate, and a node with no candidate at all gets 0. Requires g >= 0.
TreeFunction maximal(const TreeFunction& g, const TreeMeasure& mu);

// (sum over nodes of |backward difference|^p rho)^(1/p)
double tree_besov_norm(const TreeFunction& psi, const TreeWeight& rho,
                       double p);

// Weighted counting norm over nodes.
double weighted_lp_norm(const TreeFunction& phi, const TreeWeight& rho,
                        double p);
// L^p norm against the measure, boundary part included.
double weighted_lp_norm(const TreeFunction& phi, const TreeMeasure& mu,
                        double p);

double inner_product_counting(const TreeFunction& f, const TreeFunction& g);
// Pairing against the measure over nodes and leaf boundary.
double inner_product_mu(const TreeFunction& f, const TreeFunction& g,
                        const TreeMeasure& mu);
// Integral of g over the closed tree against the measure.
double integral_mu(const TreeFunction& g, const TreeMeasure& mu);

}  // namespace besovtree
