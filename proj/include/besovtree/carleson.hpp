#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "besovtree/measure.hpp"
#include "besovtree/operators.hpp"
#include "besovtree/rng.hpp"
#include "besovtree/tree.hpp"
#include "besovtree/weight.hpp"

namespace besovtree {

// sigma(alpha) = rho(alpha)^(1-p') mu(S-bar(alpha))^p', with p' the
// conjugate exponent. Zero-mass nodes get 0.
TreeFunction sigma(const TreeMeasure& mu, const TreeWeight& rho, double p);

struct TCReport {
  double constant = 0.0;  // sup over nodes of sigma(S(alpha)) / mu(S-bar(alpha))
  NodeId argmax_node = 0;
  std::vector<double> per_node_ratio;  // NaN where mu(S-bar(alpha)) = 0
  bool finite = true;
};

// Tree condition: for every node, the sigma-mass of the successor set is
// at most a constant times the mu-mass of the closed successor set. The
// report carries the best constant and where it is attained.
TCReport tc_constant(const TreeMeasure& mu, const TreeWeight& rho, double p);

struct EmbeddingReport {
  enum class Method { exact_quadratic, ascent, brute_force };
  double norm_estimate = 0.0;
  Method method = Method::exact_quadratic;
  int iterations = 0;
  bool converged = true;
  double certified_lower = 0.0;  // Rayleigh quotient of the witness
  TreeFunction witness;
};

// Operator norm of the path-summation operator from the rho-weighted node
// space into L^2 of the measure (boundary included): largest eigenvalue of
// the associated self-adjoint operator by matrix-free power iteration.
EmbeddingReport embedding_norm_quadratic(const TreeMeasure& mu,
                                         const TreeWeight& rho,
                                         double rel_tol = 1e-10,
                                         int max_iterations = 10000);

// General p: multiplicative fixed-point ascent on the stationarity map,
// multi-started from deterministic seeds; the returned value is the best
// Rayleigh quotient reached and is always a certified lower bound.
EmbeddingReport embedding_norm_general(const TreeMeasure& mu,
                                       const TreeWeight& rho, double p,
                                       int restarts = 8,
                                       std::uint64_t seed = kDefaultSeed,
                                       double rel_tol = 1e-8,
                                       int max_iterations = 5000);

// Ratio of the dual-side sums for a test function g >= 0:
//   sum_alpha (integral of g over S-bar(alpha))^p' rho(alpha)^(1-p')
// over the integral of g^p'. Zero denominator is a domain error.
double dual_ratio(const TreeFunction& g, const TreeMeasure& mu,
                  const TreeWeight& rho, double p);

struct LevelSetReport {
  std::vector<NodeId> set;        // E = {maximal function > lambda}
  std::vector<NodeId> minimal;    // pairwise incomparable roots of E
  std::vector<std::uint8_t> mask; // per-node membership in E
};

// Superlevel set of the maximal function of g at height lambda > 0,
// decomposed into the full subtrees hanging at its minimal points.
LevelSetReport level_sets(const TreeFunction& g, const TreeMeasure& mu,
                          double lambda);

struct WeakTypeReport {
  double lhs = 0.0;  // sigma(E(lambda))
  double rhs = 0.0;  // C(mu) lambda^-1 integral of g
  double tc = 0.0;
  double lambda = 0.0;
  bool pass = false;
  std::string diagnostic;
};

// Weak-type bound for the maximal function: sigma of the superlevel set
// against the tree-condition constant times lambda^-1 times the mass of g.
WeakTypeReport weak_type_check(const TreeFunction& g, const TreeMeasure& mu,
                               const TreeWeight& rho, double p, double lambda);

struct MaximalCheckReport {
  double lhs = 0.0;       // sum of (maximal g)^p' sigma
  double rhs_base = 0.0;  // integral of g^p'
  double tc = 0.0;
  double ratio = 0.0;       // lhs / rhs_base
  double normalized = 0.0;  // ratio / tc
};

// Strong bound for the maximal function in L^p' of sigma; normalized ratio
// is bounded by the interpolation constant below.
MaximalCheckReport maximal_strong_check(const TreeFunction& g,
                                        const TreeMeasure& mu,
                                        const TreeWeight& rho, double p);

// Constant K(p) = q^(q+1) / (q-1)^q with q = p/(p-1): interpolation of the
// maximal operator between the weak (1,1) bound (constant C(mu)) and the
// trivial sup bound, with the layer-cake split level optimized. K(2) = 8.
double interpolation_constant(double p);

}  // namespace besovtree
