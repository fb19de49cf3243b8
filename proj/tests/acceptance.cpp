// End-to-end verification: one line per criterion, exit 0 only when all
// pass.
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "besovtree/analytic.hpp"
#include "besovtree/carleson.hpp"
#include "besovtree/jobs.hpp"
#include "besovtree/measure.hpp"
#include "besovtree/operators.hpp"
#include "besovtree/rng.hpp"
#include "besovtree/tree.hpp"
#include "besovtree/weight.hpp"
#include "test_support.hpp"

using namespace besovtree;
using cplx = std::complex<double>;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool g_all_ok = true;

void report(int n, bool ok, const std::string& detail) {
  std::printf("criterion %d: %s (%s)\n", n, ok ? "pass" : "FAIL",
              detail.c_str());
  if (!ok) g_all_ok = false;
}

void run(int n, const std::function<std::pair<bool, std::string>()>& body) {
  try {
    auto [ok, detail] = body();
    report(n, ok, detail);
  } catch (const std::exception& e) {
    report(n, false, std::string("exception: ") + e.what());
  }
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Tree& tree_for(int depth) {
  static std::map<int, Tree> cache;
  auto it = cache.find(depth);
  if (it == cache.end())
    it = cache.emplace(depth, build_dyadic_tree(depth)).first;
  return it->second;
}

const std::vector<AnalyticFunction>& suite() {
  static const std::vector<AnalyticFunction> s = builtin_suite();
  return s;
}

const TreeMajorant& majorant_for(int f_idx, int depth) {
  static std::map<std::pair<int, int>, TreeMajorant> cache;
  const auto key = std::make_pair(f_idx, depth);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, phi_majorant(suite()[f_idx], tree_for(depth)))
             .first;
  return it->second;
}

TreeFunction subtree_indicator(const Tree& t, NodeId beta) {
  TreeFunction g = make_tree_function(t, 0.0, true);
  for (NodeId v = 0; v < t.size(); ++v)
    if (is_ancestor(t, beta, v)) {
      g.node[v] = 1.0;
      if (t.is_leaf(v)) g.boundary[v] = 1.0;
    }
  return g;
}

// Shared random instances for the necessity and norm-bound criteria.
struct Instance {
  const Tree* tree;
  TreeMeasure mu;
  TreeWeight rho;
};

const std::vector<Instance>& small_instances() {
  static std::vector<Instance> inst;
  static std::vector<Tree> trees;
  if (inst.empty()) {
    Rng rng(kDefaultSeed + 40);
    trees.reserve(200);
    for (int i = 0; i < 200; ++i) {
      trees.push_back(testsup::random_abstract_tree(rng, 2 + rng.below(9)));
      const Tree& t = trees.back();
      TreeMeasure mu = testsup::random_measure(rng, t, 0.2);
      TreeWeight rho = testsup::random_weight(rng, t);
      inst.push_back({&t, std::move(mu), std::move(rho)});
    }
  }
  return inst;
}

std::string scratch(const std::string& name) {
  std::filesystem::create_directories("acc_tmp");
  return "acc_tmp/" + name;
}

std::pair<bool, std::string> criterion_inverse() {
  Rng rng(kDefaultSeed + 41);
  std::vector<Tree> trees;
  trees.reserve(24);
  for (const int d : {0, 1, 6, 10}) trees.push_back(build_dyadic_tree(d));
  for (int i = 0; i < 20; ++i)
    trees.push_back(testsup::random_abstract_tree(rng, 2 + rng.below(199)));

  double worst = 0.0;
  for (const Tree& t : trees)
    for (int trial = 0; trial < 50; ++trial) {
      // residuals are scaled by the path-sum magnitude the rounding acts at
      const TreeFunction phi = testsup::random_function(rng, t, false, -2, 2);
      const TreeFunction sums = hardy(phi);
      const TreeFunction back = backward_difference(sums);
      for (NodeId v = 0; v < t.size(); ++v)
        worst = std::max(worst, std::abs(back.node[v] - phi.node[v]) /
                                    std::max(1.0, std::abs(sums.node[v])));
      const TreeFunction psi = testsup::random_function(rng, t, false, -2, 2);
      const TreeFunction forth = hardy(backward_difference(psi));
      for (NodeId v = 0; v < t.size(); ++v)
        worst = std::max(worst, std::abs(forth.node[v] - psi.node[v]) /
                                    std::max(1.0, std::abs(psi.node[v])));
    }
  return {worst < 1e-12,
          "difference and summation invert, max residual " + num(worst) +
              " over 24 trees"};
}

std::pair<bool, std::string> criterion_adjoint() {
  Rng rng(kDefaultSeed + 42);
  std::vector<Tree> trees;
  trees.reserve(2);
  trees.push_back(build_dyadic_tree(6));
  trees.push_back(testsup::random_abstract_tree(rng, 100));

  double worst = 0.0;
  for (const Tree& t : trees)
    for (int trial = 0; trial < 100; ++trial) {
      const TreeMeasure mu = testsup::random_measure(rng, t, 0.2);
      const TreeFunction phi = testsup::random_function(rng, t);
      const TreeFunction g = testsup::random_function(rng, t, true, 0.0, 1.0);
      const double lhs = inner_product_mu(hardy(phi, true), g, mu);
      const double rhs = inner_product_counting(phi, hardy_adjoint(g, mu));
      worst = std::max(worst, testsup::rel_err(lhs, rhs));
    }
  return {worst < 1e-10,
          "pairing identity, max residual " + num(worst) + " over 200 trials"};
}

std::pair<bool, std::string> criterion_tc_closed_forms() {
  bool ok = true;
  double worst = 0.0;
  const auto track = [&](double got, double want, double tol) {
    const double e = testsup::rel_err(got, want);
    worst = std::max(worst, e);
    if (e >= tol) ok = false;
  };

  {
    const Tree& t = tree_for(12);
    const MeasureSpec spec =
        parse_measure_spec("boundary_density uniform 6.283185307179586\n");
    const TCReport rep = tc_constant(pull_back(spec, t),
                                     tree_weight(power_weight(0.0), t), 2.0);
    track(rep.constant, kTwoPi * (2.0 - std::pow(2.0, -12)), 1e-9);
    if (rep.argmax_node != t.root()) ok = false;
  }

  const MeasureSpec atom = parse_measure_spec("boundary_atom 0 1\n");
  for (int d = 4; d <= 12; ++d) {
    const Tree& t = tree_for(d);
    const TCReport rep = tc_constant(pull_back(atom, t),
                                     tree_weight(power_weight(0.0), t), 2.0);
    track(rep.constant, d + 1.0, 1e-12);
  }

  const MeasureSpec inner = parse_measure_spec("interior_atom 0.98 0 1\n");
  for (int d = 6; d <= 12; ++d) {
    const Tree& t = tree_for(d);
    const TCReport rep = tc_constant(pull_back(inner, t),
                                     tree_weight(power_weight(0.0), t), 2.0);
    track(rep.constant, 6.0, 1e-12);
  }

  return {ok, "uniform, boundary atom, interior atom constants, max error " +
                  num(worst)};
}

std::pair<bool, std::string> criterion_necessity() {
  long long checked = 0, violations = 0;
  for (const Instance& in : small_instances())
    for (const double p : {1.5, 2.0, 3.0}) {
      const TCReport tc = tc_constant(in.mu, in.rho, p);
      for (NodeId v = 0; v < in.tree->size(); ++v) {
        if (!(in.mu.subtree_mass(v) > 0)) continue;
        ++checked;
        const double dual =
            dual_ratio(subtree_indicator(*in.tree, v), in.mu, in.rho, p);
        if (dual < tc.per_node_ratio[v] * (1.0 - 1e-12) - 1e-15) ++violations;
      }
    }
  return {violations == 0, "indicator duals dominate all " +
                               std::to_string(checked) + " node ratios, " +
                               std::to_string(violations) + " violations"};
}

std::pair<bool, std::string> criterion_norm_vs_tc() {
  bool ok = true;
  double max_ratio_p2 = 0.0, worst_excess = 0.0;
  int used = 0;
  for (const Instance& in : small_instances()) {
    if (in.mu.total_mass() == 0.0) continue;
    ++used;
    for (const double p : {1.5, 2.0, 3.0}) {
      const double q = p / (p - 1.0);
      const double c = tc_constant(in.mu, in.rho, p).constant;
      const EmbeddingReport rep =
          p == 2.0 ? embedding_norm_quadratic(in.mu, in.rho)
                   : embedding_norm_general(in.mu, in.rho, p);
      const double powered = std::pow(rep.norm_estimate, q);
      if (c == 0.0) {
        if (powered > 1e-12) ok = false;
        continue;
      }
      const double bound = interpolation_constant(p) * c;
      worst_excess = std::max(worst_excess, powered / bound);
      if (powered > bound * (1.0 + 1e-6)) ok = false;
      if (p == 2.0) {
        max_ratio_p2 = std::max(max_ratio_p2, powered / c);
        if (powered < c * (1.0 - 1e-6)) ok = false;
      }
    }
  }
  return {ok, "squared norm in [C, 8C] at p = 2 (max ratio " +
                  num(max_ratio_p2) + "), K(p) bound at worst " +
                  num(worst_excess) + " of cap over " + std::to_string(used) +
                  " instances"};
}

std::pair<bool, std::string> criterion_weak_type() {
  Rng rng(kDefaultSeed + 43);
  std::vector<Tree> trees;
  trees.reserve(2);
  trees.push_back(build_dyadic_tree(5));
  trees.push_back(testsup::random_abstract_tree(rng, 60));

  long long trials = 0, violations = 0, structure_bad = 0;
  for (const Tree& t : trees)
    for (int m = 0; m < 10; ++m) {
      const TreeMeasure mu = testsup::random_measure(rng, t, 0.25);
      const TreeWeight rho = testsup::random_weight(rng, t);
      for (int k = 0; k < 50; ++k) {
        ++trials;
        const TreeFunction g = testsup::random_function(rng, t, true, 0.0, 2.0);
        const TreeFunction mg = maximal(g, mu);
        double peak = 0.0;
        for (const double x : mg.node) peak = std::max(peak, x);
        const double lambda =
            peak > 0 ? (0.05 + 0.9 * rng.uniform()) * peak : 1.0;
        const WeakTypeReport rep = weak_type_check(g, mu, rho, 2.0, lambda);
        if (!rep.pass) ++violations;

        // superlevel sets decompose into whole subtrees
        const LevelSetReport ls = level_sets(g, mu, lambda);
        std::size_t covered = 0;
        for (const NodeId a : ls.minimal) {
          const std::int32_t par = t.parent(a);
          if (par >= 0 && ls.mask[par]) ++structure_bad;
          for (NodeId v = 0; v < t.size(); ++v)
            if (is_ancestor(t, a, v)) {
              if (!ls.mask[v]) ++structure_bad;
              ++covered;
            }
        }
        if (covered != ls.set.size()) ++structure_bad;
      }
    }
  return {violations == 0 && structure_bad == 0,
          std::to_string(trials) + " level trials, " +
              std::to_string(violations) + " bound violations, " +
              std::to_string(structure_bad) + " structure defects"};
}

std::pair<bool, std::string> criterion_exact_quadratic() {
  double worst = 0.0;
  const auto track = [&](double got, double want) {
    worst = std::max(worst, testsup::rel_err(got, want));
  };

  const Tree one = build_abstract_tree({-1});
  track(embedding_norm_quadratic(set_masses(one, {0.4}),
                                 TreeWeight::from_values(one, {1.6}))
            .norm_estimate,
        0.5);

  const Tree chain = build_abstract_tree({-1, 0});
  track(embedding_norm_quadratic(set_masses(chain, {0.0, 1.0}),
                                 TreeWeight::from_values(chain, {1.0, 1.0}))
            .norm_estimate,
        std::sqrt(2.0));

  // a point mass at depth 1 only feeds the two-node root path
  const Tree& t8 = tree_for(8);
  const TreeMeasure atom =
      pull_back(parse_measure_spec("interior_atom 0.6 0 1\n"), t8);
  track(embedding_norm_quadratic(atom, tree_weight(power_weight(0.0), t8))
            .norm_estimate,
        std::sqrt(2.0));

  const TreeMeasure scaled =
      pull_back(parse_measure_spec("interior_atom 0.6 0 0.49\n"), t8);
  track(embedding_norm_quadratic(
            scaled, TreeWeight::from_values(
                        t8, std::vector<double>(t8.size(), 0.25)))
            .norm_estimate,
        std::sqrt(2.0 * 0.49 / 0.25));

  return {worst < 1e-10,
          "closed-form spectra matched, max error " + num(worst)};
}

std::pair<bool, std::string> criterion_ascent_accuracy() {
  Rng rng(kDefaultSeed + 44);
  double worst_p2 = 0.0, worst_grid = 0.0;

  for (const std::size_t n : {8u, 12u})
    for (int trial = 0; trial < 3; ++trial) {
      const Tree t = testsup::random_abstract_tree(rng, n);
      const TreeMeasure mu = testsup::random_measure(rng, t);
      const TreeWeight rho = testsup::random_weight(rng, t);
      const double exact = embedding_norm_quadratic(mu, rho).norm_estimate;
      const double asc =
          embedding_norm_general(mu, rho, 2.0).norm_estimate;
      worst_p2 = std::max(worst_p2, testsup::rel_err(asc, exact));
    }

  for (const double p : {1.5, 3.0})
    for (const std::size_t n : {3u, 4u, 5u, 6u}) {
      const Tree t = testsup::random_abstract_tree(rng, n);
      const TreeMeasure mu = testsup::random_measure(rng, t);
      const TreeWeight rho = testsup::random_weight(rng, t);
      const double asc = embedding_norm_general(mu, rho, p).norm_estimate;
      const double grid = testsup::grid_embedding_norm(mu, rho, p);
      worst_grid = std::max(worst_grid, testsup::rel_err(asc, grid));
    }

  return {worst_p2 < 1e-6 && worst_grid < 1e-4,
          "ascent vs spectral " + num(worst_p2) + ", vs grid search " +
              num(worst_grid)};
}

std::pair<bool, std::string> criterion_norm_band() {
  bool ok = true;
  double band_lo = 1e300, band_hi = 0.0, worst_drift = 0.0;
  for (int f = 0; f < 4; ++f)
    for (const double p : {1.5, 2.0, 3.0})
      for (const double a : {0.0, 0.5}) {
        double lo = 1e300, hi = 0.0;
        for (const int d : {8, 10, 12}) {
          const Tree& t = tree_for(d);
          const WeightSpec w = power_weight(a, p);
          const double cont =
              besov_norm_continuum(suite()[f], w, p, t).norm;
          const double disc = tree_besov_norm(majorant_for(f, d).phi,
                                              tree_weight(w, t), p);
          if (!(cont > 0.0)) {
            ok = false;
            continue;
          }
          const double ratio = disc / cont;
          lo = std::min(lo, ratio);
          hi = std::max(hi, ratio);
          band_lo = std::min(band_lo, ratio);
          band_hi = std::max(band_hi, ratio);
          if (ratio < 0.25 || ratio > 4.0) ok = false;
        }
        worst_drift = std::max(worst_drift, hi / lo);
        if (hi / lo > 1.25) ok = false;
      }
  return {ok, "72 ratios in [" + num(band_lo) + ", " + num(band_hi) +
                  "], worst depth drift x" + num(worst_drift)};
}

std::pair<bool, std::string> criterion_variation_bound() {
  bool ok = true;
  double worst_drift = 0.0;
  for (int f = 0; f < 4; ++f) {
    double lo = 1e300, hi = 0.0;
    for (const int d : {8, 10, 12}) {
      const Tree& t = tree_for(d);
      const TreeMajorant& maj = majorant_for(f, d);
      const double radius = 1.0 - std::ldexp(1.0, -d - 1);
      double cf = 0.0;
      for (int j = 0; j < 64; ++j) {
        const double theta = kTwoPi * (j + 0.5) / 64.0;
        const double var = radial_variation(suite()[f], radius, theta);
        const double phi =
            maj.phi.node[locate_point(t, std::polar(radius, theta))];
        if (var > 0 && !(phi > 0)) {
          ok = false;
          continue;
        }
        if (phi > 0) cf = std::max(cf, var / phi);
      }
      if (!(cf > 0) || !std::isfinite(cf)) ok = false;
      lo = std::min(lo, cf);
      hi = std::max(hi, cf);
    }
    worst_drift = std::max(worst_drift, hi / lo);
    if (hi / lo > 1.25) ok = false;
  }
  return {ok, "ray variation within majorant on 64 rays, constant drift x" +
                  num(worst_drift) + " across depths"};
}

std::pair<bool, std::string> criterion_reproducing() {
  Rng rng(kDefaultSeed + 45);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<cplx> c(1 + rng.below(17));
    for (auto& x : c) x = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const AnalyticFunction f(std::move(c));
    const cplx z = std::polar(0.9 * std::sqrt(rng.uniform()),
                              rng.uniform(0.0, kTwoPi));
    worst = std::max(worst, reproducing_check(f, z));
  }
  return {worst <= 1e-8,
          "kernel pairing reproduces values, max residual " + num(worst)};
}

std::pair<bool, std::string> criterion_positivity() {
  Rng rng(kDefaultSeed + 46);
  double min_plain = 1e300, min_restricted = 1e300;
  for (int trial = 0; trial < 100000; ++trial) {
    const cplx z =
        std::polar(std::sqrt(rng.uniform()), rng.uniform(0.0, kTwoPi));
    const cplx w =
        std::polar(std::sqrt(rng.uniform()), rng.uniform(0.0, kTwoPi));
    min_plain = std::min(min_plain, kernel_positivity(z, w));

    const int n = 1 + static_cast<int>(rng.below(24));
    const double tz = std::ldexp(0.5 + 0.5 * rng.uniform(), -n);
    const double az = rng.uniform(0.0, kTwoPi);
    const double width = std::ldexp(kTwoPi, -n);
    const double lo = width * std::floor(az / width);
    const double tw = std::ldexp(rng.uniform(), -n);
    min_restricted =
        std::min(min_restricted,
                 kernel_positivity(std::polar(1.0 - tz, az),
                                   std::polar(1.0 - tw, lo + width * rng.uniform())));
  }
  return {min_plain >= -1e-12 && min_restricted >= kKernelPositivityFloor,
          "disc min " + num(min_plain) + ", successor-region min " +
              num(min_restricted) + " vs floor 0.0125"};
}

std::pair<bool, std::string> criterion_norm_values() {
  const Tree& t = tree_for(12);
  const WeightSpec flat = power_weight(0.0);
  const double n1 =
      besov_norm_continuum(make_polynomial({0, 1}), flat, 2.0, t).norm;
  const double n2 =
      besov_norm_continuum(make_polynomial({0, 0, 1}), flat, 2.0, t).norm;
  const double e1 = testsup::rel_err(n1, 1.0);
  const double e2 = testsup::rel_err(n2, std::sqrt(2.0));
  return {e1 < 1e-6 && e2 < 1e-6, "norm of z is " + num(n1) +
                                      ", of z squared " + num(n2) +
                                      ", errors " + num(e1) + ", " + num(e2)};
}

std::pair<bool, std::string> criterion_determinism() {
  const std::string mpath = scratch("measure.txt");
  testsup::spit(mpath, "depth = 6\ninterior_atom 0.75 0 1\n");

  JobConfig embed;
  embed.command = Command::embed_norm;
  embed.measure_path = mpath;
  embed.p = 1.5;
  embed.weight_a = 0.5;
  embed.out_path = scratch("embed_a.csv");
  if (run_job(embed) != 0) return {false, "embed-norm job failed"};
  embed.out_path = scratch("embed_b.csv");
  if (run_job(embed) != 0) return {false, "embed-norm rerun failed"};

  JobConfig weak;
  weak.command = Command::weak_type;
  weak.measure_path = mpath;
  weak.depth = 4;
  weak.trials = 200;
  weak.out_path = scratch("weak_a.csv");
  if (run_job(weak) != 0) return {false, "weak-type job failed"};
  weak.out_path = scratch("weak_b.csv");
  if (run_job(weak) != 0) return {false, "weak-type rerun failed"};

  const bool same_embed = testsup::slurp(scratch("embed_a.csv")) ==
                          testsup::slurp(scratch("embed_b.csv"));
  const bool same_weak = testsup::slurp(scratch("weak_a.csv")) ==
                         testsup::slurp(scratch("weak_b.csv"));
  const bool nonempty = !testsup::slurp(scratch("embed_a.csv")).empty() &&
                        !testsup::slurp(scratch("weak_a.csv")).empty();
  return {same_embed && same_weak && nonempty,
          "reruns byte-identical: embed-norm " +
              std::string(same_embed ? "yes" : "NO") + ", weak-type " +
              std::string(same_weak ? "yes" : "NO")};
}

}  // namespace

int main() {
  run(1, criterion_inverse);
  run(2, criterion_adjoint);
  run(3, criterion_tc_closed_forms);
  run(4, criterion_necessity);
  run(5, criterion_norm_vs_tc);
  run(6, criterion_weak_type);
  run(7, criterion_exact_quadratic);
  run(8, criterion_ascent_accuracy);
  run(9, criterion_norm_band);
  run(10, criterion_variation_bound);
  run(11, criterion_reproducing);
  run(12, criterion_positivity);
  run(13, criterion_norm_values);
  run(14, criterion_determinism);
  std::fflush(stdout);
  std::fprintf(stderr, "%s\n",
               g_all_ok ? "all criteria passed" : "some criteria failed");
  return g_all_ok ? 0 : 1;
}
