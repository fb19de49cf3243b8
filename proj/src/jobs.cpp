#include "besovtree/jobs.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "besovtree/analytic.hpp"
#include "besovtree/carleson.hpp"
#include "besovtree/measure.hpp"
#include "besovtree/operators.hpp"
#include "besovtree/tree.hpp"
#include "besovtree/weight.hpp"

namespace besovtree {

std::optional<Command> parse_command(const std::string& name) {
  if (name == "tc-check") return Command::tc_check;
  if (name == "embed-norm") return Command::embed_norm;
  if (name == "dual-test") return Command::dual_test;
  if (name == "weak-type") return Command::weak_type;
  if (name == "maximal-check") return Command::maximal_check;
  if (name == "variation") return Command::variation;
  if (name == "norms") return Command::norms;
  if (name == "kernel-check") return Command::kernel_check;
  if (name == "sweep-depth") return Command::sweep_depth;
  return std::nullopt;
}

std::string format_csv_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

void emit_csv(const CsvTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  for (std::size_t r = 0; r <= table.rows.size(); ++r) {
    const auto& row = r == 0 ? table.header : table.rows[r - 1];
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << csv_field(row[i]);
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failure on " + path);
}

namespace {

struct ExitValidation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

MeasureSpec load_measure(const JobConfig& cfg) {
  if (cfg.measure_path.empty())
    throw ExitValidation("this command needs --measure");
  std::ifstream in(cfg.measure_path, std::ios::binary);
  if (!in) throw ExitValidation("cannot read " + cfg.measure_path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_measure_spec(text.str());
}

int resolve_depth(const JobConfig& cfg, const MeasureSpec& spec) {
  if (cfg.depth >= 0) return cfg.depth;
  if (spec.depth) return *spec.depth;
  throw ExitValidation("no depth given (flag or measure file header)");
}

std::string fd(double x) { return format_csv_double(x); }
std::string fi(long long x) { return std::to_string(x); }

// Shared leading columns; every row then appends command specifics and
// trailing elapsed_ms.
std::vector<std::string> lead(const char* condition, const char* command,
                              int depth, const JobConfig& cfg) {
  return {condition, command, fi(depth), fd(cfg.p), fd(cfg.weight_a),
          std::to_string(cfg.seed)};
}

constexpr const char* kLeadHeader[] = {"condition", "command", "depth",
                                       "p",         "weight_a", "seed"};

CsvTable make_table(std::initializer_list<const char*> extra) {
  CsvTable t;
  for (const char* h : kLeadHeader) t.header.push_back(h);
  for (const char* h : extra) t.header.push_back(h);
  t.header.push_back("elapsed_ms");
  return t;
}

TreeFunction indicator_subtree(const Tree& t, NodeId alpha) {
  TreeFunction g = make_tree_function(t, 0.0, true);
  for (NodeId v = 0; v < t.size(); ++v)
    if (is_ancestor(t, alpha, v)) {
      g.node[v] = 1.0;
      if (t.is_leaf(v)) g.boundary[v] = 1.0;
    }
  return g;
}

const char* method_name(EmbeddingReport::Method m) {
  switch (m) {
    case EmbeddingReport::Method::exact_quadratic: return "exact-quadratic";
    case EmbeddingReport::Method::ascent: return "ascent";
    default: return "brute-force";
  }
}

int run_job_inner(const JobConfig& cfg, CsvTable& table, long long& elapsed,
                  std::string& out_path) {
  out_path = cfg.out_path;
  const auto t0 = std::chrono::steady_clock::now();
  const auto tick = [&] {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
  };
  int status = 0;

  switch (cfg.command) {
    case Command::tc_check: {
      const MeasureSpec spec = load_measure(cfg);
      const int depth = resolve_depth(cfg, spec);
      const Tree tree = build_dyadic_tree(depth);
      const TreeMeasure mu = pull_back(spec, tree);
      const TreeWeight rho = tree_weight(power_weight(cfg.weight_a, cfg.p), tree);
      const TCReport rep = tc_constant(mu, rho, cfg.p);
      table = make_table({"constant", "argmax_node", "finite"});
      auto row = lead("(TC)", "tc-check", depth, cfg);
      row.push_back(fd(rep.constant));
      row.push_back(fi(rep.argmax_node));
      row.push_back(rep.finite ? "1" : "0");
      elapsed = tick();
      row.push_back(cfg.timing ? fi(elapsed) : "0");
      table.rows.push_back(std::move(row));
      break;
    }

    case Command::sweep_depth: {
      const MeasureSpec spec = load_measure(cfg);
      const int depth_hi = resolve_depth(cfg, spec);
      if (cfg.depth_min > depth_hi)
        throw ExitValidation("sweep range is empty");
      table = make_table({"constant", "argmax_node", "finite"});
      for (int d = cfg.depth_min; d <= depth_hi; ++d) {
        const Tree tree = build_dyadic_tree(d);
        const TreeMeasure mu = pull_back(spec, tree);
        const TreeWeight rho =
            tree_weight(power_weight(cfg.weight_a, cfg.p), tree);
        const TCReport rep = tc_constant(mu, rho, cfg.p);
        auto row = lead("(TC)", "sweep-depth", d, cfg);
        row.push_back(fd(rep.constant));
        row.push_back(fi(rep.argmax_node));
        row.push_back(rep.finite ? "1" : "0");
        elapsed = tick();
        row.push_back(cfg.timing ? fi(elapsed) : "0");
        table.rows.push_back(std::move(row));
      }
      break;
    }

    case Command::embed_norm: {
      const MeasureSpec spec = load_measure(cfg);
      const int depth = resolve_depth(cfg, spec);
      const Tree tree = build_dyadic_tree(depth);
      const TreeMeasure mu = pull_back(spec, tree);
      const TreeWeight rho = tree_weight(power_weight(cfg.weight_a, cfg.p), tree);
      const EmbeddingReport rep =
          cfg.p == 2.0
              ? embedding_norm_quadratic(mu, rho)
              : embedding_norm_general(mu, rho, cfg.p, cfg.restarts, cfg.seed);
      table = make_table(
          {"constant", "certified_lower", "method", "iterations", "converged"});
      auto row = lead("(TreeCar)", "embed-norm", depth, cfg);
      row.push_back(fd(rep.norm_estimate));
      row.push_back(fd(rep.certified_lower));
      row.push_back(method_name(rep.method));
      row.push_back(fi(rep.iterations));
      row.push_back(rep.converged ? "1" : "0");
      elapsed = tick();
      row.push_back(cfg.timing ? fi(elapsed) : "0");
      table.rows.push_back(std::move(row));
      break;
    }

    case Command::dual_test: {
      const MeasureSpec spec = load_measure(cfg);
      const int depth = resolve_depth(cfg, spec);
      const Tree tree = build_dyadic_tree(depth);
      const TreeMeasure mu = pull_back(spec, tree);
      const TreeWeight rho = tree_weight(power_weight(cfg.weight_a, cfg.p), tree);
      const TCReport tc = tc_constant(mu, rho, cfg.p);
      long long checked = 0, violations = 0;
      double max_dual = 0.0;
      for (NodeId v = 0; v < tree.size(); ++v) {
        if (!(mu.subtree_mass(v) > 0)) continue;
        ++checked;
        const double dual =
            dual_ratio(indicator_subtree(tree, v), mu, rho, cfg.p);
        max_dual = std::max(max_dual, dual);
        if (dual < tc.per_node_ratio[v] * (1.0 - 1e-12) - 1e-15) ++violations;
      }
      table = make_table({"ratio", "tc_constant", "nodes_checked", "violations"});
      auto row = lead("(TreeCar)", "dual-test", depth, cfg);
      row.push_back(fd(max_dual));
      row.push_back(fd(tc.constant));
      row.push_back(fi(checked));
      row.push_back(fi(violations));
      elapsed = tick();
      row.push_back(cfg.timing ? fi(elapsed) : "0");
      table.rows.push_back(std::move(row));
      if (violations > 0) status = 3;
      break;
    }

    case Command::weak_type: {
      const MeasureSpec spec = load_measure(cfg);
      const int depth = resolve_depth(cfg, spec);
      const Tree tree = build_dyadic_tree(depth);
      const TreeMeasure mu = pull_back(spec, tree);
      const TreeWeight rho = tree_weight(power_weight(cfg.weight_a, cfg.p), tree);
      Rng rng(cfg.seed);
      long long violations = 0;
      double max_ratio = 0.0;
      for (int trial = 0; trial < cfg.trials; ++trial) {
        TreeFunction g = make_tree_function(tree, 0.0, true);
        for (NodeId v = 0; v < tree.size(); ++v) g.node[v] = rng.uniform();
        for (const NodeId v : tree.leaves()) g.boundary[v] = rng.uniform();
        const TreeFunction m = maximal(g, mu);
        double peak = 0.0;
        for (const double x : m.node) peak = std::max(peak, x);
        double lambda = cfg.lambda;
        if (!(lambda > 0.0)) {
          const double u = 1.0 - rng.uniform();  // (0, 1]
          lambda = peak > 0 ? 1.5 * peak * u : u;
        }
        const WeakTypeReport rep = weak_type_check(g, mu, rho, cfg.p, lambda);
        if (!rep.pass) ++violations;
        if (rep.rhs > 0) max_ratio = std::max(max_ratio, rep.lhs / rep.rhs);
      }
      table = make_table({"ratio", "trials", "violations"});
      auto row = lead("(TreeCar)", "weak-type", depth, cfg);
      row.push_back(fd(max_ratio));
      row.push_back(fi(cfg.trials));
      row.push_back(fi(violations));
      elapsed = tick();
      row.push_back(cfg.timing ? fi(elapsed) : "0");
      table.rows.push_back(std::move(row));
      if (violations > 0) status = 3;
      break;
    }

    case Command::maximal_check: {
      const MeasureSpec spec = load_measure(cfg);
      const int depth = resolve_depth(cfg, spec);
      const Tree tree = build_dyadic_tree(depth);
      const TreeMeasure mu = pull_back(spec, tree);
      const TreeWeight rho = tree_weight(power_weight(cfg.weight_a, cfg.p), tree);
      const double bound = interpolation_constant(cfg.p);
      double worst = 0.0;
      long long checked = 0;
      for (NodeId v = 0; v < tree.size(); ++v) {
        if (!(mu.subtree_mass(v) > 0)) continue;
        ++checked;
        const MaximalCheckReport rep =
            maximal_strong_check(indicator_subtree(tree, v), mu, rho, cfg.p);
        worst = std::max(worst, rep.normalized);
      }
      table = make_table({"ratio", "k_bound", "nodes_checked", "pass"});
      auto row = lead("(TreeCar)", "maximal-check", depth, cfg);
      const bool pass = worst <= bound;
      row.push_back(fd(worst));
      row.push_back(fd(bound));
      row.push_back(fi(checked));
      row.push_back(pass ? "1" : "0");
      elapsed = tick();
      row.push_back(cfg.timing ? fi(elapsed) : "0");
      table.rows.push_back(std::move(row));
      if (!pass) status = 3;
      break;
    }

    case Command::variation: {
      if (cfg.function_name.empty())
        throw ExitValidation("this command needs --function");
      if (cfg.depth < 0) throw ExitValidation("this command needs --depth");
      const AnalyticFunction f = parse_function(cfg.function_name);
      const Tree tree = build_dyadic_tree(cfg.depth);
      const TreeMajorant maj = phi_majorant(f, tree);
      const double radius = 1.0 - std::ldexp(1.0, -cfg.depth - 1);
      table = make_table({"theta", "variation", "phi_leaf", "ratio"});
      for (int j = 0; j < 64; ++j) {
        const double theta = 2.0 * std::numbers::pi * (j + 0.5) / 64.0;
        const double var = radial_variation(f, radius, theta);
        const NodeId leaf =
            locate_point(tree, std::polar(radius, theta));
        const double phi = maj.phi.node[leaf];
        auto row = lead("(VarCar)", "variation", cfg.depth, cfg);
        row.push_back(fd(theta));
        row.push_back(fd(var));
        row.push_back(fd(phi));
        row.push_back(fd(phi > 0 ? var / phi : 0.0));
        elapsed = tick();
        row.push_back(cfg.timing ? fi(elapsed) : "0");
        table.rows.push_back(std::move(row));
      }
      break;
    }

    case Command::norms: {
      if (cfg.function_name.empty())
        throw ExitValidation("this command needs --function");
      if (cfg.depth < 0) throw ExitValidation("this command needs --depth");
      const AnalyticFunction f = parse_function(cfg.function_name);
      const Tree tree = build_dyadic_tree(cfg.depth);
      const WeightSpec w = power_weight(cfg.weight_a, cfg.p);
      const BesovNormReport cont = besov_norm_continuum(f, w, cfg.p, tree);
      const TreeMajorant maj = phi_majorant(f, tree);
      const TreeWeight rho = tree_weight(w, tree);
      const double tree_norm = tree_besov_norm(maj.phi, rho, cfg.p);
      table = make_table({"continuum_norm", "tree_norm", "ratio", "tail"});
      auto row = lead("(Car)-proxy", "norms", cfg.depth, cfg);
      row.push_back(fd(cont.norm));
      row.push_back(fd(tree_norm));
      row.push_back(fd(cont.norm > 0 ? tree_norm / cont.norm : 0.0));
      row.push_back(fd(cont.tail_sum));
      elapsed = tick();
      row.push_back(cfg.timing ? fi(elapsed) : "0");
      table.rows.push_back(std::move(row));
      break;
    }

    case Command::kernel_check: {
      Rng rng(cfg.seed);
      // reproducing identity on random polynomials
      double max_residual = 0.0;
      for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::complex<double>> c(1 + rng.below(17));
        for (auto& x : c)
          x = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        const AnalyticFunction f(std::move(c), "random");
        const std::complex<double> z =
            std::polar(0.9 * std::sqrt(rng.uniform()),
                       rng.uniform(0.0, 2.0 * std::numbers::pi));
        max_residual = std::max(max_residual, reproducing_check(f, z));
      }
      // kernel positivity over the disc and over successor regions
      double min_plain = std::numeric_limits<double>::infinity();
      double min_restricted = std::numeric_limits<double>::infinity();
      for (int trial = 0; trial < 100000; ++trial) {
        const std::complex<double> z =
            std::polar(std::sqrt(rng.uniform()),
                       rng.uniform(0.0, 2.0 * std::numbers::pi));
        const std::complex<double> w =
            std::polar(std::sqrt(rng.uniform()),
                       rng.uniform(0.0, 2.0 * std::numbers::pi));
        min_plain = std::min(min_plain, kernel_positivity(z, w));

        const int n = 1 + static_cast<int>(rng.below(24));
        const double tz = std::ldexp(0.5 + 0.5 * rng.uniform(), -n);
        const double az = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const std::complex<double> zr = std::polar(1.0 - tz, az);
        const double width = std::ldexp(2.0 * std::numbers::pi, -n);
        const double lo = width * std::floor(az / width);
        const double tw = std::ldexp(rng.uniform(), -n);
        const std::complex<double> wr =
            std::polar(1.0 - tw, lo + width * rng.uniform());
        min_restricted = std::min(min_restricted, kernel_positivity(zr, wr));
      }
      const bool pass = max_residual <= 1e-8 && min_plain >= -1e-12 &&
                        min_restricted >= kKernelPositivityFloor;
      table = make_table({"check", "constant", "threshold", "pass"});
      const int depth = cfg.depth >= 0 ? cfg.depth : 0;
      const auto push = [&](const char* what, double value, double threshold,
                            bool ok) {
        auto row = lead("(Car)-proxy", "kernel-check", depth, cfg);
        row.push_back(what);
        row.push_back(fd(value));
        row.push_back(fd(threshold));
        row.push_back(ok ? "1" : "0");
        elapsed = tick();
        row.push_back(cfg.timing ? fi(elapsed) : "0");
        table.rows.push_back(std::move(row));
      };
      push("reproducing_residual", max_residual, 1e-8, max_residual <= 1e-8);
      push("positivity_min", min_plain, -1e-12, min_plain >= -1e-12);
      push("positivity_min_restricted", min_restricted, kKernelPositivityFloor,
           min_restricted >= kKernelPositivityFloor);
      if (!pass) status = 3;
      break;
    }
  }
  return status;
}

}  // namespace

int run_job(const JobConfig& cfg) {
  CsvTable table;
  long long elapsed = 0;
  std::string out_path;
  int status;
  try {
    status = run_job_inner(cfg, table, elapsed, out_path);
    emit_csv(table, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (cfg.timing) std::cerr << "elapsed_ms total: " << elapsed << "\n";
  return status;
}

}  // namespace besovtree
