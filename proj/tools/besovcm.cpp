#include <CLI11.hpp>

#include <cstdint>
#include <string>

#include "besovtree/jobs.hpp"
#include "besovtree/rng.hpp"

namespace {

// --weight takes the form power:<a>
bool parse_weight(const std::string& text, double& a) {
  if (text.rfind("power:", 0) != 0) return false;
  const std::string tail = text.substr(6);
  char* end = nullptr;
  a = std::strtod(tail.c_str(), &end);
  return end && *end == '\0' && !tail.empty();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Carleson measure toolkit for weighted Besov spaces on the "
               "dyadic tree"};

  std::string command;
  std::string weight = "power:0";
  besovtree::JobConfig cfg;

  app.add_option("--command", command,
                 "one of tc-check, embed-norm, dual-test, weak-type, "
                 "maximal-check, variation, norms, kernel-check, sweep-depth")
      ->required();
  app.add_option("--depth", cfg.depth, "tree truncation depth");
  app.add_option("--depth-min", cfg.depth_min,
                 "lowest depth for sweep-depth (default 4)");
  app.add_option("--p", cfg.p, "integrability exponent, > 1 (default 2)");
  app.add_option("--weight", weight, "weight spec, power:<a> (default power:0)");
  app.add_option("--measure", cfg.measure_path, "measure spec file");
  app.add_option("--function", cfg.function_name,
                 "analytic function name, e.g. poly:0,1 or logkernel:256");
  app.add_option("--seed", cfg.seed, "rng seed (default fixed)");
  app.add_option("--out", cfg.out_path, "output csv path (default out.csv)");
  app.add_option("--trials", cfg.trials, "random trials for weak-type");
  app.add_option("--lambda", cfg.lambda,
                 "fixed level for weak-type (random per trial if absent)");
  app.add_option("--restarts", cfg.restarts, "ascent restarts for embed-norm");
  app.add_flag("--timing", cfg.timing,
               "record wall-clock elapsed_ms (off keeps output byte-stable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const auto cmd = besovtree::parse_command(command);
  if (!cmd) {
    std::cerr << "error: unknown command " << command << "\n";
    return 2;
  }
  cfg.command = *cmd;

  if (!parse_weight(weight, cfg.weight_a)) {
    std::cerr << "error: bad weight spec " << weight << "\n";
    return 2;
  }

  return besovtree::run_job(cfg);
}
