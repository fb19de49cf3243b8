#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "besovtree/rng.hpp"

namespace besovtree {

enum class Command {
  tc_check,
  embed_norm,
  dual_test,
  weak_type,
  maximal_check,
  variation,
  norms,
  kernel_check,
  sweep_depth,
};

std::optional<Command> parse_command(const std::string& name);

// One CLI job. depth -1 defers to the measure file header; lambda <= 0
// draws a fresh level per trial. timing controls whether elapsed_ms holds
// measured wall time (otherwise 0, keeping output byte-stable per seed).
struct JobConfig {
  Command command = Command::tc_check;
  int depth = -1;
  int depth_min = 4;  // sweep-depth lower end
  double p = 2.0;
  double weight_a = 0.0;
  std::string measure_path;
  std::string function_name;
  std::uint64_t seed = kDefaultSeed;
  std::string out_path = "out.csv";
  int trials = 1000;
  double lambda = -1.0;
  int restarts = 8;
  bool timing = false;
};

// Exit status: 0 success, 2 validation failure, 3 check failure.
int run_job(const JobConfig& cfg);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// RFC-4180-style: comma separated, LF line endings, quoting only where
// needed. Numbers pass through format_csv_double.
void emit_csv(const CsvTable& table, const std::string& path);

// Shortest-round-trip-safe formatting (17 significant digits, C locale).
std::string format_csv_double(double x);

}  // namespace besovtree
