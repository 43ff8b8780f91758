#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tubal/lowrank.hpp"

namespace tubal::cli {

struct BenchConfig {
  std::filesystem::path input;
  std::vector<Method> methods;
  std::optional<TransformKind> transform;
  OperatorKind op_kind = OperatorKind::gaussian;
  OperatorMode op_mode = OperatorMode::pure;
  std::vector<std::size_t> k_grid;
  /// Unset means s = 2k + 1.
  std::optional<std::size_t> s;
  std::size_t q = 1;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::filesystem::path out;
};

struct BenchRow {
  std::string method;
  std::size_t k = 0;
  std::size_t s = 0;
  std::size_t q = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double rel_err = 0.0;
  double psnr = 0.0;
  double wall_ms = 0.0;
};

/// "start:stop:step", a comma separated list, or a single value.
std::vector<std::size_t> parse_k_grid(const std::string& text);

/// Seed of one (method, k, trial) cell.
std::uint64_t cell_seed(std::uint64_t master, Method method, std::size_t k, std::size_t trial);

MethodSpec make_spec(const BenchConfig& cfg, Method method, std::size_t k, std::size_t trial);

/// Rows in (method, k, trial) order; cells run in parallel.
std::vector<BenchRow> run_bench(const BenchConfig& cfg, const Tensor3& a);

std::string format_double(double v);
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

/// Entry point; returns the process exit code (0 ok, 1 runtime failure, 2 usage error).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tubal::cli
