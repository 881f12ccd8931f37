#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ssns/grid.hpp"
#include "ssns/initial_data.hpp"
#include "ssns/solver.hpp"

namespace ssns {

/// Everything a run needs. Text form:
///
///   [grid]    n, length
///   [data]    alpha, delta, window_radius, window_width
///   [solver]  epsilon, dt, t_end, snapshot_t0, snapshot_ratio,
///             snapshot_times, nonlinear, cfl
///   [output]  directory, seed
///   [sweep]   epsilon, delta, alpha, lambda   (lists: [a, b, ...])
///
/// Lines starting with '#' or ';' are comments. Omitted data lengths default
/// relative to the box (delta = L/64, window 0.48 L wide 0.08 L).
struct RunConfig {
  int n = 64;
  double length = 6.283185307179586;
  double alpha = 1.0;
  std::optional<double> delta;
  std::optional<double> window_radius;
  std::optional<double> window_width;
  SolverConfig solver;
  std::string directory = "out";
  std::uint64_t seed = 1;
  std::vector<double> sweep_epsilon;
  std::vector<double> sweep_delta;
  std::vector<double> sweep_alpha;
  std::vector<double> sweep_lambda;

  Grid grid() const;
  InitialDataSpec data() const;
  /// Re-checks every cross-field constraint; throws ValidationError naming the field.
  void validate() const;
  /// Canonical text with every default resolved; parse_config(normalized())
  /// reproduces the same normalized text.
  std::string normalized() const;
  /// FNV-1a 64 of normalized(), 16 hex digits.
  std::string hash() const;
};

struct RunPlan {
  std::string label;  // subdirectory name, e.g. "eps0.125_delta0.05"
  RunConfig config;   // sweep lists cleared
};

/// Cartesian product over the epsilon, delta and alpha sweeps (lambda
/// belongs to diagnostics and does not multiply runs). A config without
/// sweeps yields a single plan with an empty label.
std::vector<RunPlan> expand_sweeps(const RunConfig& cfg);

/// Throws ValidationError with the line number on malformed text, on unknown
/// keys and on constraint violations.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace ssns
