#pragma once

// End-to-end runs: geometry -> spaces -> assembly -> solve -> errors.

#include <cstdint>
#include <string>
#include <vector>

#include "c1mortar/assembly.hpp"
#include "c1mortar/error_norms.hpp"
#include "c1mortar/solver.hpp"

namespace c1mortar {

inline constexpr const char* kVersion = "1.0.0";

struct RunConfig {
  std::string geometry = "square2";  // builtin name or JSON path
  int degree = 3;
  int level = 3;
  int level_min = 1;
  int level_max = 4;
  VertexMode vertex_mode = VertexMode::c2;
  MultiplierMode multiplier_mode = MultiplierMode::merged;
  std::string solution = "cos_cos";
  std::string output_dir = ".";
  std::uint64_t seed = 7;
  ExecutionPolicy policy = ExecutionPolicy::parallel;
};

/// "key=value" lines describing the configuration and the version.
std::vector<std::string> config_header(const RunConfig& cfg);

MultiPatchTopology load_geometry(const std::string& name_or_path);

struct RunResult {
  int level = 0;
  ErrorReport errors;
  int reduced_dofs = 0;
  int multipliers = 0;
  int multiplier_rank = 0;
  double residual = 0.0;
  double constraint = 0.0;
  double multiplier_discrepancy = 0.0;
  std::vector<int> trace_dims, multiplier_dims, interface_dims;
  bool homogeneous = false;
};

/// Also returns the pieces when the caller wants to export fields.
struct RunArtifacts {
  Discretization disc;
  ConstraintMap cm;
  std::vector<MultiplierSpaceHandle> spaces;
  SaddleSystem system;
  SolutionField solution;
};

RunResult run_solve(const RunConfig& cfg, const MultiPatchTopology& topo, int level,
                    RunArtifacts* artifacts = nullptr);

/// Least-squares slope of log(err) against log(h) (positive for
/// convergence) over the given points.
double ls_slope(const std::vector<double>& h, const std::vector<double>& err);

struct SkippedLevel {
  int level = 0;
  std::string reason;
};

struct ConvergenceTable {
  std::vector<RunResult> rows;
  std::vector<SkippedLevel> skipped;  // too coarse for the multiplier space
  // per norm (brokenH2, H1, L2, Linf): pairwise rates (size rows-1) and the
  // least-squares slope over the last three levels
  std::array<std::vector<double>, 4> pairwise;
  std::array<double, 4> slope{};
};

/// Levels failing with TooFewElements or MeshTooCoarse are skipped; at
/// least three must remain.
ConvergenceTable run_convergence(const RunConfig& cfg, const MultiPatchTopology& topo);

/// Reference orders of the figure legends: p-1, p, p+1, p+1.
std::array<int, 4> reference_orders(int p);

}  // namespace c1mortar
