#include "c1mortar/pipeline.hpp"

#include <cmath>

#include "c1mortar/builtin_geometries.hpp"
#include "c1mortar/error.hpp"
#include "c1mortar/geometry_io.hpp"

namespace c1mortar {

std::vector<std::string> config_header(const RunConfig& cfg) {
  return {std::string("c1mortar ") + kVersion,
          "geometry=" + cfg.geometry,
          "degree=" + std::to_string(cfg.degree),
          "level=" + std::to_string(cfg.level),
          "levels=" + std::to_string(cfg.level_min) + ".." + std::to_string(cfg.level_max),
          "vertex_mode=" + to_string(cfg.vertex_mode),
          "multiplier_mode=" + to_string(cfg.multiplier_mode),
          "solution=" + cfg.solution,
          std::string("boundary_data=") + (cfg.solution == "zero" ? "homogeneous" : "inhomogeneous"),
          "seed=" + std::to_string(cfg.seed),
          "execution=" + to_string(cfg.policy)};
}

MultiPatchTopology load_geometry(const std::string& name_or_path) {
  if (is_builtin(name_or_path)) return builtin_geometry(name_or_path);
  return load_geometry_file(name_or_path);
}

RunResult run_solve(const RunConfig& cfg, const MultiPatchTopology& topo, int level,
                    RunArtifacts* artifacts) {
  if (cfg.degree < 2) fail(ErrorCode::DegreeTooLow, "primal degree must be at least 2");
  const ManufacturedSolution u_ex = manufactured_solution(cfg.solution);
  RunArtifacts local;
  RunArtifacts& a = artifacts ? *artifacts : local;
  a.disc = make_discretization(topo, cfg.degree, level);
  a.cm = build_constraint_map(topo, a.disc, cfg.vertex_mode);
  a.spaces.clear();
  RunResult r;
  r.level = level;
  for (int l = 0; l < static_cast<int>(topo.interfaces.size()); ++l) {
    a.spaces.push_back(build_multiplier_space(topo, a.disc, l, cfg.multiplier_mode));
    r.multiplier_dims.push_back(a.spaces.back().dimension());
    r.trace_dims.push_back(build_trace_space(topo, a.disc, l).dimension());
    r.interface_dims.push_back(interface_primal_space(topo, a.disc, l).dimension());
  }
  a.system = assemble_saddle(topo, a.disc, a.cm, a.spaces, u_ex, cfg.policy);
  a.solution = solve_saddle(a.system, a.cm);
  r.errors = compute_errors(topo, a.disc, a.solution.u_full, u_ex, cfg.policy);
  r.errors.dofs = a.cm.reduced_dim;
  r.reduced_dofs = a.cm.reduced_dim;
  r.multipliers = static_cast<int>(a.system.B.rows());
  r.multiplier_rank = a.solution.multiplier_rank;
  r.residual = a.solution.residual;
  r.constraint = a.solution.constraint;
  r.homogeneous = u_ex.is_zero();
  if (!a.spaces.empty() && cfg.multiplier_mode != MultiplierMode::none)
    r.multiplier_discrepancy =
        multiplier_diagnostic_all(topo, a.disc, a.spaces, a.solution.tau,
                                  a.solution.multiplier_offsets, u_ex)
            .discrepancy;
  return r;
}

double ls_slope(const std::vector<double>& h, const std::vector<double>& err) {
  const int n = static_cast<int>(h.size());
  if (n < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double x = std::log(h[i]), y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::array<int, 4> reference_orders(int p) { return {p - 1, p, p + 1, p + 1}; }

ConvergenceTable run_convergence(const RunConfig& cfg, const MultiPatchTopology& topo) {
  if (cfg.level_max - cfg.level_min < 2)
    fail(ErrorCode::InvalidConfig, "a convergence sweep needs at least 3 levels");
  ConvergenceTable t;
  for (int L = cfg.level_min; L <= cfg.level_max; ++L) {
    try {
      t.rows.push_back(run_solve(cfg, topo, L));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TooFewElements && e.code() != ErrorCode::MeshTooCoarse) throw;
      t.skipped.push_back({L, e.what()});
    }
  }
  if (t.rows.size() < 3)
    fail(ErrorCode::InvalidConfig, "fewer than 3 levels are fine enough for this configuration");
  auto norm = [](const ErrorReport& e, int k) {
    return k == 0 ? e.brokenH2 : k == 1 ? e.H1 : k == 2 ? e.L2 : e.Linf;
  };
  const int n = static_cast<int>(t.rows.size());
  for (int k = 0; k < 4; ++k) {
    for (int i = 1; i < n; ++i) {
      const auto& a = t.rows[i - 1].errors;
      const auto& b = t.rows[i].errors;
      t.pairwise[k].push_back(std::log(norm(a, k) / norm(b, k)) / std::log(a.h / b.h));
    }
    std::vector<double> h, e;
    for (int i = std::max(0, n - 3); i < n; ++i) {
      h.push_back(t.rows[i].errors.h);
      e.push_back(norm(t.rows[i].errors, k));
    }
    t.slope[k] = ls_slope(h, e);
  }
  return t;
}

}  // namespace c1mortar
