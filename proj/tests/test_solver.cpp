#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "c1mortar/builtin_geometries.hpp"
#include "c1mortar/error.hpp"
#include "c1mortar/pipeline.hpp"

using namespace c1mortar;

namespace {

RunConfig config(const std::string& geometry, int p, VertexMode vm, MultiplierMode mm,
                 const std::string& solution) {
  RunConfig cfg;
  cfg.geometry = geometry;
  cfg.degree = p;
  cfg.vertex_mode = vm;
  cfg.multiplier_mode = mm;
  cfg.solution = solution;
  cfg.policy = ExecutionPolicy::serial;
  return cfg;
}

}  // namespace

TEST_CASE("zero data gives the zero solution") {
  for (MultiplierMode mm : {MultiplierMode::merged, MultiplierMode::unmerged}) {
    const auto topo = builtin_geometry("quartercircle3");
    RunArtifacts a;
    const RunResult r = run_solve(config("quartercircle3", 3, VertexMode::c0, mm, "zero"), topo, 2, &a);
    CHECK(r.homogeneous);
    CHECK(a.solution.u_full.cwiseAbs().maxCoeff() == 0.0);
    CHECK(a.solution.tau.cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("patch test: in-space data is reproduced") {
  struct Case {
    const char* geometry;
    int p;
    VertexMode vm;
    MultiplierMode mm;
    const char* solution;
  };
  for (const Case c : {Case{"square2", 3, VertexMode::c2, MultiplierMode::merged, "x2y2"},
                       Case{"square2", 2, VertexMode::c2, MultiplierMode::merged, "x2y2"},
                       Case{"square2", 3, VertexMode::c2, MultiplierMode::unmerged, "x2y"},
                       Case{"square4", 3, VertexMode::c2, MultiplierMode::merged, "x3y3"},
                       Case{"square4", 4, VertexMode::c0, MultiplierMode::merged, "x2y2"},
                       Case{"square12", 3, VertexMode::c2, MultiplierMode::merged, "x2y"}}) {
    CAPTURE(c.geometry);
    CAPTURE(c.p);
    CAPTURE(c.solution);
    const auto topo = builtin_geometry(c.geometry);
    const RunResult r = run_solve(config(c.geometry, c.p, c.vm, c.mm, c.solution), topo, 2);
    CHECK(r.errors.Linf <= 1e-9);
    CHECK(r.errors.brokenH2 <= 1e-8);
    CHECK(r.residual <= 1e-10);
    CHECK(r.constraint <= 1e-9);
  }
}

TEST_CASE("unmerged multipliers: rectangular coupling, residual contract kept") {
  for (const char* g : {"square2", "quartercircle3"}) {
    CAPTURE(g);
    const auto topo = builtin_geometry(g);
    RunArtifacts a;
    const RunResult r = run_solve(config(g, 3, VertexMode::c0, MultiplierMode::unmerged, "cos_cos"),
                                  topo, 3, &a);
    int trace = 0, mult = 0;
    for (std::size_t l = 0; l < r.trace_dims.size(); ++l) {
      trace += r.trace_dims[l];
      mult += r.multiplier_dims[l];
      CHECK(r.multiplier_dims[l] == r.trace_dims[l] + 2);
    }
    CHECK(mult > trace);
    CHECK(r.multipliers == mult);
    CHECK(r.residual <= 1e-10);
    CHECK(r.constraint <= 1e-9);
    MESSAGE(std::string(g), ": multiplier rank ", r.multiplier_rank, " of ", r.multipliers);
  }
}

TEST_CASE("cos(x)cos(y) on square2 is accurate at level 3") {
  const auto topo = builtin_geometry("square2");
  const RunResult r =
      run_solve(config("square2", 3, VertexMode::c2, MultiplierMode::merged, "cos_cos"), topo, 3);
  CHECK(r.errors.brokenH2 < 1e-2);
  CHECK(r.errors.H1 < 1e-2);
  CHECK(r.errors.L2 < 1e-2);
  CHECK(r.errors.Linf < 1e-2);
  CHECK(!r.homogeneous);
}

TEST_CASE("multiplier discrepancy decreases under refinement") {
  const auto topo = builtin_geometry("square2");
  RunConfig cfg = config("square2", 3, VertexMode::c2, MultiplierMode::merged, "cos_cos");
  double prev = 0.0;
  for (int level = 2; level <= 5; ++level) {
    const RunResult r = run_solve(cfg, topo, level);
    MESSAGE("level ", level, " discrepancy ", r.multiplier_discrepancy);
    if (level > 2) CHECK(r.multiplier_discrepancy <= 1.1 * prev);
    prev = r.multiplier_discrepancy;
  }
}

TEST_CASE("configuration errors") {
  const auto topo = builtin_geometry("square2");
  auto code = [&](RunConfig cfg, int level) {
    try {
      run_solve(cfg, topo, level);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IoFailure;
  };
  RunConfig cfg = config("square2", 1, VertexMode::c2, MultiplierMode::merged, "cos_cos");
  CHECK(code(cfg, 3) == ErrorCode::DegreeTooLow);
  cfg.degree = 3;
  CHECK(code(cfg, 1) == ErrorCode::TooFewElements);
  cfg.solution = "tan";
  CHECK(code(cfg, 3) == ErrorCode::InvalidConfig);
  CHECK(exit_status(ErrorCode::DegreeTooLow) == 2);
  CHECK(exit_status(ErrorCode::NonConformingInterface) == 3);
  CHECK(exit_status(ErrorCode::ResidualTooLarge) == 4);
  CHECK(exit_status(ErrorCode::IoFailure) == 5);
}

TEST_CASE("least-squares slope") {
  const std::vector<double> h{0.5, 0.25, 0.125};
  CHECK(ls_slope(h, {1.0, 0.125, 0.015625}) == doctest::Approx(3.0));
  CHECK(ls_slope(h, {2.0, 0.5, 0.125}) == doctest::Approx(2.0));
}
