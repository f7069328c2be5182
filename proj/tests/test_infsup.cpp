#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "c1mortar/builtin_geometries.hpp"
#include "c1mortar/error.hpp"
#include "c1mortar/infsup.hpp"

using namespace c1mortar;

namespace {

constexpr std::array<double, 8> kPlotted = {0.5763, 0.5889, 0.6152, 0.6268,
                                            0.6044, 0.5321, 0.3984, 0.1819};

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IoFailure;
}

}  // namespace

TEST_CASE("degree sweep matches the plotted values") {
  for (int P = 2; P <= 9; ++P) {
    const EigenStudy s = corner_eigen_test(P, 64);
    CAPTURE(P);
    CHECK(s.test_degree == P - 1);
    CHECK(s.mu_min > 0.0);
    CHECK(std::abs(s.mu_min - kPlotted[P - 2]) <= 0.02);
  }
}

TEST_CASE("the other degree indexing does not match") {
  // test degree P instead of P - 1 for plotted degree P
  int matches = 0;
  for (int P = 2; P <= 8; ++P)
    matches += std::abs(corner_eigen_test(P + 1, 64).mu_min - kPlotted[P - 2]) <= 0.02;
  CHECK(matches < 7);
}

TEST_CASE("uniform meshes: mu_min does not depend on h") {
  for (int P = 2; P <= 9; ++P) {
    const int d = P - 1;
    const int n0 = 2 * d + 5 <= 16 ? 16 : 32;
    const double a = corner_eigen_test(P, n0).mu_min;
    const double b = corner_eigen_test(P, 2 * n0).mu_min;
    const double c = corner_eigen_test(P, 4 * n0).mu_min;
    CAPTURE(P);
    CHECK(std::abs(a - b) <= 1e-8);
    CHECK(std::abs(a - c) <= 1e-8);
  }
  CHECK(code_of([] { corner_eigen_test(3, 8); }) == ErrorCode::MeshTooCoarse);
  CHECK(code_of([] { corner_eigen_test(1, 32); }) == ErrorCode::DegreeTooLow);
}

TEST_CASE("scaling invariance") {
  UniformRng rng(99);
  const std::vector<double> base = perturbed_breakpoints(40, rng);
  // first 30 breakpoints scaled by 1/2, the rest refilled uniformly
  std::vector<double> scaled;
  for (int i = 0; i < 30; ++i) scaled.push_back(0.5 * base[i]);
  const double last = scaled.back();
  for (int i = 1; i <= 10; ++i) scaled.push_back(last + (1.0 - last) * i / 11.0);
  for (int P : {2, 3, 5}) {
    CAPTURE(P);
    CHECK(std::abs(corner_eigen_test(P, base).mu_min - corner_eigen_test(P, scaled).mu_min) <=
          1e-10);
  }
}

TEST_CASE("extra ring sensitivity is reported") {
  const EigenStudy a = corner_eigen_test(3, 32, 0);
  const EigenStudy b = corner_eigen_test(3, 32, 1);
  CHECK(b.restricted_size == a.restricted_size + 1);
  MESSAGE("plotted degree 3: window ", a.mu_min, ", one extra ring ", b.mu_min);
  CHECK(b.mu_min > 0.0);
}

TEST_CASE("random meshes") {
  UniformRng r1(5), r2(5);
  for (int i = 0; i < 10; ++i) CHECK(r1.next() == r2.next());
  UniformRng r3(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = r3.next();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }

  RandomMeshSpec spec;
  spec.trials = 1000;
  spec.seed = 7;
  const RandomMeshSummary s = random_mesh_study(3, spec);
  const RandomMeshSummary again = random_mesh_study(3, spec);
  CHECK(s.mu == again.mu);
  CHECK(s.increasing_meshes == spec.trials);
  CHECK(s.min >= 0.55);
  CHECK(s.max <= 0.65);
  MESSAGE("min ", s.min, " max ", s.max, " mean ", s.mean);

  const Histogram h = histogram(s.mu, 0.575, 0.630, 22);
  int total = h.below + h.above;
  for (int c : h.count) total += c;
  CHECK(total == spec.trials);
  CHECK(h.left.front() == 0.575);
  CHECK(h.right.back() == doctest::Approx(0.630));
  CHECK(code_of([] { histogram({}, 1.0, 0.0, 3); }) == ErrorCode::InvalidConfig);
}

TEST_CASE("coupling conditioning") {
  const auto topo = builtin_geometry("square2");
  double prev = 0.0;
  for (int level = 3; level <= 5; ++level) {
    const Discretization disc = make_discretization(topo, 3, level);
    const CouplingConditioning c = coupling_conditioning(topo, disc, 0, MultiplierMode::merged);
    CHECK(c.square);
    CHECK(c.rank == c.rows);
    if (level == 3) {
      CHECK(c.rows == 7);
      CHECK(c.cols == 7);
    }
    CHECK(c.sigma_min > 0.05);
    if (prev > 0.0) {
      CHECK(c.sigma_min / prev >= 0.8);
      CHECK(c.sigma_min / prev <= 1.25);
    }
    MESSAGE("level ", level, " sigma_min ", c.sigma_min);
    prev = c.sigma_min;
  }
  const Discretization disc = make_discretization(topo, 3, 3);
  const CouplingConditioning u = coupling_conditioning(topo, disc, 0, MultiplierMode::unmerged);
  CHECK(u.rows == 7);
  CHECK(u.cols == 9);
  CHECK(!u.square);
  CHECK(u.rank == 7);
}
