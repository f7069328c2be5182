#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "c1mortar/builtin_geometries.hpp"
#include "c1mortar/error.hpp"
#include "c1mortar/geometry.hpp"

using namespace c1mortar;

namespace {

// F on a patch, by central differences of point() in parameter space.
void check_jet_fd(const PatchGeometry& g, double u, double v) {
  const double h = 1e-5;
  const GeometryJet jet = g.eval(u, v);
  const Eigen::Vector2d Fu = (g.point(u + h, v) - g.point(u - h, v)) / (2 * h);
  const Eigen::Vector2d Fv = (g.point(u, v + h) - g.point(u, v - h)) / (2 * h);
  const double scale = 1.0 + jet.jacobian.norm();
  CHECK((jet.jacobian.col(0) - Fu).norm() <= 1e-5 * scale);
  CHECK((jet.jacobian.col(1) - Fv).norm() <= 1e-5 * scale);
  const double hh = 1e-4;
  const Eigen::Vector2d F0 = g.point(u, v);
  const Eigen::Vector2d Fuu = (g.point(u + hh, v) - 2 * F0 + g.point(u - hh, v)) / (hh * hh);
  const Eigen::Vector2d Fvv = (g.point(u, v + hh) - 2 * F0 + g.point(u, v - hh)) / (hh * hh);
  const Eigen::Vector2d Fuv = (g.point(u + hh, v + hh) - g.point(u + hh, v - hh) -
                               g.point(u - hh, v + hh) + g.point(u - hh, v - hh)) /
                              (4 * hh * hh);
  for (int r = 0; r < 2; ++r) {
    CHECK(std::abs(jet.hessians[r](0, 0) - Fuu[r]) <= 1e-5 * scale);
    CHECK(std::abs(jet.hessians[r](1, 1) - Fvv[r]) <= 1e-5 * scale);
    CHECK(std::abs(jet.hessians[r](0, 1) - Fuv[r]) <= 1e-5 * scale);
    CHECK(jet.hessians[r](0, 1) == jet.hessians[r](1, 0));
  }
  CHECK(jet.det == doctest::Approx(jet.jacobian.determinant()));
  CHECK((jet.inverse * jet.jacobian - Eigen::Matrix2d::Identity()).norm() <= 1e-12);
}

}  // namespace

TEST_CASE("identity map") {
  const PatchGeometry g = bilinear_patch({0, 0}, {1, 0}, {0, 1}, {1, 1});
  for (double u : {0.0, 0.3, 1.0})
    for (double v : {0.0, 0.7, 1.0}) {
      const GeometryJet jet = g.eval(u, v);
      CHECK((jet.point - Eigen::Vector2d(u, v)).norm() <= 1e-15);
      CHECK((jet.jacobian - Eigen::Matrix2d::Identity()).norm() <= 1e-15);
      CHECK(jet.hessians[0].norm() <= 1e-14);
      CHECK(jet.hessians[1].norm() <= 1e-14);
    }
}

TEST_CASE("bilinear quadrilateral jet") {
  const PatchGeometry g = bilinear_patch({0, 0}, {2, 0}, {0, 1}, {2.5, 1.5});
  check_jet_fd(g, 0.5, 0.5);
  check_jet_fd(g, 0.2, 0.9);
  const GeometryJet jet = g.eval(0.5, 0.5);
  // F_u = ((p10 - p00) + (p11 - p01)) / 2 at the center
  CHECK(jet.jacobian(0, 0) == doctest::Approx(2.25));
  CHECK(jet.jacobian(1, 0) == doctest::Approx(0.25));
}

TEST_CASE("quarter circle patches") {
  const auto patches = builtin_patches("quartercircle3");
  REQUIRE(patches.size() == 3);
  CHECK(!patches[0].is_rational());
  CHECK(patches[1].is_rational());
  CHECK(patches[2].is_rational());
  // outer arcs: u = 1 on patch 1, v = 1 on patch 2
  double worst = 0;
  for (int i = 0; i <= 50; ++i) {
    const double t = i / 50.0;
    worst = std::max(worst, std::abs(patches[1].point(1.0, t).norm() - 1.0));
    worst = std::max(worst, std::abs(patches[2].point(t, 1.0).norm() - 1.0));
  }
  CHECK(worst <= 1e-12);
  for (int k = 1; k <= 2; ++k) {
    check_jet_fd(patches[k], 0.3, 0.6);
    check_jet_fd(patches[k], 0.8, 0.15);
  }
}

TEST_CASE("knot insertion keeps the map") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (const auto& g : builtin_patches("quartercircle3")) {
    const PatchGeometry r = refine_uniform(g, 2);
    CHECK(r.knots_u().num_elements() == 4 * g.knots_u().num_elements());
    CHECK(r.knots_v().num_elements() == 4 * g.knots_v().num_elements());
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
      const double u = U(rng), v = U(rng);
      worst = std::max(worst, (r.point(u, v) - g.point(u, v)).norm());
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("uniform refinement of knot vectors") {
  const KnotVector kv = make_uniform_knot_vector(2, 1);
  const KnotVector r = refine_uniform(kv, 2);
  CHECK(r.num_elements() == 4);
  CHECK(SplineSpace1D(r).mesh_size() == doctest::Approx(0.25));
  const std::vector<double> in = {0.3};
  const std::vector<int> one = {1};
  const SplineSpace1D s(make_open_knot_vector(2, in, one));
  const SplineSpace1D rs = refine_uniform(s, 3);
  CHECK(rs.quasi_uniformity() == doctest::Approx(s.quasi_uniformity()));
}

TEST_CASE("invalid patches") {
  const KnotVector k1 = make_uniform_knot_vector(1, 1);
  std::vector<Eigen::Vector2d> cps = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  CHECK_THROWS_AS(PatchGeometry(k1, k1, {cps[0], cps[1]}), Error);
  CHECK_THROWS_AS(PatchGeometry(k1, k1, cps, {1, 1, 0, 1}), Error);
  const PatchGeometry collapsed(k1, k1, {{0, 0}, {1, 0}, {0, 0}, {1, 0}});
  try {
    collapsed.eval(0.5, 0.5);
    FAIL("expected DegenerateJacobian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateJacobian);
  }
}
