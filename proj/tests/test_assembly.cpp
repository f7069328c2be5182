#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "c1mortar/assembly.hpp"
#include "c1mortar/builtin_geometries.hpp"
#include "c1mortar/error_norms.hpp"
#include "c1mortar/quadrature.hpp"
#include "test_support.hpp"

using namespace c1mortar;
using c1mortar::testing::interpolate;

namespace {

const LoadFunction zero_load = [](double, double) { return 0.0; };

MultiPatchTopology unit_square() {
  return build_topology({bilinear_patch({0, 0}, {1, 0}, {0, 1}, {1, 1})});
}

double max_boundary_error(const MultiPatchTopology& topo, const Discretization& disc,
                          const Eigen::VectorXd& u, const ManufacturedSolution& ex) {
  double err = 0.0;
  for (const SideRef& s : topo.dirichlet_sides)
    for (int k = 0; k <= 64; ++k) {
      const Eigen::Vector2d uv = side_point(s.side, k / 64.0);
      const Eigen::Vector2d x = topo.patches[s.patch].point(uv.x(), uv.y());
      err = std::max(err, std::abs(evaluate_field(topo, disc, u, s.patch, uv.x(), uv.y()) -
                                   ex.u(x.x(), x.y())));
    }
  return err;
}

}  // namespace

TEST_CASE("stiffness is symmetric positive semidefinite on the constrained space") {
  for (const char* name : {"square4", "quartercircle3"}) {
    CAPTURE(name);
    const auto topo = builtin_geometry(name);
    const Discretization disc = make_discretization(topo, 3, 2);
    const ConstraintMap cm = build_constraint_map(topo, disc, VertexMode::c2);
    const StiffnessLoad sl = assemble_stiffness_load(topo, disc, zero_load, ExecutionPolicy::serial);
    const SparseMatrix Ar = cm.R.transpose() * sl.A * cm.R;
    CHECK((Eigen::MatrixXd(Ar) - Eigen::MatrixXd(Ar).transpose()).cwiseAbs().maxCoeff() <=
          1e-12 * Eigen::MatrixXd(Ar).cwiseAbs().maxCoeff());
    std::mt19937_64 rng(5);
    std::normal_distribution<double> N;
    for (int t = 0; t < 50; ++t) {
      Eigen::VectorXd z(cm.reduced_dim);
      for (int i = 0; i < z.size(); ++i) z[i] = N(rng);
      CHECK(z.dot(Ar * z) >= -1e-10 * z.squaredNorm());
    }
  }
}

TEST_CASE("single element stiffness entry against a high-order oracle") {
  const auto topo = unit_square();
  const Discretization disc = make_discretization(topo, 2, 0);
  REQUIRE(disc.spaces[0].num_elements() == 1);
  ElementContribution ec;
  element_stiffness(topo, disc, 0, 0, 0, zero_load, -1, ec);
  const auto it = std::find(ec.dofs.begin(), ec.dofs.end(), 0);
  REQUIRE(it != ec.dofs.end());
  const int k = static_cast<int>(it - ec.dofs.begin());

  // B(u, v) = (1-u)^2 (1-v)^2
  auto b = [](double t) { return (1 - t) * (1 - t); };
  auto db = [](double t) { return -2 * (1 - t); };
  const QuadratureRule1D g = gauss_legendre(8);
  double oracle = 0.0;
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j) {
      const double u = g.nodes[i], v = g.nodes[j];
      const double huu = 2 * b(v), huv = db(u) * db(v), hvv = 2 * b(u);
      oracle += g.weights[i] * g.weights[j] * (huu * huu + 2 * huv * huv + hvv * hvv);
    }
  CHECK(std::abs(ec.K(k, k) - oracle) <= 1e-12 * oracle);
}

TEST_CASE("affine functions are in the kernel of the stiffness") {
  for (const char* name : {"square2", "square4", "quartercircle3"}) {
    CAPTURE(name);
    const auto topo = builtin_geometry(name);
    const Discretization disc = make_discretization(topo, 3, 2);
    const StiffnessLoad sl = assemble_stiffness_load(topo, disc, zero_load, ExecutionPolicy::serial);
    // x is in every patch space only when the map itself is; on the NURBS
    // patches it is not, so there only the polynomial patch block is checked
    const Eigen::VectorXd lin = interpolate(topo, disc, [](double x, double y) { return x - 2 * y + 1; });
    const Eigen::VectorXd Alin = sl.A * lin;
    const double scale = Eigen::MatrixXd(sl.A).cwiseAbs().maxCoeff();
    for (int k = 0; k < disc.num_patches(); ++k) {
      if (topo.patches[k].is_rational()) continue;
      for (int i = disc.offsets[k]; i < disc.offsets[k + 1]; ++i)
        CHECK(std::abs(Alin[i]) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("coupling") {
  const auto topo = builtin_geometry("square2");
  const Discretization disc = make_discretization(topo, 3, 3);
  std::vector<MultiplierSpaceHandle> spaces{
      build_multiplier_space(topo, disc, 0, MultiplierMode::merged)};
  const CouplingBlock cb = assemble_coupling(topo, disc, spaces);
  REQUIRE(cb.B.rows() == 7);
  REQUIRE(cb.B.cols() == disc.total_dofs());

  SUBCASE("a C1 field has no jump") {
    // (x-1)_+^2 y^3 is C1 across x = 1 and piecewise in both patch spaces
    const Eigen::VectorXd c = interpolate(topo, disc, [](double x, double y) {
      return x > 1 ? (x - 1) * (x - 1) * y * y * y : 0.0;
    });
    CHECK((cb.B * c).cwiseAbs().maxCoeff() <= 1e-12);
    const Eigen::VectorXd smooth =
        interpolate(topo, disc, [](double x, double y) { return x * x * x * y * y; });
    CHECK((cb.B * smooth).cwiseAbs().maxCoeff() <= 1e-12);
  }

  SUBCASE("sign convention") {
    REQUIRE(topo.interfaces[0].primary.patch == 0);
    const Eigen::VectorXd kink =
        interpolate(topo, disc, [](double x, double) { return x > 1 ? x - 1 : 0.0; });
    const Eigen::VectorXd r = cb.B * kink;
    for (int j = 0; j < r.size(); ++j) CHECK(r[j] > 0.0);
  }

  SUBCASE("entry against a 1D oracle") {
    const Interface& I = topo.interfaces[0];
    REQUIRE(I.secondary.side == Side::west);
    const TensorSpace2D& ss = disc.spaces[I.secondary.patch];
    const SplineSpace1D& along = ss.v();
    const double d0 = ss.u().basis_value(1, 0.0, 1);
    const QuadratureRule1D ref = gauss_legendre(12);
    const auto& bp = along.knot_vector().breakpoints();
    const auto& mu = spaces[0].space;
    for (int gen : {2, 5}) {
      for (int j : {0, 3, 6}) {
        double oracle = 0.0;
        for (std::size_t e = 0; e + 1 < bp.size(); ++e) {
          const QuadratureRule1D r = map_rule(ref, bp[e], bp[e + 1]);
          for (int q = 0; q < r.size(); ++q)
            oracle += r.weights[q] * mu.basis_value(j, r.nodes[q]) * d0 *
                      along.basis_value(gen, r.nodes[q]);
        }
        const int col = disc.global(I.secondary.patch, side_dof(ss, Side::west, 1, gen));
        CAPTURE(gen);
        CAPTURE(j);
        CHECK(std::abs(cb.B.coeff(j, col) - oracle) <= 1e-12);
      }
    }
  }
}

TEST_CASE("boundary lifting") {
  SUBCASE("zero data") {
    const auto topo = builtin_geometry("square2");
    const Discretization disc = make_discretization(topo, 3, 2);
    const ConstraintMap cm = build_constraint_map(topo, disc, VertexMode::c2);
    const Eigen::VectorXd c = lift_boundary_data(topo, disc, cm, zero_solution());
    CHECK(c.size() == static_cast<int>(cm.clamped_classes.size()));
    CHECK(c.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("in-space data is reproduced") {
    const auto topo = builtin_geometry("square2");
    const Discretization disc = make_discretization(topo, 3, 2);
    const ConstraintMap cm = build_constraint_map(topo, disc, VertexMode::c2);
    const ManufacturedSolution x = manufactured_solution("x");
    const Eigen::VectorXd g = cm.lift(lift_boundary_data(topo, disc, cm, x));
    const Eigen::VectorXd exact = interpolate(topo, disc, x.u);
    for (int cls : cm.clamped_classes)
      for (int d = 0; d < disc.total_dofs(); ++d)
        if (cm.class_of[d] == cls) CHECK(std::abs(g[d] - exact[d]) <= 1e-12);
    // value 0 and slope 1 on the west side x = 0
    for (double y : {0.1, 0.5, 0.9}) {
      CHECK(std::abs(evaluate_field(topo, disc, g, 0, 0.0, y)) <= 1e-12);
      // d/du at u = 0 only sees the two clamped layers; patch 0 is [0,1]^2
      const TensorSpace2D& s0 = disc.spaces[0];
      double slope = 0.0;
      for (int j = 0; j < s0.nv(); ++j)
        for (int i = 0; i < 2; ++i)
          slope += g[disc.global(0, s0.flat(i, j))] * s0.u().basis_value(i, 0.0, 1) *
                   s0.v().basis_value(j, y);
      CHECK(std::abs(slope - 1.0) <= 1e-12);
    }
  }
  SUBCASE("boundary error converges at order p + 1") {
    const auto topo = builtin_geometry("square2");
    const ManufacturedSolution ex = cos_cos_solution();
    std::vector<double> errs;
    for (int level = 2; level <= 4; ++level) {
      const Discretization disc = make_discretization(topo, 3, level);
      const ConstraintMap cm = build_constraint_map(topo, disc, VertexMode::c2);
      const Eigen::VectorXd g = cm.lift(lift_boundary_data(topo, disc, cm, ex));
      errs.push_back(max_boundary_error(topo, disc, g, ex));
    }
    for (std::size_t i = 1; i < errs.size(); ++i) {
      const double ratio = errs[i - 1] / errs[i];
      MESSAGE("boundary error ratio ", ratio);
      CHECK(ratio > 12.0);
      CHECK(ratio < 22.0);
    }
  }
}

TEST_CASE("manufactured solutions") {
  const ManufacturedSolution c = cos_cos_solution();
  for (double x : {0.1, 0.7})
    for (double y : {0.3, 1.4}) {
      CHECK(c.laplacian(x, y) == doctest::Approx(-2 * std::cos(x) * std::cos(y)).epsilon(1e-14));
      CHECK(c.bilaplacian(x, y) == doctest::Approx(4 * std::cos(x) * std::cos(y)).epsilon(1e-14));
    }
  const ManufacturedSolution z = zero_solution();
  CHECK(z.bilaplacian(0.3, 0.2) == 0.0);
  CHECK(z.u(0.3, 0.2) == 0.0);

  // 13-point finite-difference biharmonic stencil
  const double h = 1e-2;
  for (const char* id : {"x3y3", "x2y2", "cos_cos"}) {
    const ManufacturedSolution m = manufactured_solution(id);
    for (double x : {0.4, 0.9})
      for (double y : {0.35, 0.8}) {
        auto u = [&](int i, int j) { return m.u(x + i * h, y + j * h); };
        const double fd = (20 * u(0, 0) - 8 * (u(1, 0) + u(-1, 0) + u(0, 1) + u(0, -1)) +
                           2 * (u(1, 1) + u(1, -1) + u(-1, 1) + u(-1, -1)) +
                           u(2, 0) + u(-2, 0) + u(0, 2) + u(0, -2)) /
                          (h * h * h * h);
        CAPTURE(id);
        CHECK(std::abs(fd - m.bilaplacian(x, y)) <= 1e-3 * std::max(1.0, std::abs(fd)));
        // gradient and Hessian by central differences
        const double e = 1e-5;
        const Eigen::Vector2d g = m.grad(x, y);
        CHECK(std::abs((m.u(x + e, y) - m.u(x - e, y)) / (2 * e) - g.x()) <= 1e-8);
        CHECK(std::abs((m.u(x, y + e) - m.u(x, y - e)) / (2 * e) - g.y()) <= 1e-8);
        const Eigen::Vector3d H = m.hess(x, y);
        CHECK(std::abs((m.grad(x + e, y).x() - m.grad(x - e, y).x()) / (2 * e) - H[0]) <= 1e-8);
        CHECK(std::abs((m.grad(x + e, y).y() - m.grad(x - e, y).y()) / (2 * e) - H[1]) <= 1e-8);
        CHECK(std::abs((m.grad(x, y + e).y() - m.grad(x, y - e).y()) / (2 * e) - H[2]) <= 1e-8);
      }
  }
  CHECK(manufactured_solution("x3y3").bilaplacian(0.5, 2.0) == doctest::Approx(72.0));
}

TEST_CASE("physical Hessians by the chain rule") {
  // phi(x, y) composed with each patch map; parametric derivatives of the
  // composition by central differences, pushed forward and compared with
  // the exact physical Hessian
  auto phi = [](const Eigen::Vector2d& x) { return std::sin(x.x()) * std::exp(0.5 * x.y()); };
  auto hess = [](const Eigen::Vector2d& x) {
    const double s = std::sin(x.x()), c = std::cos(x.x()), e = std::exp(0.5 * x.y());
    return Eigen::Vector3d(-s * e, 0.5 * c * e, 0.25 * s * e);
  };
  for (const auto& name : builtin_names()) {
    const auto topo = builtin_geometry(name);
    for (const auto& g : topo.patches)
      for (double u : {0.23, 0.61})
        for (double v : {0.17, 0.77}) {
          const double h = 1e-4;
          auto f = [&](double a, double b) { return phi(g.point(a, b)); };
          const Eigen::Vector2d gh((f(u + h, v) - f(u - h, v)) / (2 * h),
                                   (f(u, v + h) - f(u, v - h)) / (2 * h));
          Eigen::Matrix2d hh;
          hh(0, 0) = (f(u + h, v) - 2 * f(u, v) + f(u - h, v)) / (h * h);
          hh(1, 1) = (f(u, v + h) - 2 * f(u, v) + f(u, v - h)) / (h * h);
          hh(0, 1) = hh(1, 0) =
              (f(u + h, v + h) - f(u + h, v - h) - f(u - h, v + h) + f(u - h, v - h)) / (4 * h * h);
          const GeometryJet jet = g.eval(u, v);
          const Eigen::Vector3d H = physical_hessian(jet, gh, hh);
          CAPTURE(name);
          CHECK((H - hess(jet.point)).cwiseAbs().maxCoeff() <= 1e-5);
        }
  }
}

TEST_CASE("basis Hessians match the field Hessian of an interpolant") {
  const auto topo = builtin_geometry("quartercircle3");
  const Discretization disc = make_discretization(topo, 3, 2);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(-1, 1);
  Eigen::VectorXd c(disc.total_dofs());
  for (int i = 0; i < c.size(); ++i) c[i] = U(rng);
  for (int k = 0; k < disc.num_patches(); ++k) {
    const auto& s = disc.spaces[k];
    const auto& g = topo.patches[k];
    const double u = 0.3, v = 0.6;
    PhysicalBasis pb;
    eval_physical_basis(s, g, s.u().element_of(u), s.v().element_of(v), u, v, 2, pb);
    Eigen::Vector2d grad = Eigen::Vector2d::Zero();
    for (std::size_t a = 0; a < pb.local.size(); ++a)
      grad += c[disc.global(k, pb.local[a])] * pb.grad.row(a).transpose();
    // physical gradient from parametric differences: J^-T grad_hat
    const double h = 1e-6;
    const Eigen::Vector2d gh(
        (evaluate_field(topo, disc, c, k, u + h, v) - evaluate_field(topo, disc, c, k, u - h, v)) / (2 * h),
        (evaluate_field(topo, disc, c, k, u, v + h) - evaluate_field(topo, disc, c, k, u, v - h)) / (2 * h));
    const Eigen::Vector2d fd = pb.jet.inverse.transpose() * gh;
    CHECK((grad - fd).cwiseAbs().maxCoeff() <= 1e-6 * std::max(1.0, grad.norm()));
  }
}
