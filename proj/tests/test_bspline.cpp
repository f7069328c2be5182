#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "c1mortar/bspline.hpp"
#include "c1mortar/error.hpp"

using namespace c1mortar;

namespace {

std::vector<double> uniform_interior(int elements) {
  std::vector<double> v;
  for (int i = 1; i < elements; ++i) v.push_back(static_cast<double>(i) / elements);
  return v;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidConfig;
}

}  // namespace

TEST_CASE("open knot vector construction") {
  const auto in = uniform_interior(8);
  const std::vector<int> ones(in.size(), 1);
  const KnotVector kv = make_open_knot_vector(3, in, ones);
  CHECK(kv.dimension() == 11);
  CHECK(kv.knots().size() == 15);
  CHECK(kv.is_open());
  for (int i = 0; i < 4; ++i) {
    CHECK(kv.knots()[i] == 0.0);
    CHECK(kv.knots()[14 - i] == 1.0);
  }
  CHECK(kv.knots()[4] == doctest::Approx(1.0 / 8));

  const KnotVector bern = make_open_knot_vector(2, {}, {});
  CHECK(bern.dimension() == 3);
  CHECK(bern.knots().size() == 6);

  const std::vector<double> bad = {0.5, 0.3};
  const std::vector<int> m2 = {1, 1};
  CHECK(code_of([&] { make_open_knot_vector(2, bad, m2); }) == ErrorCode::NonMonotone);
  const std::vector<double> one = {0.5};
  const std::vector<int> big = {5};
  CHECK(code_of([&] { make_open_knot_vector(2, one, big); }) ==
        ErrorCode::MultiplicityOutOfRange);
}

TEST_CASE("element lookup") {
  const SplineSpace1D s(make_uniform_knot_vector(3, 8));
  CHECK(s.element_of(0.3) == 2);
  CHECK(s.element_of(0.0) == 0);
  CHECK(s.element_of(1.0) == 7);
  CHECK(s.num_elements() == 8);
  CHECK(s.mesh_size() == doctest::Approx(0.125));
  CHECK(s.quasi_uniformity() == doctest::Approx(1.0));
}

TEST_CASE("merging the end elements") {
  const KnotVector k1 = make_uniform_knot_vector(1, 8);
  const KnotVector m1 = merge_end_elements(k1);
  const std::vector<double> expect1 = {0, 0, 2.0 / 8, 3.0 / 8, 4.0 / 8, 5.0 / 8, 6.0 / 8, 1, 1};
  REQUIRE(m1.knots().size() == expect1.size());
  for (std::size_t i = 0; i < expect1.size(); ++i)
    CHECK(m1.knots()[i] == doctest::Approx(expect1[i]));

  const KnotVector m3 = merge_end_elements(make_uniform_knot_vector(3, 8));
  CHECK(m3.breakpoints().size() == 7);
  CHECK(m3.breakpoints()[1] == doctest::Approx(2.0 / 8));
  CHECK(m3.breakpoints()[5] == doctest::Approx(6.0 / 8));
  CHECK(m3.start_multiplicity() == 4);

  CHECK(code_of([] { merge_end_elements(make_uniform_knot_vector(2, 3)); }) ==
        ErrorCode::TooFewElements);
}

TEST_CASE("special spaces") {
  const auto in = uniform_interior(8);
  const SplineSpace1D mult = make_special_space(SpecialSpaceKind::multiplier_merged, 3, in);
  CHECK(mult.degree() == 1);
  CHECK(mult.dimension() == 7);
  CHECK(mult.knot_vector().knots()[2] == doctest::Approx(2.0 / 8));

  const SplineSpace1D clamped = make_special_space(SpecialSpaceKind::primal_clamped, 3, in);
  CHECK(clamped.degree() == 3);
  CHECK(clamped.dimension() == 11);
  CHECK(clamped.constrained_dimension() == 7);

  const SplineSpace1D red = make_special_space(SpecialSpaceKind::reduced_merged, 3, in);
  CHECK(red.degree() == 2);
  CHECK(red.conditions().zero_mean);

  const SplineSpace1D rz = make_special_space(SpecialSpaceKind::reduced_zero, 3, in);
  CHECK(rz.degree() == 2);
  // the end-interpolating functions are dropped
  CHECK(rz.dimension() == make_uniform_knot_vector(2, 8).dimension() - 2);
  for (double x : {0.0, 1.0}) {
    const BasisEval b = rz.eval(x, 0);
    double sum = 0;
    for (int j = 0; j < b.count; ++j) sum += std::abs(b(0, j));
    CHECK(sum == doctest::Approx(0.0).epsilon(1e-14));
  }

  CHECK(code_of([&] { make_special_space(SpecialSpaceKind::multiplier_merged, 1, in); }) ==
        ErrorCode::DegreeTooLow);
}

TEST_CASE("Bernstein basis of degree 2") {
  const SplineSpace1D s(make_uniform_knot_vector(2, 1));
  const BasisEval b = s.eval(0.5, 2);
  REQUIRE(b.count == 3);
  // (1-x)^2, 2x(1-x), x^2 and their derivatives at 1/2
  const double v[3] = {0.25, 0.5, 0.25}, d1[3] = {-1.0, 0.0, 1.0}, d2[3] = {2.0, -4.0, 2.0};
  for (int j = 0; j < 3; ++j) {
    CHECK(b(0, j) == doctest::Approx(v[j]).epsilon(1e-15));
    CHECK(b(1, j) == doctest::Approx(d1[j]).epsilon(1e-14));
    CHECK(b(2, j) == doctest::Approx(d2[j]).epsilon(1e-13));
  }
}

TEST_CASE("partition of unity at random points") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<SplineSpace1D> spaces;
  for (int p = 1; p <= 6; ++p) spaces.emplace_back(make_uniform_knot_vector(p, 7));
  const std::vector<double> in = {0.1, 0.35, 0.6, 0.9};
  const std::vector<int> mult = {1, 3, 2, 1};
  spaces.emplace_back(make_open_knot_vector(4, in, mult));
  double worst = 0, worst_d = 0;
  for (const auto& s : spaces)
    for (int t = 0; t < 10000 / static_cast<int>(spaces.size()) + 1; ++t) {
      const BasisEval b = s.eval(U(rng), 1);
      double sum = 0, sd = 0;
      for (int j = 0; j < b.count; ++j) {
        sum += b(0, j);
        sd += b(1, j);
      }
      worst = std::max(worst, std::abs(sum - 1.0));
      worst_d = std::max(worst_d, std::abs(sd));
    }
  CHECK(worst <= 1e-12);
  CHECK(worst_d <= 1e-9);
}

TEST_CASE("derivatives against central differences") {
  const double h = 1e-6;
  for (int p = 2; p <= 5; ++p) {
    const SplineSpace1D s(make_uniform_knot_vector(p, 8));
    for (double x : {0.37, 0.05, 0.81}) {
      const BasisEval b = s.eval(x, 2);
      for (int j = 0; j < b.count; ++j) {
        const int i = b.first_active + j;
        const double fd1 = (s.basis_value(i, x + h) - s.basis_value(i, x - h)) / (2 * h);
        const double fd2 =
            (s.basis_value(i, x + h, 1) - s.basis_value(i, x - h, 1)) / (2 * h);
        CHECK(b(1, j) == doctest::Approx(fd1).epsilon(1e-6).scale(1.0));
        CHECK(b(2, j) == doctest::Approx(fd2).epsilon(1e-5).scale(1.0));
      }
    }
  }
}

TEST_CASE("basis_value agrees with eval") {
  const SplineSpace1D s(make_uniform_knot_vector(3, 5));
  for (double x : {0.0, 0.13, 0.5, 0.99, 1.0}) {
    const BasisEval b = s.eval(x, 1);
    for (int j = 0; j < b.count; ++j) {
      CHECK(s.basis_value(b.first_active + j, x) == doctest::Approx(b(0, j)));
      CHECK(s.basis_value(b.first_active + j, x, 1) == doctest::Approx(b(1, j)));
    }
  }
  CHECK(s.basis_value(0, 0.9) == 0.0);
}

TEST_CASE("reduced end multiplicity drops end functions") {
  const std::vector<double> in = {0.25, 0.5, 0.75};
  const std::vector<int> ones(3, 1);
  const KnotVector open = make_open_knot_vector(3, in, ones);
  const KnotVector red = make_open_knot_vector(3, in, ones, 3);
  CHECK(red.dimension() == open.dimension() - 2);
  const SplineSpace1D so(open), sr(red);
  for (double x : {0.1, 0.4, 0.8}) {
    const BasisEval bo = so.eval(x, 0);
    const BasisEval br = sr.eval(x, 0);
    for (int j = 0; j < br.count; ++j) {
      const int i = br.first_active + j + 1;  // index in the open basis
      CHECK(br(0, j) == doctest::Approx(so.basis_value(i, x)));
    }
    (void)bo;
  }
}
