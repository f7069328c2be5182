#include "c1mortar/manufactured.hpp"

#include <cmath>
#include <regex>

#include "c1mortar/error.hpp"

namespace c1mortar {

namespace {

// d^k/dx^k x^a
double dpow(double x, int a, int k) {
  if (k > a) return 0.0;
  double c = 1.0;
  for (int i = 0; i < k; ++i) c *= a - i;
  return c * std::pow(x, a - k);
}

}  // namespace

ManufacturedSolution cos_cos_solution() {
  ManufacturedSolution m;
  m.name = "cos_cos";
  m.u = [](double x, double y) { return std::cos(x) * std::cos(y); };
  m.grad = [](double x, double y) {
    return Eigen::Vector2d(-std::sin(x) * std::cos(y), -std::cos(x) * std::sin(y));
  };
  m.hess = [](double x, double y) {
    const double c = std::cos(x) * std::cos(y);
    return Eigen::Vector3d(-c, std::sin(x) * std::sin(y), -c);
  };
  m.bilaplacian = [](double x, double y) { return 4.0 * std::cos(x) * std::cos(y); };
  return m;
}

ManufacturedSolution zero_solution() {
  ManufacturedSolution m;
  m.name = "zero";
  m.u = [](double, double) { return 0.0; };
  m.grad = [](double, double) { return Eigen::Vector2d::Zero().eval(); };
  m.hess = [](double, double) { return Eigen::Vector3d::Zero().eval(); };
  m.bilaplacian = [](double, double) { return 0.0; };
  return m;
}

ManufacturedSolution monomial_solution(int a, int b) {
  if (a < 0 || b < 0) fail(ErrorCode::InvalidConfig, "monomial exponents must be nonnegative");
  ManufacturedSolution m;
  m.name = "x" + std::to_string(a) + "y" + std::to_string(b);
  m.u = [a, b](double x, double y) { return dpow(x, a, 0) * dpow(y, b, 0); };
  m.grad = [a, b](double x, double y) {
    return Eigen::Vector2d(dpow(x, a, 1) * dpow(y, b, 0), dpow(x, a, 0) * dpow(y, b, 1));
  };
  m.hess = [a, b](double x, double y) {
    return Eigen::Vector3d(dpow(x, a, 2) * dpow(y, b, 0), dpow(x, a, 1) * dpow(y, b, 1),
                           dpow(x, a, 0) * dpow(y, b, 2));
  };
  m.bilaplacian = [a, b](double x, double y) {
    return dpow(x, a, 4) * dpow(y, b, 0) + 2.0 * dpow(x, a, 2) * dpow(y, b, 2) +
           dpow(x, a, 0) * dpow(y, b, 4);
  };
  return m;
}

ManufacturedSolution manufactured_solution(const std::string& id) {
  if (id == "cos_cos") return cos_cos_solution();
  if (id == "zero") return zero_solution();
  static const std::regex mono(R"(x(\d*)(y(\d*))?)");
  std::smatch sm;
  if (std::regex_match(id, sm, mono)) {
    const int a = sm[1].str().empty() ? 1 : std::stoi(sm[1].str());
    const int b = !sm[2].matched ? 0 : (sm[3].str().empty() ? 1 : std::stoi(sm[3].str()));
    return monomial_solution(a, b);
  }
  fail(ErrorCode::InvalidConfig, "unknown manufactured solution '" + id + "'");
}

std::vector<std::string> manufactured_ids() { return {"cos_cos", "zero", "x<a>y<b>"}; }

}  // namespace c1mortar
