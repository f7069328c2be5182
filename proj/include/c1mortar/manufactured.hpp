#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace c1mortar {

struct ManufacturedSolution {
  std::string name;
  std::function<double(double, double)> u;
  std::function<Eigen::Vector2d(double, double)> grad;
  std::function<Eigen::Vector3d(double, double)> hess;  // xx, xy, yy
  std::function<double(double, double)> bilaplacian;

  double laplacian(double x, double y) const {
    const Eigen::Vector3d h = hess(x, y);
    return h[0] + h[2];
  }
  bool is_zero() const { return name == "zero"; }
};

/// cos(x) cos(y); f = 4 cos(x) cos(y).
ManufacturedSolution cos_cos_solution();
ManufacturedSolution zero_solution();
/// x^a y^b.
ManufacturedSolution monomial_solution(int a, int b);

/// "cos_cos", "zero", or a monomial "x^a*y^b" written e.g. "x2y2", "x3y3",
/// "x2y", "x".
ManufacturedSolution manufactured_solution(const std::string& id);
std::vector<std::string> manufactured_ids();

}  // namespace c1mortar
