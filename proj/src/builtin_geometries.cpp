#include "c1mortar/builtin_geometries.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "c1mortar/error.hpp"

namespace c1mortar {

namespace {

using V2 = Eigen::Vector2d;

KnotVector linear_knots() { return KnotVector(1, {0.0, 0.0, 1.0, 1.0}); }
KnotVector quadratic_knots() { return KnotVector(2, {0.0, 0.0, 0.0, 1.0, 1.0, 1.0}); }

std::vector<PatchGeometry> grid(int cols, int rows, double width, double height) {
  std::vector<PatchGeometry> out;
  const double dx = width / cols, dy = height / rows;
  for (int j = 0; j < rows; ++j)
    for (int i = 0; i < cols; ++i) {
      const double x0 = i * dx, x1 = (i + 1) * dx, y0 = j * dy, y1 = (j + 1) * dy;
      out.push_back(bilinear_patch({x0, y0}, {x1, y0}, {x0, y1}, {x1, y1}));
    }
  return out;
}

std::vector<PatchGeometry> quartercircle() {
  const double c = std::cos(std::numbers::pi / 8);
  const double t = std::tan(std::numbers::pi / 8);
  const double s = std::numbers::sqrt2 / 2;
  std::vector<PatchGeometry> out;
  out.push_back(bilinear_patch({0, 0}, {0.5, 0}, {0, 0.5}, {0.5, 0.5}));
  // u radial (degree 1), v angular (degree 2); flat index i + 2 j
  out.emplace_back(linear_knots(), quadratic_knots(),
                   std::vector<V2>{{0.5, 0.0}, {1.0, 0.0}, {0.5, 0.25}, {1.0, t}, {0.5, 0.5}, {s, s}},
                   std::vector<double>{1.0, 1.0, 1.0, c, 1.0, 1.0});
  // u angular (degree 2), v radial (degree 1); flat index i + 3 j
  out.emplace_back(quadratic_knots(), linear_knots(),
                   std::vector<V2>{{0.0, 0.5}, {0.25, 0.5}, {0.5, 0.5}, {0.0, 1.0}, {t, 1.0}, {s, s}},
                   std::vector<double>{1.0, 1.0, 1.0, 1.0, c, 1.0});
  return out;
}

}  // namespace

PatchGeometry bilinear_patch(const V2& p00, const V2& p10, const V2& p01, const V2& p11) {
  return PatchGeometry(linear_knots(), linear_knots(), {p00, p10, p01, p11});
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {"square2", "square4", "square12", "quartercircle3"};
  return names;
}

bool is_builtin(const std::string& name) {
  const auto& n = builtin_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

std::vector<PatchGeometry> builtin_patches(const std::string& name) {
  if (name == "square2") return grid(2, 1, 2.0, 1.0);
  if (name == "square4") return grid(2, 2, 2.0, 2.0);
  if (name == "square12") return grid(4, 3, 1.0, 1.0);
  if (name == "quartercircle3") return quartercircle();
  fail(ErrorCode::InvalidConfig, "unknown builtin geometry '" + name + "'");
}

MultiPatchTopology builtin_geometry(const std::string& name) {
  return build_topology(builtin_patches(name));
}

}  // namespace c1mortar
