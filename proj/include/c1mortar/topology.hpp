#pragma once

// Multipatch topology: interfaces, vertices, boundary sides, and the frame
// used to pull back normal derivatives along an interface.

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "c1mortar/geometry.hpp"
#include "c1mortar/quadrature.hpp"

namespace c1mortar {

enum class Side { west = 0, east = 1, south = 2, north = 3 };

std::string to_string(Side s);
Side side_from_string(const std::string& name);

/// Parametric direction running along the side (0 = u, 1 = v).
inline int along_dir(Side s) { return (s == Side::west || s == Side::east) ? 1 : 0; }
inline int transversal_dir(Side s) { return 1 - along_dir(s); }
/// +1 if increasing the transversal parameter moves into the patch.
inline int inward_sign(Side s) { return (s == Side::west || s == Side::south) ? 1 : -1; }
/// Parametric point of the side at along-parameter t.
Eigen::Vector2d side_point(Side s, double t);

struct SideRef {
  int patch = 0;
  Side side = Side::west;
  bool operator==(const SideRef&) const = default;
};

/// Interface between two patch sides. The interface parameter yhat is the
/// along-parameter of the primary side; the secondary parameter is yhat, or
/// 1 - yhat when reversed.
struct Interface {
  SideRef primary;
  SideRef secondary;
  bool reversed = false;

  double secondary_param(double yhat) const { return reversed ? 1.0 - yhat : yhat; }
};

/// corner index c: parametric point ((c & 1), (c >> 1)).
struct PatchCorner {
  int patch = 0;
  int corner = 0;
};

struct Vertex {
  Eigen::Vector2d position;
  std::vector<PatchCorner> corners;
  bool on_boundary = false;
};

struct InterfaceOverride {
  SideRef primary;
  SideRef secondary;
};

struct MultiPatchTopology {
  std::vector<PatchGeometry> patches;
  std::vector<Interface> interfaces;
  std::vector<Vertex> vertices;
  std::vector<SideRef> boundary_sides;
  std::vector<SideRef> dirichlet_sides;
  double tolerance = 0.0;

  bool is_dirichlet(SideRef s) const;
  bool is_boundary(SideRef s) const;
  /// Index of the interface containing the side, or -1.
  int interface_of(SideRef s) const;
};

/// Matches patch sides into interfaces. tol <= 0 selects 1e-9 times the
/// domain diameter. Dirichlet sides default to all boundary sides.
MultiPatchTopology build_topology(std::vector<PatchGeometry> patches, double tol = -1.0,
                                  const std::vector<InterfaceOverride>& overrides = {});

/// Geometry refined `levels` times (knot insertion), topology rebuilt with
/// the same designations.
MultiPatchTopology refine_uniform(const MultiPatchTopology& topo, int levels);

/// alpha/beta: coefficients of the pullback (grad phi . n) o F =
/// alpha d_xhat phihat + beta d_yhat phihat on one side, with xhat the
/// inward transversal parameter of that side and yhat the interface
/// parameter.
struct InterfaceFrame {
  double yhat = 0.0;
  Eigen::Vector2d point;
  Eigen::Vector2d tangent;  // d F / d yhat
  double rho = 0.0;         // |tangent|
  Eigen::Vector2d normal;   // unit, outer with respect to the primary patch
  double alpha_m = 0.0, beta_m = 0.0;
  double alpha_s = 0.0, beta_s = 0.0;
};

InterfaceFrame interface_frame(const MultiPatchTopology& topo, int l, double yhat);
/// Frame on one side only: alpha, beta with respect to that side's inward
/// transversal parameter and its own along-parameter.
void side_pullback(const GeometryJet& jet, Side s, const Eigen::Vector2d& normal, double& alpha,
                   double& beta);

/// Interface quadrature on the given yhat breakpoints: q points per element,
/// weights multiplied by rho(yhat).
struct InterfaceQuadrature {
  std::vector<double> yhat;
  std::vector<double> weights;  // includes rho
  std::vector<int> element;     // element of the breakpoint partition
};
InterfaceQuadrature interface_rule(const MultiPatchTopology& topo, int l,
                                   const std::vector<double>& breakpoints, int q);

double domain_diameter(const std::vector<PatchGeometry>& patches);

}  // namespace c1mortar
