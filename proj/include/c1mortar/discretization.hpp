#pragma once

// Per-patch primal spline spaces of degree p and physical basis evaluation.

#include <vector>

#include <Eigen/Dense>

#include "c1mortar/geometry.hpp"
#include "c1mortar/topology.hpp"

namespace c1mortar {

/// Breakpoints come from the geometry knots bisected `level` times. Interior
/// multiplicity of a geometry knot is clamp(p - r_geo, 1, p - 1), so the
/// space is at least C^1 in the parameter; inserted knots are simple.
struct Discretization {
  int degree = 0;
  int level = 0;
  std::vector<TensorSpace2D> spaces;
  std::vector<int> offsets;  // global offset of each patch, size = patches + 1

  int num_patches() const { return static_cast<int>(spaces.size()); }
  int total_dofs() const { return offsets.back(); }
  int global(int patch, int local) const { return offsets[patch] + local; }
};

Discretization make_discretization(const MultiPatchTopology& topo, int degree, int level);

/// Number of DOFs along a side, and the local flat index at `layer` off the
/// side (0 = on it) and along-index i.
int side_length(const TensorSpace2D& s, Side side);
int side_dof(const TensorSpace2D& s, Side side, int layer, int i);

/// Physical element diameter maximum (corners of parametric elements).
double mesh_size(const MultiPatchTopology& topo, const Discretization& disc);

/// All active basis functions of one patch at a parametric point, with
/// physical gradients and Hessians (columns xx, xy, yy).
struct PhysicalBasis {
  std::vector<int> local;  // flat local indices
  Eigen::VectorXd value;
  Eigen::MatrixXd grad;  // n x 2
  Eigen::MatrixXd hess;  // n x 3
  GeometryJet jet;
};

/// order: 0 values only, 1 adds gradients, 2 adds Hessians. The geometry
/// jet is always filled.
void eval_physical_basis(const TensorSpace2D& space, const PatchGeometry& geo, int eu, int ev,
                         double u, double v, int order, PhysicalBasis& out);

/// Physical Hessian (xx, xy, yy) from parametric gradient and Hessian.
Eigen::Vector3d physical_hessian(const GeometryJet& jet, const Eigen::Vector2d& grad_hat,
                                 const Eigen::Matrix2d& hess_hat);

}  // namespace c1mortar
