#pragma once

// Stiffness a(u,v) = sum_k int Hess u : Hess v, load, mortar coupling
// b(v, mu) = sum_l int_Gamma mu [d_n v], boundary lifting, and the reduced
// saddle system.

#include <functional>
#include <vector>

#include <Eigen/Sparse>

#include "c1mortar/constraints.hpp"
#include "c1mortar/interface_spaces.hpp"
#include "c1mortar/manufactured.hpp"
#include "c1mortar/parallel.hpp"

namespace c1mortar {

using SparseMatrix = Eigen::SparseMatrix<double>;
using LoadFunction = std::function<double(double, double)>;

/// Full product-space stiffness and load (q points per direction; q <= 0
/// selects p + 1).
struct StiffnessLoad {
  SparseMatrix A;
  Eigen::VectorXd F;
};
StiffnessLoad assemble_stiffness_load(const MultiPatchTopology& topo, const Discretization& disc,
                                      const LoadFunction& f, ExecutionPolicy policy,
                                      int q = -1);

/// L2 mass matrix and load (q <= 0 selects p + 2).
StiffnessLoad assemble_mass_load(const MultiPatchTopology& topo, const Discretization& disc,
                                 const LoadFunction& f, ExecutionPolicy policy, int q = -1);

/// Element matrix and load of one element (global DOF numbering).
struct ElementContribution {
  std::vector<int> dofs;
  Eigen::MatrixXd K;
  Eigen::VectorXd F;
};
void element_stiffness(const MultiPatchTopology& topo, const Discretization& disc, int patch,
                       int eu, int ev, const LoadFunction& f, int q, ElementContribution& out);

/// Jump of the normal derivative at yhat on interface l: coefficients over
/// global DOFs (secondary minus primary, normal outer to the primary).
void normal_derivative_jump(const MultiPatchTopology& topo, const Discretization& disc, int l,
                            double yhat, std::vector<int>& dofs, std::vector<double>& coeffs);

/// Full coupling rows (sum of multiplier dimensions) x N, rows grouped by
/// interface in interface order.
struct CouplingBlock {
  SparseMatrix B;
  std::vector<int> offsets;  // row offset per interface, size = interfaces + 1
};
CouplingBlock assemble_coupling(const MultiPatchTopology& topo, const Discretization& disc,
                                const std::vector<MultiplierSpaceHandle>& spaces, int q = -1);

/// Values of the clamped DOF classes fitting u_ex and its normal derivative
/// on the Dirichlet sides in least squares (p + 3 points per element),
/// subject to E c = d when E has rows (d empty means zero).
Eigen::VectorXd lift_boundary_data(const MultiPatchTopology& topo, const Discretization& disc,
                                   const ConstraintMap& cm, const ManufacturedSolution& u_ex,
                                   const Eigen::MatrixXd& E = Eigen::MatrixXd(),
                                   const Eigen::VectorXd& d = Eigen::VectorXd());

/// Interface ends lying on a Dirichlet side, counted over unmerged
/// multiplier spaces. Each one carries a nearly redundant multiplier row.
int dirichlet_interface_ends(const MultiPatchTopology& topo,
                             const std::vector<MultiplierSpaceHandle>& spaces);

struct SaddleSystem {
  SparseMatrix A;           // N_r x N_r
  Eigen::VectorXd f;        // N_r
  SparseMatrix B;           // N_M x N_r
  Eigen::VectorXd rhs_g;    // N_M: constraint is B u + rhs_g = 0
  Eigen::VectorXd g;        // full particular vector
  std::vector<int> multiplier_offsets;
};

SaddleSystem assemble_saddle(const MultiPatchTopology& topo, const Discretization& disc,
                             const ConstraintMap& cm,
                             const std::vector<MultiplierSpaceHandle>& spaces,
                             const ManufacturedSolution& u_ex, ExecutionPolicy policy);

}  // namespace c1mortar
