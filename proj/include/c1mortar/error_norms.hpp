#pragma once

// Relative error norms of a discrete solution against a manufactured one,
// and the multiplier diagnostic.

#include <vector>

#include <Eigen/Dense>

#include "c1mortar/discretization.hpp"
#include "c1mortar/interface_spaces.hpp"
#include "c1mortar/manufactured.hpp"
#include "c1mortar/parallel.hpp"

namespace c1mortar {

/// Relative errors; when the exact norm vanishes the absolute error is
/// reported instead. brokenH2 and H1 are full norms (all lower orders
/// included). Linf uses a 5x5 sample grid per element.
struct ErrorReport {
  double h = 0.0;
  int dofs = 0;
  double brokenH2 = 0.0;
  double H1 = 0.0;
  double L2 = 0.0;
  double Linf = 0.0;
};

/// u_full holds the coefficients of all patches (global numbering).
ErrorReport compute_errors(const MultiPatchTopology& topo, const Discretization& disc,
                           const Eigen::VectorXd& u_full, const ManufacturedSolution& u_ex,
                           ExecutionPolicy policy = ExecutionPolicy::serial);

/// Value of the discrete field on patch k at parametric (u, v).
double evaluate_field(const MultiPatchTopology& topo, const Discretization& disc,
                      const Eigen::VectorXd& u_full, int patch, double u, double v);

/// d_tt u - lap u at a point of interface l (t the unit tangent, no
/// curvature term: d_tt u := t^T Hess(u) t).
double multiplier_target(const ManufacturedSolution& u_ex, const Eigen::Vector2d& x,
                         const Eigen::Vector2d& unit_tangent);

/// Relative L2(Gamma_l) distance between tau_h and the continuous
/// multiplier of the assembled system, which is -(d_tt u - lap u) with the
/// jump and normal conventions of assemble_coupling.
struct MultiplierDiagnostic {
  double discrepancy = 0.0;   // ||tau_h - tau|| / ||tau||
  double target_norm = 0.0;   // ||tau||
};
MultiplierDiagnostic multiplier_diagnostic(const MultiPatchTopology& topo,
                                           const Discretization& disc,
                                           const MultiplierSpaceHandle& space,
                                           const Eigen::VectorXd& tau_l,
                                           const ManufacturedSolution& u_ex);
/// Same over all interfaces at once (sums of squares).
MultiplierDiagnostic multiplier_diagnostic_all(const MultiPatchTopology& topo,
                                               const Discretization& disc,
                                               const std::vector<MultiplierSpaceHandle>& spaces,
                                               const Eigen::VectorXd& tau,
                                               const std::vector<int>& offsets,
                                               const ManufacturedSolution& u_ex);

}  // namespace c1mortar
