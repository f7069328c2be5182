#pragma once

// Linear reduction from the product of patch spaces to the constrained
// primal space: clamped Dirichlet layers, C0 gluing of interface traces and
// C2 vertex conditions on physical jets.

#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "c1mortar/discretization.hpp"
#include "c1mortar/topology.hpp"

namespace c1mortar {

enum class VertexMode { c2, c0 };

/// Local flat indices of the two control layers next to each listed side.
std::vector<int> clamp_boundary(const TensorSpace2D& space, const std::vector<Side>& sides);

/// Equivalence classes of global DOFs after identifying matching trace
/// coefficients across interfaces (reversal aware). Classes are numbered by
/// their smallest global index.
struct C0Gluing {
  std::vector<int> class_of;
  int num_classes = 0;
};
C0Gluing glue_c0(const MultiPatchTopology& topo, const Discretization& disc);

/// Raw jet-equality rows at one vertex over global DOFs: for each incident
/// corner after the first, (value, d/dx, d/dy, d2/dx2, d2/dxdy, d2/dy2) of
/// that patch minus the same for the first corner.
struct VertexRows {
  std::vector<int> columns;  // global DOFs
  Eigen::MatrixXd rows;      // rows x columns.size()
};
VertexRows vertex_c2_constraints(const MultiPatchTopology& topo, const Discretization& disc,
                                 int vertex);

/// u = R y + g. R is N x N_r with full column rank; g is the particular
/// vector built from values of the clamped DOF classes by `lift`.
struct ConstraintMap {
  int full_dim = 0;
  int reduced_dim = 0;
  Eigen::SparseMatrix<double> R;
  /// N x (#clamped classes): slave offsets and clamped members.
  Eigen::SparseMatrix<double> fixed_map;

  std::vector<int> class_of;
  int num_classes = 0;
  std::vector<int> clamped_classes;   // class ids, ascending
  std::vector<int> clamped_index;     // class -> position in clamped_classes or -1
  std::vector<int> master_column;     // class -> reduced column or -1
  int vertex_rows = 0;                // raw C2 rows emitted
  int vertex_rank = 0;                // independent rows kept

  Eigen::VectorXd lift(const Eigen::VectorXd& clamped_values) const {
    return fixed_map * clamped_values;
  }
  Eigen::VectorXd expand(const Eigen::VectorXd& y, const Eigen::VectorXd& g) const {
    return R * y + g;
  }
};

ConstraintMap build_constraint_map(const MultiPatchTopology& topo, const Discretization& disc,
                                   VertexMode mode);

}  // namespace c1mortar
