#pragma once

// Saddle-point solve for [[A, B^T], [B, 0]] [u; tau] = [f; -rhs_g].
//
// A (reduced stiffness) is SPD on the constrained space, so the system is
// solved through a sparse LDL^T of A and the dense Schur complement
// S = B A^-1 B^T. S is symmetric positive semidefinite; its pseudo-inverse
// (eigenvalues below 1e-11 * max dropped) gives the least-norm multiplier
// when B is rank deficient (unmerged multipliers). A few steps of iterative
// refinement on the full block system follow.

#include <vector>

#include <Eigen/Dense>

#include "c1mortar/assembly.hpp"

namespace c1mortar {

struct SolutionField {
  Eigen::VectorXd u_reduced;
  Eigen::VectorXd u_full;  // R u_reduced + g
  Eigen::VectorXd tau;
  std::vector<int> multiplier_offsets;
  int multiplier_rank = 0;      // numerical rank of S
  double residual = 0.0;        // ||K z - b|| / ||b|| of the block system
  double constraint = 0.0;      // ||B u + rhs_g||_inf / max(1, ||u_full||_inf)
};

struct SolverOptions {
  double rank_tolerance = 1e-11;
  double residual_tolerance = 1e-10;
  int refinement_steps = 3;
};

SolutionField solve_saddle(const SaddleSystem& sys, const ConstraintMap& cm,
                           const SolverOptions& opt = {});

}  // namespace c1mortar
