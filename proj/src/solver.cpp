#include "c1mortar/solver.hpp"

#include <Eigen/SparseCholesky>

#include "c1mortar/error.hpp"

namespace c1mortar {

namespace {

struct SchurSolver {
  Eigen::SimplicialLDLT<SparseMatrix> ldlt;
  const SparseMatrix* B = nullptr;
  Eigen::MatrixXd V;        // eigenvectors of S kept
  Eigen::VectorXd inv_eig;  // 1 / eigenvalue, 0 for dropped
  int rank = 0;

  // [[A, B^T], [B, 0]] [x; y] = [r1; r2]
  void apply_inverse(const Eigen::VectorXd& r1, const Eigen::VectorXd& r2, Eigen::VectorXd& x,
                     Eigen::VectorXd& y) const {
    const Eigen::VectorXd a = ldlt.solve(r1);
    if (B->rows() == 0) {
      x = a;
      y.resize(0);
      return;
    }
    const Eigen::VectorXd s = (*B) * a - r2;
    y = V * (inv_eig.asDiagonal() * (V.transpose() * s));
    x = ldlt.solve(r1 - B->transpose() * y);
  }
};

}  // namespace

SolutionField solve_saddle(const SaddleSystem& sys, const ConstraintMap& cm,
                           const SolverOptions& opt) {
  const int n = static_cast<int>(sys.A.rows());
  const int m = static_cast<int>(sys.B.rows());
  SolutionField out;
  out.multiplier_offsets = sys.multiplier_offsets;

  SchurSolver ss;
  ss.B = &sys.B;
  if (n > 0) {
    ss.ldlt.compute(sys.A);
    if (ss.ldlt.info() != Eigen::Success)
      fail(ErrorCode::SingularSystem, "stiffness factorization failed");
    const Eigen::VectorXd d = ss.ldlt.vectorD();
    if (d.minCoeff() <= 1e-14 * d.maxCoeff())
      fail(ErrorCode::SingularSystem, "reduced stiffness matrix is singular");
  }

  if (m > 0) {
    Eigen::MatrixXd S(m, m);
    const SparseMatrix Bt = sys.B.transpose();
    for (int j = 0; j < m; ++j) {
      const Eigen::VectorXd col = Bt.col(j);
      S.col(j) = sys.B * ss.ldlt.solve(col);
    }
    S = 0.5 * (S + S.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
    const Eigen::VectorXd ev = es.eigenvalues();
    const double cut = opt.rank_tolerance * std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
    ss.V = es.eigenvectors();
    ss.inv_eig.resize(m);
    for (int i = 0; i < m; ++i) {
      ss.inv_eig[i] = ev[i] > cut ? 1.0 / ev[i] : 0.0;
      ss.rank += ev[i] > cut;
    }
  }
  out.multiplier_rank = ss.rank;

  // rhs of the block system: [f; -rhs_g]
  const Eigen::VectorXd r2 = -sys.rhs_g;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n), y = Eigen::VectorXd::Zero(m);
  const double bnorm = std::sqrt(sys.f.squaredNorm() + r2.squaredNorm());
  auto residual = [&](Eigen::VectorXd& e1, Eigen::VectorXd& e2) {
    e1 = sys.f - sys.A * x - sys.B.transpose() * y;
    e2 = r2 - sys.B * x;
    return std::sqrt(e1.squaredNorm() + e2.squaredNorm());
  };
  if (bnorm > 0.0) {
    ss.apply_inverse(sys.f, r2, x, y);
    Eigen::VectorXd e1, e2, dx, dy;
    for (int it = 0; it < opt.refinement_steps; ++it) {
      if (residual(e1, e2) <= 1e-3 * opt.residual_tolerance * bnorm) break;
      ss.apply_inverse(e1, e2, dx, dy);
      x += dx;
      y += dy;
    }
    Eigen::VectorXd e1f, e2f;
    out.residual = residual(e1f, e2f) / bnorm;
  }

  out.u_reduced = x;
  out.tau = y;
  out.u_full = cm.R * x + sys.g;
  const double unorm = out.u_full.size() ? out.u_full.cwiseAbs().maxCoeff() : 0.0;
  const Eigen::VectorXd viol = sys.B * x + sys.rhs_g;
  out.constraint = (m ? viol.cwiseAbs().maxCoeff() : 0.0) / std::max(1.0, unorm);
  if (out.residual > opt.residual_tolerance)
    fail(ErrorCode::ResidualTooLarge,
         "relative residual " + std::to_string(out.residual) + " exceeds tolerance");
  return out;
}

}  // namespace c1mortar
