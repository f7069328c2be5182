#include "c1mortar/assembly.hpp"

#include <cmath>

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseQR>

#include "c1mortar/error.hpp"
#include "c1mortar/quadrature.hpp"

namespace c1mortar {

namespace {

// Couplings of a tensor-product patch: all pairs within p indices per direction.
void add_patch_pattern(const TensorSpace2D& sp, int offset, int p,
                       std::vector<std::vector<int>>& cols) {
  for (int jc = 0; jc < sp.nv(); ++jc)
    for (int ic = 0; ic < sp.nu(); ++ic) {
      auto& rows = cols[offset + sp.flat(ic, jc)];
      for (int j = std::max(0, jc - p); j <= std::min(sp.nv() - 1, jc + p); ++j)
        for (int i = std::max(0, ic - p); i <= std::min(sp.nu() - 1, ic + p); ++i)
          rows.push_back(offset + sp.flat(i, j));
    }
}

struct ElementIndex {
  int patch, eu, ev;
};

std::vector<ElementIndex> all_elements(const Discretization& disc) {
  std::vector<ElementIndex> out;
  for (int k = 0; k < disc.num_patches(); ++k) {
    const auto& sp = disc.spaces[k];
    for (int ev = 0; ev < sp.v().num_elements(); ++ev)
      for (int eu = 0; eu < sp.u().num_elements(); ++eu) out.push_back({k, eu, ev});
  }
  return out;
}

// Values and first derivatives of the side-adjacent basis functions of one
// patch at along-parameter s: returns local indices with (value, d_inward,
// d_along).
struct SideBasis {
  std::vector<int> local;
  std::vector<double> value, d_inward, d_along;
};

void eval_side_basis(const TensorSpace2D& sp, Side side, double s, SideBasis& out) {
  const int ad = along_dir(side), td = transversal_dir(side);
  const SplineSpace1D& along = sp.dir(ad);
  const SplineSpace1D& trans = sp.dir(td);
  const bool at_end = side == Side::east || side == Side::north;
  const double tpos = at_end ? 1.0 : 0.0;
  const BasisEval ba = along.eval(s, 1);
  const BasisEval bt = trans.eval_in_element(at_end ? trans.num_elements() - 1 : 0, tpos, 1);
  out.local.clear();
  out.value.clear();
  out.d_inward.clear();
  out.d_along.clear();
  for (int t = 0; t < bt.count; ++t) {
    if (bt(0, t) == 0.0 && bt(1, t) == 0.0) continue;
    for (int a = 0; a < ba.count; ++a) {
      const int ia = ba.first_active + a, it = bt.first_active + t;
      out.local.push_back(ad == 0 ? sp.flat(ia, it) : sp.flat(it, ia));
      out.value.push_back(ba(0, a) * bt(0, t));
      out.d_inward.push_back(inward_sign(side) * ba(0, a) * bt(1, t));
      out.d_along.push_back(ba(1, a) * bt(0, t));
    }
  }
}

}  // namespace

namespace {

// Hessian-Hessian (mass = false) or value-value (mass = true) element matrix.
void element_matrix(const MultiPatchTopology& topo, const Discretization& disc, int patch, int eu,
                    int ev, const LoadFunction& f, int q, bool mass, ElementContribution& out) {
  const TensorSpace2D& sp = disc.spaces[patch];
  const PatchGeometry& geo = topo.patches[patch];
  const auto [u0, u1] = sp.u().element_bounds(eu);
  const auto [v0, v1] = sp.v().element_bounds(ev);
  const int nq = q > 0 ? q : disc.degree + 1;
  const QuadratureRule1D ru = map_rule(gauss_legendre(nq), u0, u1);
  const QuadratureRule1D rv = map_rule(gauss_legendre(nq), v0, v1);
  PhysicalBasis pb;
  bool first = true;
  for (int jq = 0; jq < rv.size(); ++jq)
    for (int iq = 0; iq < ru.size(); ++iq) {
      eval_physical_basis(sp, geo, eu, ev, ru.nodes[iq], rv.nodes[jq], mass ? 0 : 2, pb);
      const int n = static_cast<int>(pb.local.size());
      if (first) {
        out.dofs.resize(n);
        for (int a = 0; a < n; ++a) out.dofs[a] = disc.global(patch, pb.local[a]);
        out.K.setZero(n, n);
        out.F.setZero(n);
        first = false;
      }
      const double wd = ru.weights[iq] * rv.weights[jq] * pb.jet.det;
      if (mass) {
        out.K.noalias() += wd * pb.value * pb.value.transpose();
      } else {
        const Eigen::Vector3d metric(wd, 2.0 * wd, wd);
        out.K.noalias() += pb.hess * metric.asDiagonal() * pb.hess.transpose();
      }
      if (f) out.F.noalias() += (wd * f(pb.jet.point.x(), pb.jet.point.y())) * pb.value;
    }
}

StiffnessLoad assemble_operator(const MultiPatchTopology& topo, const Discretization& disc,
                                const LoadFunction& f, ExecutionPolicy policy, int q, bool mass) {
  const int N = disc.total_dofs();
  const int p = disc.degree;
  std::vector<std::vector<int>> cols(N);
  for (int k = 0; k < disc.num_patches(); ++k)
    add_patch_pattern(disc.spaces[k], disc.offsets[k], p, cols);
  StiffnessLoad out;
  out.A.resize(N, N);
  Eigen::VectorXi nnz(N);
  for (int c = 0; c < N; ++c) nnz[c] = static_cast<int>(cols[c].size());
  out.A.reserve(nnz);
  for (int c = 0; c < N; ++c)
    for (int r : cols[c]) out.A.insert(r, c) = 0.0;
  out.A.makeCompressed();
  out.F = Eigen::VectorXd::Zero(N);

  const auto elems = all_elements(disc);
  compute_and_merge<ElementContribution>(
      static_cast<int>(elems.size()), policy,
      [&](int i, ElementContribution& ec) {
        element_matrix(topo, disc, elems[i].patch, elems[i].eu, elems[i].ev, f, q, mass, ec);
      },
      [&](int, const ElementContribution& ec) {
        const int n = static_cast<int>(ec.dofs.size());
        for (int b = 0; b < n; ++b) {
          for (int a = 0; a < n; ++a) out.A.coeffRef(ec.dofs[a], ec.dofs[b]) += ec.K(a, b);
          out.F[ec.dofs[b]] += ec.F[b];
        }
      });
  return out;
}

}  // namespace

void element_stiffness(const MultiPatchTopology& topo, const Discretization& disc, int patch,
                       int eu, int ev, const LoadFunction& f, int q, ElementContribution& out) {
  element_matrix(topo, disc, patch, eu, ev, f, q, false, out);
}

StiffnessLoad assemble_stiffness_load(const MultiPatchTopology& topo, const Discretization& disc,
                                      const LoadFunction& f, ExecutionPolicy policy, int q) {
  return assemble_operator(topo, disc, f, policy, q, false);
}

StiffnessLoad assemble_mass_load(const MultiPatchTopology& topo, const Discretization& disc,
                                 const LoadFunction& f, ExecutionPolicy policy, int q) {
  return assemble_operator(topo, disc, f, policy, q > 0 ? q : disc.degree + 2, true);
}

void normal_derivative_jump(const MultiPatchTopology& topo, const Discretization& disc, int l,
                            double yhat, std::vector<int>& dofs, std::vector<double>& coeffs) {
  const Interface& I = topo.interfaces[l];
  const InterfaceFrame fr = interface_frame(topo, l, yhat);
  dofs.clear();
  coeffs.clear();
  SideBasis sb;
  eval_side_basis(disc.spaces[I.primary.patch], I.primary.side, yhat, sb);
  for (std::size_t k = 0; k < sb.local.size(); ++k) {
    const double c = fr.alpha_m * sb.d_inward[k] + fr.beta_m * sb.d_along[k];
    if (c == 0.0) continue;
    dofs.push_back(disc.global(I.primary.patch, sb.local[k]));
    coeffs.push_back(-c);
  }
  const double sgn = I.reversed ? -1.0 : 1.0;
  eval_side_basis(disc.spaces[I.secondary.patch], I.secondary.side, I.secondary_param(yhat), sb);
  for (std::size_t k = 0; k < sb.local.size(); ++k) {
    const double c = fr.alpha_s * sb.d_inward[k] + fr.beta_s * sgn * sb.d_along[k];
    if (c == 0.0) continue;
    dofs.push_back(disc.global(I.secondary.patch, sb.local[k]));
    coeffs.push_back(c);
  }
}

CouplingBlock assemble_coupling(const MultiPatchTopology& topo, const Discretization& disc,
                                const std::vector<MultiplierSpaceHandle>& spaces, int q) {
  CouplingBlock out;
  out.offsets.push_back(0);
  for (const auto& m : spaces) out.offsets.push_back(out.offsets.back() + m.dimension());
  std::vector<Eigen::Triplet<double>> tr;
  const int nq = q > 0 ? q : disc.degree + 1;
  std::vector<int> dofs;
  std::vector<double> coeffs;
  for (std::size_t l = 0; l < spaces.size(); ++l) {
    const MultiplierSpaceHandle& m = spaces[l];
    if (m.dimension() == 0) continue;
    const auto& bp = interface_primal_space(topo, disc, m.interface).knot_vector().breakpoints();
    const InterfaceQuadrature iq = interface_rule(topo, m.interface, bp, nq);
    for (std::size_t k = 0; k < iq.yhat.size(); ++k) {
      const BasisEval mu = m.space.eval(iq.yhat[k], 0);
      normal_derivative_jump(topo, disc, m.interface, iq.yhat[k], dofs, coeffs);
      for (int a = 0; a < mu.count; ++a) {
        const double wm = iq.weights[k] * mu(0, a);
        if (wm == 0.0) continue;
        for (std::size_t j = 0; j < dofs.size(); ++j)
          tr.emplace_back(out.offsets[l] + mu.first_active + a, dofs[j], wm * coeffs[j]);
      }
    }
  }
  out.B.resize(out.offsets.back(), disc.total_dofs());
  out.B.setFromTriplets(tr.begin(), tr.end());
  return out;
}

Eigen::VectorXd lift_boundary_data(const MultiPatchTopology& topo, const Discretization& disc,
                                   const ConstraintMap& cm, const ManufacturedSolution& u_ex,
                                   const Eigen::MatrixXd& E, const Eigen::VectorXd& d) {
  const int nc = static_cast<int>(cm.clamped_classes.size());
  if (u_ex.is_zero() || nc == 0) return Eigen::VectorXd::Zero(nc);
  const int p = disc.degree;
  const QuadratureRule1D ref = gauss_legendre(p + 3);
  std::vector<Eigen::Triplet<double>> tr;
  std::vector<double> rhs;
  SideBasis sb;
  for (const SideRef& sr : topo.dirichlet_sides) {
    const TensorSpace2D& sp = disc.spaces[sr.patch];
    const PatchGeometry& geo = topo.patches[sr.patch];
    const SplineSpace1D& along = sp.dir(along_dir(sr.side));
    for (int e = 0; e < along.num_elements(); ++e) {
      const auto [a, b] = along.element_bounds(e);
      const QuadratureRule1D r = map_rule(ref, a, b);
      std::vector<double> rho(r.size());
      std::vector<GeometryJet> jets(r.size());
      double length = 0.0;
      for (int k = 0; k < r.size(); ++k) {
        const Eigen::Vector2d uv = side_point(sr.side, r.nodes[k]);
        jets[k] = geo.eval(uv.x(), uv.y());
        rho[k] = jets[k].jacobian.col(along_dir(sr.side)).norm();
        length += r.weights[k] * rho[k];
      }
      for (int k = 0; k < r.size(); ++k) {
        const GeometryJet& jet = jets[k];
        const Eigen::Vector2d t = jet.jacobian.col(along_dir(sr.side)) / rho[k];
        Eigen::Vector2d n(t.y(), -t.x());
        if (n.dot(inward_sign(sr.side) * jet.jacobian.col(transversal_dir(sr.side))) > 0.0) n = -n;
        const double sw = std::sqrt(r.weights[k] * rho[k]);
        eval_side_basis(sp, sr.side, r.nodes[k], sb);
        const int row_v = static_cast<int>(rhs.size());
        const int row_n = row_v + 1;
        // parametric gradient of each function: inward/along derivatives
        // back to (d/du, d/dv)
        const Eigen::Matrix2d JinvT = jet.inverse.transpose();
        for (std::size_t j = 0; j < sb.local.size(); ++j) {
          const int cls = cm.class_of[disc.global(sr.patch, sb.local[j])];
          const int ci = cm.clamped_index[cls];
          if (ci < 0) continue;
          Eigen::Vector2d gh;
          gh[transversal_dir(sr.side)] = inward_sign(sr.side) * sb.d_inward[j];
          gh[along_dir(sr.side)] = sb.d_along[j];
          const double dn = (JinvT * gh).dot(n);
          if (sb.value[j] != 0.0) tr.emplace_back(row_v, ci, sw * sb.value[j]);
          if (dn != 0.0) tr.emplace_back(row_n, ci, sw * length * dn);
        }
        const Eigen::Vector2d x = jet.point;
        rhs.push_back(sw * u_ex.u(x.x(), x.y()));
        rhs.push_back(sw * length * u_ex.grad(x.x(), x.y()).dot(n));
      }
    }
  }
  SparseMatrix M(static_cast<int>(rhs.size()), nc);
  M.setFromTriplets(tr.begin(), tr.end());
  M.makeCompressed();
  Eigen::SparseQR<SparseMatrix, Eigen::COLAMDOrdering<int>> qr;
  qr.compute(M);
  if (qr.info() != Eigen::Success || qr.rank() < nc)
    fail(ErrorCode::SingularFit, "boundary lifting least-squares problem is rank deficient");
  const Eigen::Map<const Eigen::VectorXd> b(rhs.data(), static_cast<int>(rhs.size()));
  Eigen::VectorXd c = qr.solve(b);
  if (qr.info() != Eigen::Success) fail(ErrorCode::SingularFit, "boundary lifting solve failed");
  if (E.rows() == 0) return c;
  // min |M c - b| subject to E c = d
  const SparseMatrix MtM = (M.transpose() * M).pruned();
  Eigen::SimplicialLDLT<SparseMatrix> ldlt(MtM);
  if (ldlt.info() != Eigen::Success) fail(ErrorCode::SingularFit, "boundary lifting solve failed");
  const Eigen::MatrixXd QEt = ldlt.solve(Eigen::MatrixXd(E.transpose()));
  const Eigen::MatrixXd S = E * QEt;
  const Eigen::VectorXd target = d.size() ? d : Eigen::VectorXd::Zero(E.rows());
  c += QEt * S.fullPivLu().solve(target - E * c);
  return c;
}

int dirichlet_interface_ends(const MultiPatchTopology& topo,
                             const std::vector<MultiplierSpaceHandle>& spaces) {
  int count = 0;
  for (const MultiplierSpaceHandle& h : spaces) {
    if (h.mode != MultiplierMode::unmerged) continue;
    const Interface& itf = topo.interfaces[h.interface];
    for (int end = 0; end < 2; ++end) {
      bool on_dirichlet = false;
      for (int s = 0; s < 2; ++s) {
        const SideRef sr = s == 0 ? itf.primary : itf.secondary;
        const int t = s == 0 ? end : (itf.reversed ? 1 - end : end);
        Side adj;
        if (along_dir(sr.side) == 1)
          adj = t == 0 ? Side::south : Side::north;
        else
          adj = t == 0 ? Side::west : Side::east;
        on_dirichlet = on_dirichlet || topo.is_dirichlet({sr.patch, adj});
      }
      count += on_dirichlet;
    }
  }
  return count;
}

SaddleSystem assemble_saddle(const MultiPatchTopology& topo, const Discretization& disc,
                             const ConstraintMap& cm,
                             const std::vector<MultiplierSpaceHandle>& spaces,
                             const ManufacturedSolution& u_ex, ExecutionPolicy policy) {
  SaddleSystem s;
  const StiffnessLoad sl = assemble_stiffness_load(topo, disc, u_ex.bilaplacian, policy);
  const CouplingBlock cb = assemble_coupling(topo, disc, spaces);
  s.B = (cb.B * cm.R).pruned();
  Eigen::VectorXd c = lift_boundary_data(topo, disc, cm, u_ex);
  const int k = dirichlet_interface_ends(topo, spaces);
  if (k > 0 && !u_ex.is_zero() && s.B.rows() > 0) {
    // The k weakest constraint directions barely see the free DOFs, so the
    // lifting must already satisfy them. Their target comes from the L2
    // projection of u_ex in the constrained space.
    const Eigen::MatrixXd G = Eigen::MatrixXd(s.B * s.B.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
    const Eigen::MatrixXd N = es.eigenvectors().leftCols(std::min<int>(k, G.rows()));
    const Eigen::MatrixXd E = N.transpose() * Eigen::MatrixXd(cb.B * cm.fixed_map);
    const StiffnessLoad ml = assemble_mass_load(topo, disc, u_ex.u, policy);
    const SparseMatrix Rt = cm.R.transpose();
    const SparseMatrix Mr = (Rt * ml.A * cm.R).pruned();
    Eigen::SimplicialLDLT<SparseMatrix> ldlt(Mr);
    if (ldlt.info() != Eigen::Success) fail(ErrorCode::SingularFit, "mass matrix factorization failed");
    const Eigen::VectorXd w = ldlt.solve(Rt * (ml.F - ml.A * cm.lift(c)));
    const Eigen::VectorXd d = -(N.transpose() * (s.B * w));
    c = lift_boundary_data(topo, disc, cm, u_ex, E, d);
  }
  s.g = cm.lift(c);
  const SparseMatrix Rt = cm.R.transpose();
  s.A = (Rt * sl.A * cm.R).pruned();
  s.f = Rt * (sl.F - sl.A * s.g);
  s.rhs_g = cb.B * s.g;
  s.multiplier_offsets = cb.offsets;
  return s;
}

}  // namespace c1mortar
