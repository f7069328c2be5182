#include "c1mortar/error_norms.hpp"

#include <algorithm>
#include <cmath>

#include "c1mortar/quadrature.hpp"

namespace c1mortar {

namespace {

struct ElementSums {
  double e0 = 0, e1 = 0, e2 = 0, x0 = 0, x1 = 0, x2 = 0, emax = 0, xmax = 0;
};

double rel(double err, double ref) { return ref > 0.0 ? err / ref : err; }

}  // namespace

ErrorReport compute_errors(const MultiPatchTopology& topo, const Discretization& disc,
                           const Eigen::VectorXd& u_full, const ManufacturedSolution& u_ex,
                           ExecutionPolicy policy) {
  struct Elem {
    int patch, eu, ev;
  };
  std::vector<Elem> elems;
  for (int k = 0; k < disc.num_patches(); ++k)
    for (int ev = 0; ev < disc.spaces[k].v().num_elements(); ++ev)
      for (int eu = 0; eu < disc.spaces[k].u().num_elements(); ++eu) elems.push_back({k, eu, ev});
  const QuadratureRule1D ref = gauss_legendre(disc.degree + 2);

  ElementSums total;
  compute_and_merge<ElementSums>(
      static_cast<int>(elems.size()), policy,
      [&](int i, ElementSums& s) {
        s = ElementSums{};
        const Elem& el = elems[i];
        const TensorSpace2D& sp = disc.spaces[el.patch];
        const PatchGeometry& geo = topo.patches[el.patch];
        const auto [u0, u1] = sp.u().element_bounds(el.eu);
        const auto [v0, v1] = sp.v().element_bounds(el.ev);
        PhysicalBasis pb;
        auto coeffs = [&](Eigen::VectorXd& c) {
          c.resize(static_cast<int>(pb.local.size()));
          for (int a = 0; a < c.size(); ++a) c[a] = u_full[disc.global(el.patch, pb.local[a])];
        };
        Eigen::VectorXd c;
        for (const auto& qp : element_rule(ref, u0, u1, v0, v1)) {
          eval_physical_basis(sp, geo, el.eu, el.ev, qp.u, qp.v, 2, pb);
          coeffs(c);
          const double wd = qp.weight * pb.jet.det;
          const double x = pb.jet.point.x(), y = pb.jet.point.y();
          const double ue = u_ex.u(x, y);
          const Eigen::Vector2d ge = u_ex.grad(x, y);
          const Eigen::Vector3d he = u_ex.hess(x, y);
          const double d0 = ue - pb.value.dot(c);
          const Eigen::Vector2d d1 = ge - pb.grad.transpose() * c;
          const Eigen::Vector3d d2 = he - pb.hess.transpose() * c;
          s.e0 += wd * d0 * d0;
          s.e1 += wd * d1.squaredNorm();
          s.e2 += wd * (d2[0] * d2[0] + 2.0 * d2[1] * d2[1] + d2[2] * d2[2]);
          s.x0 += wd * ue * ue;
          s.x1 += wd * ge.squaredNorm();
          s.x2 += wd * (he[0] * he[0] + 2.0 * he[1] * he[1] + he[2] * he[2]);
        }
        for (int j = 0; j <= 4; ++j)
          for (int k = 0; k <= 4; ++k) {
            const double u = u0 + (u1 - u0) * k / 4.0, v = v0 + (v1 - v0) * j / 4.0;
            eval_physical_basis(sp, geo, el.eu, el.ev, u, v, 0, pb);
            coeffs(c);
            const Eigen::Vector2d xp = geo.point(u, v);
            const double ue = u_ex.u(xp.x(), xp.y());
            s.emax = std::max(s.emax, std::abs(ue - pb.value.dot(c)));
            s.xmax = std::max(s.xmax, std::abs(ue));
          }
      },
      [&](int, const ElementSums& s) {
        total.e0 += s.e0;
        total.e1 += s.e1;
        total.e2 += s.e2;
        total.x0 += s.x0;
        total.x1 += s.x1;
        total.x2 += s.x2;
        total.emax = std::max(total.emax, s.emax);
        total.xmax = std::max(total.xmax, s.xmax);
      });

  ErrorReport r;
  r.h = mesh_size(topo, disc);
  r.L2 = rel(std::sqrt(total.e0), std::sqrt(total.x0));
  r.H1 = rel(std::sqrt(total.e0 + total.e1), std::sqrt(total.x0 + total.x1));
  r.brokenH2 = rel(std::sqrt(total.e0 + total.e1 + total.e2),
                   std::sqrt(total.x0 + total.x1 + total.x2));
  r.Linf = rel(total.emax, total.xmax);
  return r;
}

double evaluate_field(const MultiPatchTopology& topo, const Discretization& disc,
                      const Eigen::VectorXd& u_full, int patch, double u, double v) {
  const TensorSpace2D& sp = disc.spaces[patch];
  PhysicalBasis pb;
  eval_physical_basis(sp, topo.patches[patch], sp.u().element_of(u), sp.v().element_of(v), u, v,
                      0, pb);
  double val = 0.0;
  for (std::size_t a = 0; a < pb.local.size(); ++a)
    val += pb.value[a] * u_full[disc.global(patch, pb.local[a])];
  return val;
}

double multiplier_target(const ManufacturedSolution& u_ex, const Eigen::Vector2d& x,
                         const Eigen::Vector2d& t) {
  const Eigen::Vector3d h = u_ex.hess(x.x(), x.y());
  const double dtt = t.x() * t.x() * h[0] + 2.0 * t.x() * t.y() * h[1] + t.y() * t.y() * h[2];
  return dtt - (h[0] + h[2]);
}

namespace {

void diagnostic_sums(const MultiPatchTopology& topo, const Discretization& disc,
                     const MultiplierSpaceHandle& space, const Eigen::VectorXd& tau_l,
                     const ManufacturedSolution& u_ex, double& err2, double& ref2) {
  const auto& bp = interface_primal_space(topo, disc, space.interface).knot_vector().breakpoints();
  const InterfaceQuadrature iq = interface_rule(topo, space.interface, bp, disc.degree + 2);
  for (std::size_t k = 0; k < iq.yhat.size(); ++k) {
    const InterfaceFrame fr = interface_frame(topo, space.interface, iq.yhat[k]);
    const double tau = -multiplier_target(u_ex, fr.point, fr.tangent / fr.rho);
    double th = 0.0;
    if (space.dimension() > 0) {
      const BasisEval mu = space.space.eval(iq.yhat[k], 0);
      for (int a = 0; a < mu.count; ++a) th += mu(0, a) * tau_l[mu.first_active + a];
    }
    err2 += iq.weights[k] * (th - tau) * (th - tau);
    ref2 += iq.weights[k] * tau * tau;
  }
}

}  // namespace

MultiplierDiagnostic multiplier_diagnostic(const MultiPatchTopology& topo,
                                           const Discretization& disc,
                                           const MultiplierSpaceHandle& space,
                                           const Eigen::VectorXd& tau_l,
                                           const ManufacturedSolution& u_ex) {
  double e2 = 0.0, r2 = 0.0;
  diagnostic_sums(topo, disc, space, tau_l, u_ex, e2, r2);
  return {rel(std::sqrt(e2), std::sqrt(r2)), std::sqrt(r2)};
}

MultiplierDiagnostic multiplier_diagnostic_all(const MultiPatchTopology& topo,
                                               const Discretization& disc,
                                               const std::vector<MultiplierSpaceHandle>& spaces,
                                               const Eigen::VectorXd& tau,
                                               const std::vector<int>& offsets,
                                               const ManufacturedSolution& u_ex) {
  double e2 = 0.0, r2 = 0.0;
  for (std::size_t l = 0; l < spaces.size(); ++l) {
    const Eigen::VectorXd tl = tau.segment(offsets[l], offsets[l + 1] - offsets[l]);
    diagnostic_sums(topo, disc, spaces[l], tl, u_ex, e2, r2);
  }
  return {rel(std::sqrt(e2), std::sqrt(r2)), std::sqrt(r2)};
}

}  // namespace c1mortar
