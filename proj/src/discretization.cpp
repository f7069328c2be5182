#include "c1mortar/discretization.hpp"

#include <algorithm>

#include "c1mortar/error.hpp"

namespace c1mortar {

namespace {

KnotVector discretization_knots(const KnotVector& geo, int p, int level) {
  const auto& bp = geo.breakpoints();
  const auto& m = geo.multiplicities();
  std::vector<double> interior;
  std::vector<int> mult;
  for (std::size_t j = 1; j + 1 < bp.size(); ++j) {
    const int r_geo = geo.degree() - m[j];
    interior.push_back(bp[j]);
    mult.push_back(std::clamp(p - r_geo, 1, p - 1));
  }
  // bisect every span `level` times
  std::vector<double> all = {0.0};
  all.insert(all.end(), interior.begin(), interior.end());
  all.push_back(1.0);
  std::vector<double> new_interior;
  std::vector<int> new_mult;
  const int sub = 1 << level;
  for (std::size_t j = 0; j + 1 < all.size(); ++j) {
    if (j > 0) {
      new_interior.push_back(all[j]);
      new_mult.push_back(mult[j - 1]);
    }
    for (int k = 1; k < sub; ++k) {
      new_interior.push_back(all[j] + (all[j + 1] - all[j]) * k / sub);
      new_mult.push_back(1);
    }
  }
  return make_open_knot_vector(p, new_interior, new_mult);
}

}  // namespace

Discretization make_discretization(const MultiPatchTopology& topo, int degree, int level) {
  if (degree < 2) fail(ErrorCode::DegreeTooLow, "primal degree must be at least 2");
  if (level < 0 || level > 12) fail(ErrorCode::InvalidConfig, "refinement level must be in [0,12]");
  Discretization d;
  d.degree = degree;
  d.level = level;
  d.offsets.push_back(0);
  for (const auto& g : topo.patches) {
    d.spaces.emplace_back(SplineSpace1D(discretization_knots(g.knots_u(), degree, level)),
                          SplineSpace1D(discretization_knots(g.knots_v(), degree, level)));
    d.offsets.push_back(d.offsets.back() + d.spaces.back().size());
  }
  for (const auto& I : topo.interfaces) {
    const auto& sm = d.spaces[I.primary.patch].dir(along_dir(I.primary.side)).knot_vector();
    const auto& ss = d.spaces[I.secondary.patch].dir(along_dir(I.secondary.side)).knot_vector();
    std::vector<int> ms = ss.multiplicities();
    if (I.reversed) std::reverse(ms.begin(), ms.end());
    if (sm.multiplicities() != ms)
      fail(ErrorCode::NonConformingInterface, "discrete spaces differ across an interface");
  }
  return d;
}

int side_length(const TensorSpace2D& s, Side side) {
  return along_dir(side) == 0 ? s.nu() : s.nv();
}

int side_dof(const TensorSpace2D& s, Side side, int layer, int i) {
  switch (side) {
    case Side::west: return s.flat(layer, i);
    case Side::east: return s.flat(s.nu() - 1 - layer, i);
    case Side::south: return s.flat(i, layer);
    case Side::north: return s.flat(i, s.nv() - 1 - layer);
  }
  return -1;
}

double mesh_size(const MultiPatchTopology& topo, const Discretization& disc) {
  double h = 0.0;
  for (int k = 0; k < disc.num_patches(); ++k) {
    const auto& bu = disc.spaces[k].u().knot_vector().breakpoints();
    const auto& bv = disc.spaces[k].v().knot_vector().breakpoints();
    const auto& g = topo.patches[k];
    for (std::size_t j = 0; j + 1 < bv.size(); ++j)
      for (std::size_t i = 0; i + 1 < bu.size(); ++i) {
        const Eigen::Vector2d a = g.point(bu[i], bv[j]), b = g.point(bu[i + 1], bv[j]);
        const Eigen::Vector2d c = g.point(bu[i], bv[j + 1]), e = g.point(bu[i + 1], bv[j + 1]);
        h = std::max({h, (a - e).norm(), (b - c).norm()});
      }
  }
  return h;
}

Eigen::Vector3d physical_hessian(const GeometryJet& jet, const Eigen::Vector2d& grad_hat,
                                 const Eigen::Matrix2d& hess_hat) {
  const Eigen::Matrix2d JinvT = jet.inverse.transpose();
  const Eigen::Vector2d g = JinvT * grad_hat;
  const Eigen::Matrix2d H =
      JinvT * (hess_hat - g.x() * jet.hessians[0] - g.y() * jet.hessians[1]) * jet.inverse;
  return {H(0, 0), 0.5 * (H(0, 1) + H(1, 0)), H(1, 1)};
}

void eval_physical_basis(const TensorSpace2D& space, const PatchGeometry& geo, int eu, int ev,
                         double u, double v, int order, PhysicalBasis& out) {
  const BasisEval bu = space.u().eval_in_element(eu, u, order);
  const BasisEval bv = space.v().eval_in_element(ev, v, order);
  const int n = bu.count * bv.count;
  out.local.resize(n);
  out.value.resize(n);
  out.jet = geo.eval(u, v);
  if (order >= 1) out.grad.resize(n, 2);
  if (order >= 2) out.hess.resize(n, 3);
  const Eigen::Matrix2d JinvT = order >= 1 ? Eigen::Matrix2d(out.jet.inverse.transpose())
                                           : Eigen::Matrix2d::Zero();
  int k = 0;
  for (int b = 0; b < bv.count; ++b)
    for (int a = 0; a < bu.count; ++a, ++k) {
      out.local[k] = space.flat(bu.first_active + a, bv.first_active + b);
      out.value[k] = bu(0, a) * bv(0, b);
      if (order < 1) continue;
      const Eigen::Vector2d gh(bu(1, a) * bv(0, b), bu(0, a) * bv(1, b));
      const Eigen::Vector2d g = JinvT * gh;
      out.grad.row(k) = g.transpose();
      if (order < 2) continue;
      Eigen::Matrix2d hh;
      hh << bu(2, a) * bv(0, b), bu(1, a) * bv(1, b), bu(1, a) * bv(1, b), bu(0, a) * bv(2, b);
      const Eigen::Matrix2d H =
          JinvT * (hh - g.x() * out.jet.hessians[0] - g.y() * out.jet.hessians[1]) * out.jet.inverse;
      out.hess(k, 0) = H(0, 0);
      out.hess(k, 1) = H(0, 1);
      out.hess(k, 2) = H(1, 1);
    }
}

}  // namespace c1mortar
