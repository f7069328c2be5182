#include "c1mortar/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "c1mortar/error.hpp"

namespace c1mortar {

TensorSpace2D::TensorSpace2D(SplineSpace1D u, SplineSpace1D v) : u_(std::move(u)), v_(std::move(v)) {
  if (u_.degree() != v_.degree())
    fail(ErrorCode::InvalidConfig, "tensor space needs equal degrees in both directions");
}

PatchGeometry::PatchGeometry(KnotVector ku, KnotVector kv, std::vector<Eigen::Vector2d> control_points,
                             std::vector<double> weights)
    : ku_(std::move(ku)), kv_(std::move(kv)), su_(ku_), sv_(kv_), cps_(std::move(control_points)),
      w_(std::move(weights)) {
  if (!ku_.is_open() || !kv_.is_open())
    fail(ErrorCode::InvalidKnotVector, "geometry knot vectors must be open");
  if (static_cast<int>(cps_.size()) != nu() * nv())
    fail(ErrorCode::InvalidConfig, "control point count does not match knot vectors");
  if (w_.empty()) {
    w_.assign(cps_.size(), 1.0);
  } else {
    if (w_.size() != cps_.size())
      fail(ErrorCode::InvalidConfig, "weight count does not match control points");
    for (double w : w_)
      if (!(w > 0.0)) fail(ErrorCode::InvalidConfig, "weights must be strictly positive");
  }
  rational_ = std::any_of(w_.begin(), w_.end(), [](double w) { return w != 1.0; });
}

Eigen::Vector2d PatchGeometry::point(double u, double v) const {
  return eval_impl(ku_.element_of(u), kv_.element_of(v), u, v).point;
}

GeometryJet PatchGeometry::eval_unchecked(double u, double v) const {
  return eval_impl(ku_.element_of(u), kv_.element_of(v), u, v);
}

GeometryJet PatchGeometry::eval_in_element(int eu, int ev, double u, double v) const {
  GeometryJet jet = eval_impl(eu, ev, u, v);
  if (!(jet.det > 1e-14 * jet.jacobian.squaredNorm()))
    fail(ErrorCode::DegenerateJacobian, "det of geometry Jacobian is not positive");
  return jet;
}

GeometryJet PatchGeometry::eval(double u, double v) const {
  return eval_in_element(ku_.element_of(u), kv_.element_of(v), u, v);
}

GeometryJet PatchGeometry::eval_impl(int eu, int ev, double u, double v) const {
  const BasisEval bu = su_.eval_in_element(eu, u, 2);
  const BasisEval bv = sv_.eval_in_element(ev, v, 2);

  // homogeneous sums: index 0 value, 1 d/du, 2 d/dv, 3 uu, 4 uv, 5 vv
  std::array<Eigen::Vector2d, 6> A;
  std::array<double, 6> W{};
  for (auto& a : A) a.setZero();
  for (int b = 0; b < bv.count; ++b) {
    const int j = bv.first_active + b;
    for (int a = 0; a < bu.count; ++a) {
      const int i = bu.first_active + a;
      const int k = i + nu() * j;
      const double w = w_[k];
      const std::array<double, 6> n = {bu(0, a) * bv(0, b), bu(1, a) * bv(0, b),
                                       bu(0, a) * bv(1, b), bu(2, a) * bv(0, b),
                                       bu(1, a) * bv(1, b), bu(0, a) * bv(2, b)};
      for (int d = 0; d < 6; ++d) {
        A[d] += (n[d] * w) * cps_[k];
        W[d] += n[d] * w;
      }
    }
  }

  GeometryJet jet;
  const Eigen::Vector2d F = A[0] / W[0];
  const Eigen::Vector2d Fu = (A[1] - W[1] * F) / W[0];
  const Eigen::Vector2d Fv = (A[2] - W[2] * F) / W[0];
  const Eigen::Vector2d Fuu = (A[3] - 2.0 * W[1] * Fu - W[3] * F) / W[0];
  const Eigen::Vector2d Fuv = (A[4] - W[1] * Fv - W[2] * Fu - W[4] * F) / W[0];
  const Eigen::Vector2d Fvv = (A[5] - 2.0 * W[2] * Fv - W[5] * F) / W[0];
  jet.point = F;
  jet.jacobian.col(0) = Fu;
  jet.jacobian.col(1) = Fv;
  for (int r = 0; r < 2; ++r) {
    jet.hessians[r] << Fuu[r], Fuv[r], Fuv[r], Fvv[r];
  }
  jet.det = jet.jacobian.determinant();
  if (jet.det != 0.0) {
    jet.inverse << jet.jacobian(1, 1), -jet.jacobian(0, 1), -jet.jacobian(1, 0), jet.jacobian(0, 0);
    jet.inverse /= jet.det;
  } else {
    jet.inverse.setZero();
  }
  return jet;
}

KnotVector refine_uniform(const KnotVector& kv, int levels) {
  if (levels < 0) fail(ErrorCode::InvalidConfig, "levels must be >= 0");
  std::vector<double> knots(kv.knots().begin(), kv.knots().end());
  for (int l = 0; l < levels; ++l) {
    std::vector<double> next;
    for (std::size_t i = 0; i < knots.size(); ++i) {
      next.push_back(knots[i]);
      if (i + 1 < knots.size() && knots[i + 1] > knots[i])
        next.push_back(0.5 * (knots[i] + knots[i + 1]));
    }
    knots = std::move(next);
  }
  return KnotVector(kv.degree(), std::move(knots));
}

SplineSpace1D refine_uniform(const SplineSpace1D& s, int levels) {
  return SplineSpace1D(refine_uniform(s.knot_vector(), levels), s.conditions());
}

namespace {

// Boehm insertion of one knot into a curve of homogeneous points.
void insert_one(std::vector<double>& U, int p, std::vector<Eigen::Vector3d>& P, double t) {
  const int n = static_cast<int>(P.size());
  int k = static_cast<int>(std::upper_bound(U.begin(), U.end(), t) - U.begin()) - 1;
  k = std::min(k, n - 1);
  std::vector<Eigen::Vector3d> Q(n + 1);
  for (int i = 0; i <= k - p; ++i) Q[i] = P[i];
  for (int i = k - p + 1; i <= k; ++i) {
    const double denom = U[i + p] - U[i];
    const double alpha = denom > 0.0 ? (t - U[i]) / denom : 0.0;
    Q[i] = alpha * P[i] + (1.0 - alpha) * P[i - 1];
  }
  for (int i = k + 1; i <= n; ++i) Q[i] = P[i - 1];
  U.insert(U.begin() + k + 1, t);
  P = std::move(Q);
}

}  // namespace

PatchGeometry insert_knots(const PatchGeometry& g, int dir, const std::vector<double>& new_knots) {
  const KnotVector& kd = g.knots(dir);
  const int p = kd.degree();
  const int nu = g.nu(), nv = g.nv();
  const int n_dir = dir == 0 ? nu : nv;
  const int n_other = dir == 0 ? nv : nu;
  std::vector<double> U_final;
  std::vector<std::vector<Eigen::Vector3d>> rows(n_other);
  for (int o = 0; o < n_other; ++o) {
    std::vector<Eigen::Vector3d> P(n_dir);
    for (int t = 0; t < n_dir; ++t) {
      const int k = dir == 0 ? t + nu * o : o + nu * t;
      const double w = g.weights()[k];
      P[t] = Eigen::Vector3d(w * g.control_points()[k].x(), w * g.control_points()[k].y(), w);
    }
    std::vector<double> U(kd.knots().begin(), kd.knots().end());
    for (double t : new_knots) insert_one(U, p, P, t);
    rows[o] = std::move(P);
    U_final = std::move(U);
  }
  const int n_new = static_cast<int>(rows.front().size());
  const int nu2 = dir == 0 ? n_new : nu;
  const int nv2 = dir == 0 ? nv : n_new;
  std::vector<Eigen::Vector2d> cps(nu2 * nv2);
  std::vector<double> w(nu2 * nv2);
  for (int o = 0; o < n_other; ++o)
    for (int t = 0; t < n_new; ++t) {
      const int k = dir == 0 ? t + nu2 * o : o + nu2 * t;
      const Eigen::Vector3d& q = rows[o][t];
      w[k] = q.z();
      cps[k] = Eigen::Vector2d(q.x() / q.z(), q.y() / q.z());
    }
  KnotVector kn(p, std::move(U_final));
  if (!g.is_rational()) w.clear();
  return dir == 0 ? PatchGeometry(std::move(kn), g.knots_v(), std::move(cps), std::move(w))
                  : PatchGeometry(g.knots_u(), std::move(kn), std::move(cps), std::move(w));
}

PatchGeometry refine_uniform(const PatchGeometry& g, int levels) {
  if (levels < 0) fail(ErrorCode::InvalidConfig, "levels must be >= 0");
  PatchGeometry out = g;
  for (int d = 0; d < 2; ++d) {
    const KnotVector target = refine_uniform(out.knots(d), levels);
    // the difference of two sorted multisets
    std::vector<double> add;
    std::set_difference(target.knots().begin(), target.knots().end(), out.knots(d).knots().begin(),
                        out.knots(d).knots().end(), std::back_inserter(add));
    if (!add.empty()) out = insert_knots(out, d, add);
  }
  return out;
}

}  // namespace c1mortar
