#pragma once

// Tensor-product spline spaces and (rational) spline patch maps.

#include <array>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "c1mortar/bspline.hpp"

namespace c1mortar {

/// Tensor product of two univariate spaces of equal degree. Flat index is
/// i + n_u * j (u runs fastest).
class TensorSpace2D {
 public:
  TensorSpace2D() = default;
  TensorSpace2D(SplineSpace1D u, SplineSpace1D v);

  const SplineSpace1D& u() const { return u_; }
  const SplineSpace1D& v() const { return v_; }
  const SplineSpace1D& dir(int d) const { return d == 0 ? u_ : v_; }
  int degree() const { return u_.degree(); }
  int nu() const { return u_.dimension(); }
  int nv() const { return v_.dimension(); }
  int size() const { return nu() * nv(); }
  int num_elements() const { return u_.num_elements() * v_.num_elements(); }

  int flat(int i, int j) const { return i + nu() * j; }
  std::pair<int, int> unflatten(int k) const { return {k % nu(), k / nu()}; }

 private:
  SplineSpace1D u_, v_;
};

/// Point, first and second derivatives of a patch map at one parametric
/// point. jacobian(r, c) = d x_r / d xhat_c; hessians[r](a, b) =
/// d^2 x_r / d xhat_a d xhat_b.
struct GeometryJet {
  Eigen::Vector2d point;
  Eigen::Matrix2d jacobian;
  std::array<Eigen::Matrix2d, 2> hessians;
  double det = 0.0;
  Eigen::Matrix2d inverse;
};

class PatchGeometry {
 public:
  PatchGeometry() = default;
  PatchGeometry(KnotVector ku, KnotVector kv, std::vector<Eigen::Vector2d> control_points,
                std::vector<double> weights = {});

  const KnotVector& knots_u() const { return ku_; }
  const KnotVector& knots_v() const { return kv_; }
  const KnotVector& knots(int d) const { return d == 0 ? ku_ : kv_; }
  int nu() const { return ku_.dimension(); }
  int nv() const { return kv_.dimension(); }
  const std::vector<Eigen::Vector2d>& control_points() const { return cps_; }
  const std::vector<double>& weights() const { return w_; }
  bool is_rational() const { return rational_; }

  Eigen::Vector2d point(double u, double v) const;
  /// Throws DegenerateJacobian when det J <= eps * |J|^2.
  GeometryJet eval(double u, double v) const;
  GeometryJet eval_unchecked(double u, double v) const;
  /// Same, but evaluating in element (eu, ev) so element-edge points use
  /// one-sided limits from inside that element.
  GeometryJet eval_in_element(int eu, int ev, double u, double v) const;

 private:
  GeometryJet eval_impl(int eu, int ev, double u, double v) const;

  KnotVector ku_, kv_;
  SplineSpace1D su_, sv_;
  std::vector<Eigen::Vector2d> cps_;
  std::vector<double> w_;
  bool rational_ = false;
};

inline GeometryJet eval_geometry(const PatchGeometry& g, double u, double v) {
  return g.eval(u, v);
}

/// Bisects every nonempty span `levels` times.
KnotVector refine_uniform(const KnotVector& kv, int levels);
SplineSpace1D refine_uniform(const SplineSpace1D& s, int levels);
/// Knot insertion in homogeneous coordinates; the map is unchanged.
PatchGeometry refine_uniform(const PatchGeometry& g, int levels);
PatchGeometry insert_knots(const PatchGeometry& g, int dir, const std::vector<double>& new_knots);

}  // namespace c1mortar
