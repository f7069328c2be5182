#include "c1mortar/interface_spaces.hpp"

#include "c1mortar/constraints.hpp"
#include "c1mortar/error.hpp"

namespace c1mortar {

std::string to_string(MultiplierMode m) {
  switch (m) {
    case MultiplierMode::merged: return "merged";
    case MultiplierMode::unmerged: return "unmerged";
    case MultiplierMode::none: return "none";
  }
  return "?";
}

std::string to_string(VertexMode m) { return m == VertexMode::c2 ? "c2" : "c0"; }

const SplineSpace1D& interface_primal_space(const MultiPatchTopology& topo,
                                            const Discretization& disc, int l) {
  const Interface& I = topo.interfaces.at(l);
  return disc.spaces[I.primary.patch].dir(along_dir(I.primary.side));
}

TraceSpaceHandle build_trace_space(const MultiPatchTopology& topo, const Discretization& disc,
                                   int l) {
  const Interface& I = topo.interfaces.at(l);
  const TensorSpace2D& sp = disc.spaces[I.secondary.patch];
  TraceSpaceHandle h;
  h.interface = l;
  h.patch = I.secondary.patch;
  h.side = I.secondary.side;
  h.n_along = side_length(sp, h.side);
  // ordered by increasing yhat
  for (int k = 2; k < h.n_along - 2; ++k) {
    const int i = I.reversed ? h.n_along - 1 - k : k;
    h.generators.push_back(side_dof(sp, h.side, 1, i));
  }
  return h;
}

Eigen::VectorXd TraceSpaceHandle::eval(const MultiPatchTopology& topo, const Discretization& disc,
                                       double yhat) const {
  const Interface& I = topo.interfaces[interface];
  const InterfaceFrame f = interface_frame(topo, interface, yhat);
  const TensorSpace2D& sp = disc.spaces[patch];
  const double s = I.secondary_param(yhat);
  const Eigen::Vector2d uv = side_point(side, s);
  const int ad = along_dir(side), td = transversal_dir(side);
  const SplineSpace1D& along = sp.dir(ad);
  const SplineSpace1D& trans = sp.dir(td);
  const double tpos = uv[td];
  const BasisEval ba = along.eval(s, 1);
  const BasisEval bt = trans.eval_in_element(tpos == 0.0 ? 0 : trans.num_elements() - 1, tpos, 1);
  const double sgn_along = I.reversed ? -1.0 : 1.0;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(dimension());
  for (int g = 0; g < dimension(); ++g) {
    const auto [iu, iv] = sp.unflatten(generators[g]);
    const int ia = ad == 0 ? iu : iv;
    const int it = ad == 0 ? iv : iu;
    const int a = ia - ba.first_active, t = it - bt.first_active;
    if (a < 0 || a >= ba.count || t < 0 || t >= bt.count) continue;
    const double d_trans = inward_sign(side) * ba(0, a) * bt(1, t);
    const double d_along = sgn_along * ba(1, a) * bt(0, t);
    w[g] = f.alpha_s * d_trans + f.beta_s * d_along;
  }
  return w;
}

MultiplierSpaceHandle build_multiplier_space(const MultiPatchTopology& topo,
                                             const Discretization& disc, int l,
                                             MultiplierMode mode) {
  const SplineSpace1D& primal = interface_primal_space(topo, disc, l);
  const int p = primal.degree();
  if (p < 2) fail(ErrorCode::DegreeTooLow, "multipliers need p >= 2");
  MultiplierSpaceHandle h;
  h.interface = l;
  h.mode = mode;
  const KnotVector& kv = primal.knot_vector();
  const auto& bp = kv.breakpoints();
  const auto& m = kv.multiplicities();
  std::vector<double> interior(bp.begin() + 1, bp.end() - 1);
  std::vector<int> mult(m.begin() + 1, m.end() - 1);
  KnotVector mk = make_open_knot_vector(p - 2, interior, mult);
  if (mode == MultiplierMode::merged) mk = merge_end_elements(mk);
  h.space = SplineSpace1D(mk);
  return h;
}

}  // namespace c1mortar
