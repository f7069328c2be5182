#include "c1mortar/topology.hpp"

#include <algorithm>
#include <cmath>

#include "c1mortar/error.hpp"

namespace c1mortar {

namespace {

constexpr std::array<Side, 4> kSides = {Side::west, Side::east, Side::south, Side::north};

Eigen::Vector2d trace_point(const PatchGeometry& g, Side s, double t) {
  const Eigen::Vector2d uv = side_point(s, t);
  return g.point(uv.x(), uv.y());
}

Eigen::Vector2d trace_tangent(const PatchGeometry& g, Side s, double t) {
  const Eigen::Vector2d uv = side_point(s, t);
  return g.eval_unchecked(uv.x(), uv.y()).jacobian.col(along_dir(s));
}

// Distance from x to the trace curve of side s (dense search then Newton).
double distance_to_trace(const PatchGeometry& g, Side s, const Eigen::Vector2d& x) {
  constexpr int kSamples = 64;
  double best_t = 0.0, best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kSamples; ++i) {
    const double t = static_cast<double>(i) / kSamples;
    const double d = (trace_point(g, s, t) - x).norm();
    if (d < best_d) best_d = d, best_t = t;
  }
  double t = best_t;
  for (int it = 0; it < 30; ++it) {
    const Eigen::Vector2d r = trace_point(g, s, t) - x;
    const Eigen::Vector2d d = trace_tangent(g, s, t);
    const double dd = d.squaredNorm();
    if (dd == 0.0) break;
    const double step = r.dot(d) / dd;
    t = std::clamp(t - step, 0.0, 1.0);
    if (std::abs(step) < 1e-15) break;
  }
  return std::min(best_d, (trace_point(g, s, t) - x).norm());
}

std::vector<double> side_breakpoints(const PatchGeometry& g, Side s, bool reversed) {
  std::vector<double> bp = g.knots(along_dir(s)).breakpoints();
  if (reversed) {
    for (double& b : bp) b = 1.0 - b;
    std::reverse(bp.begin(), bp.end());
  }
  return bp;
}

struct Match {
  SideRef a, b;
  bool reversed;
};

}  // namespace

std::string to_string(Side s) {
  switch (s) {
    case Side::west: return "west";
    case Side::east: return "east";
    case Side::south: return "south";
    case Side::north: return "north";
  }
  return "?";
}

Side side_from_string(const std::string& name) {
  for (Side s : kSides)
    if (to_string(s) == name) return s;
  fail(ErrorCode::ParseError, "unknown side '" + name + "'");
}

Eigen::Vector2d side_point(Side s, double t) {
  switch (s) {
    case Side::west: return {0.0, t};
    case Side::east: return {1.0, t};
    case Side::south: return {t, 0.0};
    case Side::north: return {t, 1.0};
  }
  return {0.0, 0.0};
}

bool MultiPatchTopology::is_dirichlet(SideRef s) const {
  return std::find(dirichlet_sides.begin(), dirichlet_sides.end(), s) != dirichlet_sides.end();
}

bool MultiPatchTopology::is_boundary(SideRef s) const {
  return std::find(boundary_sides.begin(), boundary_sides.end(), s) != boundary_sides.end();
}

int MultiPatchTopology::interface_of(SideRef s) const {
  for (std::size_t l = 0; l < interfaces.size(); ++l)
    if (interfaces[l].primary == s || interfaces[l].secondary == s) return static_cast<int>(l);
  return -1;
}

double domain_diameter(const std::vector<PatchGeometry>& patches) {
  Eigen::Vector2d lo = Eigen::Vector2d::Constant(std::numeric_limits<double>::infinity());
  Eigen::Vector2d hi = -lo;
  for (const auto& g : patches)
    for (const auto& c : g.control_points()) {
      lo = lo.cwiseMin(c);
      hi = hi.cwiseMax(c);
    }
  return (hi - lo).norm();
}

void side_pullback(const GeometryJet& jet, Side s, const Eigen::Vector2d& normal, double& alpha,
                   double& beta) {
  Eigen::Matrix2d m;
  m.col(0) = inward_sign(s) * jet.jacobian.col(transversal_dir(s));
  m.col(1) = jet.jacobian.col(along_dir(s));
  const double det = m.determinant();
  if (det == 0.0) fail(ErrorCode::DegenerateJacobian, "degenerate frame on patch side");
  const Eigen::Vector2d ab = m.inverse() * normal;
  alpha = ab.x();
  beta = ab.y();
}

InterfaceFrame interface_frame(const MultiPatchTopology& topo, int l, double yhat) {
  if (l < 0 || l >= static_cast<int>(topo.interfaces.size()))
    fail(ErrorCode::InvalidConfig, "interface index out of range");
  const Interface& I = topo.interfaces[l];
  const PatchGeometry& gm = topo.patches[I.primary.patch];
  const PatchGeometry& gs = topo.patches[I.secondary.patch];
  const Eigen::Vector2d um = side_point(I.primary.side, yhat);
  const Eigen::Vector2d us = side_point(I.secondary.side, I.secondary_param(yhat));
  const GeometryJet jm = gm.eval(um.x(), um.y());
  const GeometryJet js = gs.eval(us.x(), us.y());

  InterfaceFrame f;
  f.yhat = yhat;
  f.point = jm.point;
  f.tangent = jm.jacobian.col(along_dir(I.primary.side));
  f.rho = f.tangent.norm();
  if (f.rho == 0.0) fail(ErrorCode::DegenerateJacobian, "interface tangent vanishes");
  Eigen::Vector2d n(f.tangent.y(), -f.tangent.x());
  n /= f.rho;
  const Eigen::Vector2d inward_m = inward_sign(I.primary.side) * jm.jacobian.col(transversal_dir(I.primary.side));
  if (n.dot(inward_m) > 0.0) n = -n;
  f.normal = n;
  side_pullback(jm, I.primary.side, n, f.alpha_m, f.beta_m);
  side_pullback(js, I.secondary.side, n, f.alpha_s, f.beta_s);
  if (I.reversed) f.beta_s = -f.beta_s;
  return f;
}

InterfaceQuadrature interface_rule(const MultiPatchTopology& topo, int l,
                                   const std::vector<double>& breakpoints, int q) {
  const Interface& I = topo.interfaces.at(l);
  const PatchGeometry& gm = topo.patches[I.primary.patch];
  const QuadratureRule1D ref = gauss_legendre(q);
  InterfaceQuadrature out;
  for (std::size_t e = 0; e + 1 < breakpoints.size(); ++e) {
    const QuadratureRule1D r = map_rule(ref, breakpoints[e], breakpoints[e + 1]);
    for (int k = 0; k < r.size(); ++k) {
      const Eigen::Vector2d uv = side_point(I.primary.side, r.nodes[k]);
      const double rho = gm.eval(uv.x(), uv.y()).jacobian.col(along_dir(I.primary.side)).norm();
      out.yhat.push_back(r.nodes[k]);
      out.weights.push_back(r.weights[k] * rho);
      out.element.push_back(static_cast<int>(e));
    }
  }
  return out;
}

MultiPatchTopology build_topology(std::vector<PatchGeometry> patches, double tol,
                                  const std::vector<InterfaceOverride>& overrides) {
  if (patches.empty()) fail(ErrorCode::InvalidConfig, "no patches");
  MultiPatchTopology topo;
  topo.patches = std::move(patches);
  const double diam = domain_diameter(topo.patches);
  topo.tolerance = tol > 0.0 ? tol : 1e-9 * diam;
  const double eps = topo.tolerance;
  const double set_tol = std::max(eps, 1e-8 * diam);
  const int np = static_cast<int>(topo.patches.size());

  std::vector<Match> matches;
  for (int a = 0; a < np; ++a)
    for (Side sa : kSides)
      for (int b = a + 1; b < np; ++b)
        for (Side sb : kSides) {
          const PatchGeometry& ga = topo.patches[a];
          const PatchGeometry& gb = topo.patches[b];
          const Eigen::Vector2d a0 = trace_point(ga, sa, 0.0), a1 = trace_point(ga, sa, 1.0);
          const Eigen::Vector2d b0 = trace_point(gb, sb, 0.0), b1 = trace_point(gb, sb, 1.0);
          bool reversed;
          if ((a0 - b0).norm() < eps && (a1 - b1).norm() < eps)
            reversed = false;
          else if ((a0 - b1).norm() < eps && (a1 - b0).norm() < eps)
            reversed = true;
          else
            continue;
          bool same_set = true;
          for (int i = 1; i < 10 && same_set; ++i)
            same_set = distance_to_trace(gb, sb, trace_point(ga, sa, i / 10.0)) < set_tol;
          if (!same_set) continue;
          const std::string where = "patch " + std::to_string(a) + " " + to_string(sa) + " / patch " +
                                    std::to_string(b) + " " + to_string(sb);
          for (int i = 0; i <= 50; ++i) {
            const double t = i / 50.0;
            const double d = (trace_point(ga, sa, t) - trace_point(gb, sb, reversed ? 1.0 - t : t)).norm();
            if (d > set_tol)
              fail(ErrorCode::NonConformingInterface, "traces are parametrized differently on " + where);
          }
          const auto bpa = side_breakpoints(ga, sa, false);
          const auto bpb = side_breakpoints(gb, sb, reversed);
          bool same_knots = bpa.size() == bpb.size();
          for (std::size_t i = 0; same_knots && i < bpa.size(); ++i)
            same_knots = std::abs(bpa[i] - bpb[i]) < 1e-12;
          if (!same_knots) fail(ErrorCode::NonConformingInterface, "knot vectors differ on " + where);
          matches.push_back({{a, sa}, {b, sb}, reversed});
        }

  for (int k = 0; k < np; ++k)
    for (Side s : kSides) {
      const SideRef r{k, s};
      const auto n = std::count_if(matches.begin(), matches.end(),
                                   [&](const Match& m) { return m.a == r || m.b == r; });
      if (n > 1)
        fail(ErrorCode::DanglingSide,
             "patch " + std::to_string(k) + " side " + to_string(s) + " matches several sides");
      if (n == 0) topo.boundary_sides.push_back(r);
    }

  for (const Match& m : matches) {
    Interface I{m.a, m.b, m.reversed};
    for (const auto& o : overrides)
      if (o.primary == m.b && o.secondary == m.a) std::swap(I.primary, I.secondary);
    topo.interfaces.push_back(I);
  }
  for (const auto& o : overrides) {
    const bool found = std::any_of(topo.interfaces.begin(), topo.interfaces.end(), [&](const Interface& I) {
      return I.primary == o.primary && I.secondary == o.secondary;
    });
    if (!found) fail(ErrorCode::InvalidConfig, "interface override names sides that do not match");
  }

  // both patches must lie on opposite sides of each interface
  for (std::size_t l = 0; l < topo.interfaces.size(); ++l) {
    const Interface& I = topo.interfaces[l];
    const Eigen::Vector2d um = side_point(I.primary.side, 0.5);
    const Eigen::Vector2d us = side_point(I.secondary.side, 0.5);
    const GeometryJet jm = topo.patches[I.primary.patch].eval_unchecked(um.x(), um.y());
    const GeometryJet js = topo.patches[I.secondary.patch].eval_unchecked(us.x(), us.y());
    const Eigen::Vector2d t = jm.jacobian.col(along_dir(I.primary.side));
    const Eigen::Vector2d n(t.y(), -t.x());
    const double sm = n.dot(inward_sign(I.primary.side) * jm.jacobian.col(transversal_dir(I.primary.side)));
    const double ss = n.dot(inward_sign(I.secondary.side) * js.jacobian.col(transversal_dir(I.secondary.side)));
    if (!(sm * ss < 0.0))
      fail(ErrorCode::OrientationMismatch, "patches overlap across interface " + std::to_string(l));
  }

  for (int k = 0; k < np; ++k)
    for (int c = 0; c < 4; ++c) {
      const Eigen::Vector2d x = topo.patches[k].point(c & 1, c >> 1);
      auto it = std::find_if(topo.vertices.begin(), topo.vertices.end(),
                             [&](const Vertex& v) { return (v.position - x).norm() < eps; });
      if (it == topo.vertices.end()) {
        topo.vertices.push_back({x, {}, false});
        it = topo.vertices.end() - 1;
      }
      it->corners.push_back({k, c});
    }
  std::erase_if(topo.vertices, [](const Vertex& v) { return v.corners.size() < 2; });
  for (Vertex& v : topo.vertices)
    for (const PatchCorner& pc : v.corners) {
      const Side su = (pc.corner & 1) ? Side::east : Side::west;
      const Side sv = (pc.corner >> 1) ? Side::north : Side::south;
      if (topo.is_boundary({pc.patch, su}) || topo.is_boundary({pc.patch, sv})) v.on_boundary = true;
    }

  topo.dirichlet_sides = topo.boundary_sides;
  return topo;
}

MultiPatchTopology refine_uniform(const MultiPatchTopology& topo, int levels) {
  std::vector<PatchGeometry> patches;
  for (const auto& g : topo.patches) patches.push_back(refine_uniform(g, levels));
  std::vector<InterfaceOverride> ov;
  for (const auto& I : topo.interfaces) ov.push_back({I.primary, I.secondary});
  MultiPatchTopology out = build_topology(std::move(patches), topo.tolerance, ov);
  out.dirichlet_sides = topo.dirichlet_sides;
  return out;
}

}  // namespace c1mortar
