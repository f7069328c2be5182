#include "c1mortar/infsup.hpp"

#include <algorithm>
#include <cmath>

#include "c1mortar/error.hpp"
#include "c1mortar/quadrature.hpp"

namespace c1mortar {

EigenStudy corner_eigen_test(int plotted_degree, const std::vector<double>& interior,
                             int extra_ring) {
  const int d = plotted_degree - 1;
  if (d < 1) fail(ErrorCode::DegreeTooLow, "plotted degree must be at least 2");
  const int m = static_cast<int>(interior.size());
  const int n_el = m + 1;
  if (n_el < 2 * d + 5 + extra_ring)
    fail(ErrorCode::MeshTooCoarse, "need at least " + std::to_string(2 * d + 5 + extra_ring) +
                                       " elements for plotted degree " +
                                       std::to_string(plotted_degree));
  const std::vector<int> ones(m, 1);
  const SplineSpace1D phi(make_open_knot_vector(d, interior, ones, d));
  const SplineSpace1D tau(merge_end_elements(make_open_knot_vector(d, interior, ones)));
  const double window = interior[d + 1 + extra_ring];

  // functions whose support starts before the window end
  int r = 0;
  const auto knots = phi.knot_vector().knots();
  while (r < phi.dimension() && knots[r] < window) ++r;

  Eigen::MatrixXd M1 = Eigen::MatrixXd::Zero(r, r), M2 = Eigen::MatrixXd::Zero(r, r);
  const QuadratureRule1D ref = gauss_legendre(d + 2);
  std::vector<double> bp = {0.0};
  for (int i = 0; i <= d + 1 + extra_ring; ++i) bp.push_back(interior[i]);
  for (std::size_t e = 0; e + 1 < bp.size(); ++e) {
    const QuadratureRule1D q = map_rule(ref, bp[e], bp[e + 1]);
    for (int k = 0; k < q.size(); ++k) {
      const BasisEval bf = phi.eval(q.nodes[k], 0);
      const BasisEval bt = tau.eval(q.nodes[k], 0);
      for (int a = 0; a < bf.count; ++a) {
        const int i = bf.first_active + a;
        if (i >= r) continue;
        for (int b = 0; b < bf.count; ++b) {
          const int j = bf.first_active + b;
          if (j < r) M2(i, j) += q.weights[k] * bf(0, a) * bf(0, b);
        }
        for (int b = 0; b < bt.count; ++b) {
          const int j = bt.first_active + b;
          if (j < r) M1(i, j) += q.weights[k] * bf(0, a) * bt(0, b);
        }
      }
    }
  }
  const Eigen::MatrixXd M1s = 0.5 * (M1 + M1.transpose());
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(M1s, M2);
  if (es.info() != Eigen::Success) fail(ErrorCode::SingularSystem, "window mass matrix is singular");
  EigenStudy out;
  out.plotted_degree = plotted_degree;
  out.test_degree = d;
  out.n_elements = n_el;
  out.restricted_size = r;
  out.spectrum = es.eigenvalues();
  out.mu_min = out.spectrum.minCoeff();
  return out;
}

EigenStudy corner_eigen_test(int plotted_degree, int n_elements, int extra_ring) {
  if (n_elements < 1) fail(ErrorCode::MeshTooCoarse, "need at least one element");
  std::vector<double> interior;
  for (int i = 1; i < n_elements; ++i) interior.push_back(static_cast<double>(i) / n_elements);
  return corner_eigen_test(plotted_degree, interior, extra_ring);
}

std::vector<double> perturbed_breakpoints(int n_elements, UniformRng& rng) {
  const double h = 1.0 / n_elements;
  std::vector<double> out;
  for (int i = 1; i < n_elements; ++i) out.push_back(i * h + (h / 10.0) * (rng.next() - 0.5));
  return out;
}

RandomMeshSummary random_mesh_study(int plotted_degree, const RandomMeshSpec& spec,
                                    ExecutionPolicy policy) {
  if (spec.trials < 1) fail(ErrorCode::InvalidConfig, "trials must be positive");
  UniformRng rng(spec.seed);
  std::vector<std::vector<double>> meshes(spec.trials);
  for (auto& m : meshes) m = perturbed_breakpoints(spec.n_elements, rng);
  RandomMeshSummary out;
  out.mu.resize(spec.trials);
  compute_and_merge<double>(
      spec.trials, policy,
      [&](int i, double& mu) { mu = corner_eigen_test(plotted_degree, meshes[i]).mu_min; },
      [&](int i, double mu) { out.mu[i] = mu; });
  for (const auto& m : meshes) {
    bool inc = m.front() > 0.0 && m.back() < 1.0;
    for (std::size_t i = 1; i < m.size(); ++i) inc = inc && m[i] > m[i - 1];
    out.increasing_meshes += inc;
  }
  out.min = *std::min_element(out.mu.begin(), out.mu.end());
  out.max = *std::max_element(out.mu.begin(), out.mu.end());
  double sum = 0.0;
  for (double v : out.mu) sum += v;
  out.mean = sum / spec.trials;
  return out;
}

Histogram histogram(const std::vector<double>& values, double lo, double hi, int bins) {
  if (!(hi > lo) || bins < 1) fail(ErrorCode::InvalidConfig, "invalid histogram range");
  Histogram h;
  h.count.assign(bins, 0);
  for (int b = 0; b < bins; ++b) {
    h.left.push_back(lo + (hi - lo) * b / bins);
    h.right.push_back(lo + (hi - lo) * (b + 1) / bins);
  }
  for (double v : values) {
    if (v < lo) {
      ++h.below;
    } else if (v > hi) {
      ++h.above;
    } else {
      const int b = std::min(bins - 1, static_cast<int>((v - lo) / (hi - lo) * bins));
      ++h.count[b];
    }
  }
  return h;
}

CouplingConditioning coupling_conditioning(const MultiPatchTopology& topo,
                                           const Discretization& disc, int l,
                                           MultiplierMode mode) {
  const TraceSpaceHandle W = build_trace_space(topo, disc, l);
  const MultiplierSpaceHandle M = build_multiplier_space(topo, disc, l, mode);
  const int nw = W.dimension(), nm = M.dimension();
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(nw, nm);
  Eigen::VectorXd ww = Eigen::VectorXd::Zero(nw), mm = Eigen::VectorXd::Zero(nm);
  const auto& bp = interface_primal_space(topo, disc, l).knot_vector().breakpoints();
  const InterfaceQuadrature iq = interface_rule(topo, l, bp, disc.degree + 2);
  for (std::size_t k = 0; k < iq.yhat.size(); ++k) {
    const Eigen::VectorXd w = W.eval(topo, disc, iq.yhat[k]);
    Eigen::VectorXd mu = Eigen::VectorXd::Zero(nm);
    if (nm > 0) {
      const BasisEval be = M.space.eval(iq.yhat[k], 0);
      for (int a = 0; a < be.count; ++a) mu[be.first_active + a] = be(0, a);
    }
    G.noalias() += iq.weights[k] * w * mu.transpose();
    ww += iq.weights[k] * w.cwiseAbs2();
    mm += iq.weights[k] * mu.cwiseAbs2();
  }
  for (int i = 0; i < nw; ++i) G.row(i) /= std::sqrt(ww[i]);
  for (int j = 0; j < nm; ++j) G.col(j) /= std::sqrt(mm[j]);
  CouplingConditioning out;
  out.rows = nw;
  out.cols = nm;
  out.square = nw == nm;
  if (nw > 0 && nm > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(G);
    const Eigen::VectorXd s = svd.singularValues();
    out.sigma_min = s[s.size() - 1];
    svd.setThreshold(1e-10);
    out.rank = static_cast<int>(svd.rank());
  }
  return out;
}

}  // namespace c1mortar
