#include "c1mortar/bspline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "c1mortar/error.hpp"

namespace c1mortar {

namespace {

// Nonzero basis functions and derivatives on a nonempty span of an open knot
// vector (Piegl & Tiller A2.3). `out` is (nd+1) x (p+1), row-major.
void ders_basis_funs(std::span<const double> U, int p, int span, double x, int nd,
                     double* out) {
  std::vector<double> ndu((p + 1) * (p + 1));
  std::vector<double> left(p + 1), right(p + 1);
  auto NDU = [&](int r, int c) -> double& { return ndu[r * (p + 1) + c]; };
  NDU(0, 0) = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = x - U[span + 1 - j];
    right[j] = U[span + j] - x;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      NDU(j, r) = right[r + 1] + left[j - r];
      const double temp = NDU(r, j - 1) / NDU(j, r);
      NDU(r, j) = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    NDU(j, j) = saved;
  }
  for (int j = 0; j <= p; ++j) out[j] = NDU(j, p);
  if (nd == 0) return;

  std::vector<double> a(2 * (p + 1));
  auto A = [&](int s, int c) -> double& { return a[s * (p + 1) + c]; };
  for (int r = 0; r <= p; ++r) {
    int s1 = 0, s2 = 1;
    A(0, 0) = 1.0;
    for (int k = 1; k <= nd; ++k) {
      double d = 0.0;
      const int rk = r - k, pk = p - k;
      if (r >= k) {
        A(s2, 0) = A(s1, 0) / NDU(pk + 1, rk);
        d = A(s2, 0) * NDU(rk, pk);
      }
      const int j1 = rk >= -1 ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        A(s2, j) = (A(s1, j) - A(s1, j - 1)) / NDU(pk + 1, rk + j);
        d += A(s2, j) * NDU(rk + j, pk);
      }
      if (r <= pk) {
        A(s2, k) = -A(s1, k - 1) / NDU(pk + 1, r);
        d += A(s2, k) * NDU(r, pk);
      }
      out[k * (p + 1) + r] = d;
      std::swap(s1, s2);
    }
  }
  double factor = p;
  for (int k = 1; k <= nd; ++k) {
    for (int j = 0; j <= p; ++j) out[k * (p + 1) + j] *= factor;
    factor *= (p - k);
  }
}

}  // namespace

KnotVector::KnotVector(int degree, std::vector<double> knots)
    : degree_(degree), knots_(std::move(knots)) {
  if (degree_ < 0) fail(ErrorCode::InvalidKnotVector, "negative degree");
  if (knots_.size() < 2) fail(ErrorCode::InvalidKnotVector, "too few knots");
  for (std::size_t i = 1; i < knots_.size(); ++i)
    if (knots_[i] < knots_[i - 1])
      fail(ErrorCode::NonMonotone, "knot sequence decreases");
  if (knots_.front() != 0.0 || knots_.back() != 1.0)
    fail(ErrorCode::InvalidKnotVector, "knots must start at 0 and end at 1");

  for (double k : knots_) {
    if (breakpoints_.empty() || k != breakpoints_.back()) {
      breakpoints_.push_back(k);
      multiplicities_.push_back(1);
    } else {
      ++multiplicities_.back();
    }
  }
  for (int m : multiplicities_)
    if (m > degree_ + 1)
      fail(ErrorCode::MultiplicityOutOfRange, "multiplicity exceeds degree+1");
  if (dimension() < 1) fail(ErrorCode::InvalidKnotVector, "empty spline space");

  const int pad_start = degree_ + 1 - start_multiplicity();
  const int pad_end = degree_ + 1 - end_multiplicity();
  padded_.assign(pad_start, 0.0);
  padded_.insert(padded_.end(), knots_.begin(), knots_.end());
  padded_.insert(padded_.end(), pad_end, 1.0);
  shift_ = pad_start;
}

std::vector<double> KnotVector::interior_breakpoints() const {
  return {breakpoints_.begin() + 1, breakpoints_.end() - 1};
}

int KnotVector::element_of(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream os;
    os << "x = " << x << " outside [0,1]";
    fail(ErrorCode::OutOfDomain, os.str());
  }
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  int e = static_cast<int>(it - breakpoints_.begin()) - 1;
  return std::min(e, num_elements() - 1);
}

KnotVector make_open_knot_vector(int degree, std::span<const double> interior_breakpoints,
                                 std::span<const int> interior_multiplicities,
                                 int end_multiplicity) {
  if (end_multiplicity < 0) end_multiplicity = degree + 1;
  if (interior_breakpoints.size() != interior_multiplicities.size())
    fail(ErrorCode::InvalidKnotVector, "breakpoint/multiplicity size mismatch");
  std::vector<double> knots(end_multiplicity, 0.0);
  double prev = 0.0;
  for (std::size_t j = 0; j < interior_breakpoints.size(); ++j) {
    const double z = interior_breakpoints[j];
    if (!(z > prev) || !(z < 1.0))
      fail(ErrorCode::NonMonotone, "interior breakpoints must increase strictly inside (0,1)");
    const int m = interior_multiplicities[j];
    if (m < 1 || m > degree + 1)
      fail(ErrorCode::MultiplicityOutOfRange, "interior multiplicity outside [1, p+1]");
    knots.insert(knots.end(), m, z);
    prev = z;
  }
  knots.insert(knots.end(), end_multiplicity, 1.0);
  return KnotVector(degree, std::move(knots));
}

KnotVector make_uniform_knot_vector(int degree, int elements, int multiplicity,
                                    int end_multiplicity) {
  std::vector<double> bp;
  for (int i = 1; i < elements; ++i) bp.push_back(static_cast<double>(i) / elements);
  std::vector<int> m(bp.size(), multiplicity);
  return make_open_knot_vector(degree, bp, m, end_multiplicity);
}

KnotVector merge_end_elements(const KnotVector& kv) {
  const auto& bp = kv.breakpoints();
  if (bp.size() < 5)
    fail(ErrorCode::TooFewElements, "merging needs at least 3 interior breakpoints");
  const double first = bp[1], last = bp[bp.size() - 2];
  std::vector<double> knots;
  for (double k : kv.knots())
    if (k != first && k != last) knots.push_back(k);
  return KnotVector(kv.degree(), std::move(knots));
}

SplineSpace1D::SplineSpace1D(KnotVector kv, SpaceConditions conditions)
    : kv_(std::move(kv)), conditions_(conditions) {}

std::vector<double> SplineSpace1D::element_sizes() const {
  const auto& bp = kv_.breakpoints();
  std::vector<double> h(bp.size() - 1);
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) h[i] = bp[i + 1] - bp[i];
  return h;
}

double SplineSpace1D::mesh_size() const {
  const auto h = element_sizes();
  return *std::max_element(h.begin(), h.end());
}

double SplineSpace1D::quasi_uniformity() const {
  const auto h = element_sizes();
  return *std::min_element(h.begin(), h.end()) / *std::max_element(h.begin(), h.end());
}

BasisEval SplineSpace1D::eval_in_element(int e, double x, int max_deriv) const {
  const int p = kv_.degree_;
  if (max_deriv < 0) max_deriv = 0;
  const int nd = std::min(max_deriv, p);
  const auto& U = kv_.padded_;
  const double left_bp = kv_.breakpoints_[e];
  // last occurrence of the element's left breakpoint
  const int span =
      static_cast<int>(std::upper_bound(U.begin(), U.end(), left_bp) - U.begin()) - 1;

  std::vector<double> buf((nd + 1) * (p + 1), 0.0);
  ders_basis_funs(U, p, span, x, nd, buf.data());

  const int first_padded = span - p;
  const int n = kv_.dimension();
  int lo = 0, hi = p + 1;  // local range kept
  while (lo < hi && first_padded + lo - kv_.shift_ < 0) ++lo;
  while (hi > lo && first_padded + hi - 1 - kv_.shift_ >= n) --hi;

  BasisEval out;
  out.first_active = first_padded + lo - kv_.shift_;
  out.count = hi - lo;
  out.max_deriv = max_deriv;
  out.data.assign(static_cast<std::size_t>(max_deriv + 1) * out.count, 0.0);
  for (int k = 0; k <= nd; ++k)
    for (int j = lo; j < hi; ++j) out.data[k * out.count + (j - lo)] = buf[k * (p + 1) + j];
  return out;
}

BasisEval SplineSpace1D::eval(double x, int max_deriv) const {
  const int e = kv_.element_of(x);
  return eval_in_element(e, x, max_deriv);
}

double SplineSpace1D::basis_value(int i, double x, int deriv) const {
  const BasisEval b = eval(x, deriv);
  const int j = i - b.first_active;
  if (j < 0 || j >= b.count) return 0.0;
  return b(deriv, j);
}

SplineSpace1D make_special_space(SpecialSpaceKind kind, int p,
                                 std::span<const double> interior_breakpoints) {
  const std::vector<int> ones(interior_breakpoints.size(), 1);
  auto open = [&](int degree) {
    return make_open_knot_vector(degree, interior_breakpoints, ones);
  };
  switch (kind) {
    case SpecialSpaceKind::primal_clamped:
      if (p < 1) fail(ErrorCode::DegreeTooLow, "primal space needs p >= 1");
      return SplineSpace1D(open(p), {.zero_value_at_ends = true,
                                     .zero_derivative_at_ends = true});
    case SpecialSpaceKind::reduced_zero:
      // end multiplicity p-1 drops the two interpolating end functions
      if (p < 2) fail(ErrorCode::DegreeTooLow, "reduced space needs p >= 2");
      return SplineSpace1D(make_open_knot_vector(p - 1, interior_breakpoints, ones, p - 1),
                           {.zero_mean = true});
    case SpecialSpaceKind::reduced_merged:
      if (p < 1) fail(ErrorCode::DegreeTooLow, "degree p-1 must be nonnegative");
      return SplineSpace1D(merge_end_elements(open(p - 1)), {.zero_mean = true});
    case SpecialSpaceKind::multiplier_merged:
      if (p < 2) fail(ErrorCode::DegreeTooLow, "multiplier degree p-2 must be nonnegative");
      return SplineSpace1D(merge_end_elements(open(p - 2)));
  }
  fail(ErrorCode::InvalidConfig, "unknown space kind");
}

}  // namespace c1mortar
