#pragma once

// Univariate B-spline spaces on [0,1].

#include <span>
#include <vector>

namespace c1mortar {

/// Nondecreasing knot sequence on [0,1] for a fixed degree. End
/// multiplicities are normally degree+1 (open); smaller end multiplicities
/// are accepted and describe the subspace obtained by dropping the
/// corresponding leading/trailing B-splines of the open basis.
class KnotVector {
 public:
  KnotVector() = default;
  KnotVector(int degree, std::vector<double> knots);

  int degree() const { return degree_; }
  std::span<const double> knots() const { return knots_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<int>& multiplicities() const { return multiplicities_; }

  int dimension() const { return static_cast<int>(knots_.size()) - degree_ - 1; }
  int num_elements() const { return static_cast<int>(breakpoints_.size()) - 1; }
  int start_multiplicity() const { return multiplicities_.front(); }
  int end_multiplicity() const { return multiplicities_.back(); }
  bool is_open() const {
    return start_multiplicity() == degree_ + 1 && end_multiplicity() == degree_ + 1;
  }
  std::vector<double> interior_breakpoints() const;

  /// Element index of x (0-based); x = 1 belongs to the last element.
  int element_of(double x) const;

  bool operator==(const KnotVector&) const = default;

 private:
  friend class SplineSpace1D;
  int degree_ = 0;
  std::vector<double> knots_;
  std::vector<double> breakpoints_;
  std::vector<int> multiplicities_;
  std::vector<double> padded_;  // open completion used for evaluation
  int shift_ = 0;               // padded index - real index
};

/// Interior breakpoints strictly inside (0,1), each with multiplicity in
/// [1, degree+1]. End knots get multiplicity `end_multiplicity`
/// (defaults to degree+1).
KnotVector make_open_knot_vector(int degree, std::span<const double> interior_breakpoints,
                                 std::span<const int> interior_multiplicities,
                                 int end_multiplicity = -1);

/// Uniform open knot vector with `elements` elements and interior
/// multiplicity `multiplicity`.
KnotVector make_uniform_knot_vector(int degree, int elements, int multiplicity = 1,
                                    int end_multiplicity = -1);

/// Removes the first and last interior breakpoints (the elements next to
/// each end are merged with their neighbours). End multiplicities stay.
KnotVector merge_end_elements(const KnotVector& kv);

/// Values and derivatives of the active basis functions at one point.
struct BasisEval {
  int first_active = 0;
  int count = 0;
  int max_deriv = 0;
  std::vector<double> data;  // (max_deriv+1) rows of `count` values

  double operator()(int order, int j) const { return data[order * count + j]; }
  std::span<const double> order(int k) const {
    return {data.data() + static_cast<std::size_t>(k) * count,
            static_cast<std::size_t>(count)};
  }
};

enum class SpecialSpaceKind {
  primal_clamped,    // S^p with v = v' = 0 at both ends
  reduced_zero,      // S^{p-1} with v = 0 at both ends and zero mean
  reduced_merged,    // S^{p-1} on merged knots with zero mean
  multiplier_merged  // S^{p-2} on merged knots
};

/// Linear side conditions attached to a space. They are not built into the
/// basis; consumers apply them as conditions on coefficients.
struct SpaceConditions {
  bool zero_value_at_ends = false;
  bool zero_derivative_at_ends = false;
  bool zero_mean = false;

  int count() const {
    return 2 * zero_value_at_ends + 2 * zero_derivative_at_ends + zero_mean;
  }
};

class SplineSpace1D {
 public:
  SplineSpace1D() = default;
  explicit SplineSpace1D(KnotVector kv, SpaceConditions conditions = {});

  const KnotVector& knot_vector() const { return kv_; }
  int degree() const { return kv_.degree(); }
  int dimension() const { return kv_.dimension(); }
  int constrained_dimension() const { return dimension() - conditions_.count(); }
  const SpaceConditions& conditions() const { return conditions_; }
  int num_elements() const { return kv_.num_elements(); }

  std::vector<double> element_sizes() const;
  double mesh_size() const;
  /// min nonempty span / max span.
  double quasi_uniformity() const;
  int element_of(double x) const { return kv_.element_of(x); }
  std::pair<double, double> element_bounds(int e) const {
    return {kv_.breakpoints()[e], kv_.breakpoints()[e + 1]};
  }

  /// Active basis functions at x with derivatives up to max_deriv. At x = 1
  /// the left limit is used. Functions removed by a reduced end
  /// multiplicity are not reported.
  BasisEval eval(double x, int max_deriv = 0) const;

  /// Same, restricted to element e (one-sided limits at its ends).
  BasisEval eval_in_element(int e, double x, int max_deriv) const;

  /// Value of one basis function (zero outside its support).
  double basis_value(int i, double x, int deriv = 0) const;

 private:
  KnotVector kv_;
  SpaceConditions conditions_;
};

inline int dimension(const SplineSpace1D& s) { return s.dimension(); }
inline int element_of(const SplineSpace1D& s, double x) { return s.element_of(x); }
inline BasisEval eval_basis(const SplineSpace1D& s, double x, int max_deriv) {
  return s.eval(x, max_deriv);
}

/// The special 1D spaces used by the multiplier construction and the
/// inf-sup study, built on the primal interior breakpoints of degree p.
SplineSpace1D make_special_space(SpecialSpaceKind kind, int p,
                                 std::span<const double> interior_breakpoints);

}  // namespace c1mortar
