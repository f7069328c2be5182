#pragma once

// Numerical inf-sup evidence near an interface end point.
//
// For a plotted degree P the test works on degree d = P - 1:
//   phi in S^d_0: knots {0^d, interior, 1^d} (vanishing end values),
//   tau in S^d_M: open degree-d knots with the first and last interior
//                 breakpoints removed,
// both with the same coefficient vector. On the window (0, zeta_{d+2}),
// zeta_k the k-th interior breakpoint, with coefficients restricted to the
// functions whose support meets the window,
//   M1_ij = int phi_i tau_j,  M2_ij = int phi_i phi_j,
// and mu_min is the smallest eigenvalue of sym(M1) v = mu M2 v.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "c1mortar/discretization.hpp"
#include "c1mortar/interface_spaces.hpp"
#include "c1mortar/parallel.hpp"

namespace c1mortar {

struct EigenStudy {
  int plotted_degree = 0;
  int test_degree = 0;
  int n_elements = 0;
  int restricted_size = 0;
  double mu_min = 0.0;
  Eigen::VectorXd spectrum;
};

/// extra_ring = 1 widens the window by one element (sensitivity check).
EigenStudy corner_eigen_test(int plotted_degree, const std::vector<double>& interior_breakpoints,
                             int extra_ring = 0);
EigenStudy corner_eigen_test(int plotted_degree, int n_elements, int extra_ring = 0);

/// 64-bit Mersenne twister; uniform [0,1) from the top 53 bits.
class UniformRng {
 public:
  explicit UniformRng(std::uint64_t seed) : engine_(seed) {}
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

struct RandomMeshSpec {
  int n_elements = 16;
  int trials = 1000;
  std::uint64_t seed = 7;
};

struct RandomMeshSummary {
  std::vector<double> mu;  // per trial
  double min = 0.0, max = 0.0, mean = 0.0;
  int increasing_meshes = 0;  // trials whose perturbed knots stayed increasing
};

/// Interior knots xi_i + (h/10)(rho - 0.5), rho uniform in [0,1).
std::vector<double> perturbed_breakpoints(int n_elements, UniformRng& rng);

RandomMeshSummary random_mesh_study(int plotted_degree, const RandomMeshSpec& spec,
                                    ExecutionPolicy policy = ExecutionPolicy::parallel);

struct Histogram {
  std::vector<double> left, right;
  std::vector<int> count;
  int below = 0, above = 0;
};
Histogram histogram(const std::vector<double>& values, double lo, double hi, int bins);

/// Smallest singular value of G_ij = int_Gamma w_i mu_j with L2-normalized
/// trace generators w_i and multiplier basis functions mu_j.
struct CouplingConditioning {
  int rows = 0;  // dim W
  int cols = 0;  // dim M
  double sigma_min = 0.0;
  int rank = 0;
  bool square = false;
};
CouplingConditioning coupling_conditioning(const MultiPatchTopology& topo,
                                           const Discretization& disc, int l,
                                           MultiplierMode mode);

}  // namespace c1mortar
