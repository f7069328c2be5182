#pragma once

#include <vector>

namespace c1mortar {

/// Gauss-Legendre nodes and weights on [0,1] (weights sum to 1).
struct QuadratureRule1D {
  std::vector<double> nodes;
  std::vector<double> weights;

  int size() const { return static_cast<int>(nodes.size()); }
};

/// q-point rule, exact for polynomials of degree 2q-1. 1 <= q <= 32.
QuadratureRule1D gauss_legendre(int q);

/// Reference rule mapped affinely to [a,b].
QuadratureRule1D map_rule(const QuadratureRule1D& ref, double a, double b);

struct QuadraturePoint2D {
  double u, v, weight;
};

/// Tensor rule on the parametric element [u0,u1] x [v0,v1].
std::vector<QuadraturePoint2D> element_rule(const QuadratureRule1D& ref, double u0,
                                            double u1, double v0, double v1);

}  // namespace c1mortar
