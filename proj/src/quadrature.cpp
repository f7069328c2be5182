#include "c1mortar/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "c1mortar/error.hpp"

namespace c1mortar {

QuadratureRule1D gauss_legendre(int q) {
  if (q < 1 || q > 32) fail(ErrorCode::OrderOutOfRange, "Gauss-Legendre order must be in [1,32]");
  QuadratureRule1D rule;
  rule.nodes.resize(q);
  rule.weights.resize(q);
  // Newton on P_q in [-1,1]; roots are symmetric so only half are computed.
  const int half = (q + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= q; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (q == 1) p0 = 1.0;
      dp = q * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= q; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (q == 1) p0 = 1.0;
      dp = q * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // map to [0,1]; x is the larger root of the pair
    rule.nodes[q - 1 - i] = 0.5 * (1.0 + x);
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.weights[q - 1 - i] = 0.5 * w;
    rule.weights[i] = 0.5 * w;
  }
  if (q % 2 == 1) rule.nodes[q / 2] = 0.5;
  return rule;
}

QuadratureRule1D map_rule(const QuadratureRule1D& ref, double a, double b) {
  QuadratureRule1D out;
  out.nodes.resize(ref.nodes.size());
  out.weights.resize(ref.weights.size());
  const double len = b - a;
  for (std::size_t i = 0; i < ref.nodes.size(); ++i) {
    out.nodes[i] = a + len * ref.nodes[i];
    out.weights[i] = len * ref.weights[i];
  }
  return out;
}

std::vector<QuadraturePoint2D> element_rule(const QuadratureRule1D& ref, double u0,
                                            double u1, double v0, double v1) {
  const auto ru = map_rule(ref, u0, u1);
  const auto rv = map_rule(ref, v0, v1);
  std::vector<QuadraturePoint2D> pts;
  pts.reserve(ru.nodes.size() * rv.nodes.size());
  for (std::size_t j = 0; j < rv.nodes.size(); ++j)
    for (std::size_t i = 0; i < ru.nodes.size(); ++i)
      pts.push_back({ru.nodes[i], rv.nodes[j], ru.weights[i] * rv.weights[j]});
  return pts;
}

}  // namespace c1mortar
