#include <cubeforms/quadrature.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cubeforms
{

  GaussLegendre gauss_legendre(int points)
  {
    if (points < 1) {
      throw std::invalid_argument("gauss_legendre: need at least one point");
    }
    GaussLegendre rule;
    rule.nodes.resize(static_cast<std::size_t>(points));
    rule.weights.resize(static_cast<std::size_t>(points));
    // Newton on P_n starting from the Chebyshev-like guess, then map [-1,1] -> [0,1]
    for (int i = 0; i < points; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (points + 0.5));
      double derivative = 0.0;
      for (int iteration = 0; iteration < 100; ++iteration) {
        double p0 = 1.0;
        double p1 = x;
        for (int j = 2; j <= points; ++j) {
          const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        if (points == 1) {
          p1 = x;
          p0 = 1.0;
        }
        derivative = points * (x * p1 - p0) / (x * x - 1.0);
        const double step = p1 / derivative;
        x -= step;
        if (std::abs(step) < 1e-16) {
          break;
        }
      }
      const auto idx = static_cast<std::size_t>(points - 1 - i);
      rule.nodes[idx] = 0.5 * (x + 1.0);
      rule.weights[idx] = 1.0 / ((1.0 - x * x) * derivative * derivative);
    }
    return rule;
  }

} // namespace cubeforms
