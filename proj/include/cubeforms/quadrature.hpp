#ifndef CUBEFORMS_QUADRATURE_HPP
#define CUBEFORMS_QUADRATURE_HPP

#include <vector>

namespace cubeforms
{

  /// Gauss-Legendre rule on [0,1]; exact for polynomials of degree 2*points-1
  struct GaussLegendre
  {
    std::vector<double> nodes;
    std::vector<double> weights;
  };

  GaussLegendre gauss_legendre(int points);

} // namespace cubeforms

#endif
