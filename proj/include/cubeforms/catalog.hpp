// Built-in smooth forms used by the convergence study and the CLI.
//
//   sin   prod_i sin(pi x_i) dx_{0..p-1}; other components zero
//   exp   component r: (r+1) exp(sum_i c_i x_i + 0.3 r x_{r mod n}), c_i = (-1)^i (i+1)/2
//   poly  component r: (1 + 0.1 r + sum_i (i+1) x_i / (n+1))^d with d = k for p = 0 and
//         d = k-1 otherwise. Total degree d is kept by affine maps, so this form lies
//         in Q_k^p(K) on every cubical mesh and is reproduced exactly.

#ifndef CUBEFORMS_CATALOG_HPP
#define CUBEFORMS_CATALOG_HPP

#include <cubeforms/interp.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace cubeforms
{

  class CatalogError : public std::invalid_argument
  {
  public:
    using std::invalid_argument::invalid_argument;
  };

  std::vector<std::string> catalog_ids();

  /// Throws CatalogError for an unknown id
  FormField catalog_form(const std::string& id, int n, int p, int k);

} // namespace cubeforms

#endif
