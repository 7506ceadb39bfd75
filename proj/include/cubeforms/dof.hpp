// Degrees of freedom: integrals of kth-order basis forms over kth-order
// small cubes, evaluated in closed form.
//
// The integral of w(sigma) over a small cube upsilon vanishes unless upsilon
// is parallel to sigma. Otherwise it factors into the average of the scalar
// prefactor over upsilon (a product of per-axis terms) times the pairing of
// dx_I with the p-vector of upsilon, which is (1/k)^p for the canonical
// orientation.

#ifndef CUBEFORMS_DOF_HPP
#define CUBEFORMS_DOF_HPP

#include <cubeforms/smallcubes.hpp>

#include <Eigen/Dense>

#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

namespace cubeforms
{

  /// int_0^1 (z + x)^n (y + 1 - x)^m dx as a finite double sum with exact integer weights
  double integral_1d(int m, int n, double y, double z);

  /// Average of prod_i x_i^{e_i} (1 - x_i)^{k - e_i} over a small cube of any order.
  /// Throws if the exponents leave J(n, k) or dimensions differ.
  double average_over_small_cube(const MultiIndex& exponents, int k, const SmallCube& cube);

  /// int_cube w(basis); both small cubes of order k, same n and p
  double dof_value(const SmallCube& cube, const SmallCube& basis, int k);

  struct DofBlock
  {
    std::vector<int> directions;
    int first = 0;
    int size = 0;
  };

  /// Square DOF matrix A[i][j] = int_{cube_i} w(cube_j), both in small-cube canonical order
  struct DofMatrix
  {
    int n = 0;
    int p = 0;
    int k = 0;
    std::vector<SmallCube> cubes;
    Eigen::MatrixXd entries;
    /// Diagonal blocks, one per direction set; every entry outside them is exactly 0
    std::vector<DofBlock> blocks;
  };

  DofMatrix assemble_dof_matrix(int n, int p, int k);

  struct UnisolvenceReport
  {
    bool invertible = false;
    double condition_estimate = 0.0;
    double min_singular_value = 0.0;
    double max_singular_value = 0.0;
    std::vector<double> block_conditions;
  };

  /// Invertible iff sigma_min > 1e-10 sigma_max
  UnisolvenceReport check_unisolvence(int n, int p, int k);
  UnisolvenceReport check_unisolvence(const DofMatrix& matrix);

  class SingularBlockError : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  /// Reference-cell solver: factors each diagonal block of the DOF matrix once.
  class ReferenceSolver
  {
  public:
    ReferenceSolver(int n, int p, int k);

    const DofMatrix& matrix() const { return matrix_; }
    std::size_t size() const { return matrix_.cubes.size(); }

    /// Solves A c = values block by block
    std::vector<double> solve(std::span<const double> values) const;

  private:
    DofMatrix matrix_;
    std::vector<Eigen::PartialPivLU<Eigen::MatrixXd>> factors_;
  };

  /// Shared, lazily built solver for (n, p, k); safe to call concurrently
  std::shared_ptr<const ReferenceSolver> reference_solver(int n, int p, int k);

  /// Coefficients over basis_forms(n, p, k) of the form whose small-cube integrals are `values`
  std::vector<double> solve_reference_coefficients(std::span<const double> values, int n, int p, int k);

} // namespace cubeforms

#endif
