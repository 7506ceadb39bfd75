#include <cubeforms/dof.hpp>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace cubeforms
{

  double integral_1d(int m, int n, double y, double z)
  {
    if (m < 0 || n < 0) {
      throw std::invalid_argument("integral_1d: exponents must be nonnegative");
    }
    double sum = 0.0;
    for (int i = 0; i <= m; ++i) {
      for (int j = 0; j <= n; ++j) {
        // i! j! / (i+j+1)! = 1 / ((i+j+1) C(i+j, i))
        const double beta = 1.0 / (static_cast<double>(i + j + 1) * static_cast<double>(binomial(i + j, i)));
        sum += static_cast<double>(binomial(m, i)) * static_cast<double>(binomial(n, j)) * std::pow(y, m - i) *
               std::pow(z, n - j) * beta;
      }
    }
    return sum;
  }

  namespace
  {
    // Average over one axis of a small cube of order `order` (= k'+1) of
    // x^e (1-x)^(total-e). On a fixed axis this is the value at the
    // translated face coordinate; on a free axis it reduces to integral_1d.
    double axis_average(int e, int total, int order, int translation, bool free_axis, int fixed_value)
    {
      const double scale = std::pow(static_cast<double>(order), -total);
      if (free_axis) {
        return integral_1d(total - e, e, order - 1 - translation, translation) * scale;
      }
      const int shifted = translation + fixed_value;
      return std::pow(static_cast<double>(shifted), e) * std::pow(static_cast<double>(order - shifted), total - e) *
             scale;
    }

    double prefactor_average(std::span<const int> exponents, std::span<const int> totals, const SmallCube& cube)
    {
      const auto values = cube.face().coordinate_values();
      double product = 1.0;
      for (std::size_t i = 0; i < exponents.size(); ++i) {
        const bool free_axis = values[i] < 0;
        product *= axis_average(exponents[i], totals[i], cube.order(), cube.multi_index().components[i], free_axis,
                                free_axis ? 0 : values[i]);
      }
      return product;
    }
  } // namespace

  double average_over_small_cube(const MultiIndex& exponents, int k, const SmallCube& cube)
  {
    if (exponents.dimension() != cube.dimension()) {
      throw std::invalid_argument("average_over_small_cube: dimension mismatch");
    }
    if (k < 0 || !exponents.bounded_by(k)) {
      throw std::invalid_argument("average_over_small_cube: exponents outside J(n, k)");
    }
    const std::vector<int> totals(exponents.components.size(), k);
    return prefactor_average(exponents.components, totals, cube);
  }

  double dof_value(const SmallCube& cube, const SmallCube& basis, int k)
  {
    if (cube.order() != k || basis.order() != k) {
      throw std::invalid_argument("dof_value: small cubes must both have order k");
    }
    if (cube.dimension() != basis.dimension() || cube.degree() != basis.degree()) {
      throw std::invalid_argument("dof_value: small cubes differ in dimension or degree");
    }
    if (cube.directions() != basis.directions()) {
      return 0.0;
    }
    // The lowest-order factor x^y (1-x)^(1-y) on each fixed axis of the basis
    // face merges with x^k_i (1-x)^(k-1-k_i); the merged exponent is the
    // anchor numerator and the total degree is k. Free axes keep total k-1.
    const auto& exponents = basis.anchor_numerators();
    std::vector<int> totals(exponents.size(), k);
    for (int d : basis.directions()) {
      totals[static_cast<std::size_t>(d)] = k - 1;
    }
    const double pairing = std::pow(1.0 / k, cube.degree());
    return prefactor_average(exponents, totals, cube) * pairing;
  }

  DofMatrix assemble_dof_matrix(int n, int p, int k)
  {
    DofMatrix matrix;
    matrix.n = n;
    matrix.p = p;
    matrix.k = k;
    matrix.cubes = enumerate_small_cubes(n, p, k);
    const auto size = static_cast<Eigen::Index>(matrix.cubes.size());
    matrix.entries = Eigen::MatrixXd::Zero(size, size);
    for (Eigen::Index i = 0; i < size; ++i) {
      for (Eigen::Index j = 0; j < size; ++j) {
        matrix.entries(i, j) =
          dof_value(matrix.cubes[static_cast<std::size_t>(i)], matrix.cubes[static_cast<std::size_t>(j)], k);
      }
    }
    for (int i = 0; i < static_cast<int>(size); ++i) {
      const auto& dirs = matrix.cubes[static_cast<std::size_t>(i)].directions();
      if (matrix.blocks.empty() || matrix.blocks.back().directions != dirs) {
        matrix.blocks.push_back(DofBlock{dirs, i, 0});
      }
      ++matrix.blocks.back().size;
    }
    return matrix;
  }

  UnisolvenceReport check_unisolvence(const DofMatrix& matrix)
  {
    UnisolvenceReport report;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(matrix.entries);
    const auto& sv = svd.singularValues();
    report.max_singular_value = sv.size() > 0 ? sv(0) : 0.0;
    report.min_singular_value = sv.size() > 0 ? sv(sv.size() - 1) : 0.0;
    report.invertible = report.min_singular_value > 1e-10 * report.max_singular_value;
    report.condition_estimate =
      report.min_singular_value > 0.0 ? report.max_singular_value / report.min_singular_value : INFINITY;
    for (const auto& block : matrix.blocks) {
      Eigen::JacobiSVD<Eigen::MatrixXd> block_svd(
        matrix.entries.block(block.first, block.first, block.size, block.size));
      const auto& bsv = block_svd.singularValues();
      const double smallest = bsv(bsv.size() - 1);
      report.block_conditions.push_back(smallest > 0.0 ? bsv(0) / smallest : INFINITY);
    }
    return report;
  }

  UnisolvenceReport check_unisolvence(int n, int p, int k)
  {
    return check_unisolvence(assemble_dof_matrix(n, p, k));
  }

  ReferenceSolver::ReferenceSolver(int n, int p, int k) : matrix_(assemble_dof_matrix(n, p, k))
  {
    for (const auto& block : matrix_.blocks) {
      const Eigen::MatrixXd a = matrix_.entries.block(block.first, block.first, block.size, block.size);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
      const auto& sv = svd.singularValues();
      if (!(sv(sv.size() - 1) > 1e-10 * sv(0))) {
        throw SingularBlockError("ReferenceSolver: near-singular DOF block");
      }
      factors_.emplace_back(a);
    }
  }

  std::vector<double> ReferenceSolver::solve(std::span<const double> values) const
  {
    if (values.size() != size()) {
      throw std::invalid_argument("ReferenceSolver::solve: value count differs from matrix size");
    }
    std::vector<double> coefficients(values.size(), 0.0);
    for (std::size_t b = 0; b < factors_.size(); ++b) {
      const auto& block = matrix_.blocks[b];
      const Eigen::Map<const Eigen::VectorXd> rhs(values.data() + block.first, block.size);
      Eigen::VectorXd x = factors_[b].solve(rhs);
      // one step of iterative refinement with an extended-precision residual
      const auto a = matrix_.entries.block(block.first, block.first, block.size, block.size);
      Eigen::VectorXd residual(block.size);
      for (int i = 0; i < block.size; ++i) {
        long double r = rhs(i);
        for (int j = 0; j < block.size; ++j) {
          r -= static_cast<long double>(a(i, j)) * x(j);
        }
        residual(i) = static_cast<double>(r);
      }
      x += factors_[b].solve(residual);
      std::copy(x.data(), x.data() + x.size(), coefficients.begin() + block.first);
    }
    return coefficients;
  }

  std::shared_ptr<const ReferenceSolver> reference_solver(int n, int p, int k)
  {
    static std::mutex mutex;
    static std::map<std::tuple<int, int, int>, std::shared_ptr<const ReferenceSolver>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{n, p, k}];
    if (!slot) {
      slot = std::make_shared<const ReferenceSolver>(n, p, k);
    }
    return slot;
  }

  std::vector<double> solve_reference_coefficients(std::span<const double> values, int n, int p, int k)
  {
    return reference_solver(n, p, k)->solve(values);
  }

} // namespace cubeforms
