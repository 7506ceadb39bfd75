// Tables behind the command-line tool: dimension counts, DOF matrices,
// point evaluations of interpolants and the convergence study.

#ifndef CUBEFORMS_REPORTS_HPP
#define CUBEFORMS_REPORTS_HPP

#include <cubeforms/dof.hpp>
#include <cubeforms/interp.hpp>

#include <optional>
#include <string>
#include <vector>

namespace cubeforms
{

  struct DimensionRow
  {
    int p = 0;
    std::uint64_t formula = 0;
    /// Deduplicated small-cube count, computed for n <= 4 and k <= 4
    std::optional<std::uint64_t> enumerated;
  };

  /// Throws std::invalid_argument outside n in [1, 6], k in [1, 8]
  std::vector<DimensionRow> dimension_table(int n, int k);
  std::string dimension_csv(const std::vector<DimensionRow>& rows);

  /// row,col,value for every entry, canonical order
  std::string dof_matrix_csv(const DofMatrix& matrix);

  /// point,cell,c0,c1,... one row per point; cell -1 and empty components when outside the mesh
  std::string evaluation_csv(const PiecewiseForm& form, const std::vector<std::vector<double>>& points);

  struct ConvergenceRow
  {
    int m = 0;
    /// max cell diameter
    double h = 0.0;
    /// min cell fullness |sigma| / diam(sigma)^n
    double fullness = 0.0;
    /// max over the sample grid of the componentwise |W C_k w - w|
    double sup_error = 0.0;
    /// log(previous error / error) / log(previous h / h); NaN on the first row
    double eoc = 0.0;
  };

  struct ConvergenceOptions
  {
    int n = 2;
    int p = 1;
    int k = 1;
    std::string form_id = "sin";
    std::vector<int> m_list{2, 4, 8, 16};
    double shear = 0.0;
    int samples_per_axis = 5;
    /// 0 selects 2k + 2
    int quad_order = 0;
  };

  std::vector<ConvergenceRow> run_convergence(const ConvergenceOptions& options);
  std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

  /// Final EOC within [k - 0.3, k + 0.5]
  bool eoc_within_gate(const std::vector<ConvergenceRow>& rows, int k);

  /// Max componentwise |F - w| over samples_per_axis^n uniform reference points per cell
  double sampled_sup_error(const PiecewiseForm& form, const FormField& exact, int samples_per_axis);

} // namespace cubeforms

#endif
