#include <cubeforms/reports.hpp>

#include <cubeforms/catalog.hpp>
#include <cubeforms/csv.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cubeforms
{

  std::vector<DimensionRow> dimension_table(int n, int k)
  {
    if (n < 1 || n > 6 || k < 1 || k > 8) {
      throw std::invalid_argument("dimension_table: need 1 <= n <= 6 and 1 <= k <= 8");
    }
    std::vector<DimensionRow> rows;
    for (int p = 0; p <= n; ++p) {
      DimensionRow row{p, small_cube_count(n, p, k), std::nullopt};
      if (n <= 4 && k <= 4) {
        row.enumerated = enumerate_small_cubes(n, p, k).size();
      }
      rows.push_back(row);
    }
    return rows;
  }

  std::string dimension_csv(const std::vector<DimensionRow>& rows)
  {
    std::string out = "p,dimension,enumerated\n";
    for (const auto& row : rows) {
      out += std::to_string(row.p) + "," + std::to_string(row.formula) + "," +
             (row.enumerated ? std::to_string(*row.enumerated) : std::string()) + "\n";
    }
    return out;
  }

  std::string dof_matrix_csv(const DofMatrix& matrix)
  {
    std::string out = "row,col,value\n";
    for (Eigen::Index i = 0; i < matrix.entries.rows(); ++i) {
      for (Eigen::Index j = 0; j < matrix.entries.cols(); ++j) {
        out += std::to_string(i) + "," + std::to_string(j) + "," + format_double(matrix.entries(i, j)) + "\n";
      }
    }
    return out;
  }

  std::string evaluation_csv(const PiecewiseForm& form, const std::vector<std::vector<double>>& points)
  {
    const int n = form.mesh()->dimension();
    const auto components = binomial(n, form.degree());
    std::string out = "point,cell";
    for (std::uint64_t c = 0; c < components; ++c) {
      out += ",c" + std::to_string(c);
    }
    out += "\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i].size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("evaluation_csv: point " + std::to_string(i) + " has wrong dimension");
      }
      const int cell = form.mesh()->locate(points[i]);
      out += std::to_string(i) + "," + std::to_string(cell);
      if (cell >= 0) {
        for (double v : form.evaluate_in_cell(cell, points[i])) {
          out += "," + format_double(v);
        }
      } else {
        for (std::uint64_t c = 0; c < components; ++c) {
          out += ",";
        }
      }
      out += "\n";
    }
    return out;
  }

  double sampled_sup_error(const PiecewiseForm& form, const FormField& exact, int samples_per_axis)
  {
    if (samples_per_axis < 1) {
      throw std::invalid_argument("sampled_sup_error: need at least one sample per axis");
    }
    const auto& mesh = *form.mesh();
    const int n = mesh.dimension();
    const auto grid = enumerate_multi_indices(n, samples_per_axis - 1);
    const double spacing = samples_per_axis > 1 ? 1.0 / (samples_per_axis - 1) : 0.0;
    std::vector<double> x(static_cast<std::size_t>(n));
    double worst = 0.0;
    for (int c = 0; c < mesh.cell_count(); ++c) {
      for (const auto& g : grid) {
        for (int i = 0; i < n; ++i) {
          x[static_cast<std::size_t>(i)] = samples_per_axis > 1 ? g[i] * spacing : 0.5;
        }
        const auto approx = form.evaluate_reference(c, x);
        const auto truth = exact(mesh.cell_map(c).forward(x));
        for (std::size_t j = 0; j < approx.size(); ++j) {
          worst = std::max(worst, std::abs(approx[j] - truth[j]));
        }
      }
    }
    return worst;
  }

  std::vector<ConvergenceRow> run_convergence(const ConvergenceOptions& options)
  {
    if (options.m_list.empty()) {
      throw std::invalid_argument("run_convergence: empty m list");
    }
    for (std::size_t i = 0; i < options.m_list.size(); ++i) {
      if (options.m_list[i] < 1 || (i > 0 && options.m_list[i] <= options.m_list[i - 1])) {
        throw std::invalid_argument("run_convergence: m list must be positive and increasing");
      }
    }
    const auto exact = catalog_form(options.form_id, options.n, options.p, options.k);
    const int quad = options.quad_order > 0 ? options.quad_order : default_quad_order(options.k);

    std::vector<ConvergenceRow> rows;
    for (int m : options.m_list) {
      const auto refined = refine(structured_mesh(options.n, m, options.shear), options.k);
      ConvergenceRow row;
      row.m = m;
      row.fullness = std::numeric_limits<double>::infinity();
      for (int c = 0; c < refined->cell_count(); ++c) {
        row.h = std::max(row.h, refined->cell_map(c).diameter());
        row.fullness = std::min(row.fullness, refined->cell_map(c).fullness());
      }
      const auto interpolant = interpolate(de_rham(exact, refined, quad));
      row.sup_error = sampled_sup_error(interpolant, exact, options.samples_per_axis);
      row.eoc = rows.empty() ? std::numeric_limits<double>::quiet_NaN()
                             : std::log(rows.back().sup_error / row.sup_error) / std::log(rows.back().h / row.h);
      rows.push_back(row);
    }
    return rows;
  }

  std::string convergence_csv(const std::vector<ConvergenceRow>& rows)
  {
    std::string out = "m,h,fullness,sup_error,eoc\n";
    for (const auto& row : rows) {
      out += std::to_string(row.m) + "," + format_double(row.h) + "," + format_double(row.fullness) + "," +
             format_double(row.sup_error) + "," + (std::isnan(row.eoc) ? std::string() : format_double(row.eoc)) +
             "\n";
    }
    return out;
  }

  bool eoc_within_gate(const std::vector<ConvergenceRow>& rows, int k)
  {
    if (rows.size() < 2) {
      return false;
    }
    const double eoc = rows.back().eoc;
    return eoc >= k - 0.3 && eoc <= k + 0.5;
  }

} // namespace cubeforms
