// cubeforms command-line tool. Exit codes: 0 pass, 1 check failed, 2 input error.

#include <cubeforms/catalog.hpp>
#include <cubeforms/csv.hpp>
#include <cubeforms/dof.hpp>
#include <cubeforms/interp.hpp>
#include <cubeforms/mesh.hpp>
#include <cubeforms/reports.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace
{
  using namespace cubeforms;

  constexpr int exit_pass = 0;
  constexpr int exit_check_failed = 1;
  constexpr int exit_input_error = 2;

  struct Settings
  {
    int n = 2;
    int p = 1;
    int k = 1;
    std::vector<int> m_list{2, 4, 8, 16};
    double shear = 0.0;
    int samples = 5;
    int quad_order = 0;
    std::string mesh_path;
    std::string cochain_path;
    std::string points_path;
    std::string form_id;
    std::string out_path;
  };

  class InputError : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  void emit(const Settings& settings, const std::string& text)
  {
    if (settings.out_path.empty() || settings.out_path == "-") {
      std::cout << text;
      return;
    }
    std::ofstream out(settings.out_path, std::ios::binary);
    if (!out) {
      throw InputError("cannot write " + settings.out_path);
    }
    out << text;
  }

  std::shared_ptr<const RefinedMesh> settings_mesh(const Settings& s)
  {
    if (!s.mesh_path.empty()) {
      return refine(load_mesh(s.mesh_path), s.k);
    }
    return refine(structured_mesh(s.n, s.m_list.empty() ? 1 : s.m_list.front(), s.shear), s.k);
  }

  std::string join(const std::vector<int>& values, char sep)
  {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
      out += (i > 0 ? std::string(1, sep) : std::string()) + std::to_string(values[i]);
    }
    return out;
  }

  int run_dims(const Settings& s)
  {
    const auto rows = dimension_table(s.n, s.k);
    emit(s, dimension_csv(rows));
    for (const auto& row : rows) {
      if (row.enumerated && *row.enumerated != row.formula) {
        std::cerr << "dims: p = " << row.p << " enumerates " << *row.enumerated << " small cubes, formula gives "
                  << row.formula << "\n";
        return exit_check_failed;
      }
    }
    return exit_pass;
  }

  int run_check_unisolvence(const Settings& s)
  {
    const auto matrix = assemble_dof_matrix(s.n, s.p, s.k);
    const auto report = check_unisolvence(matrix);
    std::string out = "block,directions,size,condition\n";
    for (std::size_t b = 0; b < matrix.blocks.size(); ++b) {
      out += std::to_string(b) + "," + join(matrix.blocks[b].directions, ';') + "," +
             std::to_string(matrix.blocks[b].size) + "," + format_double(report.block_conditions[b]) + "\n";
    }
    out += "all,," + std::to_string(matrix.entries.rows()) + "," + format_double(report.condition_estimate) + "\n";
    emit(s, out);
    std::cerr << "n=" << s.n << " p=" << s.p << " k=" << s.k << ": "
              << (report.invertible ? "invertible" : "SINGULAR") << ", sigma_min=" << report.min_singular_value
              << ", sigma_max=" << report.max_singular_value << "\n";
    return report.invertible ? exit_pass : exit_check_failed;
  }

  int run_dof_matrix(const Settings& s)
  {
    emit(s, dof_matrix_csv(assemble_dof_matrix(s.n, s.p, s.k)));
    return exit_pass;
  }

  std::vector<std::vector<double>> anchor_points(const RefinedMesh& mesh)
  {
    std::vector<std::vector<double>> points;
    for (std::size_t id = 0; id < mesh.count(0); ++id) {
      points.push_back(mesh.anchor(0, static_cast<int>(id)));
    }
    return points;
  }

  int run_interpolate(const Settings& s)
  {
    const auto mesh = settings_mesh(s);
    if (s.p < 0 || s.p > mesh->dimension()) {
      throw InputError("--p must lie in [0, " + std::to_string(mesh->dimension()) + "]");
    }
    Cochain cochain;
    if (!s.cochain_path.empty()) {
      if (!s.form_id.empty()) {
        throw InputError("give either --cochain or --form, not both");
      }
      cochain = read_cochain_csv(s.cochain_path, mesh, s.p);
    } else if (!s.form_id.empty()) {
      const int quad = s.quad_order > 0 ? s.quad_order : default_quad_order(s.k);
      cochain = de_rham(catalog_form(s.form_id, mesh->dimension(), s.p, s.k), mesh, quad);
    } else {
      throw InputError("interpolate needs --cochain or --form");
    }
    const auto points = s.points_path.empty()
                            ? anchor_points(*mesh)
                            : read_numeric_file(s.points_path, static_cast<std::size_t>(mesh->dimension()));
    emit(s, evaluation_csv(interpolate(cochain), points));
    return exit_pass;
  }

  int run_convergence_cmd(const Settings& s)
  {
    ConvergenceOptions options;
    options.n = s.n;
    options.p = s.p;
    options.k = s.k;
    options.form_id = s.form_id.empty() ? "sin" : s.form_id;
    options.m_list = s.m_list;
    options.shear = s.shear;
    options.samples_per_axis = s.samples;
    options.quad_order = s.quad_order;
    const auto rows = run_convergence(options);
    emit(s, convergence_csv(rows));
    if (!eoc_within_gate(rows, s.k)) {
      std::cerr << "convergence: final eoc " << (rows.size() > 1 ? rows.back().eoc : 0.0) << " outside ["
                << s.k - 0.3 << ", " << s.k + 0.5 << "]\n";
      return exit_check_failed;
    }
    return exit_pass;
  }

  int run_check_identities(const Settings& s)
  {
    const auto report = verify_identities(settings_mesh(s));
    std::string out = "p,right_inverse_error,projection_error,commutation_error\n";
    for (const auto& check : report.checks) {
      out += std::to_string(check.p) + "," + format_double(check.right_inverse_error) + "," +
             format_double(check.projection_error) + "," + format_double(check.commutation_error) + "\n";
    }
    emit(s, out);
    if (!report.passed()) {
      std::cerr << report.summary() << "\n";
      return exit_check_failed;
    }
    return exit_pass;
  }

  int run_refine(const Settings& s)
  {
    emit(s, settings_mesh(s)->dump_csv());
    return exit_pass;
  }

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Higher-order cubical differential forms on small cubes"};
  app.require_subcommand(1);
  Settings s;

  const auto add_nk = [&s](CLI::App* cmd) {
    cmd->add_option("--n", s.n, "ambient dimension")->check(CLI::Range(1, 6));
    cmd->add_option("--k", s.k, "polynomial order")->check(CLI::Range(1, 12));
  };
  const auto add_p = [&s](CLI::App* cmd) { cmd->add_option("--p", s.p, "form degree")->check(CLI::NonNegativeNumber); };
  const auto add_out = [&s](CLI::App* cmd) { cmd->add_option("--out", s.out_path, "CSV output path (default stdout)"); };
  const auto add_mesh = [&s](CLI::App* cmd) {
    cmd->add_option("--mesh", s.mesh_path, "mesh JSON; default is a structured unit-cube mesh")
        ->check(CLI::ExistingFile);
    cmd->add_option("--m-list", s.m_list, "cells per axis")->delimiter(',');
    cmd->add_option("--shear", s.shear, "shear factor x0 += shear * x1 for structured meshes");
  };

  auto* dims = app.add_subcommand("dims", "dimension of Q_k^- forms per degree");
  add_nk(dims);
  add_out(dims);

  auto* unisolvence = app.add_subcommand("check-unisolvence", "invertibility of the DOF matrix");
  add_nk(unisolvence);
  add_p(unisolvence);
  add_out(unisolvence);

  auto* dof_matrix = app.add_subcommand("dof-matrix", "export the reference DOF matrix");
  add_nk(dof_matrix);
  add_p(dof_matrix);
  add_out(dof_matrix);

  auto* interp = app.add_subcommand("interpolate", "interpolate a cochain and evaluate it");
  add_nk(interp);
  add_p(interp);
  add_mesh(interp);
  add_out(interp);
  interp->add_option("--cochain", s.cochain_path, "id,value CSV")->check(CLI::ExistingFile);
  interp->add_option("--form", s.form_id, "catalog form to sample instead of a cochain");
  interp->add_option("--points", s.points_path, "evaluation points CSV; default is every vertex of the refinement")
      ->check(CLI::ExistingFile);
  interp->add_option("--quad-order", s.quad_order, "Gauss points per axis for --form")->check(CLI::NonNegativeNumber);

  auto* convergence = app.add_subcommand("convergence", "sup-norm convergence study");
  add_nk(convergence);
  add_p(convergence);
  add_out(convergence);
  convergence->add_option("--m-list", s.m_list, "increasing cells per axis")->delimiter(',');
  convergence->add_option("--shear", s.shear, "shear factor x0 += shear * x1");
  convergence->add_option("--samples", s.samples, "samples per axis per cell")->check(CLI::PositiveNumber);
  convergence->add_option("--quad-order", s.quad_order, "Gauss points per axis (0: 2k+2)")
      ->check(CLI::NonNegativeNumber);
  convergence->add_option("--form", s.form_id, "catalog form: exp, poly, sin");

  auto* identities = app.add_subcommand("check-identities", "random check of the interpolation identities");
  add_nk(identities);
  add_mesh(identities);
  add_out(identities);

  auto* refine_cmd = app.add_subcommand("refine", "list the small cubes of the refinement");
  add_nk(refine_cmd);
  add_mesh(refine_cmd);
  add_out(refine_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_pass : exit_input_error;
  }

  try {
    if (s.p > s.n && s.mesh_path.empty()) {
      throw InputError("--p must not exceed --n");
    }
    if (*dims) {
      return run_dims(s);
    }
    if (*unisolvence) {
      return run_check_unisolvence(s);
    }
    if (*dof_matrix) {
      return run_dof_matrix(s);
    }
    if (*interp) {
      return run_interpolate(s);
    }
    if (*convergence) {
      return run_convergence_cmd(s);
    }
    if (*identities) {
      return run_check_identities(s);
    }
    return run_refine(s);
  } catch (const SingularBlockError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_check_failed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input_error;
  }
}
