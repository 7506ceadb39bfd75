#include <cubeforms/catalog.hpp>
#include <cubeforms/combinatorics.hpp>
#include <cubeforms/dof.hpp>
#include <cubeforms/forms.hpp>
#include <cubeforms/interp.hpp>
#include <cubeforms/mesh.hpp>
#include <cubeforms/reports.hpp>
#include <cubeforms/smallcubes.hpp>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace cubeforms;

namespace
{
  std::shared_ptr<const RefinedMesh> make_mesh(int n, int m, double shear, int k)
  {
    return refine(structured_mesh(n, m, shear), k);
  }
} // namespace

PYBIND11_MODULE(_cubeforms, m)
{
  m.doc() = "Higher-order cubical differential forms on small cubes";

  py::register_exception<MeshError>(m, "MeshError", PyExc_ValueError);
  py::register_exception<SingularBlockError>(m, "SingularBlockError", PyExc_ArithmeticError);

  m.def("binomial", &binomial, py::arg("n"), py::arg("r"));
  m.def("small_cube_count", &small_cube_count, py::arg("n"), py::arg("p"), py::arg("k"));

  py::class_<SmallCube>(m, "SmallCube")
      .def_property_readonly("order", &SmallCube::order)
      .def_property_readonly("degree", &SmallCube::degree)
      .def_property_readonly("directions", &SmallCube::directions)
      .def_property_readonly("anchor_numerators", &SmallCube::anchor_numerators)
      .def_property_readonly("anchor", &SmallCube::anchor)
      .def_property_readonly("volume", &SmallCube::volume)
      .def("__repr__", [](const SmallCube& c) {
        std::string dirs;
        for (int d : c.directions()) {
          dirs += (dirs.empty() ? "" : ",") + std::to_string(d);
        }
        std::string anchor;
        for (int a : c.anchor_numerators()) {
          anchor += (anchor.empty() ? "" : ",") + std::to_string(a);
        }
        return "<SmallCube k=" + std::to_string(c.order()) + " dirs=(" + dirs + ") anchor=(" + anchor + ")/k>";
      });

  m.def("enumerate_small_cubes", &enumerate_small_cubes, py::arg("n"), py::arg("p"), py::arg("k"));

  m.def(
      "evaluate_basis_form",
      [](const SmallCube& cube, const std::vector<double>& x) { return evaluate(basis_form(cube), x); },
      py::arg("cube"), py::arg("x"), "Components of the basis form of a small cube at x, in direction-set order");

  m.def(
      "dof_matrix", [](int n, int p, int k) { return assemble_dof_matrix(n, p, k).entries; }, py::arg("n"),
      py::arg("p"), py::arg("k"));

  py::class_<UnisolvenceReport>(m, "UnisolvenceReport")
      .def_readonly("invertible", &UnisolvenceReport::invertible)
      .def_readonly("condition_estimate", &UnisolvenceReport::condition_estimate)
      .def_readonly("min_singular_value", &UnisolvenceReport::min_singular_value)
      .def_readonly("max_singular_value", &UnisolvenceReport::max_singular_value)
      .def_readonly("block_conditions", &UnisolvenceReport::block_conditions);
  m.def(
      "check_unisolvence", [](int n, int p, int k) { return check_unisolvence(n, p, k); }, py::arg("n"),
      py::arg("p"), py::arg("k"));

  m.def(
      "dimension_table",
      [](int n, int k) {
        py::list rows;
        for (const auto& row : dimension_table(n, k)) {
          rows.append(py::make_tuple(row.p, row.formula, row.enumerated));
        }
        return rows;
      },
      py::arg("n"), py::arg("k"), "List of (p, formula, enumerated-or-None)");

  py::class_<RefinedMesh, std::shared_ptr<RefinedMesh>>(m, "RefinedMesh")
      .def_property_readonly("dimension", &RefinedMesh::dimension)
      .def_property_readonly("order", &RefinedMesh::order)
      .def_property_readonly("cell_count", &RefinedMesh::cell_count)
      .def("count", &RefinedMesh::count, py::arg("q"))
      .def("anchor", &RefinedMesh::anchor, py::arg("q"), py::arg("id"))
      .def("locate", [](const RefinedMesh& mesh, const std::vector<double>& y) { return mesh.locate(y); });

  m.def(
      "structured_mesh",
      [](int n, int m_cells, double shear, int k) {
        return std::const_pointer_cast<RefinedMesh>(make_mesh(n, m_cells, shear, k));
      },
      py::arg("n"), py::arg("m"), py::arg("shear") = 0.0, py::arg("k") = 1,
      "Refined structured mesh of the unit cube with m cells per axis");
  m.def(
      "load_mesh",
      [](const std::string& path, int k) { return std::const_pointer_cast<RefinedMesh>(refine(load_mesh(path), k)); },
      py::arg("path"), py::arg("k") = 1);

  m.def(
      "de_rham",
      [](const std::shared_ptr<RefinedMesh>& mesh, const std::string& form_id, int p, int quad_order) {
        const auto field = catalog_form(form_id, mesh->dimension(), p, mesh->order());
        return de_rham(field, mesh, quad_order > 0 ? quad_order : default_quad_order(mesh->order())).values;
      },
      py::arg("mesh"), py::arg("form_id"), py::arg("p"), py::arg("quad_order") = 0,
      "Integrals of a catalog form over the small p-cubes of the mesh, by global id");

  m.def(
      "evaluate_interpolant",
      [](const std::shared_ptr<RefinedMesh>& mesh, int p, const std::vector<double>& values,
         const std::vector<std::vector<double>>& points) {
        const auto form = interpolate(Cochain(mesh, p, values));
        std::vector<std::vector<double>> out;
        out.reserve(points.size());
        for (const auto& y : points) {
          out.push_back(evaluate_piecewise(form, y));
        }
        return out;
      },
      py::arg("mesh"), py::arg("p"), py::arg("values"), py::arg("points"));

  m.def(
      "coboundary",
      [](const std::shared_ptr<RefinedMesh>& mesh, int p, const std::vector<double>& values) {
        return coboundary(Cochain(mesh, p, values)).values;
      },
      py::arg("mesh"), py::arg("p"), py::arg("values"));

  py::class_<ConvergenceRow>(m, "ConvergenceRow")
      .def_readonly("m", &ConvergenceRow::m)
      .def_readonly("h", &ConvergenceRow::h)
      .def_readonly("fullness", &ConvergenceRow::fullness)
      .def_readonly("sup_error", &ConvergenceRow::sup_error)
      .def_readonly("eoc", &ConvergenceRow::eoc);
  m.def(
      "run_convergence",
      [](int n, int p, int k, const std::string& form_id, const std::vector<int>& m_list, double shear, int samples,
         int quad_order) {
        ConvergenceOptions options;
        options.n = n;
        options.p = p;
        options.k = k;
        options.form_id = form_id;
        options.m_list = m_list;
        options.shear = shear;
        options.samples_per_axis = samples;
        options.quad_order = quad_order;
        return run_convergence(options);
      },
      py::arg("n"), py::arg("p"), py::arg("k"), py::arg("form_id") = "sin",
      py::arg("m_list") = std::vector<int>{2, 4, 8, 16}, py::arg("shear") = 0.0, py::arg("samples") = 5,
      py::arg("quad_order") = 0);

  m.def(
      "verify_identities",
      [](const std::shared_ptr<RefinedMesh>& mesh, int trials, int samples, double tolerance, std::uint64_t seed) {
        const auto report = verify_identities(mesh, IdentityOptions{trials, samples, tolerance, seed});
        return py::make_tuple(report.passed(), report.summary());
      },
      py::arg("mesh"), py::arg("trials") = 20, py::arg("samples") = 50, py::arg("tolerance") = 1e-9,
      py::arg("seed") = 2024);
}
