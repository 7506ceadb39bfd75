#include <cubeforms/interp.hpp>

#include <cubeforms/dof.hpp>
#include <cubeforms/quadrature.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <tuple>

namespace cubeforms
{

  std::vector<double> FormField::operator()(std::span<const double> y) const
  {
    std::vector<double> out(binomial(n, p), 0.0);
    eval(y, out);
    return out;
  }

  FormField as_field(const PolyForm& form)
  {
    return FormField{form.dimension(), form.degree(), [form](std::span<const double> y, std::span<double> out) {
                       const auto values = evaluate(form, y);
                       std::copy(values.begin(), values.end(), out.begin());
                     }};
  }

  Cochain::Cochain(std::shared_ptr<const RefinedMesh> mesh_, int p_, std::vector<double> values_)
    : mesh(std::move(mesh_)), p(p_), values(std::move(values_))
  {
    if (!mesh) {
      throw std::invalid_argument("Cochain: null mesh");
    }
    if (p < 0 || p > mesh->dimension()) {
      throw std::invalid_argument("Cochain: degree out of range");
    }
    if (values.size() != mesh->count(p)) {
      throw std::invalid_argument("Cochain: expected " + std::to_string(mesh->count(p)) + " values, got " +
                                  std::to_string(values.size()));
    }
  }

  Cochain Cochain::zero(std::shared_ptr<const RefinedMesh> mesh, int p)
  {
    const auto size = mesh->count(p);
    return Cochain(std::move(mesh), p, std::vector<double>(size, 0.0));
  }

  //------------------------------------------------------------------------------
  // PiecewiseForm
  //------------------------------------------------------------------------------

  namespace
  {
    std::shared_ptr<const std::vector<PolyForm>> cached_basis_forms(int n, int p, int k)
    {
      static std::mutex mutex;
      static std::map<std::tuple<int, int, int>, std::shared_ptr<const std::vector<PolyForm>>> cache;
      std::lock_guard lock(mutex);
      auto& slot = cache[{n, p, k}];
      if (!slot) {
        slot = std::make_shared<const std::vector<PolyForm>>(basis_forms(n, p, k));
      }
      return slot;
    }
  } // namespace

  PiecewiseForm::PiecewiseForm(std::shared_ptr<const RefinedMesh> mesh, int p,
                               std::vector<std::vector<double>> coefficients)
    : mesh_(std::move(mesh)), p_(p), coefficients_(std::move(coefficients))
  {
    const int n = mesh_->dimension();
    if (coefficients_.size() != static_cast<std::size_t>(mesh_->cell_count())) {
      throw std::invalid_argument("PiecewiseForm: need one coefficient vector per cell");
    }
    const auto basis_ptr = cached_basis_forms(n, p, mesh_->order());
    const auto& basis_polys = *basis_ptr;
    forms_.reserve(coefficients_.size());
    for (const auto& c : coefficients_) {
      if (c.size() != basis_polys.size()) {
        throw std::invalid_argument("PiecewiseForm: coefficient vector has wrong length");
      }
      PolyForm form(n, p);
      for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j] != 0.0) {
          form += c[j] * basis_polys[j];
        }
      }
      forms_.push_back(std::move(form));
    }
  }

  std::vector<double> PiecewiseForm::evaluate_reference(int cell, std::span<const double> x) const
  {
    const auto ref = evaluate(reference_form(cell), x);
    return pull_back_covector(mesh_->inverse_compound(cell, p_), ref);
  }

  std::vector<double> PiecewiseForm::evaluate_in_cell(int cell, std::span<const double> y) const
  {
    return evaluate_reference(cell, mesh_->cell_map(cell).inverse(y));
  }

  std::vector<double> evaluate_piecewise(const PiecewiseForm& form, std::span<const double> y)
  {
    const int cell = form.mesh()->locate(y);
    if (cell < 0) {
      std::ostringstream msg;
      msg << "evaluate_piecewise: point (";
      for (std::size_t i = 0; i < y.size(); ++i) {
        msg << (i > 0 ? ", " : "") << y[i];
      }
      msg << ") lies outside the mesh";
      throw PointLocationError(msg.str());
    }
    return form.evaluate_in_cell(cell, y);
  }

  //------------------------------------------------------------------------------
  // de Rham map
  //------------------------------------------------------------------------------

  int default_quad_order(int k)
  {
    return 2 * k + 2;
  }

  namespace
  {
    // <alpha, t_1 ^ ... ^ t_p> = sum_J alpha_J det(T[J, :])
    double pair_with_tangents(std::span<const double> components, const Eigen::MatrixXd& tangents,
                              const std::vector<std::vector<int>>& sets)
    {
      const auto p = tangents.cols();
      if (p == 0) {
        return components[0];
      }
      double total = 0.0;
      Eigen::MatrixXd minor(p, p);
      for (std::size_t s = 0; s < sets.size(); ++s) {
        if (components[s] == 0.0) {
          continue;
        }
        for (Eigen::Index a = 0; a < p; ++a) {
          minor.row(a) = tangents.row(sets[s][static_cast<std::size_t>(a)]);
        }
        total += components[s] * minor.determinant();
      }
      return total;
    }

    template <class Evaluate>
    Cochain integrate_over_cubes(const std::shared_ptr<const RefinedMesh>& mesh, int p, int quad_order,
                                 Evaluate&& eval)
    {
      if (quad_order < 1) {
        throw std::invalid_argument("de_rham: quadrature order must be at least 1");
      }
      const int n = mesh->dimension();
      const auto rule = gauss_legendre(quad_order);
      const auto sets = direction_sets(n, p);
      std::vector<double> values(mesh->count(p), 0.0);
      std::vector<double> components(sets.size());
      const auto points = static_cast<std::size_t>(ipow(quad_order, p));
      std::vector<double> t(static_cast<std::size_t>(p));
      for (int id = 0; id < static_cast<int>(values.size()); ++id) {
        const int owner = mesh->cube(p, id).owners.front().cell;
        const Eigen::MatrixXd tangents = mesh->tangents(p, id);
        double sum = 0.0;
        for (std::size_t q = 0; q < points; ++q) {
          double weight = 1.0;
          auto rest = q;
          for (int j = p - 1; j >= 0; --j) {
            const auto idx = rest % static_cast<std::size_t>(quad_order);
            rest /= static_cast<std::size_t>(quad_order);
            t[static_cast<std::size_t>(j)] = rule.nodes[idx];
            weight *= rule.weights[idx];
          }
          const auto y = mesh->point(p, id, t);
          eval(owner, y, components);
          sum += weight * pair_with_tangents(components, tangents, sets);
        }
        values[static_cast<std::size_t>(id)] = sum;
      }
      return Cochain(mesh, p, std::move(values));
    }
  } // namespace

  Cochain de_rham(const FormField& form, const std::shared_ptr<const RefinedMesh>& mesh, int quad_order)
  {
    if (form.n != mesh->dimension()) {
      throw std::invalid_argument("de_rham: form and mesh dimension differ");
    }
    return integrate_over_cubes(mesh, form.p, quad_order,
                                [&](int, std::span<const double> y, std::span<double> out) { form.eval(y, out); });
  }

  Cochain de_rham(const PiecewiseForm& form, int quad_order)
  {
    return integrate_over_cubes(form.mesh(), form.degree(), quad_order,
                                [&](int cell, std::span<const double> y, std::span<double> out) {
                                  const auto values = form.evaluate_in_cell(cell, y);
                                  std::copy(values.begin(), values.end(), out.begin());
                                });
  }

  //------------------------------------------------------------------------------
  // Interpolation and coboundary
  //------------------------------------------------------------------------------

  PiecewiseForm interpolate(const Cochain& cochain, int k)
  {
    if (k != cochain.mesh->order()) {
      throw std::invalid_argument("interpolate: order differs from the refinement order");
    }
    return interpolate(cochain);
  }

  PiecewiseForm interpolate(const Cochain& cochain)
  {
    const auto& mesh = *cochain.mesh;
    const int p = cochain.p;
    const auto solver = reference_solver(mesh.dimension(), p, mesh.order());
    const auto local_count = static_cast<int>(mesh.local_cubes(p).size());
    std::vector<std::vector<double>> coefficients(static_cast<std::size_t>(mesh.cell_count()));
    std::vector<double> local(static_cast<std::size_t>(local_count));
    for (int c = 0; c < mesh.cell_count(); ++c) {
      for (int l = 0; l < local_count; ++l) {
        local[static_cast<std::size_t>(l)] =
          mesh.local_sign(p, c, l) * cochain.values[static_cast<std::size_t>(mesh.global_id(p, c, l))];
      }
      coefficients[static_cast<std::size_t>(c)] = solver->solve(local);
    }
    return PiecewiseForm(cochain.mesh, p, std::move(coefficients));
  }

  Cochain coboundary(const Cochain& cochain)
  {
    const auto& mesh = *cochain.mesh;
    const int q = cochain.p + 1;
    if (q > mesh.dimension()) {
      throw std::invalid_argument("coboundary: degree must be below the mesh dimension");
    }
    std::vector<double> values(mesh.count(q), 0.0);
    for (int id = 0; id < static_cast<int>(values.size()); ++id) {
      double sum = 0.0;
      for (const auto& [face, sign] : mesh.boundary(q, id)) {
        sum += sign * cochain.values[static_cast<std::size_t>(face)];
      }
      values[static_cast<std::size_t>(id)] = sum;
    }
    return Cochain(cochain.mesh, q, std::move(values));
  }

  PiecewiseForm exterior_derivative(const PiecewiseForm& form)
  {
    const auto& mesh = *form.mesh();
    const int q = form.degree() + 1;
    if (q > mesh.dimension()) {
      throw std::invalid_argument("exterior_derivative: degree must be below the mesh dimension");
    }
    // d commutes with pullback, so differentiate in reference coordinates and
    // recover coefficients from the exact reference DOFs of the result
    const auto solver = reference_solver(mesh.dimension(), q, mesh.order());
    const auto& cubes = mesh.local_cubes(q).cubes();
    std::vector<std::vector<double>> coefficients;
    std::vector<double> dofs(cubes.size());
    for (int c = 0; c < mesh.cell_count(); ++c) {
      const auto derivative = exterior_derivative(form.reference_form(c));
      for (std::size_t i = 0; i < cubes.size(); ++i) {
        dofs[i] = integrate(derivative, cubes[i]);
      }
      coefficients.push_back(solver->solve(dofs));
    }
    return PiecewiseForm(form.mesh(), q, std::move(coefficients));
  }

  //------------------------------------------------------------------------------
  // Identity checks
  //------------------------------------------------------------------------------

  bool is_axis_aligned(const RefinedMesh& mesh)
  {
    for (int c = 0; c < mesh.cell_count(); ++c) {
      const auto& e = mesh.cell_map(c).edges;
      const Eigen::MatrixXd off = e - Eigen::MatrixXd(e.diagonal().asDiagonal());
      if (off.cwiseAbs().maxCoeff() > 1e-14 * e.cwiseAbs().maxCoeff()) {
        return false;
      }
    }
    return true;
  }

  PolyForm random_space_form(const RefinedMesh& mesh, int p, std::uint64_t seed)
  {
    const int n = mesh.dimension();
    const int k = mesh.order();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coefficient(-1.0, 1.0);
    if (is_axis_aligned(mesh)) {
      std::vector<double> c(monomial_layout_size(n, p, k));
      for (auto& v : c) {
        v = coefficient(rng);
      }
      return from_monomial_coefficients(n, p, k, c);
    }
    // Total degree is preserved by affine maps
    const int total = p == 0 ? k : k - 1;
    PolyForm form(n, p);
    for (const auto& dirs : direction_sets(n, p)) {
      Polynomial f(n);
      for (const auto& e : enumerate_multi_indices(n, total)) {
        int sum = 0;
        for (int v : e.components) {
          sum += v;
        }
        if (sum <= total) {
          f.add_to_coefficient(e.components, coefficient(rng));
        }
      }
      form.add_term(dirs, f);
    }
    return form;
  }

  namespace
  {
    double max_difference(std::span<const double> a, std::span<const double> b)
    {
      double worst = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
      }
      return worst;
    }

    std::string describe_point(int cell, std::span<const double> x)
    {
      std::ostringstream out;
      out << "cell " << cell << " at reference (";
      for (std::size_t i = 0; i < x.size(); ++i) {
        out << (i > 0 ? ", " : "") << x[i];
      }
      out << ')';
      return out.str();
    }
  } // namespace

  bool IdentityReport::passed() const
  {
    return std::all_of(checks.begin(), checks.end(), [this](const IdentityCheck& c) {
      return c.right_inverse_error <= tolerance && c.projection_error <= tolerance &&
             c.commutation_error <= tolerance;
    });
  }

  std::string IdentityReport::summary() const
  {
    std::ostringstream out;
    out.precision(3);
    for (const auto& c : checks) {
      out << "p=" << c.p << " |CWX-X|=" << std::scientific << c.right_inverse_error
          << " |WCw-w|=" << c.projection_error << " |WdX-dWX|=" << c.commutation_error;
      if (!c.worst_location.empty()) {
        out << " worst: " << c.worst_location;
      }
      out << '\n';
    }
    return out.str();
  }

  IdentityReport verify_identities(const std::shared_ptr<const RefinedMesh>& mesh, const IdentityOptions& options)
  {
    const int n = mesh->dimension();
    const int k = mesh->order();
    const int quad = default_quad_order(k);
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> value(-1.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> any_cell(0, mesh->cell_count() - 1);

    IdentityReport report;
    report.tolerance = options.tolerance;
    for (int p = 0; p <= n; ++p) {
      IdentityCheck check;
      check.p = p;
      double worst = 0.0;
      auto note = [&](double error, auto&& where) {
        if (error > worst) {
          worst = error;
          check.worst_location = where();
        }
      };

      auto random_cochain = [&](int degree) {
        std::vector<double> v(mesh->count(degree));
        for (auto& x : v) {
          x = value(rng);
        }
        return Cochain(mesh, degree, std::move(v));
      };

      for (int trial = 0; trial < options.trials; ++trial) {
        // C_k W X = X
        const auto x = random_cochain(p);
        const auto wx = interpolate(x);
        const auto back = de_rham(wx, quad);
        for (std::size_t i = 0; i < back.values.size(); ++i) {
          const double e = std::abs(back.values[i] - x.values[i]);
          check.right_inverse_error = std::max(check.right_inverse_error, e);
          note(e, [&] { return "C_k W X on " + std::to_string(p) + "-cube " + std::to_string(i); });
        }

        // W C_k w = w
        const auto omega = random_space_form(*mesh, p, options.seed * 7919 + static_cast<std::uint64_t>(trial));
        const auto projected = interpolate(de_rham(as_field(omega), mesh, quad));
        for (int s = 0; s < options.samples; ++s) {
          const int cell = any_cell(rng);
          std::vector<double> ref(static_cast<std::size_t>(n));
          for (auto& r : ref) {
            r = unit(rng);
          }
          const auto y = mesh->cell_map(cell).forward(ref);
          const double e = max_difference(projected.evaluate_reference(cell, ref), evaluate(omega, y));
          check.projection_error = std::max(check.projection_error, e);
          note(e, [&] { return "W C_k w at " + describe_point(cell, ref); });
        }

        // W dX = d W X
        if (p < n) {
          const auto w_dx = interpolate(coboundary(x));
          // d W X straight from the cell polynomials, without re-expansion
          std::vector<PolyForm> d_wx;
          for (int c = 0; c < mesh->cell_count(); ++c) {
            d_wx.push_back(exterior_derivative(wx.reference_form(c)));
          }
          for (int s = 0; s < options.samples; ++s) {
            const int cell = any_cell(rng);
            std::vector<double> ref(static_cast<std::size_t>(n));
            for (auto& r : ref) {
              r = unit(rng);
            }
            const auto direct = pull_back_covector(mesh->inverse_compound(cell, p + 1),
                                                   evaluate(d_wx[static_cast<std::size_t>(cell)], ref));
            const double e = max_difference(w_dx.evaluate_reference(cell, ref), direct);
            check.commutation_error = std::max(check.commutation_error, e);
            note(e, [&] { return "W dX at " + describe_point(cell, ref); });
          }
        }
      }
      report.checks.push_back(std::move(check));
    }
    return report;
  }

} // namespace cubeforms
