#include <cubeforms/forms.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <stdexcept>

namespace cubeforms
{

  PolyForm::PolyForm(int n, int p) : n_(n), p_(p)
  {
    if (n < 1 || p < 0 || p > n + 1) {
      throw std::invalid_argument("PolyForm: need n >= 1 and 0 <= p <= n + 1");
    }
  }

  void PolyForm::add_term(const std::vector<int>& directions, const Polynomial& coefficient)
  {
    if (static_cast<int>(directions.size()) != p_) {
      throw std::invalid_argument("PolyForm::add_term: direction list length differs from degree");
    }
    if (coefficient.dimension() != n_) {
      throw std::invalid_argument("PolyForm::add_term: coefficient has wrong dimension");
    }
    for (std::size_t j = 0; j < directions.size(); ++j) {
      if (directions[j] < 0 || directions[j] >= n_ || (j > 0 && directions[j] <= directions[j - 1])) {
        throw std::invalid_argument("PolyForm::add_term: directions must be increasing in [0, n)");
      }
    }
    auto [it, inserted] = terms_.try_emplace(directions, coefficient);
    if (!inserted) {
      it->second += coefficient;
    }
  }

  Polynomial PolyForm::coefficient(const std::vector<int>& directions) const
  {
    const auto it = terms_.find(directions);
    return it == terms_.end() ? Polynomial(n_) : it->second;
  }

  bool PolyForm::is_zero(double tol) const
  {
    return std::all_of(terms_.begin(), terms_.end(), [tol](const auto& t) { return t.second.is_zero(tol); });
  }

  PolyForm& PolyForm::operator+=(const PolyForm& other)
  {
    if (other.n_ != n_ || other.p_ != p_) {
      throw std::invalid_argument("PolyForm: adding forms of different type");
    }
    for (const auto& [dirs, f] : other.terms_) {
      add_term(dirs, f);
    }
    return *this;
  }

  PolyForm& PolyForm::operator*=(double factor)
  {
    for (auto& term : terms_) {
      term.second *= factor;
    }
    return *this;
  }

  PolyForm lowest_order_form(const FaceId& face)
  {
    face.validate();
    const auto fixed = face.fixed_coordinates();
    auto f = Polynomial::constant(face.n, 1.0);
    for (std::size_t j = 0; j < fixed.size(); ++j) {
      const int y = face.fixed_values[j];
      f = f * Polynomial::bernstein_factor(face.n, fixed[j], y, 1 - y);
    }
    PolyForm form(face.n, face.degree());
    form.add_term(face.directions, f);
    return form;
  }

  PolyForm basis_form(const SmallCube& cube)
  {
    const int n = cube.dimension();
    const int k = cube.order();
    auto prefactor = Polynomial::constant(n, 1.0);
    for (int i = 0; i < n; ++i) {
      const int ki = cube.multi_index()[i];
      prefactor = prefactor * Polynomial::bernstein_factor(n, i, ki, k - 1 - ki);
    }
    const auto lowest = lowest_order_form(cube.face());
    PolyForm form(n, cube.degree());
    for (const auto& [dirs, f] : lowest.terms()) {
      form.add_term(dirs, prefactor * f);
    }
    return form;
  }

  std::vector<PolyForm> basis_forms(int n, int p, int k)
  {
    std::vector<PolyForm> forms;
    for (const auto& cube : enumerate_small_cubes(n, p, k)) {
      forms.push_back(basis_form(cube));
    }
    return forms;
  }

  std::vector<double> evaluate(const PolyForm& form, std::span<const double> x, bool* outside)
  {
    const int n = form.dimension();
    if (static_cast<int>(x.size()) != n) {
      throw std::invalid_argument("evaluate: point dimension differs from form dimension");
    }
    if (outside != nullptr) {
      *outside = std::any_of(x.begin(), x.end(), [](double xi) { return xi < 0.0 || xi > 1.0; });
    }
    if (form.degree() > n) {
      return {};
    }
    std::vector<double> values(binomial(n, form.degree()), 0.0);
    for (const auto& [dirs, f] : form.terms()) {
      values[static_cast<std::size_t>(direction_set_rank(n, dirs))] += f(x);
    }
    return values;
  }

  PolyForm exterior_derivative(const PolyForm& form)
  {
    const int n = form.dimension();
    const int p = form.degree();
    PolyForm result(n, std::min(p + 1, n + 1));
    if (p >= n) {
      return result;
    }
    for (const auto& [dirs, f] : form.terms()) {
      for (int i = 0; i < n; ++i) {
        if (std::binary_search(dirs.begin(), dirs.end(), i)) {
          continue;
        }
        // dx_i ^ dx_I: move dx_i past the entries of I smaller than i
        const auto position = std::lower_bound(dirs.begin(), dirs.end(), i) - dirs.begin();
        std::vector<int> merged(dirs);
        merged.insert(merged.begin() + position, i);
        const double sign = (position % 2 == 0) ? 1.0 : -1.0;
        result.add_term(merged, sign * f.derivative(i));
      }
    }
    return result;
  }

  double integrate(const PolyForm& form, const SmallCube& cube)
  {
    if (form.dimension() != cube.dimension() || form.degree() != cube.degree()) {
      throw std::invalid_argument("integrate: form and small cube differ in dimension or degree");
    }
    const auto lo = cube.anchor();
    auto hi = lo;
    for (int d : cube.directions()) {
      hi[static_cast<std::size_t>(d)] += cube.edge_length();
    }
    return form.coefficient(cube.directions()).integrate_box(lo, hi);
  }

  bool has_cubical_degree_pattern(const PolyForm& form, int k, double tol)
  {
    for (const auto& [dirs, f] : form.terms()) {
      const auto degrees = f.effective_degrees(tol);
      for (int i = 0; i < form.dimension(); ++i) {
        const int bound = std::binary_search(dirs.begin(), dirs.end(), i) ? k - 1 : k;
        if (degrees[static_cast<std::size_t>(i)] > bound) {
          return false;
        }
      }
    }
    return true;
  }

  namespace
  {
    std::vector<int> pattern_bounds(int n, const std::vector<int>& dirs, int k)
    {
      std::vector<int> bounds(static_cast<std::size_t>(n), k);
      for (int d : dirs) {
        bounds[static_cast<std::size_t>(d)] = k - 1;
      }
      return bounds;
    }

    std::size_t box_size(const std::vector<int>& bounds)
    {
      std::size_t size = 1;
      for (int b : bounds) {
        size *= static_cast<std::size_t>(b + 1);
      }
      return size;
    }

    std::size_t box_index(const std::vector<int>& exponents, const std::vector<int>& bounds)
    {
      std::size_t index = 0;
      for (std::size_t i = 0; i < bounds.size(); ++i) {
        index = index * static_cast<std::size_t>(bounds[i] + 1) + static_cast<std::size_t>(exponents[i]);
      }
      return index;
    }
  } // namespace

  std::size_t monomial_layout_size(int n, int p, int k)
  {
    return small_cube_count(n, p, k);
  }

  std::vector<double> monomial_coefficients(const PolyForm& form, int k)
  {
    const int n = form.dimension();
    const int p = form.degree();
    std::vector<double> out(monomial_layout_size(n, p, k), 0.0);
    std::size_t offset = 0;
    for (const auto& dirs : direction_sets(n, p)) {
      const auto bounds = pattern_bounds(n, dirs, k);
      const auto it = form.terms().find(dirs);
      if (it != form.terms().end()) {
        it->second.for_each([&](const std::vector<int>& e, double c) {
          if (c == 0.0) {
            return;
          }
          for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] > bounds[i]) {
              throw std::invalid_argument("monomial_coefficients: form leaves the Q_k^- degree pattern");
            }
          }
          out[offset + box_index(e, bounds)] += c;
        });
      }
      offset += box_size(bounds);
    }
    return out;
  }

  PolyForm from_monomial_coefficients(int n, int p, int k, std::span<const double> coefficients)
  {
    if (coefficients.size() != monomial_layout_size(n, p, k)) {
      throw std::invalid_argument("from_monomial_coefficients: wrong coefficient count");
    }
    PolyForm form(n, p);
    std::size_t offset = 0;
    for (const auto& dirs : direction_sets(n, p)) {
      const auto bounds = pattern_bounds(n, dirs, k);
      const auto size = box_size(bounds);
      Polynomial f(bounds, std::vector<double>(coefficients.begin() + static_cast<std::ptrdiff_t>(offset),
                                               coefficients.begin() + static_cast<std::ptrdiff_t>(offset + size)));
      form.add_term(dirs, f);
      offset += size;
    }
    return form;
  }

  MembershipResult span_membership(const PolyForm& form, int k, double tol)
  {
    if (!has_cubical_degree_pattern(form, k)) {
      throw std::invalid_argument("span_membership: form does not have the Q_k^- degree pattern");
    }
    const int n = form.dimension();
    const int p = form.degree();
    const auto basis = basis_forms(n, p, k);
    const auto rows = static_cast<Eigen::Index>(monomial_layout_size(n, p, k));
    Eigen::MatrixXd expansion(rows, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const auto column = monomial_coefficients(basis[j], k);
      expansion.col(static_cast<Eigen::Index>(j)) = Eigen::Map<const Eigen::VectorXd>(column.data(), rows);
    }
    const auto target_values = monomial_coefficients(form, k);
    const Eigen::Map<const Eigen::VectorXd> target(target_values.data(), rows);
    const Eigen::VectorXd c = expansion.colPivHouseholderQr().solve(target);

    MembershipResult result;
    result.residual = (expansion * c - target).norm() / std::max(1.0, target.norm());
    result.member = result.residual < tol;
    result.coefficients.assign(c.data(), c.data() + c.size());
    return result;
  }

} // namespace cubeforms
