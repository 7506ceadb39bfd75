// Polynomial differential forms on the unit n-cube.
//
// A PolyForm is a sum of f_I dx_I over increasing direction lists I with
// polynomial coefficients. The kth-order cubical space Q_k^p consists of
// forms whose coefficient f_I has degree <= k in every variable and <= k-1
// in the variables of I.

#ifndef CUBEFORMS_FORMS_HPP
#define CUBEFORMS_FORMS_HPP

#include <cubeforms/combinatorics.hpp>
#include <cubeforms/polynomial.hpp>
#include <cubeforms/smallcubes.hpp>

#include <map>
#include <span>
#include <vector>

namespace cubeforms
{

  class PolyForm
  {
  public:
    /// Zero p-form on R^n. p may equal n+1 (the zero form past the top degree).
    PolyForm(int n, int p);

    int dimension() const { return n_; }
    int degree() const { return p_; }
    const std::map<std::vector<int>, Polynomial>& terms() const { return terms_; }

    /// Adds f dx_I; I must be increasing with p entries
    void add_term(const std::vector<int>& directions, const Polynomial& coefficient);

    /// Coefficient of dx_I (the zero polynomial if absent)
    Polynomial coefficient(const std::vector<int>& directions) const;

    bool is_zero(double tol = 0.0) const;

    PolyForm& operator+=(const PolyForm& other);
    PolyForm& operator*=(double factor);
    friend PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
    friend PolyForm operator*(double s, PolyForm a) { return a *= s; }

  private:
    int n_;
    int p_;
    std::map<std::vector<int>, Polynomial> terms_;
  };

  /// prod_{fixed j} x_j^{y_j} (1-x_j)^{1-y_j} dx_{directions}
  PolyForm lowest_order_form(const FaceId& face);

  /// kth-order basis form prod_i x_i^{k_i}(1-x_i)^{k-1-k_i} times the lowest-order form of the face
  PolyForm basis_form(const SmallCube& cube);

  /// Basis forms of Q_k^p in small-cube canonical order
  std::vector<PolyForm> basis_forms(int n, int p, int k);

  /// Component values, indexed like direction_sets(n, p).
  /// `outside` (optional) is set when x leaves the closed unit cube.
  std::vector<double> evaluate(const PolyForm& form, std::span<const double> x, bool* outside = nullptr);

  /// d(f dx_I) = sum_i df/dx_i dx_i ^ dx_I, with wedge factors re-sorted
  PolyForm exterior_derivative(const PolyForm& form);

  /// Exact integral of a form over a small cube with its canonical orientation
  /// (point evaluation for p = 0).
  double integrate(const PolyForm& form, const SmallCube& cube);

  /// True if every coefficient has the Q_k^- degree pattern
  bool has_cubical_degree_pattern(const PolyForm& form, int k, double tol = 0.0);

  /// Number of coefficients in the monomial layout of Q_k^p: C(n,p) k^p (k+1)^(n-p)
  std::size_t monomial_layout_size(int n, int p, int k);

  /// Coefficients in the monomial layout (direction set major, then exponent
  /// box with per-variable bound k-1 on I, k elsewhere). Throws if the form
  /// leaves the pattern.
  std::vector<double> monomial_coefficients(const PolyForm& form, int k);

  PolyForm from_monomial_coefficients(int n, int p, int k, std::span<const double> coefficients);

  struct MembershipResult
  {
    bool member = false;
    double residual = 0.0;
    /// Coefficients over basis_forms(n, p, k)
    std::vector<double> coefficients;
  };

  /// Least-squares test of f in span{basis_form}. Throws std::invalid_argument
  /// when f does not have the Q_k^- degree pattern.
  MembershipResult span_membership(const PolyForm& form, int k, double tol = 1e-10);

} // namespace cubeforms

#endif
