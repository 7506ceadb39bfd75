// Cochains on a refined cubical mesh and their interpolation by cubical forms.
//
//   de_rham      C_k: smooth p-form -> p-cochain of small-cube integrals
//   interpolate  W:   p-cochain -> piecewise kth-order cubical p-form
//   coboundary   d:   p-cochain -> (p+1)-cochain
//
// W solves, cell by cell, the reference DOF system with the cell's small-cube
// values. Integration is invariant under pullback, so the only per-cell
// adjustment is the relative orientation sign of each small cube.

#ifndef CUBEFORMS_INTERP_HPP
#define CUBEFORMS_INTERP_HPP

#include <cubeforms/forms.hpp>
#include <cubeforms/mesh.hpp>

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace cubeforms
{

  /// A p-form on a domain of R^n given by its components in direction_sets(n, p) order
  struct FormField
  {
    int n = 0;
    int p = 0;
    std::function<void(std::span<const double> y, std::span<double> out)> eval;

    std::vector<double> operator()(std::span<const double> y) const;
  };

  /// Wraps a polynomial form on global coordinates
  FormField as_field(const PolyForm& form);

  struct Cochain
  {
    std::shared_ptr<const RefinedMesh> mesh;
    int p = 0;
    std::vector<double> values;

    Cochain() = default;
    Cochain(std::shared_ptr<const RefinedMesh> mesh, int p, std::vector<double> values);
    static Cochain zero(std::shared_ptr<const RefinedMesh> mesh, int p);
  };

  /// Cellwise kth-order cubical p-form
  class PiecewiseForm
  {
  public:
    PiecewiseForm(std::shared_ptr<const RefinedMesh> mesh, int p, std::vector<std::vector<double>> coefficients);

    const std::shared_ptr<const RefinedMesh>& mesh() const { return mesh_; }
    int degree() const { return p_; }
    int order() const { return mesh_->order(); }

    /// Coefficients over basis_forms(n, p, k) of a cell
    const std::vector<double>& coefficients(int cell) const { return coefficients_[static_cast<std::size_t>(cell)]; }
    /// The cell's form in reference coordinates
    const PolyForm& reference_form(int cell) const { return forms_[static_cast<std::size_t>(cell)]; }

    /// Global components at a physical point, using the given cell's polynomial
    std::vector<double> evaluate_in_cell(int cell, std::span<const double> y) const;
    /// Same, at reference coordinates x of the cell
    std::vector<double> evaluate_reference(int cell, std::span<const double> x) const;

  private:
    std::shared_ptr<const RefinedMesh> mesh_;
    int p_;
    std::vector<std::vector<double>> coefficients_;
    std::vector<PolyForm> forms_;
  };

  /// Default Gauss-Legendre points per axis for de_rham: 2k + 2
  int default_quad_order(int k);

  /// Small-cube integrals of a smooth form with tensor Gauss-Legendre quadrature
  Cochain de_rham(const FormField& form, const std::shared_ptr<const RefinedMesh>& mesh, int quad_order);

  /// Small-cube integrals of a piecewise form; each cube is integrated with its owner cell's polynomial
  Cochain de_rham(const PiecewiseForm& form, int quad_order);

  /// W X; k must equal the refinement order. Throws SingularBlockError on a near-singular block.
  PiecewiseForm interpolate(const Cochain& cochain, int k);
  PiecewiseForm interpolate(const Cochain& cochain);

  Cochain coboundary(const Cochain& cochain);

  /// Cellwise exterior derivative, re-expanded in the degree p+1 basis
  PiecewiseForm exterior_derivative(const PiecewiseForm& form);

  class PointLocationError : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  /// Evaluates at a physical point located in the lowest-index containing cell
  std::vector<double> evaluate_piecewise(const PiecewiseForm& form, std::span<const double> y);

  struct IdentityCheck
  {
    int p = 0;
    /// max |C_k W X - X|
    double right_inverse_error = 0.0;
    /// max over samples of |W C_k w - w|
    double projection_error = 0.0;
    /// max over samples of |W dX - d W X|; 0 when p = n
    double commutation_error = 0.0;
    std::string worst_location;
  };

  struct IdentityReport
  {
    std::vector<IdentityCheck> checks;
    double tolerance = 1e-9;

    bool passed() const;
    std::string summary() const;
  };

  struct IdentityOptions
  {
    int trials = 20;
    int samples = 50;
    double tolerance = 1e-9;
    std::uint64_t seed = 2024;
  };

  /// Random test of C_k W X = X, W C_k w = w and W dX = d W X for every degree p.
  /// The random forms w are global polynomials in Q_k^p(K): full Q_k^- pattern
  /// on axis-aligned meshes, total degree k-1 (k for p = 0) otherwise.
  IdentityReport verify_identities(const std::shared_ptr<const RefinedMesh>& mesh, const IdentityOptions& options = {});

  /// Random polynomial p-form lying in Q_k^p(K) for the mesh's cell shapes
  PolyForm random_space_form(const RefinedMesh& mesh, int p, std::uint64_t seed);

  /// True if every cell map has a diagonal linear part
  bool is_axis_aligned(const RefinedMesh& mesh);

} // namespace cubeforms

#endif
