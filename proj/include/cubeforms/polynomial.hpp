// Multivariate polynomials stored as dense monomial coefficient grids.

#ifndef CUBEFORMS_POLYNOMIAL_HPP
#define CUBEFORMS_POLYNOMIAL_HPP

#include <functional>
#include <span>
#include <vector>

namespace cubeforms
{

  /// Sum of c_a x^a over a box of exponents a <= degrees (per variable).
  class Polynomial
  {
  public:
    explicit Polynomial(int n = 0);
    Polynomial(std::vector<int> degrees, std::vector<double> coefficients);

    static Polynomial constant(int n, double value);
    /// x_var^a (1 - x_var)^b
    static Polynomial bernstein_factor(int n, int var, int a, int b);
    /// x^exponents
    static Polynomial monomial(const std::vector<int>& exponents, double coefficient = 1.0);

    int dimension() const { return static_cast<int>(degrees_.size()); }
    /// Grid extent minus one per variable; an upper bound on the true degree
    const std::vector<int>& degrees() const { return degrees_; }
    const std::vector<double>& coefficients() const { return coefficients_; }

    double coefficient(const std::vector<int>& exponents) const;
    void add_to_coefficient(const std::vector<int>& exponents, double value);

    /// Exact per-variable degree (highest exponent with |c| > tol); -1 for the zero polynomial
    std::vector<int> effective_degrees(double tol = 0.0) const;
    bool is_zero(double tol = 0.0) const;

    double operator()(std::span<const double> x) const;

    Polynomial derivative(int var) const;

    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator*=(double factor);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
    friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

    /// Calls f(exponents, coefficient) for every stored coefficient
    void for_each(const std::function<void(const std::vector<int>&, double)>& f) const;

    /// Integral over the box prod [lo_i, hi_i]; lo_i == hi_i means point evaluation in that variable
    double integrate_box(std::span<const double> lo, std::span<const double> hi) const;

  private:
    std::size_t flat_index(const std::vector<int>& exponents) const;
    Polynomial resized(const std::vector<int>& degrees) const;

    std::vector<int> degrees_;
    std::vector<double> coefficients_;
  };

} // namespace cubeforms

#endif
