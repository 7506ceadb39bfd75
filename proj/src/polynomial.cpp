#include <cubeforms/polynomial.hpp>

#include <cubeforms/combinatorics.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cubeforms
{

  namespace
  {
    std::size_t grid_size(const std::vector<int>& degrees)
    {
      std::size_t size = 1;
      for (int d : degrees) {
        size *= static_cast<std::size_t>(d + 1);
      }
      return size;
    }

    // Advances an exponent odometer bounded by `degrees`; false when exhausted
    bool next_exponent(std::vector<int>& exponents, const std::vector<int>& degrees)
    {
      for (int i = static_cast<int>(exponents.size()) - 1; i >= 0; --i) {
        auto& e = exponents[static_cast<std::size_t>(i)];
        if (e < degrees[static_cast<std::size_t>(i)]) {
          ++e;
          return true;
        }
        e = 0;
      }
      return false;
    }
  } // namespace

  Polynomial::Polynomial(int n) : degrees_(static_cast<std::size_t>(n), 0), coefficients_(1, 0.0) {}

  Polynomial::Polynomial(std::vector<int> degrees, std::vector<double> coefficients)
    : degrees_(std::move(degrees)), coefficients_(std::move(coefficients))
  {
    if (coefficients_.size() != grid_size(degrees_)) {
      throw std::invalid_argument("Polynomial: coefficient grid does not match degrees");
    }
  }

  Polynomial Polynomial::constant(int n, double value)
  {
    Polynomial p(n);
    p.coefficients_[0] = value;
    return p;
  }

  Polynomial Polynomial::bernstein_factor(int n, int var, int a, int b)
  {
    if (var < 0 || var >= n || a < 0 || b < 0) {
      throw std::invalid_argument("bernstein_factor: bad arguments");
    }
    std::vector<int> degrees(static_cast<std::size_t>(n), 0);
    degrees[static_cast<std::size_t>(var)] = a + b;
    Polynomial p(degrees, std::vector<double>(static_cast<std::size_t>(a + b + 1), 0.0));
    // x^a (1-x)^b = sum_j C(b,j) (-1)^j x^(a+j)
    for (int j = 0; j <= b; ++j) {
      const double c = static_cast<double>(binomial(b, j)) * ((j % 2 == 0) ? 1.0 : -1.0);
      p.coefficients_[static_cast<std::size_t>(a + j)] = c;
    }
    return p;
  }

  Polynomial Polynomial::monomial(const std::vector<int>& exponents, double coefficient)
  {
    Polynomial p(exponents, std::vector<double>(grid_size(exponents), 0.0));
    p.coefficients_.back() = coefficient;
    return p;
  }

  std::size_t Polynomial::flat_index(const std::vector<int>& exponents) const
  {
    std::size_t index = 0;
    for (std::size_t i = 0; i < degrees_.size(); ++i) {
      index = index * static_cast<std::size_t>(degrees_[i] + 1) + static_cast<std::size_t>(exponents[i]);
    }
    return index;
  }

  double Polynomial::coefficient(const std::vector<int>& exponents) const
  {
    if (exponents.size() != degrees_.size()) {
      throw std::invalid_argument("Polynomial::coefficient: dimension mismatch");
    }
    for (std::size_t i = 0; i < degrees_.size(); ++i) {
      if (exponents[i] < 0 || exponents[i] > degrees_[i]) {
        return 0.0;
      }
    }
    return coefficients_[flat_index(exponents)];
  }

  Polynomial Polynomial::resized(const std::vector<int>& degrees) const
  {
    Polynomial out(degrees, std::vector<double>(grid_size(degrees), 0.0));
    std::vector<int> e(degrees_.size(), 0);
    std::size_t flat = 0;
    do {
      out.coefficients_[out.flat_index(e)] = coefficients_[flat++];
    } while (next_exponent(e, degrees_));
    return out;
  }

  void Polynomial::add_to_coefficient(const std::vector<int>& exponents, double value)
  {
    if (exponents.size() != degrees_.size()) {
      throw std::invalid_argument("Polynomial::add_to_coefficient: dimension mismatch");
    }
    bool grow = false;
    auto degrees = degrees_;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
      if (exponents[i] < 0) {
        throw std::invalid_argument("Polynomial::add_to_coefficient: negative exponent");
      }
      if (exponents[i] > degrees[i]) {
        degrees[i] = exponents[i];
        grow = true;
      }
    }
    if (grow) {
      *this = resized(degrees);
    }
    coefficients_[flat_index(exponents)] += value;
  }

  std::vector<int> Polynomial::effective_degrees(double tol) const
  {
    std::vector<int> result(degrees_.size(), -1);
    std::vector<int> e(degrees_.size(), 0);
    std::size_t flat = 0;
    do {
      if (std::abs(coefficients_[flat++]) > tol) {
        for (std::size_t i = 0; i < e.size(); ++i) {
          result[i] = std::max(result[i], e[i]);
        }
      }
    } while (next_exponent(e, degrees_));
    return result;
  }

  bool Polynomial::is_zero(double tol) const
  {
    return std::all_of(coefficients_.begin(), coefficients_.end(), [tol](double c) { return std::abs(c) <= tol; });
  }

  double Polynomial::operator()(std::span<const double> x) const
  {
    if (x.size() != degrees_.size()) {
      throw std::invalid_argument("Polynomial: evaluation point has wrong dimension");
    }
    if (degrees_.empty()) {
      return coefficients_[0];
    }
    // Nested Horner: collapse the last (fastest) variable first
    std::vector<double> work(coefficients_);
    std::size_t size = work.size();
    for (int i = static_cast<int>(degrees_.size()) - 1; i >= 0; --i) {
      const auto extent = static_cast<std::size_t>(degrees_[static_cast<std::size_t>(i)] + 1);
      const double xi = x[static_cast<std::size_t>(i)];
      const std::size_t outer = size / extent;
      for (std::size_t o = 0; o < outer; ++o) {
        double acc = 0.0;
        for (std::size_t j = extent; j-- > 0;) {
          acc = acc * xi + work[o * extent + j];
        }
        work[o] = acc;
      }
      size = outer;
    }
    return work[0];
  }

  Polynomial Polynomial::derivative(int var) const
  {
    if (var < 0 || var >= dimension()) {
      throw std::invalid_argument("Polynomial::derivative: variable out of range");
    }
    auto degrees = degrees_;
    degrees[static_cast<std::size_t>(var)] = std::max(0, degrees[static_cast<std::size_t>(var)] - 1);
    Polynomial out(degrees, std::vector<double>(grid_size(degrees), 0.0));
    std::vector<int> e(degrees_.size(), 0);
    std::size_t flat = 0;
    do {
      const double c = coefficients_[flat++];
      const int a = e[static_cast<std::size_t>(var)];
      if (a > 0 && c != 0.0) {
        auto d = e;
        --d[static_cast<std::size_t>(var)];
        out.coefficients_[out.flat_index(d)] += a * c;
      }
    } while (next_exponent(e, degrees_));
    return out;
  }

  Polynomial& Polynomial::operator+=(const Polynomial& other)
  {
    if (other.dimension() != dimension()) {
      throw std::invalid_argument("Polynomial: dimension mismatch in addition");
    }
    auto degrees = degrees_;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
      degrees[i] = std::max(degrees[i], other.degrees_[i]);
    }
    if (degrees != degrees_) {
      *this = resized(degrees);
    }
    std::vector<int> e(other.degrees_.size(), 0);
    std::size_t flat = 0;
    do {
      coefficients_[flat_index(e)] += other.coefficients_[flat++];
    } while (next_exponent(e, other.degrees_));
    return *this;
  }

  Polynomial& Polynomial::operator*=(double factor)
  {
    for (auto& c : coefficients_) {
      c *= factor;
    }
    return *this;
  }

  Polynomial operator*(const Polynomial& a, const Polynomial& b)
  {
    if (a.dimension() != b.dimension()) {
      throw std::invalid_argument("Polynomial: dimension mismatch in product");
    }
    std::vector<int> degrees(a.degrees_.size());
    for (std::size_t i = 0; i < degrees.size(); ++i) {
      degrees[i] = a.degrees_[i] + b.degrees_[i];
    }
    Polynomial out(degrees, std::vector<double>(grid_size(degrees), 0.0));
    std::vector<int> ea(a.degrees_.size(), 0);
    std::size_t fa = 0;
    do {
      const double ca = a.coefficients_[fa++];
      if (ca == 0.0) {
        continue;
      }
      std::vector<int> eb(b.degrees_.size(), 0);
      std::size_t fb = 0;
      do {
        const double cb = b.coefficients_[fb++];
        if (cb != 0.0) {
          auto e = ea;
          for (std::size_t i = 0; i < e.size(); ++i) {
            e[i] += eb[i];
          }
          out.coefficients_[out.flat_index(e)] += ca * cb;
        }
      } while (next_exponent(eb, b.degrees_));
    } while (next_exponent(ea, a.degrees_));
    return out;
  }

  void Polynomial::for_each(const std::function<void(const std::vector<int>&, double)>& f) const
  {
    std::vector<int> e(degrees_.size(), 0);
    std::size_t flat = 0;
    do {
      f(e, coefficients_[flat++]);
    } while (next_exponent(e, degrees_));
  }

  double Polynomial::integrate_box(std::span<const double> lo, std::span<const double> hi) const
  {
    const std::size_t n = degrees_.size();
    if (lo.size() != n || hi.size() != n) {
      throw std::invalid_argument("Polynomial::integrate_box: dimension mismatch");
    }
    // Per-variable moment tables
    std::vector<std::vector<double>> moments(n);
    for (std::size_t i = 0; i < n; ++i) {
      moments[i].resize(static_cast<std::size_t>(degrees_[i] + 1));
      for (int a = 0; a <= degrees_[i]; ++a) {
        moments[i][static_cast<std::size_t>(a)] =
          lo[i] == hi[i] ? std::pow(lo[i], a) : (std::pow(hi[i], a + 1) - std::pow(lo[i], a + 1)) / (a + 1);
      }
    }
    double total = 0.0;
    for_each([&](const std::vector<int>& e, double c) {
      if (c == 0.0) {
        return;
      }
      double term = c;
      for (std::size_t i = 0; i < n; ++i) {
        term *= moments[i][static_cast<std::size_t>(e[i])];
      }
      total += term;
    });
    return total;
  }

} // namespace cubeforms
