#include <cubeforms/catalog.hpp>

#include <cmath>
#include <numbers>

namespace cubeforms
{

  std::vector<std::string> catalog_ids()
  {
    return {"exp", "poly", "sin"};
  }

  FormField catalog_form(const std::string& id, int n, int p, int k)
  {
    if (n < 1 || p < 0 || p > n || k < 1) {
      throw CatalogError("catalog_form: need n >= 1, 0 <= p <= n, k >= 1");
    }
    FormField field{n, p, {}};
    if (id == "sin") {
      field.eval = [n](std::span<const double> y, std::span<double> out) {
        std::fill(out.begin(), out.end(), 0.0);
        double product = 1.0;
        for (int i = 0; i < n; ++i) {
          product *= std::sin(std::numbers::pi * y[static_cast<std::size_t>(i)]);
        }
        out[0] = product;
      };
    } else if (id == "exp") {
      field.eval = [n](std::span<const double> y, std::span<double> out) {
        double exponent = 0.0;
        for (int i = 0; i < n; ++i) {
          exponent += ((i % 2 == 0) ? 0.5 : -0.5) * (i + 1) * y[static_cast<std::size_t>(i)];
        }
        for (std::size_t r = 0; r < out.size(); ++r) {
          out[r] = static_cast<double>(r + 1) *
                   std::exp(exponent + 0.3 * static_cast<double>(r) * y[r % static_cast<std::size_t>(n)]);
        }
      };
    } else if (id == "poly") {
      const int degree = p == 0 ? k : k - 1;
      field.eval = [n, degree](std::span<const double> y, std::span<double> out) {
        double linear = 1.0;
        for (int i = 0; i < n; ++i) {
          linear += (i + 1) * y[static_cast<std::size_t>(i)] / (n + 1);
        }
        for (std::size_t r = 0; r < out.size(); ++r) {
          out[r] = std::pow(linear + 0.1 * static_cast<double>(r), degree);
        }
      };
    } else {
      std::string known;
      for (const auto& name : catalog_ids()) {
        known += (known.empty() ? "" : ", ") + name;
      }
      throw CatalogError("unknown form id '" + id + "' (known: " + known + ")");
    }
    return field;
  }

} // namespace cubeforms
