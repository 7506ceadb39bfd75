#include <cubeforms/forms.hpp>

#include <doctest.h>

#include <map>
#include <random>

using namespace cubeforms;

namespace
{
  // Sparse polynomial used as an independent expansion oracle
  using Sparse = std::map<std::vector<int>, double>;

  Sparse multiply(const Sparse& a, const Sparse& b)
  {
    Sparse out;
    for (const auto& [ea, ca] : a) {
      for (const auto& [eb, cb] : b) {
        std::vector<int> e(ea.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
          e[i] = ea[i] + eb[i];
        }
        out[e] += ca * cb;
      }
    }
    return out;
  }

  // x_var or (1 - x_var) as a sparse polynomial in n variables
  Sparse linear(int n, int var, bool complement)
  {
    std::vector<int> zero(static_cast<std::size_t>(n), 0);
    std::vector<int> one = zero;
    one[static_cast<std::size_t>(var)] = 1;
    if (complement) {
      return {{zero, 1.0}, {one, -1.0}};
    }
    return {{one, 1.0}};
  }

  void check_matches(const Polynomial& poly, const Sparse& oracle)
  {
    for (const auto& [e, c] : oracle) {
      CHECK(poly.coefficient(e) == doctest::Approx(c).epsilon(1e-14));
    }
    poly.for_each([&](const std::vector<int>& e, double c) {
      if (oracle.find(e) == oracle.end()) {
        CHECK(c == 0.0);
      }
    });
  }

  Polynomial random_polynomial(int n, int degree, std::mt19937_64& rng)
  {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Polynomial poly(n);
    for (const auto& mi : enumerate_multi_indices(n, degree)) {
      poly.add_to_coefficient(mi.components, u(rng));
    }
    return poly;
  }

  PolyForm random_form(int n, int p, int degree, std::mt19937_64& rng)
  {
    PolyForm form(n, p);
    for (const auto& dirs : direction_sets(n, p)) {
      form.add_term(dirs, random_polynomial(n, degree, rng));
    }
    return form;
  }
} // namespace

TEST_CASE("lowest-order forms")
{
  SUBCASE("vertex of the interval")
  {
    const auto w = lowest_order_form(FaceId{1, {}, {1}});
    CHECK(w.degree() == 0);
    check_matches(w.coefficient({}), {{{1}, 1.0}});
  }
  SUBCASE("bottom edge of the square")
  {
    const auto w = lowest_order_form(FaceId{2, {0}, {0}});
    check_matches(w.coefficient({0}), {{{0, 0}, 1.0}, {{0, 1}, -1.0}});
    CHECK(w.coefficient({1}).is_zero());
  }
  SUBCASE("whole cube")
  {
    const auto w = lowest_order_form(FaceId{3, {0, 1, 2}, {}});
    check_matches(w.coefficient({0, 1, 2}), {{{0, 0, 0}, 1.0}});
  }
}

TEST_CASE("higher-order basis forms against symbolic expansion")
{
  SUBCASE("bubble on the interval")
  {
    const auto w = basis_form(SmallCube(2, MultiIndex{{1}}, FaceId{1, {}, {0}}));
    check_matches(w.coefficient({}), multiply(linear(1, 0, false), linear(1, 0, true)));
  }
  SUBCASE("left edge of the interval")
  {
    const auto w = basis_form(SmallCube(2, MultiIndex{{0}}, FaceId{1, {0}, {}}));
    check_matches(w.coefficient({0}), linear(1, 0, true));
  }
  SUBCASE("edge form in the square")
  {
    const auto w = basis_form(SmallCube(2, MultiIndex{{1, 0}}, FaceId{2, {0}, {0}}));
    const auto oracle = multiply(linear(2, 0, false), multiply(linear(2, 1, true), linear(2, 1, true)));
    check_matches(w.coefficient({0}), oracle);
    const std::vector<double> x{0.5, 0.5};
    CHECK(evaluate(w, x)[0] == doctest::Approx(0.125));
  }
  SUBCASE("generic cubes")
  {
    for (int k = 1; k <= 3; ++k) {
      for (const auto& cube : enumerate_small_cubes(3, 1, k)) {
        const auto& a = cube.anchor_numerators();
        Sparse oracle{{{0, 0, 0}, 1.0}};
        for (int i = 0; i < 3; ++i) {
          const bool free = std::find(cube.directions().begin(), cube.directions().end(), i) != cube.directions().end();
          const int total = free ? k - 1 : k;
          for (int e = 0; e < a[static_cast<std::size_t>(i)]; ++e) {
            oracle = multiply(oracle, linear(3, i, false));
          }
          for (int e = 0; e < total - a[static_cast<std::size_t>(i)]; ++e) {
            oracle = multiply(oracle, linear(3, i, true));
          }
        }
        check_matches(basis_form(cube).coefficient(cube.directions()), oracle);
      }
    }
  }
}

TEST_CASE("evaluation")
{
  PolyForm dx(2, 1);
  dx.add_term({0}, Polynomial::constant(2, 1.0));
  const auto v = evaluate(dx, std::vector<double>{0.3, 0.9});
  CHECK(v == std::vector<double>{1.0, 0.0});

  const auto bubble = basis_form(SmallCube(2, MultiIndex{{1}}, FaceId{1, {}, {0}}));
  CHECK(evaluate(bubble, std::vector<double>{0.5})[0] == doctest::Approx(0.25));

  bool outside = false;
  evaluate(bubble, std::vector<double>{1.5}, &outside);
  CHECK(outside);
  CHECK_THROWS(evaluate(bubble, std::vector<double>{0.5, 0.5}));
}

TEST_CASE("exterior derivative")
{
  SUBCASE("d(x0 x1) = x1 dx0 + x0 dx1")
  {
    PolyForm f(2, 0);
    f.add_term({}, Polynomial::monomial({1, 1}));
    const auto df = exterior_derivative(f);
    check_matches(df.coefficient({0}), {{{0, 1}, 1.0}});
    check_matches(df.coefficient({1}), {{{1, 0}, 1.0}});
  }
  SUBCASE("d(x0 dx1) = dx0 ^ dx1 and d(x1 dx0) = -dx0 ^ dx1")
  {
    PolyForm a(2, 1);
    a.add_term({1}, Polynomial::monomial({1, 0}));
    check_matches(exterior_derivative(a).coefficient({0, 1}), {{{0, 0}, 1.0}});
    PolyForm b(2, 1);
    b.add_term({0}, Polynomial::monomial({0, 1}));
    check_matches(exterior_derivative(b).coefficient({0, 1}), {{{0, 0}, -1.0}});
  }
  SUBCASE("d d = 0")
  {
    std::mt19937_64 rng(7);
    for (int n = 1; n <= 4; ++n) {
      for (int p = 0; p < n; ++p) {
        const auto dd = exterior_derivative(exterior_derivative(random_form(n, p, 3, rng)));
        CHECK(dd.is_zero(1e-12));
      }
    }
  }
  SUBCASE("top-degree forms are closed")
  {
    PolyForm top(2, 2);
    top.add_term({0, 1}, Polynomial::monomial({2, 2}));
    const auto d = exterior_derivative(top);
    CHECK(d.degree() == 3);
    CHECK(d.is_zero());
  }
  SUBCASE("basis forms of Q_k^- map into Q_k^-")
  {
    for (int k = 1; k <= 3; ++k) {
      for (const auto& w : basis_forms(3, 1, k)) {
        CHECK(has_cubical_degree_pattern(exterior_derivative(w), k));
      }
    }
  }
}

TEST_CASE("exact integration over small cubes")
{
  const auto bubble = basis_form(SmallCube(2, MultiIndex{{1}}, FaceId{1, {}, {0}}));
  CHECK(integrate(bubble, SmallCube(2, MultiIndex{{1}}, FaceId{1, {}, {0}})) == doctest::Approx(0.25));

  PolyForm x_dx(1, 1);
  x_dx.add_term({0}, Polynomial::monomial({1}));
  CHECK(integrate(x_dx, SmallCube(2, MultiIndex{{0}}, FaceId{1, {0}, {}})) == doctest::Approx(1.0 / 8.0));
  CHECK(integrate(x_dx, SmallCube(2, MultiIndex{{1}}, FaceId{1, {0}, {}})) == doctest::Approx(3.0 / 8.0));
}

TEST_CASE("span membership")
{
  SUBCASE("x0^k dx1 lies in the span")
  {
    for (int k = 1; k <= 4; ++k) {
      std::vector<int> e{k, 0};
      PolyForm f(2, 1);
      f.add_term({1}, Polynomial::monomial(e));
      const auto result = span_membership(f, k);
      CHECK(result.member);
      CHECK(result.residual < 1e-10);
    }
  }
  SUBCASE("x0^k dx0 is outside the degree pattern")
  {
    PolyForm f(2, 1);
    f.add_term({0}, Polynomial::monomial({2, 0}));
    CHECK_FALSE(has_cubical_degree_pattern(f, 2));
    CHECK_THROWS_AS(span_membership(f, 2), std::invalid_argument);
  }
  SUBCASE("round trip through random combinations")
  {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n = 1; n <= 3; ++n) {
      for (int p = 0; p <= n; ++p) {
        for (int k = 1; k <= 3; ++k) {
          const auto basis = basis_forms(n, p, k);
          PolyForm f(n, p);
          std::vector<double> c(basis.size());
          for (std::size_t j = 0; j < basis.size(); ++j) {
            c[j] = u(rng);
            f += c[j] * basis[j];
          }
          const auto result = span_membership(f, k);
          CHECK(result.member);
          CHECK(result.residual < 1e-10);
          for (std::size_t j = 0; j < c.size(); ++j) {
            CHECK(result.coefficients[j] == doctest::Approx(c[j]).epsilon(1e-9));
          }
        }
      }
    }
  }
}

TEST_CASE("monomial layout")
{
  for (int k = 1; k <= 3; ++k) {
    CHECK(monomial_layout_size(3, 1, k) == small_cube_count(3, 1, k));
  }
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(monomial_layout_size(2, 1, 2));
  for (auto& v : c) {
    v = u(rng);
  }
  const auto f = from_monomial_coefficients(2, 1, 2, c);
  CHECK(has_cubical_degree_pattern(f, 2));
  const auto back = monomial_coefficients(f, 2);
  REQUIRE(back.size() == c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(back[i] == doctest::Approx(c[i]));
  }
}
