#include <cubeforms/smallcubes.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

using namespace cubeforms;

namespace
{
  // Geometric key of a small cube: sorted corner set scaled by k, rounded
  std::set<std::vector<long>> corner_set(const SmallCube& cube)
  {
    std::set<std::vector<long>> corners;
    const int p = cube.degree();
    for (int mask = 0; mask < (1 << p); ++mask) {
      std::vector<double> t(static_cast<std::size_t>(p));
      for (int j = 0; j < p; ++j) {
        t[static_cast<std::size_t>(j)] = (mask >> j) & 1;
      }
      const auto x = cube.point(t);
      std::vector<long> scaled;
      for (double v : x) {
        scaled.push_back(std::lround(v * cube.order()));
      }
      corners.insert(scaled);
    }
    return corners;
  }
} // namespace

TEST_CASE("small cube maps")
{
  SUBCASE("lowest order is the identity")
  {
    const auto map = small_cube_map(MultiIndex{{0, 0}}, 1);
    const std::vector<double> x{0.25, 0.75};
    CHECK(map(x) == x);
  }
  SUBCASE("homothety with translation")
  {
    const auto map = small_cube_map(MultiIndex{{1, 0}}, 2);
    const auto y = map(std::vector<double>{0.5, 0.5});
    CHECK(y[0] == doctest::Approx(0.75));
    CHECK(y[1] == doctest::Approx(0.25));
  }
  SUBCASE("corner image by substitution")
  {
    const auto y = small_cube_map(MultiIndex{{2, 1, 0}}, 3)(std::vector<double>{1, 1, 1});
    CHECK(y[0] == doctest::Approx(1.0));
    CHECK(y[1] == doctest::Approx(2.0 / 3.0));
    CHECK(y[2] == doctest::Approx(1.0 / 3.0));
  }
  CHECK_THROWS_AS(small_cube_map(MultiIndex{{2, 0}}, 2), std::invalid_argument);
}

TEST_CASE("small cube enumeration deduplicates shared faces")
{
  SUBCASE("three points on the interval")
  {
    const auto cubes = enumerate_small_cubes(1, 0, 2);
    REQUIRE(cubes.size() == 3);
    std::vector<double> xs;
    for (const auto& c : cubes) {
      xs.push_back(c.anchor()[0]);
    }
    std::sort(xs.begin(), xs.end());
    CHECK(xs == std::vector<double>{0.0, 0.5, 1.0});
  }
  SUBCASE("one square at lowest order")
  {
    CHECK(enumerate_small_cubes(2, 2, 1).size() == 1);
  }
  SUBCASE("small edges of the cube")
  {
    CHECK(enumerate_small_cubes(3, 1, 2).size() == 54);
  }
  SUBCASE("geometric distinctness against corner sets")
  {
    for (int n = 1; n <= 3; ++n) {
      for (int p = 0; p <= n; ++p) {
        for (int k = 1; k <= 3; ++k) {
          const auto cubes = enumerate_small_cubes(n, p, k);
          std::set<std::set<std::vector<long>>> distinct;
          for (const auto& c : cubes) {
            distinct.insert(corner_set(c));
          }
          CHECK(distinct.size() == cubes.size());
          // brute force over every (mi, face) generator
          std::set<std::set<std::vector<long>>> all;
          for (const auto& mi : enumerate_multi_indices(n, k - 1)) {
            for (const auto& face : enumerate_faces(n, p)) {
              all.insert(corner_set(SmallCube(k, mi, face)));
            }
          }
          CHECK(all == distinct);
        }
      }
    }
  }
}

TEST_CASE("small cube counts follow the dimension formula")
{
  for (int n = 1; n <= 4; ++n) {
    for (int p = 0; p <= n; ++p) {
      for (int k = 1; k <= 4; ++k) {
        const auto expected = binomial(n, p) * static_cast<std::uint64_t>(ipow(k, p) * ipow(k + 1, n - p));
        CHECK(small_cube_count(n, p, k) == expected);
        CHECK(enumerate_small_cubes(n, p, k).size() == expected);
      }
    }
  }
}

TEST_CASE("small cube index")
{
  const auto index = small_cube_index(2, 1, 2);
  REQUIRE(index->size() == 12);
  for (std::size_t i = 0; i < index->size(); ++i) {
    const auto& c = index->cubes()[i];
    CHECK(index->find(c.directions(), c.anchor_numerators()) == static_cast<int>(i));
  }
  CHECK(index->find({0}, {2, 0}) == -1);
  const auto [first, last] = index->block({1});
  CHECK(last - first == 6);
  CHECK(small_cube_index(2, 1, 2).get() == index.get());
}

TEST_CASE("small n-cubes pave the unit cube")
{
  const auto a = pave_check(2, 1);
  CHECK(a.paves);
  const auto b = pave_check(2, 3);
  CHECK(b.paves);
  CHECK(b.cell_count == 9);
  CHECK(b.total_volume == doctest::Approx(1.0));
  const auto c = pave_check(3, 2);
  CHECK(c.paves);
  CHECK(c.cell_count == 8);
}

TEST_CASE("small cube geometry")
{
  const SmallCube edge(2, MultiIndex{{1, 0}}, FaceId{2, {0}, {1}});
  CHECK(edge.anchor_numerators() == std::vector<int>{1, 1});
  CHECK(edge.volume() == doctest::Approx(0.5));
  const auto end = edge.point(std::vector<double>{1.0});
  CHECK(end[0] == doctest::Approx(1.0));
  CHECK(end[1] == doctest::Approx(0.5));
  const SmallCube same(2, MultiIndex{{1, 1}}, FaceId{2, {0}, {0}});
  CHECK(edge.same_point_set(same));
}
