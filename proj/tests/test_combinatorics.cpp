#include <cubeforms/combinatorics.hpp>

#include <doctest.h>

#include <set>
#include <stdexcept>

using namespace cubeforms;

TEST_CASE("binomial and factorial")
{
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(3, 4) == 0);
  CHECK(binomial(60, 30) == 118264581564861424ULL);
  CHECK(factorial(0) == 1);
  CHECK(factorial(10) == 3628800);
  CHECK_THROWS(factorial(21));
  CHECK(ipow(3, 4) == 81);
  CHECK(ipow(7, 0) == 1);
}

TEST_CASE("multi-index enumeration")
{
  SUBCASE("single element")
  {
    const auto all = enumerate_multi_indices(1, 0);
    REQUIRE(all.size() == 1);
    CHECK(all[0].components == std::vector<int>{0});
  }
  SUBCASE("binary grid in lexicographic order")
  {
    const auto all = enumerate_multi_indices(2, 1);
    REQUIRE(all.size() == 4);
    CHECK(all[0].components == std::vector<int>{0, 0});
    CHECK(all[1].components == std::vector<int>{0, 1});
    CHECK(all[2].components == std::vector<int>{1, 0});
    CHECK(all[3].components == std::vector<int>{1, 1});
  }
  SUBCASE("count against nested loops")
  {
    std::set<std::vector<int>> oracle;
    for (int a = 0; a <= 2; ++a) {
      for (int b = 0; b <= 2; ++b) {
        for (int c = 0; c <= 2; ++c) {
          oracle.insert({a, b, c});
        }
      }
    }
    const auto all = enumerate_multi_indices(3, 2);
    CHECK(all.size() == 27);
    std::set<std::vector<int>> got;
    for (const auto& mi : all) {
      got.insert(mi.components);
      CHECK(mi.bounded_by(2));
    }
    CHECK(got == oracle);
  }
  CHECK_THROWS_AS(enumerate_multi_indices(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_multi_indices(2, -1), std::invalid_argument);
}

TEST_CASE("face enumeration")
{
  SUBCASE("top cell of the square")
  {
    const auto faces = enumerate_faces(2, 2);
    REQUIRE(faces.size() == 1);
    CHECK(faces[0].directions == std::vector<int>{0, 1});
    CHECK(faces[0].fixed_values.empty());
  }
  SUBCASE("edges of the square")
  {
    const auto faces = enumerate_faces(2, 1);
    CHECK(faces.size() == 4);
  }
  SUBCASE("edges of the cube listed by hand")
  {
    std::set<std::vector<int>> oracle;
    for (int dir = 0; dir < 3; ++dir) {
      for (int a = 0; a <= 1; ++a) {
        for (int b = 0; b <= 1; ++b) {
          std::vector<int> values(3, -1);
          int bit = 0;
          for (int i = 0; i < 3; ++i) {
            if (i != dir) {
              values[static_cast<std::size_t>(i)] = (bit++ == 0) ? a : b;
            }
          }
          oracle.insert(values);
        }
      }
    }
    const auto faces = enumerate_faces(3, 1);
    CHECK(faces.size() == 12);
    std::set<std::vector<int>> got;
    for (const auto& f : faces) {
      f.validate();
      got.insert(f.coordinate_values());
    }
    CHECK(got == oracle);
  }
  for (int n = 1; n <= 5; ++n) {
    for (int p = 0; p <= n; ++p) {
      CHECK(enumerate_faces(n, p).size() == face_count(n, p));
      CHECK(face_count(n, p) == binomial(n, p) * static_cast<std::uint64_t>(ipow(2, n - p)));
    }
  }
  CHECK_THROWS_AS(enumerate_faces(2, 3), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_faces(2, -1), std::invalid_argument);
}

TEST_CASE("direction sets and ranks")
{
  const auto sets = direction_sets(4, 2);
  REQUIRE(sets.size() == 6);
  CHECK(sets.front() == std::vector<int>{0, 1});
  CHECK(sets.back() == std::vector<int>{2, 3});
  for (std::size_t i = 0; i < sets.size(); ++i) {
    CHECK(direction_set_rank(4, sets[i]) == static_cast<int>(i));
  }
  CHECK(direction_sets(3, 0) == std::vector<std::vector<int>>{{}});
}

TEST_CASE("face invariants are enforced")
{
  FaceId bad{2, {1, 0}, {}};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  FaceId bits{2, {0}, {2}};
  CHECK_THROWS_AS(bits.validate(), std::invalid_argument);
  FaceId edge{2, {0}, {1}};
  CHECK_NOTHROW(edge.validate());
  CHECK(edge.coordinate_values() == std::vector<int>{-1, 1});
  CHECK(edge.is_free(0));
  CHECK_FALSE(edge.is_free(1));
}
