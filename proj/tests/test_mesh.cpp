#include <cubeforms/mesh.hpp>

#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

using namespace cubeforms;

namespace
{
  const std::string data_dir = CUBEFORMS_TEST_DATA;

  // Global small q-cubes found geometrically: rounded physical midpoints plus
  // the unsigned tangent span of every cell's reference small cube.
  std::size_t brute_force_count(const CubicalMesh& mesh, int q, int k)
  {
    std::set<std::vector<long>> midpoints;
    for (int c = 0; c < static_cast<int>(mesh.cells.size()); ++c) {
      const auto map = cell_map(mesh, c);
      for (const auto& cube : enumerate_small_cubes(mesh.dimension, q, k)) {
        std::vector<double> half(static_cast<std::size_t>(q), 0.5);
        const auto y = map.forward(cube.point(half));
        std::vector<long> key;
        for (double v : y) {
          key.push_back(std::lround(v * 1e6));
        }
        midpoints.insert(key);
      }
    }
    return midpoints.size();
  }
} // namespace

TEST_CASE("mesh validation")
{
  CHECK_NOTHROW(load_mesh(data_dir + "/unit_square.json"));
  CHECK_NOTHROW(load_mesh(data_dir + "/sheared_cell.json"));
  CHECK_NOTHROW(load_mesh(data_dir + "/two_squares_reflected.json"));
  CHECK_NOTHROW(load_mesh(data_dir + "/skew_pair_3d.json"));

  SUBCASE("trapezoid reports the deviating corner")
  {
    try {
      load_mesh(data_dir + "/trapezoid.json");
      FAIL("trapezoid accepted");
    } catch (const MeshError& e) {
      const std::string what = e.what();
      CHECK(what.find("cell 0") != std::string::npos);
      CHECK(what.find("corner 3") != std::string::npos);
    }
  }
  CHECK_THROWS_AS(load_mesh(data_dir + "/overlapping.json"), MeshError);
  CHECK_THROWS_AS(load_mesh(data_dir + "/missing.json"), MeshError);
  CHECK_THROWS_AS(parse_mesh_json("{\"dimension\": 2}"), MeshError);
  CHECK_THROWS_AS(parse_mesh_json("not json"), MeshError);
  CHECK_THROWS_AS(parse_mesh_json(R"({"dimension": 1, "vertices": [[0], [1]], "cells": [[0, 2]]})"), MeshError);
  CHECK_THROWS_AS(parse_mesh_json(R"({"dimension": 1, "vertices": [[0], [1]], "cells": [[0, 0]]})"), MeshError);
  CHECK_THROWS_AS(parse_mesh_json(R"({"dimension": 1, "vertices": [[0], [1], [1]], "cells": [[0, 1], [1, 2]]})"),
                  MeshError);
  CHECK_THROWS_AS(parse_mesh_json(R"({"dimension": 2, "vertices": [[0, 0], [1, 0], [0, 1], [1, 1]],
                                      "cells": [[0, 1, 2]]})"),
                  MeshError);

  const auto round_trip = parse_mesh_json(mesh_to_json(structured_mesh(2, 2, 0.3)));
  CHECK(round_trip.cells.size() == 4);
}

TEST_CASE("structured meshes")
{
  const auto one = structured_mesh(2, 1);
  CHECK(one.cells.size() == 1);
  CHECK(one.vertices.size() == 4);

  const auto four = structured_mesh(2, 4);
  CHECK(four.cells.size() == 16);
  for (int c = 0; c < 16; ++c) {
    CHECK(cell_map(four, c).diameter() == doctest::Approx(std::sqrt(2.0) / 4.0));
  }

  const auto sheared = structured_mesh(2, 2, 0.3);
  CHECK(sheared.cells.size() == 4);
  CHECK_NOTHROW(validate_mesh(sheared));
  CHECK_NOTHROW(validate_mesh(structured_mesh(3, 3, 0.5)));
  CHECK_THROWS_AS(structured_mesh(2, 0), std::invalid_argument);
}

TEST_CASE("reference maps")
{
  SUBCASE("unit cell is the identity")
  {
    const auto map = cell_map(structured_mesh(2, 1), 0);
    CHECK(map.edges.isIdentity());
    CHECK(map.origin.isZero());
  }
  SUBCASE("translated cell")
  {
    const auto mesh = load_mesh(data_dir + "/two_squares.json");
    const auto map = cell_map(mesh, 1);
    const auto y = map.forward(std::vector<double>{0.25, 0.5});
    CHECK(y[0] == doctest::Approx(1.25));
    CHECK(y[1] == doctest::Approx(0.5));
  }
  SUBCASE("sheared cell round trip")
  {
    const double s = 0.3;
    const int m = 2;
    const auto map = cell_map(structured_mesh(2, m, s), 3);
    Eigen::Matrix2d expected;
    expected << 1.0, s, 0.0, 1.0;
    expected /= m;
    CHECK((map.edges - expected).norm() < 1e-15);
    for (double a : {0.0, 0.3, 1.0}) {
      for (double b : {0.0, 0.7, 1.0}) {
        const std::vector<double> x{a, b};
        const auto back = map.inverse(map.forward(x));
        CHECK(std::abs(back[0] - a) < 1e-13);
        CHECK(std::abs(back[1] - b) < 1e-13);
      }
    }
    CHECK(map.fullness() == doctest::Approx(map.volume() / std::pow(map.diameter(), 2)));
  }
}

TEST_CASE("pullback of forms")
{
  SUBCASE("identity cell evaluates the reference form")
  {
    auto w = basis_form(SmallCube(2, MultiIndex{{1, 0}}, FaceId{2, {0}, {0}}));
    const PulledBackForm f(cell_map(structured_mesh(2, 1), 0), w);
    const std::vector<double> y{0.3, 0.6};
    CHECK(f(y) == evaluate(w, y));
  }
  SUBCASE("translation keeps covectors")
  {
    PolyForm dx(2, 1);
    dx.add_term({0}, Polynomial::constant(2, 1.0));
    const auto mesh = load_mesh(data_dir + "/two_squares.json");
    const PulledBackForm f(cell_map(mesh, 1), dx);
    const auto v = f(std::vector<double>{1.5, 0.5});
    CHECK(v[0] == doctest::Approx(1.0));
    CHECK(v[1] == doctest::Approx(0.0));
  }
  SUBCASE("sheared cell pairs dual to the pushed-forward tangents")
  {
    const auto mesh = load_mesh(data_dir + "/sheared_cell.json");
    const auto map = cell_map(mesh, 0);
    for (int r = 0; r < 2; ++r) {
      PolyForm dxr(2, 1);
      dxr.add_term({r}, Polynomial::constant(2, 1.0));
      const auto covector = pullback_basis(map, dxr)(std::vector<double>{0.5, 0.5});
      for (int j = 0; j < 2; ++j) {
        const Eigen::Vector2d t = map.edges.col(j);
        const double pairing = covector[0] * t[0] + covector[1] * t[1];
        CHECK(pairing == doctest::Approx(r == j ? 1.0 : 0.0));
      }
      CHECK(covector[0] == doctest::Approx(map.inverse_edges(r, 0)));
      CHECK(covector[1] == doctest::Approx(map.inverse_edges(r, 1)));
    }
  }
  SUBCASE("compound matrices")
  {
    Eigen::Matrix3d m;
    m << 2, 1, 0, 0, 3, 1, 1, 0, 1;
    CHECK(compound_matrix(m, 0)(0, 0) == 1.0);
    CHECK((compound_matrix(m, 1) - Eigen::MatrixXd(m)).norm() == 0.0);
    CHECK(compound_matrix(m, 3)(0, 0) == doctest::Approx(m.determinant()));
    // Cauchy-Binet: C(AB) = C(A) C(B)
    Eigen::Matrix3d b;
    b << 1, -1, 2, 0, 1, 0, 3, 0, 1;
    CHECK((compound_matrix(m * b, 2) - compound_matrix(m, 2) * compound_matrix(b, 2)).norm() < 1e-12);
  }
}

TEST_CASE("refinement counts")
{
  SUBCASE("unit square at lowest order")
  {
    const auto r = refine(structured_mesh(2, 1), 1);
    CHECK(r->count(0) == 4);
    CHECK(r->count(1) == 4);
    CHECK(r->count(2) == 1);
  }
  SUBCASE("unit square at order two")
  {
    const auto r = refine(structured_mesh(2, 1), 2);
    CHECK(r->count(0) == 9);
    CHECK(r->count(1) == 12);
    CHECK(r->count(2) == 4);
  }
  SUBCASE("shared edges are counted once")
  {
    for (const auto* name : {"/two_squares.json", "/two_squares_reflected.json"}) {
      const auto mesh = load_mesh(data_dir + name);
      const auto r = refine(mesh, 2);
      // 12 + 12 minus the k = 2 small edges on the shared edge
      CHECK(r->count(1) == 22);
      CHECK(r->count(1) == brute_force_count(mesh, 1, 2));
      CHECK(r->count(0) == brute_force_count(mesh, 0, 2));
    }
  }
  SUBCASE("geometric oracle on assorted meshes")
  {
    const std::vector<CubicalMesh> meshes{structured_mesh(2, 3, 0.3), structured_mesh(3, 2, 0.2),
                                          load_mesh(data_dir + "/skew_pair_3d.json")};
    for (const auto& mesh : meshes) {
      for (int k = 1; k <= 3; ++k) {
        const auto r = refine(mesh, k);
        long euler = 0;
        for (int q = 0; q <= mesh.dimension; ++q) {
          CHECK(r->count(q) == brute_force_count(mesh, q, k));
          euler += (q % 2 == 0 ? 1 : -1) * static_cast<long>(r->count(q));
        }
        CHECK(euler == 1);
      }
    }
  }
}

TEST_CASE("refinement incidence")
{
  const std::vector<CubicalMesh> meshes{structured_mesh(2, 2, 0.3), load_mesh(data_dir + "/two_squares_reflected.json"),
                                        load_mesh(data_dir + "/skew_pair_3d.json"), structured_mesh(3, 2)};
  for (const auto& mesh : meshes) {
    for (int k = 1; k <= 2; ++k) {
      const auto r = refine(mesh, k);
      SUBCASE("boundary of a boundary vanishes")
      {
        for (int q = 2; q <= mesh.dimension; ++q) {
          for (int id = 0; id < static_cast<int>(r->count(q)); ++id) {
            std::map<int, int> total;
            for (const auto& face : r->boundary(q, id)) {
              for (const auto& edge : r->boundary(q - 1, face.id)) {
                total[edge.id] += face.sign * edge.sign;
              }
            }
            for (const auto& [edge, value] : total) {
              CHECK(value == 0);
            }
          }
        }
      }
      SUBCASE("each small cube has 2q boundary faces")
      {
        for (int q = 1; q <= mesh.dimension; ++q) {
          for (int id = 0; id < static_cast<int>(r->count(q)); ++id) {
            CHECK(r->boundary(q, id).size() == static_cast<std::size_t>(2 * q));
          }
        }
      }
      SUBCASE("owner signs follow the tangent orientation")
      {
        for (int q = 1; q <= mesh.dimension; ++q) {
          for (int id = 0; id < static_cast<int>(r->count(q)); ++id) {
            const auto global = r->tangents(q, id);
            for (const auto& owner : r->cube(q, id).owners) {
              const auto& cube = r->local_cubes(q).cubes()[static_cast<std::size_t>(owner.local)];
              const auto& map = r->cell_map(owner.cell);
              Eigen::MatrixXd local(mesh.dimension, q);
              for (int j = 0; j < q; ++j) {
                local.col(j) = map.edges.col(cube.directions()[static_cast<std::size_t>(j)]);
              }
              const double det = (global.transpose() * local).determinant();
              CHECK(owner.sign == (det > 0 ? 1 : -1));
              CHECK(r->global_id(q, owner.cell, owner.local) == id);
              CHECK(r->local_sign(q, owner.cell, owner.local) == owner.sign);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("point location")
{
  const auto r = refine(load_mesh(data_dir + "/two_squares.json"), 1);
  CHECK(r->locate(std::vector<double>{0.5, 0.5}) == 0);
  CHECK(r->locate(std::vector<double>{1.5, 0.5}) == 1);
  CHECK(r->locate(std::vector<double>{1.0, 0.5}) == 0);
  CHECK(r->locate(std::vector<double>{2.0, 1.0}) == 1);
  CHECK(r->locate(std::vector<double>{2.5, 0.5}) == -1);
  CHECK(r->locate(std::vector<double>{1.0 + 1e-14, 0.5}) >= 0);
}

TEST_CASE("refinement dump")
{
  const auto r = refine(structured_mesh(1, 1), 2);
  const auto dump = r->dump_csv();
  CHECK(dump.rfind("q,id,owners,anchor\n", 0) == 0);
  // 3 vertices and 2 edges
  CHECK(std::count(dump.begin(), dump.end(), '\n') == 6);
}
