#include <cubeforms/mesh.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace cubeforms
{

  namespace
  {
    std::string point_string(std::span<const double> x)
    {
      std::ostringstream out;
      out.precision(17);
      out << '(';
      for (std::size_t i = 0; i < x.size(); ++i) {
        out << (i > 0 ? ", " : "") << x[i];
      }
      out << ')';
      return out.str();
    }

    Eigen::VectorXd to_vector(const std::vector<double>& v)
    {
      return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
    }

    // Global vertex ids of every face of a cell, sorted
    std::set<std::vector<int>> cell_face_vertex_sets(const CubicalMesh& mesh, int cell)
    {
      const int n = mesh.dimension;
      const auto& corners = mesh.cells[static_cast<std::size_t>(cell)];
      std::set<std::vector<int>> sets;
      for (int q = 0; q <= n; ++q) {
        for (const auto& face : enumerate_faces(n, q)) {
          const auto values = face.coordinate_values();
          std::vector<int> ids;
          for (std::size_t b = 0; b < corners.size(); ++b) {
            bool on_face = true;
            for (int j = 0; j < n; ++j) {
              const int bit = static_cast<int>((b >> j) & 1U);
              if (values[static_cast<std::size_t>(j)] >= 0 && values[static_cast<std::size_t>(j)] != bit) {
                on_face = false;
                break;
              }
            }
            if (on_face) {
              ids.push_back(corners[b]);
            }
          }
          std::sort(ids.begin(), ids.end());
          sets.insert(std::move(ids));
        }
      }
      return sets;
    }
  } // namespace

  //------------------------------------------------------------------------------
  // Cell maps
  //------------------------------------------------------------------------------

  std::vector<double> CellMap::forward(std::span<const double> x) const
  {
    if (static_cast<Eigen::Index>(x.size()) != origin.size()) {
      throw std::invalid_argument("CellMap::forward: dimension mismatch");
    }
    const Eigen::VectorXd y =
      origin + edges * Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
    return {y.data(), y.data() + y.size()};
  }

  std::vector<double> CellMap::inverse(std::span<const double> y) const
  {
    if (static_cast<Eigen::Index>(y.size()) != origin.size()) {
      throw std::invalid_argument("CellMap::inverse: dimension mismatch");
    }
    const Eigen::VectorXd x =
      inverse_edges * (Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size())) - origin);
    return {x.data(), x.data() + x.size()};
  }

  double CellMap::diameter() const
  {
    // The diameter of a parallelotope is attained between opposite corners
    const int n = dimension();
    double best = 0.0;
    for (unsigned s = 0; s < (1U << n); ++s) {
      Eigen::VectorXd signs(n);
      for (int j = 0; j < n; ++j) {
        signs(j) = ((s >> j) & 1U) ? 1.0 : -1.0;
      }
      best = std::max(best, (edges * signs).norm());
    }
    return best;
  }

  double CellMap::fullness() const
  {
    return volume() / std::pow(diameter(), dimension());
  }

  CellMap cell_map(const CubicalMesh& mesh, int cell)
  {
    const int n = mesh.dimension;
    if (cell < 0 || cell >= static_cast<int>(mesh.cells.size())) {
      throw MeshError("cell_map: cell index " + std::to_string(cell) + " out of range");
    }
    const auto& corners = mesh.cells[static_cast<std::size_t>(cell)];
    CellMap map;
    map.origin = to_vector(mesh.vertices[static_cast<std::size_t>(corners[0])]);
    map.edges.resize(n, n);
    double scale = 0.0;
    for (int j = 0; j < n; ++j) {
      map.edges.col(j) = to_vector(mesh.vertices[static_cast<std::size_t>(corners[std::size_t{1} << j])]) - map.origin;
      scale = std::max(scale, map.edges.col(j).norm());
    }
    map.determinant = map.edges.determinant();
    if (!(std::abs(map.determinant) >= 1e-14 * std::pow(scale, n)) || scale == 0.0) {
      throw MeshError("cell " + std::to_string(cell) + " is degenerate (det = " + std::to_string(map.determinant) + ")");
    }
    map.inverse_edges = map.edges.inverse();
    return map;
  }

  Eigen::MatrixXd compound_matrix(const Eigen::MatrixXd& matrix, int p)
  {
    const int n = static_cast<int>(matrix.rows());
    const auto sets = direction_sets(n, p);
    const auto size = static_cast<Eigen::Index>(sets.size());
    Eigen::MatrixXd out(size, size);
    for (Eigen::Index r = 0; r < size; ++r) {
      for (Eigen::Index c = 0; c < size; ++c) {
        Eigen::MatrixXd minor(p, p);
        for (int a = 0; a < p; ++a) {
          for (int b = 0; b < p; ++b) {
            minor(a, b) = matrix(sets[static_cast<std::size_t>(r)][static_cast<std::size_t>(a)],
                                 sets[static_cast<std::size_t>(c)][static_cast<std::size_t>(b)]);
          }
        }
        out(r, c) = p == 0 ? 1.0 : minor.determinant();
      }
    }
    return out;
  }

  std::vector<double> pull_back_covector(const Eigen::MatrixXd& inverse_compound, std::span<const double> reference)
  {
    // (phi^{-1})^* dr_I = sum_J det(E^{-1}[I, J]) dy_J
    const Eigen::Map<const Eigen::VectorXd> ref(reference.data(), static_cast<Eigen::Index>(reference.size()));
    const Eigen::VectorXd global = inverse_compound.transpose() * ref;
    return {global.data(), global.data() + global.size()};
  }

  PulledBackForm::PulledBackForm(CellMap map, PolyForm reference)
    : map_(std::move(map)), reference_(std::move(reference)),
      compound_(compound_matrix(map_.inverse_edges, reference_.degree()))
  {
    if (reference_.dimension() != map_.dimension()) {
      throw std::invalid_argument("PulledBackForm: form and cell dimension differ");
    }
  }

  std::vector<double> PulledBackForm::operator()(std::span<const double> y, bool* outside) const
  {
    const auto x = map_.inverse(y);
    const auto ref = evaluate(reference_, x, outside);
    return pull_back_covector(compound_, ref);
  }

  PulledBackForm pullback_basis(const CellMap& map, const PolyForm& reference)
  {
    return PulledBackForm(map, reference);
  }

  //------------------------------------------------------------------------------
  // Mesh construction and validation
  //------------------------------------------------------------------------------

  void validate_mesh(const CubicalMesh& mesh)
  {
    const int n = mesh.dimension;
    if (n < 1) {
      throw MeshError("mesh dimension must be at least 1");
    }
    if (mesh.cells.empty()) {
      throw MeshError("mesh has no cells");
    }
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
      if (mesh.vertices[v].size() != static_cast<std::size_t>(n)) {
        throw MeshError("vertex " + std::to_string(v) + " has " + std::to_string(mesh.vertices[v].size()) +
                        " coordinates, expected " + std::to_string(n));
      }
    }
    const std::size_t corners = std::size_t{1} << n;
    for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
      const auto& cell = mesh.cells[c];
      if (cell.size() != corners) {
        throw MeshError("cell " + std::to_string(c) + " lists " + std::to_string(cell.size()) + " vertices, expected " +
                        std::to_string(corners));
      }
      for (std::size_t b = 0; b < corners; ++b) {
        if (cell[b] < 0 || cell[b] >= static_cast<int>(mesh.vertices.size())) {
          throw MeshError("cell " + std::to_string(c) + " corner " + std::to_string(b) + " references vertex " +
                          std::to_string(cell[b]) + " which does not exist");
        }
      }
      std::vector<int> sorted(cell);
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw MeshError("cell " + std::to_string(c) + " repeats a vertex");
      }
      // Parallelotope: corner b = v0 + sum_j b_j e_j
      const auto map = cell_map(mesh, static_cast<int>(c));
      const double scale = map.edges.colwise().norm().maxCoeff();
      for (std::size_t b = 0; b < corners; ++b) {
        Eigen::VectorXd bits(n);
        for (int j = 0; j < n; ++j) {
          bits(j) = static_cast<double>((b >> j) & 1U);
        }
        const Eigen::VectorXd expected = map.origin + map.edges * bits;
        const double deviation = (to_vector(mesh.vertices[static_cast<std::size_t>(cell[b])]) - expected).norm();
        if (deviation > 1e-12 * scale) {
          std::ostringstream msg;
          msg << "cell " << c << " is not a parallelotope: corner " << b << " (vertex " << cell[b] << ") deviates by "
              << deviation << " from v0 + sum b_j e_j";
          throw MeshError(msg.str());
        }
      }
    }

    // Distinct vertices must not coincide
    std::vector<std::size_t> order(mesh.vertices.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return mesh.vertices[a] < mesh.vertices[b]; });
    for (std::size_t i = 1; i < order.size(); ++i) {
      const auto& a = mesh.vertices[order[i - 1]];
      const auto& b = mesh.vertices[order[i]];
      double distance = 0.0;
      for (int j = 0; j < n; ++j) {
        distance = std::max(distance, std::abs(a[static_cast<std::size_t>(j)] - b[static_cast<std::size_t>(j)]));
      }
      if (distance <= 1e-12) {
        throw MeshError("vertices " + std::to_string(order[i - 1]) + " and " + std::to_string(order[i]) +
                        " coincide at " + point_string(a) + "; shared faces must reuse vertex indices");
      }
    }

    // Cells sharing vertices must share a complete common face
    std::vector<std::set<std::vector<int>>> face_sets;
    face_sets.reserve(mesh.cells.size());
    for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
      face_sets.push_back(cell_face_vertex_sets(mesh, static_cast<int>(c)));
    }
    std::vector<std::vector<int>> vertex_cells(mesh.vertices.size());
    for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
      for (int v : mesh.cells[c]) {
        vertex_cells[static_cast<std::size_t>(v)].push_back(static_cast<int>(c));
      }
    }
    std::set<std::pair<int, int>> checked;
    for (const auto& cells : vertex_cells) {
      for (std::size_t a = 0; a < cells.size(); ++a) {
        for (std::size_t b = a + 1; b < cells.size(); ++b) {
          const auto pair = std::minmax(cells[a], cells[b]);
          if (!checked.insert(pair).second) {
            continue;
          }
          std::vector<int> va(mesh.cells[static_cast<std::size_t>(pair.first)]);
          std::vector<int> vb(mesh.cells[static_cast<std::size_t>(pair.second)]);
          std::sort(va.begin(), va.end());
          std::sort(vb.begin(), vb.end());
          std::vector<int> shared;
          std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(shared));
          if (!face_sets[static_cast<std::size_t>(pair.first)].contains(shared) ||
              !face_sets[static_cast<std::size_t>(pair.second)].contains(shared)) {
            throw MeshError("cells " + std::to_string(pair.first) + " and " + std::to_string(pair.second) +
                            " share vertices that do not form a common face");
          }
        }
      }
    }

    // Cell interiors must be disjoint. Pairs with overlapping bounding boxes are
    // tested on a 3^n grid of interior points of each cell (a sampling check).
    std::vector<CellMap> maps;
    std::vector<Eigen::VectorXd> lo;
    std::vector<Eigen::VectorXd> hi;
    for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
      maps.push_back(cell_map(mesh, static_cast<int>(c)));
      lo.push_back(maps.back().origin + maps.back().edges.cwiseMin(0.0).rowwise().sum());
      hi.push_back(maps.back().origin + maps.back().edges.cwiseMax(0.0).rowwise().sum());
    }
    const auto samples = enumerate_multi_indices(n, 2);
    const auto interior_hit = [&](std::size_t c, std::size_t d) {
      for (const auto& s : samples) {
        Eigen::VectorXd t(n);
        for (int j = 0; j < n; ++j) {
          t(j) = 0.25 * (s[j] + 1);
        }
        const Eigen::VectorXd x = maps[d].inverse_edges * (maps[c].origin + maps[c].edges * t - maps[d].origin);
        if ((x.array() > 1e-9).all() && (x.array() < 1.0 - 1e-9).all()) {
          return true;
        }
      }
      return false;
    };
    std::vector<std::size_t> by_lo(maps.size());
    std::iota(by_lo.begin(), by_lo.end(), std::size_t{0});
    std::sort(by_lo.begin(), by_lo.end(), [&](std::size_t a, std::size_t b) { return lo[a](0) < lo[b](0); });
    for (std::size_t a = 0; a < by_lo.size(); ++a) {
      const std::size_t c = by_lo[a];
      const double slack = 1e-12 * (hi[c] - lo[c]).maxCoeff();
      for (std::size_t b = a + 1; b < by_lo.size() && lo[by_lo[b]](0) < hi[c](0) - slack; ++b) {
        const std::size_t d = by_lo[b];
        if (((lo[d].array() < hi[c].array() - slack) && (lo[c].array() < hi[d].array() - slack)).all() &&
            (interior_hit(c, d) || interior_hit(d, c))) {
          throw MeshError("cells " + std::to_string(std::min(c, d)) + " and " + std::to_string(std::max(c, d)) +
                          " overlap");
        }
      }
    }
  }

  CubicalMesh parse_mesh_json(const std::string& text)
  {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw MeshError(std::string("mesh JSON: ") + e.what());
    }
    CubicalMesh mesh;
    try {
      mesh.dimension = doc.at("dimension").get<int>();
      mesh.vertices = doc.at("vertices").get<std::vector<std::vector<double>>>();
      mesh.cells = doc.at("cells").get<std::vector<std::vector<int>>>();
    } catch (const nlohmann::json::exception& e) {
      throw MeshError(std::string("mesh JSON: ") + e.what());
    }
    validate_mesh(mesh);
    return mesh;
  }

  CubicalMesh load_mesh(const std::filesystem::path& path)
  {
    std::ifstream in(path);
    if (!in) {
      throw MeshError("cannot open mesh file " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_mesh_json(buffer.str());
  }

  std::string mesh_to_json(const CubicalMesh& mesh)
  {
    nlohmann::json doc;
    doc["dimension"] = mesh.dimension;
    doc["vertices"] = mesh.vertices;
    doc["cells"] = mesh.cells;
    return doc.dump();
  }

  CubicalMesh structured_mesh(int n, int m, double shear)
  {
    if (n < 1) {
      throw std::invalid_argument("structured_mesh: dimension must be at least 1");
    }
    if (m < 1) {
      throw std::invalid_argument("structured_mesh: need at least one cell per axis");
    }
    CubicalMesh mesh;
    mesh.dimension = n;
    const auto grid = enumerate_multi_indices(n, m);
    mesh.vertices.reserve(grid.size());
    for (const auto& g : grid) {
      std::vector<double> x(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        x[static_cast<std::size_t>(i)] = static_cast<double>(g[i]) / m;
      }
      if (n >= 2) {
        x[0] += shear * x[1];
      }
      mesh.vertices.push_back(std::move(x));
    }
    // Vertex grid is lexicographic with the last coordinate fastest
    auto vertex_id = [n, m](const std::vector<int>& g) {
      int id = 0;
      for (int i = 0; i < n; ++i) {
        id = id * (m + 1) + g[static_cast<std::size_t>(i)];
      }
      return id;
    };
    for (const auto& c : enumerate_multi_indices(n, m - 1)) {
      std::vector<int> cell(std::size_t{1} << n);
      for (std::size_t b = 0; b < cell.size(); ++b) {
        auto g = c.components;
        for (int j = 0; j < n; ++j) {
          g[static_cast<std::size_t>(j)] += static_cast<int>((b >> j) & 1U);
        }
        cell[b] = vertex_id(g);
      }
      mesh.cells.push_back(std::move(cell));
    }
    return mesh;
  }

  //------------------------------------------------------------------------------
  // Refinement
  //------------------------------------------------------------------------------

  namespace
  {
    // Identifies a point of the mesh by the multilinear weights of its owning
    // cell's corners, as integers over (2k)^n. Points on shared faces get the
    // same key from every cell because shared faces reuse vertex ids.
    using PointKey = std::vector<std::pair<int, std::int64_t>>;

    PointKey centre_key(const std::vector<int>& corners, const SmallCube& cube, int k)
    {
      const int n = cube.dimension();
      std::vector<std::int64_t> numerators(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        numerators[static_cast<std::size_t>(i)] =
          2 * cube.anchor_numerators()[static_cast<std::size_t>(i)] + (cube.face().is_free(i) ? 1 : 0);
      }
      PointKey key;
      for (std::size_t b = 0; b < corners.size(); ++b) {
        std::int64_t weight = 1;
        for (int j = 0; j < n; ++j) {
          const auto num = numerators[static_cast<std::size_t>(j)];
          weight *= ((b >> j) & 1U) ? num : 2 * k - num;
        }
        if (weight != 0) {
          key.emplace_back(corners[b], weight);
        }
      }
      std::sort(key.begin(), key.end());
      return key;
    }

    Eigen::MatrixXd pushed_tangents(const CellMap& map, const SmallCube& cube)
    {
      const auto& dirs = cube.directions();
      Eigen::MatrixXd t(map.dimension(), static_cast<Eigen::Index>(dirs.size()));
      for (std::size_t j = 0; j < dirs.size(); ++j) {
        t.col(static_cast<Eigen::Index>(j)) = map.edges.col(dirs[j]) / cube.order();
      }
      return t;
    }
  } // namespace

  RefinedMesh::RefinedMesh(CubicalMesh mesh, int k) : mesh_(std::move(mesh)), k_(k)
  {
    if (k < 1) {
      throw std::invalid_argument("refine: order must be at least 1");
    }
    validate_mesh(mesh_);
    const int n = mesh_.dimension;
    const auto cells = static_cast<std::size_t>(cell_count());
    for (std::size_t c = 0; c < cells; ++c) {
      maps_.push_back(cubeforms::cell_map(mesh_, static_cast<int>(c)));
      std::vector<Eigen::MatrixXd> compounds;
      for (int p = 0; p <= n; ++p) {
        compounds.push_back(compound_matrix(maps_.back().inverse_edges, p));
      }
      compounds_.push_back(std::move(compounds));
      Eigen::VectorXd lo = maps_.back().origin;
      Eigen::VectorXd hi = maps_.back().origin;
      for (const auto& corner : mesh_.cells[c]) {
        const auto v = to_vector(mesh_.vertices[static_cast<std::size_t>(corner)]);
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
      }
      boxes_.emplace_back(lo, hi);
    }

    cubes_.resize(static_cast<std::size_t>(n + 1));
    ids_.resize(static_cast<std::size_t>(n + 1));
    signs_.resize(static_cast<std::size_t>(n + 1));
    boundary_.resize(static_cast<std::size_t>(n + 1));
    for (int q = 0; q <= n; ++q) {
      local_.push_back(small_cube_index(n, q, k));
      const auto& local = local_.back()->cubes();
      auto& ids = ids_[static_cast<std::size_t>(q)];
      auto& signs = signs_[static_cast<std::size_t>(q)];
      auto& global = cubes_[static_cast<std::size_t>(q)];
      ids.assign(cells * local.size(), -1);
      signs.assign(cells * local.size(), 1);

      std::map<PointKey, int> lookup;
      for (std::size_t c = 0; c < cells; ++c) {
        for (std::size_t l = 0; l < local.size(); ++l) {
          auto key = centre_key(mesh_.cells[c], local[l], k);
          auto [it, inserted] = lookup.try_emplace(std::move(key), static_cast<int>(global.size()));
          CubeOwner owner{static_cast<int>(c), static_cast<int>(l), 1};
          if (inserted) {
            global.push_back(GlobalCube{{owner}});
          } else {
            const auto& first = global[static_cast<std::size_t>(it->second)].owners.front();
            if (q > 0) {
              const Eigen::MatrixXd u = pushed_tangents(maps_[static_cast<std::size_t>(first.cell)],
                                                        local[static_cast<std::size_t>(first.local)]);
              const Eigen::MatrixXd v = pushed_tangents(maps_[c], local[l]);
              owner.sign = (u.transpose() * v).determinant() > 0.0 ? 1 : -1;
            }
            global[static_cast<std::size_t>(it->second)].owners.push_back(owner);
          }
          ids[c * local.size() + l] = it->second;
          signs[c * local.size() + l] = owner.sign;
        }
      }

      if (q == 0) {
        continue;
      }
      // Boundary of the owner's reference copy: in direction d_j the pair of
      // opposite faces contributes (-1)^j (top - bottom), j counted from 0.
      const auto& lower = *local_[static_cast<std::size_t>(q - 1)];
      auto& boundary = boundary_[static_cast<std::size_t>(q)];
      boundary.resize(global.size());
      for (std::size_t g = 0; g < global.size(); ++g) {
        const auto& owner = global[g].owners.front();
        const auto& cube = local[static_cast<std::size_t>(owner.local)];
        const auto& dirs = cube.directions();
        for (std::size_t j = 0; j < dirs.size(); ++j) {
          std::vector<int> face_dirs(dirs);
          face_dirs.erase(face_dirs.begin() + static_cast<std::ptrdiff_t>(j));
          auto bottom = cube.anchor_numerators();
          auto top = bottom;
          ++top[static_cast<std::size_t>(dirs[j])];
          const int parity = (j % 2 == 0) ? 1 : -1;
          for (const auto& [anchor, side] : {std::pair{bottom, -1}, std::pair{top, 1}}) {
            const int l = lower.find(face_dirs, anchor);
            if (l < 0) {
              throw std::logic_error("refine: boundary face missing from reference list");
            }
            const int id = global_id(q - 1, owner.cell, l);
            const int s = local_sign(q - 1, owner.cell, l);
            boundary[g].push_back(Incidence{id, parity * side * s * owner.sign});
          }
        }
      }
    }
  }

  const Eigen::MatrixXd& RefinedMesh::inverse_compound(int cell, int p) const
  {
    return compounds_[static_cast<std::size_t>(cell)][static_cast<std::size_t>(p)];
  }

  int RefinedMesh::global_id(int q, int cell, int local) const
  {
    const auto stride = local_[static_cast<std::size_t>(q)]->size();
    return ids_[static_cast<std::size_t>(q)][static_cast<std::size_t>(cell) * stride + static_cast<std::size_t>(local)];
  }

  int RefinedMesh::local_sign(int q, int cell, int local) const
  {
    const auto stride = local_[static_cast<std::size_t>(q)]->size();
    return signs_[static_cast<std::size_t>(q)][static_cast<std::size_t>(cell) * stride + static_cast<std::size_t>(local)];
  }

  const std::vector<Incidence>& RefinedMesh::boundary(int q, int id) const
  {
    if (q < 1 || q > dimension()) {
      throw std::invalid_argument("RefinedMesh::boundary: degree must be in [1, n]");
    }
    return boundary_[static_cast<std::size_t>(q)][static_cast<std::size_t>(id)];
  }

  std::vector<double> RefinedMesh::anchor(int q, int id) const
  {
    const auto& owner = cube(q, id).owners.front();
    const auto& local = local_cubes(q).cubes()[static_cast<std::size_t>(owner.local)];
    return cell_map(owner.cell).forward(local.anchor());
  }

  std::vector<double> RefinedMesh::point(int q, int id, std::span<const double> t) const
  {
    const auto& owner = cube(q, id).owners.front();
    const auto& local = local_cubes(q).cubes()[static_cast<std::size_t>(owner.local)];
    return cell_map(owner.cell).forward(local.point(t));
  }

  Eigen::MatrixXd RefinedMesh::tangents(int q, int id) const
  {
    const auto& owner = cube(q, id).owners.front();
    const auto& local = local_cubes(q).cubes()[static_cast<std::size_t>(owner.local)];
    return pushed_tangents(cell_map(owner.cell), local);
  }

  int RefinedMesh::locate(std::span<const double> y) const
  {
    const Eigen::Map<const Eigen::VectorXd> point(y.data(), static_cast<Eigen::Index>(y.size()));
    for (int c = 0; c < cell_count(); ++c) {
      const auto& [lo, hi] = boxes_[static_cast<std::size_t>(c)];
      const double slack = 1e-12 * std::max(1.0, (hi - lo).maxCoeff());
      if (((point - lo).array() < -slack).any() || ((point - hi).array() > slack).any()) {
        continue;
      }
      const auto& map = maps_[static_cast<std::size_t>(c)];
      const Eigen::VectorXd x = map.inverse_edges * (point - map.origin);
      if ((x.array() >= -1e-12).all() && (x.array() <= 1.0 + 1e-12).all()) {
        return c;
      }
    }
    return -1;
  }

  std::string RefinedMesh::dump_csv() const
  {
    std::ostringstream out;
    out.precision(17);
    out << "q,id,owners,anchor\n";
    for (int q = 0; q <= dimension(); ++q) {
      for (int id = 0; id < static_cast<int>(count(q)); ++id) {
        out << q << ',' << id << ',';
        const auto& owners = cube(q, id).owners;
        for (std::size_t o = 0; o < owners.size(); ++o) {
          out << (o > 0 ? ";" : "") << owners[o].cell;
        }
        out << ',';
        const auto a = anchor(q, id);
        for (std::size_t i = 0; i < a.size(); ++i) {
          out << (i > 0 ? ";" : "") << a[i];
        }
        out << '\n';
      }
    }
    return out.str();
  }

  std::shared_ptr<const RefinedMesh> refine(const CubicalMesh& mesh, int k)
  {
    return std::make_shared<const RefinedMesh>(mesh, k);
  }

} // namespace cubeforms
