#include <cubeforms/smallcubes.hpp>

#include <cmath>
#include <mutex>
#include <set>
#include <stdexcept>
#include <tuple>

namespace cubeforms
{

  std::vector<double> AffineMap::operator()(std::span<const double> x) const
  {
    if (x.size() != offset.size()) {
      throw std::invalid_argument("AffineMap: dimension mismatch");
    }
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      y[i] = scale * x[i] + offset[i];
    }
    return y;
  }

  AffineMap small_cube_map(const MultiIndex& mi, int k)
  {
    if (k < 1) {
      throw std::invalid_argument("small_cube_map: order must be at least 1");
    }
    if (mi.dimension() < 1 || !mi.bounded_by(k - 1)) {
      throw std::invalid_argument("small_cube_map: multi-index outside J(n, k-1)");
    }
    AffineMap map{1.0 / k, std::vector<double>(mi.components.size())};
    for (std::size_t i = 0; i < mi.components.size(); ++i) {
      map.offset[i] = static_cast<double>(mi.components[i]) / k;
    }
    return map;
  }

  SmallCube::SmallCube(int order, MultiIndex multi_index, FaceId face)
    : order_(order), multi_index_(std::move(multi_index)), face_(std::move(face))
  {
    if (order_ < 1) {
      throw std::invalid_argument("SmallCube: order must be at least 1");
    }
    face_.validate();
    if (multi_index_.dimension() != face_.n || !multi_index_.bounded_by(order_ - 1)) {
      throw std::invalid_argument("SmallCube: multi-index outside J(n, k-1)");
    }
    const auto values = face_.coordinate_values();
    anchor_.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      anchor_[i] = multi_index_.components[i] + (values[i] < 0 ? 0 : values[i]);
    }
  }

  std::vector<double> SmallCube::anchor() const
  {
    std::vector<double> a(anchor_.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = static_cast<double>(anchor_[i]) / order_;
    }
    return a;
  }

  double SmallCube::volume() const
  {
    return std::pow(edge_length(), degree());
  }

  std::vector<double> SmallCube::point(std::span<const double> t) const
  {
    if (t.size() != face_.directions.size()) {
      throw std::invalid_argument("SmallCube::point: need one parameter per direction");
    }
    auto x = anchor();
    for (std::size_t j = 0; j < t.size(); ++j) {
      x[static_cast<std::size_t>(face_.directions[j])] += t[j] / order_;
    }
    return x;
  }

  std::uint64_t small_cube_count(int n, int p, int k)
  {
    return binomial(n, p) * static_cast<std::uint64_t>(ipow(k, p)) * static_cast<std::uint64_t>(ipow(k + 1, n - p));
  }

  std::vector<SmallCube> enumerate_small_cubes(int n, int p, int k)
  {
    if (k < 1) {
      throw std::invalid_argument("enumerate_small_cubes: order must be at least 1");
    }
    const auto faces = enumerate_faces(n, p);
    const auto indices = enumerate_multi_indices(n, k - 1);

    // Generators are visited in (mi, face) lexicographic order, so the first
    // one to claim a point set is the smallest.
    std::map<std::pair<std::vector<int>, std::vector<int>>, SmallCube> unique;
    for (const auto& mi : indices) {
      for (const auto& face : faces) {
        SmallCube cube(k, mi, face);
        auto key = std::make_pair(cube.directions(), cube.anchor_numerators());
        unique.try_emplace(std::move(key), std::move(cube));
      }
    }
    std::vector<SmallCube> result;
    result.reserve(unique.size());
    for (auto& entry : unique) {
      result.push_back(std::move(entry.second));
    }
    return result;
  }

  SmallCubeIndex::SmallCubeIndex(int n, int p, int k) : cubes_(enumerate_small_cubes(n, p, k))
  {
    for (std::size_t i = 0; i < cubes_.size(); ++i) {
      const auto& cube = cubes_[i];
      lookup_.emplace(std::make_pair(cube.directions(), cube.anchor_numerators()), static_cast<int>(i));
      auto [it, inserted] = blocks_.try_emplace(cube.directions(), static_cast<int>(i), static_cast<int>(i) + 1);
      if (!inserted) {
        it->second.second = static_cast<int>(i) + 1;
      }
    }
  }

  int SmallCubeIndex::find(const std::vector<int>& directions, const std::vector<int>& anchor) const
  {
    const auto it = lookup_.find(std::make_pair(directions, anchor));
    return it == lookup_.end() ? -1 : it->second;
  }

  std::pair<int, int> SmallCubeIndex::block(const std::vector<int>& directions) const
  {
    const auto it = blocks_.find(directions);
    return it == blocks_.end() ? std::make_pair(0, 0) : it->second;
  }

  std::shared_ptr<const SmallCubeIndex> small_cube_index(int n, int p, int k)
  {
    static std::mutex mutex;
    static std::map<std::tuple<int, int, int>, std::shared_ptr<const SmallCubeIndex>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{n, p, k}];
    if (!slot) {
      slot = std::make_shared<const SmallCubeIndex>(n, p, k);
    }
    return slot;
  }

  PavingReport pave_check(int n, int k)
  {
    const auto cells = enumerate_small_cubes(n, n, k);
    PavingReport report;
    report.cell_count = cells.size();
    // Interiors are disjoint iff no two cells share an anchor on the k-grid
    // and every anchor lies in [0, k-1]^n.
    std::set<std::vector<int>> anchors;
    bool disjoint = true;
    for (const auto& cell : cells) {
      report.total_volume += cell.volume();
      for (int a : cell.anchor_numerators()) {
        if (a < 0 || a > k - 1) {
          disjoint = false;
        }
      }
      if (!anchors.insert(cell.anchor_numerators()).second) {
        disjoint = false;
      }
    }
    report.paves = disjoint && std::abs(report.total_volume - 1.0) < 1e-12 &&
                   cells.size() == static_cast<std::size_t>(ipow(k, n));
    return report;
  }

} // namespace cubeforms
