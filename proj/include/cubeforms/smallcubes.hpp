// kth-order small p-cubes of the unit n-cube.
//
// A small cube is the image of a p-face under x -> (mi + x)/k with mi in
// J(n, k-1). Distinct generators can produce the same point set; small cubes
// are therefore identified by (directions, anchor) with the anchor stored as
// exact integer numerators over k.

#ifndef CUBEFORMS_SMALLCUBES_HPP
#define CUBEFORMS_SMALLCUBES_HPP

#include <cubeforms/combinatorics.hpp>

#include <map>
#include <memory>
#include <span>
#include <vector>

namespace cubeforms
{

  /// x -> scale * x + offset
  struct AffineMap
  {
    double scale = 1.0;
    std::vector<double> offset;

    std::vector<double> operator()(std::span<const double> x) const;
  };

  /// Homothety x -> (mi + x)/k. Throws if mi is not in J(n, k-1).
  AffineMap small_cube_map(const MultiIndex& mi, int k);

  class SmallCube
  {
  public:
    SmallCube(int order, MultiIndex multi_index, FaceId face);

    int order() const { return order_; }
    int dimension() const { return face_.n; }
    int degree() const { return face_.degree(); }
    const MultiIndex& multi_index() const { return multi_index_; }
    const FaceId& face() const { return face_; }
    const std::vector<int>& directions() const { return face_.directions; }

    /// Anchor numerators a_i: anchor = a / k, a_i in [0, k]
    const std::vector<int>& anchor_numerators() const { return anchor_; }
    std::vector<double> anchor() const;
    double edge_length() const { return 1.0 / order_; }
    /// p-dimensional volume (1/k)^p; 1 for points
    double volume() const;

    /// Corner of the small cube at local parameters t in [0,1]^p along its directions
    std::vector<double> point(std::span<const double> t) const;

    bool same_point_set(const SmallCube& other) const
    {
      return order_ == other.order_ && face_.directions == other.face_.directions && anchor_ == other.anchor_;
    }

  private:
    int order_;
    MultiIndex multi_index_;
    FaceId face_;
    std::vector<int> anchor_;
  };

  /// Deduplicated small p-cubes ordered by (directions, anchor).
  /// Each entry keeps the lexicographically smallest (mi, face) generator.
  std::vector<SmallCube> enumerate_small_cubes(int n, int p, int k);

  /// C(n,p) k^p (k+1)^(n-p)
  std::uint64_t small_cube_count(int n, int p, int k);

  /// Lookup from (directions, anchor numerators) to position in enumerate_small_cubes(n, p, k)
  class SmallCubeIndex
  {
  public:
    SmallCubeIndex(int n, int p, int k);

    const std::vector<SmallCube>& cubes() const { return cubes_; }
    std::size_t size() const { return cubes_.size(); }
    /// -1 when absent
    int find(const std::vector<int>& directions, const std::vector<int>& anchor) const;

    /// Contiguous index range [first, last) of the cubes with a given direction set
    std::pair<int, int> block(const std::vector<int>& directions) const;

  private:
    std::vector<SmallCube> cubes_;
    std::map<std::pair<std::vector<int>, std::vector<int>>, int> lookup_;
    std::map<std::vector<int>, std::pair<int, int>> blocks_;
  };

  /// Shared, lazily built index for (n, p, k); safe to call concurrently
  std::shared_ptr<const SmallCubeIndex> small_cube_index(int n, int p, int k);

  /// Result of checking that the k^n small n-cubes tile [0,1]^n
  struct PavingReport
  {
    bool paves = false;
    std::size_t cell_count = 0;
    double total_volume = 0.0;
  };

  PavingReport pave_check(int n, int k);

} // namespace cubeforms

#endif
