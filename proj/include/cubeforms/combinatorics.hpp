// Multi-indices and faces of the unit n-cube.
//
// Coordinates are 0-based throughout. All enumerations return values in a
// fixed lexicographic order; downstream matrix layouts depend on it.

#ifndef CUBEFORMS_COMBINATORICS_HPP
#define CUBEFORMS_COMBINATORICS_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace cubeforms
{

  /// n-tuple of nonnegative integers (translations of small cubes, polynomial exponents)
  struct MultiIndex
  {
    std::vector<int> components;

    int dimension() const { return static_cast<int>(components.size()); }
    int operator[](int i) const { return components[static_cast<std::size_t>(i)]; }

    /// Membership in J(n, bound): every component is at most bound
    bool bounded_by(int bound) const;

    auto operator<=>(const MultiIndex&) const = default;
    bool operator==(const MultiIndex&) const = default;
  };

  /// A p-face of [0,1]^n.
  ///
  /// `directions` lists the p free coordinates in increasing order. The other
  /// n-p coordinates are fixed; `fixed_values[j]` is the 0/1 value taken by the
  /// j-th fixed coordinate (fixed coordinates also in increasing order).
  struct FaceId
  {
    int n = 0;
    std::vector<int> directions;
    std::vector<int> fixed_values;

    int degree() const { return static_cast<int>(directions.size()); }

    /// Fixed coordinates, increasing
    std::vector<int> fixed_coordinates() const;

    /// Length-n vector: 0/1 for fixed coordinates, -1 for free ones
    std::vector<int> coordinate_values() const;

    bool is_free(int coordinate) const;

    /// Validates the invariants, throws std::invalid_argument
    void validate() const;

    std::string to_string() const;

    // Lexicographic on (directions, fixed_values): the fixed bits compare as a
    // binary number read from the lowest fixed coordinate.
    auto operator<=>(const FaceId&) const = default;
    bool operator==(const FaceId&) const = default;
  };

  /// Exact binomial coefficient, throws std::overflow_error past 64 bits
  std::uint64_t binomial(int n, int k);

  /// Exact factorial for 0 <= n <= 20
  std::uint64_t factorial(int n);

  /// Integer power
  std::int64_t ipow(std::int64_t base, int exponent);

  /// All of J(n, bound) in lexicographic order
  std::vector<MultiIndex> enumerate_multi_indices(int n, int bound);

  /// Increasing p-subsets of {0,...,n-1} in lexicographic order
  std::vector<std::vector<int>> direction_sets(int n, int p);

  /// Rank of an increasing direction list in direction_sets(n, p)
  int direction_set_rank(int n, const std::vector<int>& directions);

  /// All p-faces of [0,1]^n, ordered by (directions, fixed_values)
  std::vector<FaceId> enumerate_faces(int n, int p);

  /// C(n,p) 2^(n-p)
  std::uint64_t face_count(int n, int p);

} // namespace cubeforms

#endif
