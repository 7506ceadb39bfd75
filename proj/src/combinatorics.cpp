#include <cubeforms/combinatorics.hpp>

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace cubeforms
{

  bool MultiIndex::bounded_by(int bound) const
  {
    return std::all_of(components.begin(), components.end(), [bound](int c) { return c >= 0 && c <= bound; });
  }

  std::vector<int> FaceId::fixed_coordinates() const
  {
    std::vector<int> fixed;
    fixed.reserve(static_cast<std::size_t>(n - degree()));
    for (int i = 0; i < n; ++i) {
      if (!is_free(i)) {
        fixed.push_back(i);
      }
    }
    return fixed;
  }

  std::vector<int> FaceId::coordinate_values() const
  {
    std::vector<int> values(static_cast<std::size_t>(n), -1);
    const auto fixed = fixed_coordinates();
    for (std::size_t j = 0; j < fixed.size(); ++j) {
      values[static_cast<std::size_t>(fixed[j])] = fixed_values[j];
    }
    return values;
  }

  bool FaceId::is_free(int coordinate) const
  {
    return std::binary_search(directions.begin(), directions.end(), coordinate);
  }

  void FaceId::validate() const
  {
    if (n < 1) {
      throw std::invalid_argument("FaceId: dimension must be at least 1");
    }
    if (directions.size() > static_cast<std::size_t>(n)) {
      throw std::invalid_argument("FaceId: more directions than coordinates");
    }
    for (std::size_t j = 0; j < directions.size(); ++j) {
      if (directions[j] < 0 || directions[j] >= n || (j > 0 && directions[j] <= directions[j - 1])) {
        throw std::invalid_argument("FaceId: directions must be strictly increasing in [0, n)");
      }
    }
    if (fixed_values.size() != static_cast<std::size_t>(n) - directions.size()) {
      throw std::invalid_argument("FaceId: need one fixed value per non-free coordinate");
    }
    for (int v : fixed_values) {
      if (v != 0 && v != 1) {
        throw std::invalid_argument("FaceId: fixed values must be 0 or 1");
      }
    }
  }

  std::string FaceId::to_string() const
  {
    std::ostringstream out;
    const auto values = coordinate_values();
    out << '(';
    for (int i = 0; i < n; ++i) {
      if (i > 0) {
        out << ',';
      }
      if (values[static_cast<std::size_t>(i)] < 0) {
        out << '*';
      } else {
        out << values[static_cast<std::size_t>(i)];
      }
    }
    out << ')';
    return out.str();
  }

  std::uint64_t binomial(int n, int k)
  {
    if (k < 0 || n < 0 || k > n) {
      return 0;
    }
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i) {
      const auto factor = static_cast<std::uint64_t>(n - k + i);
      if (result > std::numeric_limits<std::uint64_t>::max() / factor) {
        throw std::overflow_error("binomial: overflow");
      }
      // result * factor is divisible by i at every step
      result = result * factor / static_cast<std::uint64_t>(i);
    }
    return result;
  }

  std::uint64_t factorial(int n)
  {
    if (n < 0 || n > 20) {
      throw std::out_of_range("factorial: argument outside [0, 20]");
    }
    std::uint64_t result = 1;
    for (int i = 2; i <= n; ++i) {
      result *= static_cast<std::uint64_t>(i);
    }
    return result;
  }

  std::int64_t ipow(std::int64_t base, int exponent)
  {
    std::int64_t result = 1;
    for (int i = 0; i < exponent; ++i) {
      result *= base;
    }
    return result;
  }

  std::vector<MultiIndex> enumerate_multi_indices(int n, int bound)
  {
    if (n < 1) {
      throw std::invalid_argument("enumerate_multi_indices: dimension must be at least 1");
    }
    if (bound < 0) {
      throw std::invalid_argument("enumerate_multi_indices: bound must be nonnegative");
    }
    std::vector<MultiIndex> result;
    result.reserve(static_cast<std::size_t>(ipow(bound + 1, n)));
    MultiIndex current{std::vector<int>(static_cast<std::size_t>(n), 0)};
    while (true) {
      result.push_back(current);
      // odometer, last coordinate fastest
      int i = n - 1;
      while (i >= 0 && current.components[static_cast<std::size_t>(i)] == bound) {
        current.components[static_cast<std::size_t>(i)] = 0;
        --i;
      }
      if (i < 0) {
        break;
      }
      ++current.components[static_cast<std::size_t>(i)];
    }
    return result;
  }

  std::vector<std::vector<int>> direction_sets(int n, int p)
  {
    if (p < 0 || p > n) {
      throw std::invalid_argument("direction_sets: need 0 <= p <= n");
    }
    std::vector<std::vector<int>> result;
    std::vector<int> current(static_cast<std::size_t>(p));
    for (int j = 0; j < p; ++j) {
      current[static_cast<std::size_t>(j)] = j;
    }
    while (true) {
      result.push_back(current);
      int j = p - 1;
      while (j >= 0 && current[static_cast<std::size_t>(j)] == n - p + j) {
        --j;
      }
      if (j < 0) {
        break;
      }
      ++current[static_cast<std::size_t>(j)];
      for (int l = j + 1; l < p; ++l) {
        current[static_cast<std::size_t>(l)] = current[static_cast<std::size_t>(l - 1)] + 1;
      }
    }
    return result;
  }

  int direction_set_rank(int n, const std::vector<int>& directions)
  {
    // Lexicographic rank of a combination
    const int p = static_cast<int>(directions.size());
    int rank = 0;
    int previous = -1;
    for (int j = 0; j < p; ++j) {
      for (int v = previous + 1; v < directions[static_cast<std::size_t>(j)]; ++v) {
        rank += static_cast<int>(binomial(n - v - 1, p - j - 1));
      }
      previous = directions[static_cast<std::size_t>(j)];
    }
    return rank;
  }

  std::vector<FaceId> enumerate_faces(int n, int p)
  {
    if (n < 1) {
      throw std::invalid_argument("enumerate_faces: dimension must be at least 1");
    }
    if (p < 0 || p > n) {
      throw std::invalid_argument("enumerate_faces: need 0 <= p <= n");
    }
    std::vector<FaceId> faces;
    faces.reserve(face_count(n, p));
    const int fixed = n - p;
    for (auto& dirs : direction_sets(n, p)) {
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << fixed); ++bits) {
        FaceId face{n, dirs, std::vector<int>(static_cast<std::size_t>(fixed))};
        for (int j = 0; j < fixed; ++j) {
          face.fixed_values[static_cast<std::size_t>(j)] = static_cast<int>((bits >> (fixed - 1 - j)) & 1U);
        }
        faces.push_back(std::move(face));
      }
    }
    return faces;
  }

  std::uint64_t face_count(int n, int p)
  {
    return binomial(n, p) * (std::uint64_t{1} << (n - p));
  }

} // namespace cubeforms
