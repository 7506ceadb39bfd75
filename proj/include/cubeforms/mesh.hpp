// Cubical meshes of parallelotopes and their kth-order refinement.
//
// Cells list 2^n vertex indices in binary-corner order: position b (bit j =
// reference coordinate j) holds the vertex phi(b). The refinement assigns a
// global id to every small q-cube (0 <= q <= n) and orients it by its lowest
// owning cell's push-forward of the reference orientation e_{i_1}^...^e_{i_q}.

#ifndef CUBEFORMS_MESH_HPP
#define CUBEFORMS_MESH_HPP

#include <cubeforms/forms.hpp>
#include <cubeforms/smallcubes.hpp>

#include <Eigen/Dense>

#include <filesystem>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubeforms
{

  class MeshError : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  struct CubicalMesh
  {
    int dimension = 0;
    std::vector<std::vector<double>> vertices;
    std::vector<std::vector<int>> cells;
  };

  /// Throws MeshError naming the offending cell/corner
  void validate_mesh(const CubicalMesh& mesh);

  /// JSON: {"dimension": n, "vertices": [[...], ...], "cells": [[2^n indices], ...]}
  CubicalMesh parse_mesh_json(const std::string& text);
  CubicalMesh load_mesh(const std::filesystem::path& path);
  std::string mesh_to_json(const CubicalMesh& mesh);

  /// m^n congruent cells covering [0,1]^n, then x_0 += shear * x_1 (n >= 2)
  CubicalMesh structured_mesh(int n, int m, double shear = 0.0);

  /// phi(x) = origin + edges * x
  struct CellMap
  {
    Eigen::VectorXd origin;
    Eigen::MatrixXd edges;
    Eigen::MatrixXd inverse_edges;
    double determinant = 0.0;

    int dimension() const { return static_cast<int>(origin.size()); }
    std::vector<double> forward(std::span<const double> x) const;
    std::vector<double> inverse(std::span<const double> y) const;
    double diameter() const;
    double volume() const { return std::abs(determinant); }
    /// |sigma| / diam(sigma)^n
    double fullness() const;
  };

  /// Throws MeshError for a degenerate cell (|det E| < 1e-14 scale^n)
  CellMap cell_map(const CubicalMesh& mesh, int cell);

  /// Matrix of p x p minors, rows/columns indexed by direction_sets(n, p)
  Eigen::MatrixXd compound_matrix(const Eigen::MatrixXd& matrix, int p);

  /// Components of (phi^{-1})^* of a reference p-covector, in global coordinates
  std::vector<double> pull_back_covector(const Eigen::MatrixXd& inverse_compound, std::span<const double> reference);

  /// A reference form transported to a cell by phi^{-1}
  class PulledBackForm
  {
  public:
    PulledBackForm(CellMap map, PolyForm reference);

    /// Global components at a physical point; `outside` flags points off the cell
    std::vector<double> operator()(std::span<const double> y, bool* outside = nullptr) const;

    const CellMap& map() const { return map_; }
    const PolyForm& reference() const { return reference_; }

  private:
    CellMap map_;
    PolyForm reference_;
    Eigen::MatrixXd compound_;
  };

  PulledBackForm pullback_basis(const CellMap& map, const PolyForm& reference);

  struct CubeOwner
  {
    int cell = 0;
    /// Index into the reference small-cube list of degree q
    int local = 0;
    /// Orientation of the cell's copy relative to the global orientation
    int sign = 1;
  };

  struct GlobalCube
  {
    /// owners.front() is the lowest-index cell and fixes the orientation
    std::vector<CubeOwner> owners;
  };

  struct Incidence
  {
    int id = 0;
    int sign = 0;
  };

  class RefinedMesh
  {
  public:
    RefinedMesh(CubicalMesh mesh, int k);

    const CubicalMesh& mesh() const { return mesh_; }
    int dimension() const { return mesh_.dimension; }
    int order() const { return k_; }
    int cell_count() const { return static_cast<int>(mesh_.cells.size()); }
    const CellMap& cell_map(int cell) const { return maps_[static_cast<std::size_t>(cell)]; }

    /// compound_matrix(E^{-1}, p) of a cell
    const Eigen::MatrixXd& inverse_compound(int cell, int p) const;

    const SmallCubeIndex& local_cubes(int q) const { return *local_[static_cast<std::size_t>(q)]; }

    std::size_t count(int q) const { return cubes_[static_cast<std::size_t>(q)].size(); }
    const GlobalCube& cube(int q, int id) const
    {
      return cubes_[static_cast<std::size_t>(q)][static_cast<std::size_t>(id)];
    }

    int global_id(int q, int cell, int local) const;
    int local_sign(int q, int cell, int local) const;

    /// Signed boundary of a global q-cube (q >= 1) in terms of global (q-1)-cubes
    const std::vector<Incidence>& boundary(int q, int id) const;

    /// Physical anchor of a global cube (image of the owner's reference anchor)
    std::vector<double> anchor(int q, int id) const;

    /// Physical point at local parameters t in [0,1]^q, and the oriented tangent vectors (columns)
    std::vector<double> point(int q, int id, std::span<const double> t) const;
    Eigen::MatrixXd tangents(int q, int id) const;

    /// Lowest-index cell containing y (tolerance 1e-12 in reference coordinates), or -1
    int locate(std::span<const double> y) const;

    /// CSV dump: q,id,owners,anchor
    std::string dump_csv() const;

  private:
    CubicalMesh mesh_;
    int k_;
    std::vector<CellMap> maps_;
    std::vector<std::vector<Eigen::MatrixXd>> compounds_;
    std::vector<std::shared_ptr<const SmallCubeIndex>> local_;
    std::vector<std::vector<GlobalCube>> cubes_;
    // [q][cell * local_count + local]
    std::vector<std::vector<int>> ids_;
    std::vector<std::vector<int>> signs_;
    std::vector<std::vector<std::vector<Incidence>>> boundary_;
    std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> boxes_;
  };

  /// Validates and refines at order k
  std::shared_ptr<const RefinedMesh> refine(const CubicalMesh& mesh, int k);

} // namespace cubeforms

#endif
