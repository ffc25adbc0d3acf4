#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace brinkman {

using Point = Eigen::Vector2d;

/// Structured triangulation of the unit square.
///
/// The square is cut into n x n sub-squares, each split along its
/// lower-left to upper-right diagonal. Vertex (i, j) has index j*(n+1)+i and
/// coordinates (i/n, j/n). Cells are counterclockwise vertex triples; local
/// edge k of a cell joins local vertices k and (k+1)%3.
class Mesh {
public:
  int n() const { return n_; }
  double h() const { return h_; }

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_cells() const { return cells_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& cells() const { return cells_; }
  /// Vertex pairs (lo, hi), sorted lexicographically.
  const std::vector<std::array<int, 2>>& edges() const { return edges_; }
  const std::vector<std::array<int, 3>>& cell_edges() const { return cell_edges_; }
  const std::vector<int>& boundary_vertices() const { return boundary_vertices_; }
  const std::vector<int>& boundary_edges() const { return boundary_edges_; }

  const Point& vertex(int v) const { return vertices_[static_cast<std::size_t>(v)]; }
  std::array<Point, 3> cell_points(std::size_t c) const;
  double cell_area(std::size_t c) const;
  Point cell_centroid(std::size_t c) const;

private:
  friend Mesh build_structured_mesh(int n);

  int n_ = 0;
  double h_ = 0.0;
  std::vector<Point> vertices_;
  std::vector<std::array<int, 3>> cells_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<std::array<int, 3>> cell_edges_;
  std::vector<int> boundary_vertices_;
  std::vector<int> boundary_edges_;
};

/// Throws std::invalid_argument for n < 1.
Mesh build_structured_mesh(int n);

/// Same mesh as build_structured_mesh(2 * mesh.n()).
Mesh refine(const Mesh& mesh);

bool on_boundary(const Point& p);

/// Legacy ASCII VTK unstructured grid of the triangulation.
void write_mesh_vtk(const Mesh& mesh, const std::string& path);

}  // namespace brinkman
