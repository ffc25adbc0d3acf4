#include "brinkman/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

namespace brinkman {

std::array<Point, 3> Mesh::cell_points(std::size_t c) const
{
  const auto& cell = cells_[c];
  return {vertex(cell[0]), vertex(cell[1]), vertex(cell[2])};
}

double Mesh::cell_area(std::size_t c) const
{
  const auto [a, b, d] = cell_points(c);
  return 0.5 * ((b.x() - a.x()) * (d.y() - a.y()) - (d.x() - a.x()) * (b.y() - a.y()));
}

Point Mesh::cell_centroid(std::size_t c) const
{
  const auto [a, b, d] = cell_points(c);
  return (a + b + d) / 3.0;
}

bool on_boundary(const Point& p)
{
  return p.x() == 0.0 || p.x() == 1.0 || p.y() == 0.0 || p.y() == 1.0;
}

Mesh build_structured_mesh(int n)
{
  if (n < 1)
    throw std::invalid_argument("build_structured_mesh: n must be >= 1, got " + std::to_string(n));

  Mesh mesh;
  mesh.n_ = n;
  mesh.h_ = std::sqrt(2.0) / n;

  const int stride = n + 1;
  mesh.vertices_.reserve(static_cast<std::size_t>(stride * stride));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      mesh.vertices_.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n);

  mesh.cells_.reserve(static_cast<std::size_t>(2 * n * n));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int a = j * stride + i;
      const int b = a + 1;
      const int c = a + stride + 1;
      const int d = a + stride;
      mesh.cells_.push_back({a, b, c});
      mesh.cells_.push_back({a, c, d});
    }
  }

  std::map<std::array<int, 2>, int> edge_index;
  for (const auto& cell : mesh.cells_)
    for (int k = 0; k < 3; ++k) {
      const int u = cell[k], v = cell[(k + 1) % 3];
      edge_index.emplace(std::array<int, 2>{std::min(u, v), std::max(u, v)}, 0);
    }
  mesh.edges_.reserve(edge_index.size());
  for (auto& [edge, index] : edge_index) {
    index = static_cast<int>(mesh.edges_.size());
    mesh.edges_.push_back(edge);
  }

  std::vector<int> edge_cell_count(mesh.edges_.size(), 0);
  mesh.cell_edges_.reserve(mesh.cells_.size());
  for (const auto& cell : mesh.cells_) {
    std::array<int, 3> ce{};
    for (int k = 0; k < 3; ++k) {
      const int u = cell[k], v = cell[(k + 1) % 3];
      ce[k] = edge_index.at({std::min(u, v), std::max(u, v)});
      ++edge_cell_count[static_cast<std::size_t>(ce[k])];
    }
    mesh.cell_edges_.push_back(ce);
  }

  for (std::size_t e = 0; e < mesh.edges_.size(); ++e)
    if (edge_cell_count[e] == 1)
      mesh.boundary_edges_.push_back(static_cast<int>(e));
  for (std::size_t v = 0; v < mesh.vertices_.size(); ++v)
    if (on_boundary(mesh.vertices_[v]))
      mesh.boundary_vertices_.push_back(static_cast<int>(v));

  return mesh;
}

Mesh refine(const Mesh& mesh)
{
  return build_structured_mesh(2 * mesh.n());
}

void write_mesh_vtk(const Mesh& mesh, const std::string& path)
{
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot open " + path);
  out.precision(17);
  out << "# vtk DataFile Version 3.0\nbrinkman mesh n=" << mesh.n() << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.num_vertices() << " double\n";
  for (const auto& p : mesh.vertices())
    out << p.x() << ' ' << p.y() << " 0\n";
  out << "CELLS " << mesh.num_cells() << ' ' << 4 * mesh.num_cells() << '\n';
  for (const auto& c : mesh.cells())
    out << "3 " << c[0] << ' ' << c[1] << ' ' << c[2] << '\n';
  out << "CELL_TYPES " << mesh.num_cells() << '\n';
  for (std::size_t c = 0; c < mesh.num_cells(); ++c)
    out << "5\n";
}

}  // namespace brinkman
