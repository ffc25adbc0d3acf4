#include "brinkman/vtk.hpp"

#include <fstream>
#include <stdexcept>

namespace brinkman {

namespace {

std::ofstream open_grid(const Mesh& mesh, const std::string& path, const std::string& title)
{
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot open " + path);
  out.precision(12);
  out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.num_vertices() << " double\n";
  for (const auto& p : mesh.vertices())
    out << p.x() << ' ' << p.y() << " 0\n";
  out << "CELLS " << mesh.num_cells() << ' ' << 4 * mesh.num_cells() << '\n';
  for (const auto& c : mesh.cells())
    out << "3 " << c[0] << ' ' << c[1] << ' ' << c[2] << '\n';
  out << "CELL_TYPES " << mesh.num_cells() << '\n';
  for (std::size_t c = 0; c < mesh.num_cells(); ++c)
    out << "5\n";
  return out;
}

}  // namespace

std::vector<std::string> write_fields_vtk(const SpaceSet& spaces, const DiscreteFields& fields, const std::string& prefix,
                                          int level)
{
  const auto& mesh = spaces.mesh();
  const std::string suffix = "_L" + std::to_string(level) + ".vtk";
  std::vector<std::string> paths;

  // Vertex DOFs come first in every continuous space.
  {
    const auto path = prefix + "_u" + suffix;
    auto out = open_grid(mesh, path, "velocity");
    out << "POINT_DATA " << mesh.num_vertices() << "\nVECTORS u double\n";
    for (std::size_t v = 0; v < mesh.num_vertices(); ++v)
      out << fields.velocity(static_cast<Eigen::Index>(2 * v)) << ' ' << fields.velocity(static_cast<Eigen::Index>(2 * v + 1)) << " 0\n";
    paths.push_back(path);
  }
  {
    const auto path = prefix + "_w" + suffix;
    auto out = open_grid(mesh, path, "vorticity");
    out << "CELL_DATA " << mesh.num_cells() << "\nSCALARS omega double 1\nLOOKUP_TABLE default\n";
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
      const auto dofs = spaces.vorticity.cell_dofs(c);
      double sum = 0.0;
      for (int d : dofs)
        sum += fields.vorticity(d);
      out << sum / static_cast<double>(dofs.size()) << '\n';
    }
    paths.push_back(path);
  }
  {
    const auto path = prefix + "_p" + suffix;
    auto out = open_grid(mesh, path, "pressure");
    out << "POINT_DATA " << mesh.num_vertices() << "\nSCALARS p double 1\nLOOKUP_TABLE default\n";
    for (std::size_t v = 0; v < mesh.num_vertices(); ++v)
      out << fields.pressure(static_cast<Eigen::Index>(v)) << '\n';
    paths.push_back(path);
  }
  return paths;
}

}  // namespace brinkman
