#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "brinkman/mesh.hpp"

using namespace brinkman;

TEST_SUITE("mesh") {

TEST_CASE("entity counts of the structured mesh")
{
  for (int n : {1, 2, 3, 4, 8, 16}) {
    CAPTURE(n);
    const auto m = build_structured_mesh(n);
    const auto nn = static_cast<std::size_t>(n);
    CHECK(m.num_vertices() == (nn + 1) * (nn + 1));
    CHECK(m.num_cells() == 2 * nn * nn);
    CHECK(m.num_edges() == 3 * nn * nn + 2 * nn);
    CHECK(m.boundary_vertices().size() == 4 * nn);
    CHECK(m.boundary_edges().size() == 4 * nn);
    CHECK(m.h() == doctest::Approx(std::sqrt(2.0) / n).epsilon(1e-15));
    // Euler characteristic of a disc
    CHECK(static_cast<long>(m.num_vertices()) - static_cast<long>(m.num_edges()) + static_cast<long>(m.num_cells()) == 1);
  }
}

TEST_CASE("cells are counterclockwise and tile the square")
{
  const auto m = build_structured_mesh(5);
  double area = 0.0;
  for (std::size_t c = 0; c < m.num_cells(); ++c) {
    CHECK(m.cell_area(c) > 0.0);
    area += m.cell_area(c);
  }
  CHECK(area == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("vertex numbering and diagonal direction")
{
  const auto m = build_structured_mesh(2);
  CHECK(m.vertex(4).x() == 0.5);
  CHECK(m.vertex(4).y() == 0.5);
  CHECK(m.vertex(5).x() == 1.0);
  // every sub-square is cut from lower left to upper right
  std::map<std::array<int, 2>, int> present;
  for (const auto& e : m.edges())
    present[e] = 1;
  CHECK(present.count({0, 4}) == 1);
  CHECK(present.count({1, 3}) == 0);
}

TEST_CASE("edges are sorted pairs shared by at most two cells")
{
  const auto m = build_structured_mesh(4);
  std::vector<int> count(m.num_edges(), 0);
  for (std::size_t c = 0; c < m.num_cells(); ++c)
    for (int k = 0; k < 3; ++k) {
      const int e = m.cell_edges()[c][static_cast<std::size_t>(k)];
      const auto& cell = m.cells()[c];
      const int a = cell[static_cast<std::size_t>(k)], b = cell[static_cast<std::size_t>((k + 1) % 3)];
      CHECK(m.edges()[static_cast<std::size_t>(e)] == std::array<int, 2>{std::min(a, b), std::max(a, b)});
      ++count[static_cast<std::size_t>(e)];
    }
  for (std::size_t e = 0; e < m.num_edges(); ++e) {
    CHECK(m.edges()[e][0] < m.edges()[e][1]);
    CHECK((count[e] == 1 || count[e] == 2));
    const bool bdry = on_boundary(m.vertex(m.edges()[e][0])) && on_boundary(m.vertex(m.edges()[e][1]))
                      && count[e] == 1;
    CHECK(bdry == (count[e] == 1));
  }
}

TEST_CASE("refinement and invalid input")
{
  const auto m = build_structured_mesh(3);
  const auto r = refine(m);
  CHECK(r.n() == 6);
  CHECK(r.num_cells() == 4 * m.num_cells());
  CHECK_THROWS_AS(build_structured_mesh(0), std::invalid_argument);
  CHECK_THROWS_AS(build_structured_mesh(-2), std::invalid_argument);
}

TEST_CASE("legacy VTK output re-parses")
{
  const auto m = build_structured_mesh(3);
  const auto path = (std::filesystem::temp_directory_path() / "brinkman_mesh_test.vtk").string();
  write_mesh_vtk(m, path);
  std::ifstream in(path);
  std::string line, word;
  std::size_t points = 0, cells = 0, types = 0;
  while (std::getline(in, line)) {
    std::istringstream s(line);
    s >> word;
    if (word == "POINTS")
      s >> points;
    else if (word == "CELLS")
      s >> cells;
    else if (word == "CELL_TYPES")
      s >> types;
  }
  CHECK(points == m.num_vertices());
  CHECK(cells == m.num_cells());
  CHECK(types == m.num_cells());
  std::filesystem::remove(path);
}

}
