#pragma once

#include <string>
#include <vector>

#include "brinkman/analysis.hpp"
#include "brinkman/assembly.hpp"

namespace brinkman {

/// Writes <prefix>_u_L<level>.vtk (vertex vectors), <prefix>_w_L<level>.vtk
/// (cell averages) and <prefix>_p_L<level>.vtk (vertex values) as legacy
/// ASCII unstructured grids. Returns the paths written.
std::vector<std::string> write_fields_vtk(const SpaceSet& spaces, const DiscreteFields& fields, const std::string& prefix,
                                          int level);

}  // namespace brinkman
