#pragma once

#include <vector>

#include "brinkman/mesh.hpp"

namespace brinkman {

/// Quadrature on the reference triangle {x, y >= 0, x + y <= 1}.
/// Weights sum to the reference area 1/2.
struct QuadratureRule {
  std::vector<Point> points;
  std::vector<double> weights;
  int degree = 0;

  std::size_t size() const { return points.size(); }
};

inline constexpr int kMaxQuadratureDegree = 12;

/// Collapsed (Stroud conical product) Gauss rule exact for total degree
/// `degree`. degree=1 is the centroid rule. Throws std::invalid_argument
/// outside [1, kMaxQuadratureDegree].
QuadratureRule triangle_rule(int degree);

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre_unit(int m, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace brinkman
