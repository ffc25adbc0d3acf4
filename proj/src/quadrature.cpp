#include "brinkman/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace brinkman {

namespace {

// Golub-Welsch for the Jacobi weight (1-t)^alpha (1+t)^beta on [-1, 1].
void gauss_jacobi(int m, double alpha, double beta, std::vector<double>& nodes, std::vector<double>& weights)
{
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(m, m);
  const double ab = alpha + beta;
  for (int k = 0; k < m; ++k) {
    const double s = 2.0 * k + ab;
    jac(k, k) = (k == 0) ? (beta - alpha) / (ab + 2.0) : (beta * beta - alpha * alpha) / (s * (s + 2.0));
    if (k + 1 < m) {
      const double n = k + 1.0;
      const double t = 2.0 * n + ab;
      const double b = 4.0 * n * (n + alpha) * (n + beta) * (n + ab) / (t * t * (t + 1.0) * (t - 1.0));
      jac(k, k + 1) = jac(k + 1, k) = std::sqrt(b);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jac);
  const double mu0 = std::pow(2.0, ab + 1.0) * std::tgamma(alpha + 1.0) * std::tgamma(beta + 1.0) / std::tgamma(ab + 2.0);
  nodes.resize(static_cast<std::size_t>(m));
  weights.resize(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    nodes[static_cast<std::size_t>(k)] = eig.eigenvalues()(k);
    const double v0 = eig.eigenvectors()(0, k);
    weights[static_cast<std::size_t>(k)] = mu0 * v0 * v0;
  }
}

}  // namespace

void gauss_legendre_unit(int m, std::vector<double>& nodes, std::vector<double>& weights)
{
  gauss_jacobi(m, 0.0, 0.0, nodes, weights);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    nodes[k] = 0.5 * (nodes[k] + 1.0);
    weights[k] *= 0.5;
  }
}

QuadratureRule triangle_rule(int degree)
{
  if (degree < 1 || degree > kMaxQuadratureDegree)
    throw std::invalid_argument("triangle_rule: unsupported degree " + std::to_string(degree));

  const int m = (degree + 2) / 2;  // 2m-1 >= degree

  std::vector<double> u, wu, v, wv;
  gauss_legendre_unit(m, u, wu);
  // Weight (1-v) on [0,1] from (1-t) on [-1,1]: v=(1+t)/2, (1-v)dv = (1-t)dt/4.
  gauss_jacobi(m, 1.0, 0.0, v, wv);
  for (std::size_t k = 0; k < v.size(); ++k) {
    v[k] = 0.5 * (v[k] + 1.0);
    wv[k] *= 0.25;
  }

  QuadratureRule rule;
  rule.degree = degree;
  for (std::size_t j = 0; j < v.size(); ++j)
    for (std::size_t i = 0; i < u.size(); ++i) {
      rule.points.emplace_back(u[i] * (1.0 - v[j]), v[j]);
      rule.weights.push_back(wu[i] * wv[j]);
    }
  return rule;
}

}  // namespace brinkman
