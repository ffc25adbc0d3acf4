#include "oracle.hpp"

#include <cmath>
#include <vector>

#include "brinkman/quadrature.hpp"

namespace oracle {

using brinkman::ElementKind;
using brinkman::FunctionSpace;
using brinkman::Point;

namespace {

struct Barycentric {
  Point p[3];
  Eigen::Vector2d grad[3];

  explicit Barycentric(const std::array<Point, 3>& v)
  {
    for (int k = 0; k < 3; ++k)
      p[k] = v[static_cast<std::size_t>(k)];
    Eigen::Matrix2d m;
    m.col(0) = p[1] - p[0];
    m.col(1) = p[2] - p[0];
    const Eigen::Matrix2d inv = m.inverse();
    grad[1] = inv.row(0).transpose();
    grad[2] = inv.row(1).transpose();
    grad[0] = -grad[1] - grad[2];
  }

  double lambda(int k, const Point& x) const
  {
    if (k == 0)
      return 1.0 - lambda(1, x) - lambda(2, x);
    return grad[k].dot(x - p[0]);
  }
};

bool same(const Point& a, const Point& b) { return (a - b).norm() < 1e-12; }

struct Eval {
  double value = 0.0;
  Eigen::Vector2d grad = Eigen::Vector2d::Zero();
};

// Value of the scalar basis function attached to DOF location `node` on a cell.
Eval evaluate(const FunctionSpace& space, const Barycentric& b, const Point& node, const Point& x)
{
  Eval e;
  double l[3];
  for (int k = 0; k < 3; ++k)
    l[k] = b.lambda(k, x);
  const auto& fam = space.family();

  if (fam.kind == ElementKind::LagrangeDiscontinuous && fam.degree == 0) {
    e.value = 1.0;
    return e;
  }
  for (int k = 0; k < 3; ++k)
    if (same(node, b.p[k])) {
      if (fam.degree == 2 && fam.kind == ElementKind::LagrangeContinuous) {
        e.value = l[k] * (2 * l[k] - 1);
        e.grad = (4 * l[k] - 1) * b.grad[k];
      } else {
        e.value = l[k];
        e.grad = b.grad[k];
      }
      return e;
    }
  if (fam.kind == ElementKind::LagrangeContinuous && fam.degree == 2)
    for (int k = 0; k < 3; ++k) {
      const int a = k, c = (k + 1) % 3;
      if (same(node, 0.5 * (b.p[a] + b.p[c]))) {
        e.value = 4 * l[a] * l[c];
        e.grad = 4 * (l[a] * b.grad[c] + l[c] * b.grad[a]);
        return e;
      }
    }
  if (fam.kind == ElementKind::MiniVelocity && same(node, (b.p[0] + b.p[1] + b.p[2]) / 3.0)) {
    e.value = 27 * l[0] * l[1] * l[2];
    e.grad = 27 * (l[1] * l[2] * b.grad[0] + l[0] * l[2] * b.grad[1] + l[0] * l[1] * b.grad[2]);
  }
  return e;
}

// Scalar DOFs whose basis function is supported on cell c.
std::vector<int> support(const FunctionSpace& space, std::size_t c, const Barycentric& b)
{
  std::vector<int> out;
  if (space.family().kind == ElementKind::LagrangeDiscontinuous) {
    for (int d : space.cell_dofs(c))
      out.push_back(d);
    return out;
  }
  const auto& coords = space.dof_coords();
  const Point centroid = (b.p[0] + b.p[1] + b.p[2]) / 3.0;
  for (int s = 0; s < space.scalar_ndof(); ++s) {
    const Point& x = coords[static_cast<std::size_t>(s)];
    bool inside = same(x, centroid) && space.family().kind == ElementKind::MiniVelocity;
    for (int k = 0; k < 3; ++k)
      inside = inside || same(x, b.p[k]) || same(x, 0.5 * (b.p[k] + b.p[(k + 1) % 3]));
    if (inside)
      out.push_back(s);
  }
  return out;
}

// A vector test/trial function phi e_comp.
struct VectorEval {
  int dof;
  Eigen::Vector2d value;
  Eigen::Matrix2d grad;  // grad(i, j) = d v_i / d x_j

  double div() const { return grad(0, 0) + grad(1, 1); }
  double curl() const { return grad(1, 0) - grad(0, 1); }
};

}  // namespace

DenseSystem dense_assemble(const brinkman::SpaceSet& spaces, const brinkman::ProblemCoefficients& coeffs,
                           const brinkman::Forcing& forcing, int quad_degree, int rhs_degree, bool dirichlet)
{
  const auto& mesh = spaces.mesh();
  const int nu_dofs = spaces.velocity.ndof();
  const int nw = spaces.vorticity.ndof();
  const int np = spaces.pressure.ndof();
  const int w0 = nu_dofs, p0 = nu_dofs + nw, lam = nu_dofs + nw + np, n = lam + 1;

  DenseSystem sys;
  sys.matrix = Eigen::MatrixXd::Zero(n, n);
  sys.rhs = Eigen::VectorXd::Zero(n);
  const auto rule = brinkman::triangle_rule(quad_degree);
  const auto rhs_rule = brinkman::triangle_rule(rhs_degree);
  const double k1n0 = coeffs.kappa1 * coeffs.nu0();

  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const Barycentric b(mesh.cell_points(c));
    const auto su = support(spaces.velocity, c, b);
    const auto sw = support(spaces.vorticity, c, b);
    const auto sp = support(spaces.pressure, c, b);
    Eigen::Matrix2d jac;
    jac.col(0) = b.p[1] - b.p[0];
    jac.col(1) = b.p[2] - b.p[0];
    const double area = std::abs(jac.determinant());

    auto velocity_at = [&](const Point& x) {
      std::vector<VectorEval> out;
      for (int s : su) {
        const auto e = evaluate(spaces.velocity, b, spaces.velocity.dof_coords()[static_cast<std::size_t>(s)], x);
        for (int comp = 0; comp < 2; ++comp) {
          VectorEval v{2 * s + comp, Eigen::Vector2d::Zero(), Eigen::Matrix2d::Zero()};
          v.value(comp) = e.value;
          v.grad.row(comp) = e.grad.transpose();
          out.push_back(v);
        }
      }
      return out;
    };
    auto scalar_at = [&](const FunctionSpace& space, const std::vector<int>& dofs, const Point& x) {
      std::vector<double> out;
      for (int s : dofs)
        out.push_back(evaluate(space, b, space.dof_coords()[static_cast<std::size_t>(s)], x).value);
      return out;
    };

    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Point x = b.p[0] + jac * rule.points[q];
      const double w = rule.weights[q] * area;
      const auto nu = coeffs.nu(x);
      const double nv = nu.value;
      const Eigen::Vector2d gn = nu.gradient;
      const auto V = velocity_at(x);
      const auto W = scalar_at(spaces.vorticity, sw, x);
      const auto P = scalar_at(spaces.pressure, sp, x);

      for (const auto& v : V) {
        for (const auto& u : V) {
          const Eigen::Matrix2d eps = 0.5 * (u.grad + u.grad.transpose());
          double a = nv * coeffs.kinv * u.value.dot(v.value);
          a += k1n0 * u.curl() * v.curl();
          a += coeffs.kappa2 * u.div() * v.div();
          a -= 2.0 * (eps * gn).dot(v.value);
          sys.matrix(v.dof, u.dof) += w * a;
        }
        for (std::size_t j = 0; j < sw.size(); ++j) {
          const double om = W[j];
          const double cross = gn.x() * v.value.y() - gn.y() * v.value.x();
          sys.matrix(v.dof, w0 + sw[j]) += w * (nv * om * v.curl() - k1n0 * om * v.curl() + om * cross);
        }
        for (std::size_t m = 0; m < sp.size(); ++m)
          sys.matrix(v.dof, p0 + sp[m]) += -w * P[m] * v.div();
      }
      for (std::size_t i = 0; i < sw.size(); ++i) {
        const double th = W[i];
        for (std::size_t j = 0; j < sw.size(); ++j)
          sys.matrix(w0 + sw[i], w0 + sw[j]) += w * nv * W[j] * th;
        for (const auto& u : V)
          sys.matrix(w0 + sw[i], u.dof) += -w * nv * th * u.curl();
      }
      for (std::size_t m = 0; m < sp.size(); ++m) {
        for (const auto& u : V)
          sys.matrix(p0 + sp[m], u.dof) += -w * P[m] * u.div();
        sys.matrix(p0 + sp[m], lam) += w * P[m];
        sys.matrix(lam, p0 + sp[m]) += w * P[m];
      }
    }

    for (std::size_t q = 0; q < rhs_rule.size(); ++q) {
      const Point x = b.p[0] + jac * rhs_rule.points[q];
      const double w = rhs_rule.weights[q] * area;
      const Eigen::Vector2d f = forcing(x);
      for (const auto& v : velocity_at(x))
        sys.rhs(v.dof) += w * f.dot(v.value);
    }
  }

  if (dirichlet) {
    const auto& coords = spaces.velocity.dof_coords();
    for (int s = 0; s < spaces.velocity.scalar_ndof(); ++s) {
      const Point& x = coords[static_cast<std::size_t>(s)];
      const bool bdry = std::abs(x.x()) < 1e-14 || std::abs(x.y()) < 1e-14 || std::abs(x.x() - 1) < 1e-14
                        || std::abs(x.y() - 1) < 1e-14;
      if (!bdry)
        continue;
      for (int comp = 0; comp < 2; ++comp) {
        const int d = 2 * s + comp;
        sys.matrix.row(d).setZero();
        sys.matrix.col(d).setZero();
        sys.matrix(d, d) = 1.0;
        sys.rhs(d) = 0.0;
      }
    }
  }
  return sys;
}

Eigen::Vector2d fd_forcing(const brinkman::ProblemCoefficients& coeffs, const brinkman::ExactSolution& exact,
                           const Point& x, double step)
{
  auto u0 = [&](const Point& y) { return exact.u(y).x(); };
  auto u1 = [&](const Point& y) { return exact.u(y).y(); };
  auto om = [&](const Point& y) { return exact.omega(y); };
  auto pr = [&](const Point& y) { return exact.pressure(y); };
  auto nu = [&](const Point& y) { return coeffs.nu(y).value; };

  Eigen::Matrix2d gu;
  gu << central_difference(u0, x, 0, step), central_difference(u0, x, 1, step), central_difference(u1, x, 0, step),
      central_difference(u1, x, 1, step);
  const Eigen::Matrix2d eps = 0.5 * (gu + gu.transpose());
  const Eigen::Vector2d gnu(central_difference(nu, x, 0, step), central_difference(nu, x, 1, step));
  const Eigen::Vector2d curl_om(central_difference(om, x, 1, step), -central_difference(om, x, 0, step));
  const Eigen::Vector2d gp(central_difference(pr, x, 0, step), central_difference(pr, x, 1, step));
  const double n = nu(x);
  return n * coeffs.kinv * exact.u(x) + n * curl_om - 2.0 * eps * gnu + gp;
}

double relative_max_error(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b)
{
  const double scale = b.cwiseAbs().maxCoeff();
  return (a - b).cwiseAbs().maxCoeff() / (scale > 0 ? scale : 1.0);
}

}  // namespace oracle
