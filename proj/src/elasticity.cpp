#include "fc/elasticity.hpp"

#include <cmath>

#include "fc/bubble.hpp"

namespace fc {

void validate(const ElasticMaterial& m) {
  if (!(m.E > 0.0) || !(m.nu > -1.0 && m.nu < 0.5)) {
    throw Error("invalid elastic material (E=" + std::to_string(m.E) +
                ", nu=" + std::to_string(m.nu) + ")");
  }
}

double lame_lambda(const ElasticMaterial& m) {
  return m.E * m.nu / ((1.0 + m.nu) * (1.0 - 2.0 * m.nu));
}

double shear_modulus(const ElasticMaterial& m) {
  return m.E / (2.0 * (1.0 + m.nu));
}

Mat6 elasticity_tensor(const ElasticMaterial& m) {
  validate(m);
  const double lam = lame_lambda(m);
  const double mu = shear_modulus(m);
  Mat6 C = Mat6::Zero();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) C(i, j) = lam;
    C(i, i) = lam + 2.0 * mu;
    C(i + 3, i + 3) = mu;
  }
  return C;
}

Voigt to_voigt(const Mat3& s) {
  Voigt v;
  v << s(0, 0), s(1, 1), s(2, 2), s(1, 2), s(0, 2), s(0, 1);
  return v;
}

Mat3 from_voigt(const Voigt& v) {
  Mat3 s;
  s << v(0), v(5), v(4), v(5), v(1), v(3), v(4), v(3), v(2);
  return s;
}

namespace {

// Strain-displacement rows for one scalar basis gradient g.
void fill_b(Eigen::Matrix<double, 6, Eigen::Dynamic>& B, int col,
            const Vec3& g) {
  B.block<6, 3>(0, col).setZero();
  B(0, col) = g(0);
  B(1, col + 1) = g(1);
  B(2, col + 2) = g(2);
  B(3, col + 1) = g(2);
  B(3, col + 2) = g(1);
  B(4, col) = g(2);
  B(4, col + 2) = g(0);
  B(5, col) = g(1);
  B(5, col + 1) = g(0);
}

PointGeometry checked_geometry(CellKind kind, const MatX& coords,
                               const Vec3& xi, Index cell_id) {
  PointGeometry geo = evaluate_geometry(kind, coords, xi);
  if (!(geo.det > 0.0)) {
    throw MeshError("non-positive Jacobian in cell " + std::to_string(cell_id));
  }
  return geo;
}

// Physical gradients of the full basis (nodal then bubbles) and values.
void basis_at(CellKind kind, const PointGeometry& geo,
              const std::vector<int>& bubble_faces, const Vec3& xi,
              MatX& grad, VecX* values) {
  const int n = num_nodes(kind);
  const int nb = static_cast<int>(bubble_faces.size());
  grad.resize(n + nb, 3);
  grad.topRows(n) = geo.grad;
  const Mat3 jinv = geo.jacobian.inverse();
  for (int b = 0; b < nb; ++b) {
    grad.row(n + b) =
        bubble_gradient(kind, bubble_faces[b], xi).transpose() * jinv;
  }
  if (values) {
    values->resize(n + nb);
    values->head(n) = shape_values(kind, xi);
    for (int b = 0; b < nb; ++b) {
      (*values)(n + b) = bubble_value(kind, bubble_faces[b], xi);
    }
  }
}

}  // namespace

ElementMatrices element_kernel(CellKind kind, const MatX& coords,
                               const Mat6& C, const Mat3& sigma_eig,
                               const std::vector<int>& bubble_faces,
                               const QuadratureRule& rule, Index cell_id) {
  const int nbasis = num_nodes(kind) + static_cast<int>(bubble_faces.size());
  const int ndof = 3 * nbasis;
  ElementMatrices out;
  out.K = MatX::Zero(ndof, ndof);
  out.f = VecX::Zero(ndof);
  const Voigt s0 = to_voigt(sigma_eig);
  const bool has_eig = sigma_eig.norm() > 0.0;
  Eigen::Matrix<double, 6, Eigen::Dynamic> B(6, ndof);
  MatX grad;
  for (std::size_t q = 0; q < rule.points.size(); ++q) {
    const PointGeometry geo =
        checked_geometry(kind, coords, rule.points[q], cell_id);
    basis_at(kind, geo, bubble_faces, rule.points[q], grad, nullptr);
    for (int a = 0; a < nbasis; ++a) fill_b(B, 3 * a, grad.row(a));
    const double w = rule.weights[q] * geo.det;
    out.K.noalias() += w * B.transpose() * C * B;
    if (has_eig) out.f.noalias() += w * B.transpose() * s0;
  }
  // exact symmetry
  out.K = 0.5 * (out.K + out.K.transpose()).eval();
  return out;
}

MatX element_stiffness(CellKind kind, const MatX& coords,
                       const ElasticMaterial& mat, Index cell_id) {
  return element_kernel(kind, coords, elasticity_tensor(mat), Mat3::Zero(), {},
                        standard_quadrature(kind), cell_id)
      .K;
}

VecX element_eigenstress_load(CellKind kind, const MatX& coords,
                              const Mat3& sigma_eig, Index cell_id) {
  return element_kernel(kind, coords, Mat6::Identity(), sigma_eig, {},
                        standard_quadrature(kind), cell_id)
      .f;
}

void scalar_basis_matrices(CellKind kind, const MatX& coords,
                           const std::vector<int>& bubble_faces,
                           const QuadratureRule& rule, MatX& mass,
                           MatX& laplace, Index cell_id) {
  const int nbasis = num_nodes(kind) + static_cast<int>(bubble_faces.size());
  mass = MatX::Zero(nbasis, nbasis);
  laplace = MatX::Zero(nbasis, nbasis);
  MatX grad;
  VecX val;
  for (std::size_t q = 0; q < rule.points.size(); ++q) {
    const PointGeometry geo =
        checked_geometry(kind, coords, rule.points[q], cell_id);
    basis_at(kind, geo, bubble_faces, rule.points[q], grad, &val);
    const double w = rule.weights[q] * geo.det;
    mass.noalias() += w * val * val.transpose();
    laplace.noalias() += w * grad * grad.transpose();
  }
}

double cell_volume(CellKind kind, const MatX& coords) {
  const QuadratureRule& rule = standard_quadrature(kind);
  double v = 0.0;
  for (std::size_t q = 0; q < rule.points.size(); ++q) {
    v += rule.weights[q] * evaluate_geometry(kind, coords, rule.points[q]).det;
  }
  return v;
}

}  // namespace fc
