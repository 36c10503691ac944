#include "doctest.h"
#include "test_util.hpp"

#include <Eigen/Eigenvalues>

#include "fc/elasticity.hpp"
#include "fc/quadrature.hpp"

using namespace fc;

namespace {

MatX cell_coords(CellKind k, const Mat3& map) {
  MatX X(num_nodes(k), 3);
  for (int a = 0; a < num_nodes(k); ++a) {
    X.row(a) = (map * reference_vertex(k, a)).transpose();
  }
  return X;
}

Mat3 random_map() {
  Mat3 A = Mat3::Identity() + 0.2 * Mat3::NullaryExpr([] { return test::uniform(-1, 1); });
  if (A.determinant() < 0) A.col(0) *= -1;
  return A;
}

// Independent isotropic stress for a strain tensor.
Mat3 hooke(const ElasticMaterial& m, const Mat3& eps) {
  const double lambda = m.E * m.nu / ((1 + m.nu) * (1 - 2 * m.nu));
  const double mu = m.E / (2 * (1 + m.nu));
  return lambda * eps.trace() * Mat3::Identity() + 2 * mu * eps;
}

}  // namespace

TEST_CASE("Lame parameters and Voigt round-trip") {
  const ElasticMaterial m{450e6, 0.3};
  CHECK(lame_lambda(m) == doctest::Approx(450e6 * 0.3 / (1.3 * 0.4)));
  CHECK(shear_modulus(m) == doctest::Approx(450e6 / 2.6));
  const Mat3 s = (Mat3() << 1, 2, 3, 2, 4, 5, 3, 5, 6).finished();
  CHECK(from_voigt(to_voigt(s)) == s);
  CHECK_THROWS_AS(validate(ElasticMaterial{1.0, 0.5}), Error);
  CHECK_THROWS_AS(validate(ElasticMaterial{-1.0, 0.2}), Error);
}

TEST_CASE("element stiffness: symmetry, rigid modes and uniform-strain energy") {
  const ElasticMaterial mat{2.0e3, 0.27};
  for (CellKind k : {CellKind::Hex8, CellKind::Tet4, CellKind::Wedge6}) {
    const Mat3 A = random_map();
    const MatX X = cell_coords(k, A);
    const MatX K = element_stiffness(k, X, mat);
    const int n = num_nodes(k);
    CHECK((K - K.transpose()).cwiseAbs().maxCoeff() < 1e-10 * K.cwiseAbs().maxCoeff());
    // six rigid modes
    for (int r = 0; r < 6; ++r) {
      VecX u(3 * n);
      for (int a = 0; a < n; ++a) {
        const Vec3 x = X.row(a).transpose();
        const Vec3 v = r < 3 ? Vec3(Vec3::Unit(r)) : Vec3(Vec3::Unit(r - 3).cross(x));
        u.segment<3>(3 * a) = v;
      }
      CHECK((K * u).norm() < 1e-9 * K.norm() * u.norm());
    }
    Eigen::SelfAdjointEigenSolver<MatX> eig(K);
    CHECK(eig.eigenvalues()(6) > 1e-8 * eig.eigenvalues().maxCoeff());
    // uniform strain: u = G x, energy = V/2 sigma:eps
    const Mat3 G = 1e-3 * Mat3::NullaryExpr([] { return test::uniform(-1, 1); });
    const Mat3 eps = 0.5 * (G + G.transpose());
    VecX u(3 * n);
    for (int a = 0; a < n; ++a) u.segment<3>(3 * a) = G * X.row(a).transpose();
    const double V = cell_volume(k, X);
    CHECK(V == doctest::Approx(reference_volume(k) * A.determinant()));
    CHECK(0.5 * u.dot(K * u) ==
          doctest::Approx(0.5 * V * (hooke(mat, eps).cwiseProduct(eps)).sum()).epsilon(1e-10));
    // eigenstress load is the work-conjugate of uniform strain
    const Mat3 sig = hooke(mat, eps);
    CHECK(element_eigenstress_load(k, X, sig).dot(u) ==
          doctest::Approx(V * sig.cwiseProduct(eps).sum()).epsilon(1e-10));
  }
}

TEST_CASE("scalar mass and Laplacian over the enriched basis") {
  for (CellKind k : {CellKind::Hex8, CellKind::Tet4, CellKind::Wedge6}) {
    const MatX X = cell_coords(k, random_map());
    MatX M, L;
    scalar_basis_matrices(k, X, {0}, bubble_quadrature(k), M, L);
    const int n = num_nodes(k);
    REQUIRE(M.rows() == n + 1);
    CHECK(M.topLeftCorner(n, n).sum() == doctest::Approx(cell_volume(k, X)));
    CHECK((L.topLeftCorner(n, n) * VecX::Ones(n)).norm() < 1e-12 * L.norm());
    // constants have zero gradient also against the bubble
    CHECK(std::abs(L.row(n).head(n).sum()) < 1e-12 * L.norm());
    CHECK(M(n, n) > 0.0);
    CHECK(L(n, n) > 0.0);
  }
}

TEST_CASE("enriched element kernel is positive on the bubble block") {
  const ElasticMaterial mat{1.0, 0.3};
  for (CellKind k : {CellKind::Hex8, CellKind::Tet4, CellKind::Wedge6}) {
    const MatX X = cell_coords(k, random_map());
    const ElementMatrices em = element_kernel(k, X, elasticity_tensor(mat), Mat3::Zero(), {0, 1},
                                              bubble_quadrature(k));
    const int n = num_nodes(k);
    REQUIRE(em.K.rows() == 3 * (n + 2));
    const MatX Kbb = em.K.bottomRightCorner(6, 6);
    Eigen::SelfAdjointEigenSolver<MatX> eig(Kbb);
    CHECK(eig.eigenvalues().minCoeff() > 0.0);
    CHECK(em.f.norm() == 0.0);
  }
}
