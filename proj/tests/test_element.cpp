#include "doctest.h"
#include "test_util.hpp"

#include <cmath>

#include "fc/bubble.hpp"
#include "fc/element.hpp"
#include "fc/quadrature.hpp"

using namespace fc;
using fc::test::uniform;

namespace {

const CellKind kKinds[] = {CellKind::Hex8, CellKind::Tet4, CellKind::Wedge6};

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

double line_monomial(int a) { return a % 2 ? 0.0 : 2.0 / (a + 1); }

// Exact integral of x^a y^b z^c over the reference cell.
double monomial_integral(CellKind k, int a, int b, int c) {
  switch (k) {
    case CellKind::Hex8:
      return line_monomial(a) * line_monomial(b) * line_monomial(c);
    case CellKind::Tet4:
      return factorial(a) * factorial(b) * factorial(c) / factorial(a + b + c + 3);
    case CellKind::Wedge6:
      return factorial(a) * factorial(b) / factorial(a + b + 2) * line_monomial(c);
  }
  return 0.0;
}

Vec3 random_reference_point(CellKind k) {
  for (;;) {
    const Vec3 p(uniform(-1, 1), uniform(-1, 1), uniform(-1, 1));
    if (k == CellKind::Hex8) return p;
    const Vec3 q = 0.5 * (p + Vec3::Ones());
    if (k == CellKind::Tet4 && q.sum() < 1.0) return q;
    if (k == CellKind::Wedge6 && q(0) + q(1) < 1.0) return Vec3(q(0), q(1), p(2));
  }
}

Vec2 random_face_point(FaceKind k) {
  for (;;) {
    const Vec2 s(uniform(-1, 1), uniform(-1, 1));
    if (k == FaceKind::Quad4) return s;
    const Vec2 q = 0.5 * (s + Vec2::Ones());
    if (q.sum() < 1.0) return q;
  }
}

std::vector<Vec2> face_reference_vertices(FaceKind k) {
  if (k == FaceKind::Quad4) return {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
  return {{0, 0}, {1, 0}, {0, 1}};
}

}  // namespace

TEST_CASE("shape functions interpolate vertices and sum to one") {
  for (CellKind k : kKinds) {
    const int n = num_nodes(k);
    for (int a = 0; a < n; ++a) {
      const VecX N = shape_values(k, reference_vertex(k, a));
      for (int b = 0; b < n; ++b) CHECK(N(b) == doctest::Approx(a == b ? 1.0 : 0.0));
    }
    for (int i = 0; i < 20; ++i) {
      const Vec3 p = random_reference_point(k);
      CHECK(shape_values(k, p).sum() == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(shape_gradients(k, p).colwise().sum().norm() < 1e-13);
    }
  }
}

TEST_CASE("shape gradients match central differences") {
  const double d = 1e-6;
  for (CellKind k : kKinds) {
    for (int i = 0; i < 20; ++i) {
      const Vec3 p = random_reference_point(k);
      const MatX G = shape_gradients(k, p);
      for (int j = 0; j < 3; ++j) {
        const Vec3 e = Vec3::Unit(j) * d;
        const VecX fd = (shape_values(k, p + e) - shape_values(k, p - e)) / (2 * d);
        CHECK((fd - G.col(j)).norm() < 1e-8);
      }
    }
  }
}

TEST_CASE("reference volumes and centroids") {
  CHECK(reference_volume(CellKind::Hex8) == doctest::Approx(8.0));
  CHECK(reference_volume(CellKind::Tet4) == doctest::Approx(1.0 / 6.0));
  CHECK(reference_volume(CellKind::Wedge6) == doctest::Approx(1.0));
  for (CellKind k : kKinds) {
    Vec3 c = Vec3::Zero();
    for (int a = 0; a < num_nodes(k); ++a) c += reference_vertex(k, a);
    CHECK((c / num_nodes(k) - reference_centroid(k)).norm() < 1e-14);
    CHECK(inside_reference(k, reference_centroid(k)));
    CHECK_FALSE(inside_reference(k, Vec3(2, 2, 2)));
  }
}

TEST_CASE("Gauss-Legendre integrates polynomials up to degree 2n-1") {
  for (int n = 1; n <= 6; ++n) {
    std::vector<double> x, w;
    gauss_legendre(n, x, w);
    REQUIRE(x.size() == static_cast<std::size_t>(n));
    for (int a = 0; a <= 2 * n - 1; ++a) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += w[i] * std::pow(x[i], a);
      CHECK(s == doctest::Approx(line_monomial(a)).epsilon(1e-13));
    }
  }
}

TEST_CASE("cell quadrature rules are exact to their stated degree") {
  for (CellKind k : kKinds) {
    for (const QuadratureRule* r : {&standard_quadrature(k), &bubble_quadrature(k)}) {
      for (int a = 0; a <= r->degree; ++a) {
        for (int b = 0; a + b <= r->degree; ++b) {
          for (int c = 0; a + b + c <= r->degree; ++c) {
            double s = 0.0;
            for (std::size_t q = 0; q < r->points.size(); ++q) {
              const Vec3& p = r->points[q];
              s += r->weights[q] * std::pow(p(0), a) * std::pow(p(1), b) * std::pow(p(2), c);
            }
            CHECK(s == doctest::Approx(monomial_integral(k, a, b, c)).epsilon(1e-12));
          }
        }
      }
    }
  }
}

TEST_CASE("collapsed triangle rule is exact to degree 2n-2") {
  const FaceQuadratureRule tri = collapsed_triangle_rule(4);
  for (int a = 0; a <= 6; ++a) {
    for (int b = 0; a + b <= 6; ++b) {
      double s = 0.0;
      for (std::size_t q = 0; q < tri.points.size(); ++q) {
        s += tri.weights[q] * std::pow(tri.points[q](0), a) * std::pow(tri.points[q](1), b);
      }
      CHECK(s == doctest::Approx(factorial(a) * factorial(b) / factorial(a + b + 2)));
    }
  }
}

TEST_CASE("face maps send face vertices to cell vertices") {
  for (CellKind k : kKinds) {
    for (int f = 0; f < num_faces(k); ++f) {
      const FaceKind fk = local_face_kind(k, f);
      const std::vector<int>& nodes = local_face_nodes(k, f);
      const auto sv = face_reference_vertices(fk);
      REQUIRE(nodes.size() == sv.size());
      for (std::size_t i = 0; i < sv.size(); ++i) {
        const Vec3 x = face_to_cell_reference(k, fk, nodes, sv[i]);
        CHECK((x - reference_vertex(k, nodes[i])).norm() < 1e-14);
      }
    }
  }
}

TEST_CASE("bubble values at face centres") {
  for (int f = 0; f < 6; ++f) {
    Vec3 c = Vec3::Zero();
    for (int a : local_face_nodes(CellKind::Hex8, f)) c += reference_vertex(CellKind::Hex8, a);
    CHECK(bubble_value(CellKind::Hex8, f, c / 4.0) == doctest::Approx(1.0).epsilon(1e-14));
  }
  for (int f = 0; f < 4; ++f) {
    Vec3 c = Vec3::Zero();
    for (int a : local_face_nodes(CellKind::Tet4, f)) c += reference_vertex(CellKind::Tet4, a);
    CHECK(bubble_value(CellKind::Tet4, f, c / 3.0) == doctest::Approx(1.0 / 27.0).epsilon(1e-14));
  }
}

TEST_CASE("bubbles vanish on every other face") {
  for (CellKind k : kKinds) {
    for (int f = 0; f < num_faces(k); ++f) {
      for (int g = 0; g < num_faces(k); ++g) {
        if (g == f) continue;
        const FaceKind fk = local_face_kind(k, g);
        for (int i = 0; i < 20; ++i) {
          const Vec3 x = face_to_cell_reference(k, fk, local_face_nodes(k, g),
                                                random_face_point(fk));
          CHECK(std::abs(bubble_value(k, f, x)) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("bubbles are positive inside and their gradients match differences") {
  const double d = 1e-6;
  for (CellKind k : kKinds) {
    for (int f = 0; f < num_faces(k); ++f) {
      for (int i = 0; i < 10; ++i) {
        const Vec3 p = random_reference_point(k);
        CHECK(bubble_value(k, f, p) > 0.0);
        const Vec3 g = bubble_gradient(k, f, p);
        for (int j = 0; j < 3; ++j) {
          const Vec3 e = Vec3::Unit(j) * d;
          const double fd = (bubble_value(k, f, p + e) - bubble_value(k, f, p - e)) / (2 * d);
          CHECK(std::abs(fd - g(j)) < 1e-8);
        }
      }
    }
  }
  CHECK_THROWS_AS(bubble_value(CellKind::Tet4, 4, Vec3::Zero()), Error);
}

TEST_CASE("geometry of an affinely mapped hexahedron") {
  MatX X(8, 3);
  const Vec3 scale(2.0, 3.0, 0.5);
  for (int a = 0; a < 8; ++a) {
    const Vec3 r = reference_vertex(CellKind::Hex8, a);
    X.row(a) = (0.5 * (r + Vec3::Ones())).cwiseProduct(scale).transpose();
  }
  for (int i = 0; i < 5; ++i) {
    const PointGeometry g = evaluate_geometry(CellKind::Hex8, X, random_reference_point(CellKind::Hex8));
    CHECK(g.det == doctest::Approx(scale.prod() / 8.0));
    // gradients reproduce the linear field x
    CHECK((X.transpose() * g.grad - Mat3::Identity()).norm() < 1e-13);
  }
}

TEST_CASE("kind names round-trip") {
  for (CellKind k : kKinds) CHECK(cell_kind_from_string(to_string(k)) == k);
  CHECK(cell_kind_from_string("wedge") == CellKind::Wedge6);
  CHECK_THROWS_AS(cell_kind_from_string("pyramid"), Error);
}
