#include "fc/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace fc {

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  if (n < 1) throw Error("Gauss rule needs at least one point");
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  auto legendre = [n](double z, double& p, double& dp) {
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    p = n == 1 ? z : p1;
    dp = n == 1 ? 1.0 : n * (z * p1 - p0) / (z * z - 1.0);
  };
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      legendre(z, p, dp);
      const double dz = p / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    legendre(z, p, dp);
    x[n - 1 - i] = z;
    w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

namespace {

QuadratureRule hex_rule(int n) {
  std::vector<double> x, w;
  gauss_legendre(n, x, w);
  QuadratureRule r;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        r.points.emplace_back(x[i], x[j], x[k]);
        r.weights.push_back(w[i] * w[j] * w[k]);
      }
  r.degree = 2 * n - 1;
  return r;
}

QuadratureRule tet4_rule() {
  const double a = 0.5854101966249685;
  const double b = 0.1381966011250105;
  QuadratureRule r;
  for (int i = 0; i < 4; ++i) {
    double l[4] = {b, b, b, b};
    l[i] = a;
    r.points.emplace_back(l[1], l[2], l[3]);
    r.weights.push_back(1.0 / 24.0);
  }
  r.degree = 2;
  return r;
}

QuadratureRule tet14_rule() {
  QuadratureRule r;
  auto add = [&](const double l[4], double w) {
    r.points.emplace_back(l[1], l[2], l[3]);
    r.weights.push_back(w);
  };
  const double a1 = 0.092735250310891238445, w1 = 0.012248840519393661727;
  const double a2 = 0.31088591926330061388, w2 = 0.018781320953002649328;
  const double a3 = 0.045503704125649596633, w3 = 0.0070910034628469037414;
  for (auto [a, w] : {std::pair{a1, w1}, std::pair{a2, w2}}) {
    for (int i = 0; i < 4; ++i) {
      double l[4] = {a, a, a, a};
      l[i] = 1.0 - 3.0 * a;
      add(l, w);
    }
  }
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      double l[4] = {0.5 - a3, 0.5 - a3, 0.5 - a3, 0.5 - a3};
      l[i] = a3;
      l[j] = a3;
      add(l, w3);
    }
  r.degree = 5;
  return r;
}

FaceQuadratureRule tri3_rule() {
  FaceQuadratureRule r;
  r.points = {Vec2(1.0 / 6, 1.0 / 6), Vec2(2.0 / 3, 1.0 / 6),
              Vec2(1.0 / 6, 2.0 / 3)};
  r.weights = {1.0 / 6, 1.0 / 6, 1.0 / 6};
  r.degree = 2;
  return r;
}

FaceQuadratureRule tri4_rule() {
  FaceQuadratureRule r;
  r.points = {Vec2(1.0 / 3, 1.0 / 3), Vec2(0.6, 0.2), Vec2(0.2, 0.6),
              Vec2(0.2, 0.2)};
  r.weights = {-27.0 / 96, 25.0 / 96, 25.0 / 96, 25.0 / 96};
  r.degree = 3;
  return r;
}

FaceQuadratureRule quad_rule(int n) {
  std::vector<double> x, w;
  gauss_legendre(n, x, w);
  FaceQuadratureRule r;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      r.points.emplace_back(x[i], x[j]);
      r.weights.push_back(w[i] * w[j]);
    }
  r.degree = 2 * n - 1;
  return r;
}

QuadratureRule wedge_rule(const FaceQuadratureRule& tri, int nline) {
  std::vector<double> x, w;
  gauss_legendre(nline, x, w);
  QuadratureRule r;
  for (int k = 0; k < nline; ++k)
    for (std::size_t q = 0; q < tri.points.size(); ++q) {
      r.points.emplace_back(tri.points[q](0), tri.points[q](1), x[k]);
      r.weights.push_back(tri.weights[q] * w[k]);
    }
  r.degree = std::min(tri.degree, 2 * nline - 1);
  return r;
}

}  // namespace

FaceQuadratureRule collapsed_triangle_rule(int n) {
  std::vector<double> x, w;
  gauss_legendre(n, x, w);
  FaceQuadratureRule r;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double u = 0.5 * (1 + x[i]);
      const double v = 0.5 * (1 + x[j]);
      r.points.emplace_back(u, v * (1 - u));
      r.weights.push_back(0.25 * w[i] * w[j] * (1 - u));
    }
  r.degree = 2 * n - 2;
  return r;
}

const QuadratureRule& standard_quadrature(CellKind kind) {
  static const QuadratureRule hex = hex_rule(2);
  static const QuadratureRule tet = tet4_rule();
  static const QuadratureRule wedge = wedge_rule(tri3_rule(), 2);
  switch (kind) {
    case CellKind::Hex8: return hex;
    case CellKind::Tet4: return tet;
    case CellKind::Wedge6: return wedge;
  }
  throw Error("unknown cell kind");
}

const QuadratureRule& bubble_quadrature(CellKind kind) {
  static const QuadratureRule hex = hex_rule(3);
  static const QuadratureRule tet = tet14_rule();
  static const QuadratureRule wedge = wedge_rule(collapsed_triangle_rule(4), 3);
  switch (kind) {
    case CellKind::Hex8: return hex;
    case CellKind::Tet4: return tet;
    case CellKind::Wedge6: return wedge;
  }
  throw Error("unknown cell kind");
}

const FaceQuadratureRule& face_quadrature(FaceKind kind) {
  static const FaceQuadratureRule quad = quad_rule(2);
  static const FaceQuadratureRule tri = tri3_rule();
  return kind == FaceKind::Quad4 ? quad : tri;
}

const FaceQuadratureRule& face_bubble_quadrature(FaceKind kind) {
  static const FaceQuadratureRule quad = quad_rule(3);
  static const FaceQuadratureRule tri = tri4_rule();
  return kind == FaceKind::Quad4 ? quad : tri;
}

}  // namespace fc
