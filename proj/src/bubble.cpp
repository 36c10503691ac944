#include "fc/bubble.hpp"

namespace fc {

namespace {

void check(CellKind kind, int face) {
  if (face < 0 || face >= num_faces(kind)) {
    throw Error("invalid bubble face " + std::to_string(face) + " for " +
                to_string(kind));
  }
}

// Product of barycentrics except `skip` (skip < 0 keeps all), with gradient.
template <int N>
void barycentric_product(const double (&l)[N], const Vec3 (&dl)[N], int skip,
                         double& value, Vec3& grad) {
  value = 1.0;
  grad.setZero();
  for (int i = 0; i < N; ++i) {
    if (i == skip) continue;
    double others = 1.0;
    for (int k = 0; k < N; ++k) {
      if (k != i && k != skip) others *= l[k];
    }
    value *= l[i];
    grad += others * dl[i];
  }
}

void evaluate(CellKind kind, int face, const Vec3& p, double& v, Vec3& g) {
  check(kind, face);
  switch (kind) {
    case CellKind::Hex8: {
      const int j = face / 2;
      const double s = face % 2 == 0 ? -1.0 : 1.0;
      const double lin = 0.5 * (1.0 + s * p(j));
      double q[3];
      for (int i = 0; i < 3; ++i) q[i] = i == j ? 1.0 : 1.0 - p(i) * p(i);
      v = lin * q[0] * q[1] * q[2];
      for (int i = 0; i < 3; ++i) {
        double rest = 1.0;
        for (int k = 0; k < 3; ++k) {
          if (k != i && k != j) rest *= q[k];
        }
        g(i) = i == j ? 0.5 * s * rest : lin * (-2.0 * p(i)) * rest;
      }
      return;
    }
    case CellKind::Tet4: {
      const double l[4] = {1.0 - p.sum(), p(0), p(1), p(2)};
      const Vec3 dl[4] = {Vec3(-1, -1, -1), Vec3(1, 0, 0), Vec3(0, 1, 0),
                          Vec3(0, 0, 1)};
      barycentric_product(l, dl, face, v, g);
      return;
    }
    case CellKind::Wedge6: {
      const double l[3] = {1.0 - p(0) - p(1), p(0), p(1)};
      const Vec3 dl[3] = {Vec3(-1, -1, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)};
      double tri = 0.0;
      Vec3 dtri;
      double line = 0.0;
      double dline = 0.0;
      if (face < 2) {
        const double s = face == 0 ? -1.0 : 1.0;
        barycentric_product(l, dl, -1, tri, dtri);
        line = 0.5 * (1.0 + s * p(2));
        dline = 0.5 * s;
      } else {
        barycentric_product(l, dl, face - 2, tri, dtri);
        line = 1.0 - p(2) * p(2);
        dline = -2.0 * p(2);
      }
      v = tri * line;
      g = dtri * line;
      g(2) = tri * dline;
      return;
    }
  }
  throw Error("unknown cell kind");
}

}  // namespace

double bubble_value(CellKind kind, int face, const Vec3& xi) {
  double v = 0.0;
  Vec3 g;
  evaluate(kind, face, xi, v, g);
  return v;
}

Vec3 bubble_gradient(CellKind kind, int face, const Vec3& xi) {
  double v = 0.0;
  Vec3 g;
  evaluate(kind, face, xi, v, g);
  return g;
}

}  // namespace fc
