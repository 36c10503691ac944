#include "fc/element.hpp"

#include <array>
#include <cmath>

namespace fc {

namespace {

const std::array<Vec3, 8> kHexVertices = {
    Vec3(-1, -1, -1), Vec3(1, -1, -1), Vec3(1, 1, -1), Vec3(-1, 1, -1),
    Vec3(-1, -1, 1),  Vec3(1, -1, 1),  Vec3(1, 1, 1),  Vec3(-1, 1, 1)};

const std::array<Vec3, 4> kTetVertices = {Vec3(0, 0, 0), Vec3(1, 0, 0),
                                          Vec3(0, 1, 0), Vec3(0, 0, 1)};

const std::array<Vec3, 6> kWedgeVertices = {
    Vec3(0, 0, -1), Vec3(1, 0, -1), Vec3(0, 1, -1),
    Vec3(0, 0, 1),  Vec3(1, 0, 1),  Vec3(0, 1, 1)};

const std::vector<std::vector<int>> kHexFaces = {
    {0, 3, 7, 4}, {1, 2, 6, 5}, {0, 1, 5, 4},
    {3, 2, 6, 7}, {0, 1, 2, 3}, {4, 5, 6, 7}};

const std::vector<std::vector<int>> kTetFaces = {
    {1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};

const std::vector<std::vector<int>> kWedgeFaces = {
    {0, 1, 2}, {3, 4, 5}, {1, 2, 5, 4}, {0, 2, 5, 3}, {0, 1, 4, 3}};

void check_face(CellKind kind, int face) {
  if (face < 0 || face >= num_faces(kind)) {
    throw Error("invalid local face " + std::to_string(face) + " for " +
                to_string(kind));
  }
}

}  // namespace

int num_nodes(CellKind kind) {
  switch (kind) {
    case CellKind::Hex8: return 8;
    case CellKind::Tet4: return 4;
    case CellKind::Wedge6: return 6;
  }
  throw Error("unknown cell kind");
}

int num_faces(CellKind kind) {
  switch (kind) {
    case CellKind::Hex8: return 6;
    case CellKind::Tet4: return 4;
    case CellKind::Wedge6: return 5;
  }
  throw Error("unknown cell kind");
}

int num_nodes(FaceKind kind) {
  switch (kind) {
    case FaceKind::Quad4: return 4;
    case FaceKind::Tri3: return 3;
  }
  throw Error("unknown face kind");
}

std::string to_string(CellKind kind) {
  switch (kind) {
    case CellKind::Hex8: return "Hex8";
    case CellKind::Tet4: return "Tet4";
    case CellKind::Wedge6: return "Wedge6";
  }
  throw Error("unknown cell kind");
}

std::string to_string(FaceKind kind) {
  switch (kind) {
    case FaceKind::Quad4: return "Quad4";
    case FaceKind::Tri3: return "Tri3";
  }
  throw Error("unknown face kind");
}

CellKind cell_kind_from_string(const std::string& s) {
  if (s == "Hex8" || s == "hex") return CellKind::Hex8;
  if (s == "Tet4" || s == "tet") return CellKind::Tet4;
  if (s == "Wedge6" || s == "wedge") return CellKind::Wedge6;
  throw Error("unknown cell kind '" + s + "'");
}

FaceKind face_kind_from_string(const std::string& s) {
  if (s == "Quad4") return FaceKind::Quad4;
  if (s == "Tri3") return FaceKind::Tri3;
  throw Error("unknown face kind '" + s + "'");
}

const std::vector<int>& local_face_nodes(CellKind kind, int face) {
  check_face(kind, face);
  switch (kind) {
    case CellKind::Hex8: return kHexFaces[face];
    case CellKind::Tet4: return kTetFaces[face];
    case CellKind::Wedge6: return kWedgeFaces[face];
  }
  throw Error("unknown cell kind");
}

FaceKind local_face_kind(CellKind kind, int face) {
  return local_face_nodes(kind, face).size() == 4 ? FaceKind::Quad4
                                                  : FaceKind::Tri3;
}

Vec3 reference_vertex(CellKind kind, int a) {
  if (a < 0 || a >= num_nodes(kind)) throw Error("invalid local node");
  switch (kind) {
    case CellKind::Hex8: return kHexVertices[a];
    case CellKind::Tet4: return kTetVertices[a];
    case CellKind::Wedge6: return kWedgeVertices[a];
  }
  throw Error("unknown cell kind");
}

Vec3 reference_centroid(CellKind kind) {
  switch (kind) {
    case CellKind::Hex8: return Vec3::Zero();
    case CellKind::Tet4: return Vec3::Constant(0.25);
    case CellKind::Wedge6: return Vec3(1.0 / 3.0, 1.0 / 3.0, 0.0);
  }
  throw Error("unknown cell kind");
}

double reference_volume(CellKind kind) {
  switch (kind) {
    case CellKind::Hex8: return 8.0;
    case CellKind::Tet4: return 1.0 / 6.0;
    case CellKind::Wedge6: return 1.0;
  }
  throw Error("unknown cell kind");
}

bool inside_reference(CellKind kind, const Vec3& p, double tol) {
  switch (kind) {
    case CellKind::Hex8:
      return p.cwiseAbs().maxCoeff() <= 1.0 + tol;
    case CellKind::Tet4:
      return p.minCoeff() >= -tol && p.sum() <= 1.0 + tol;
    case CellKind::Wedge6:
      return p(0) >= -tol && p(1) >= -tol && p(0) + p(1) <= 1.0 + tol &&
             std::abs(p(2)) <= 1.0 + tol;
  }
  throw Error("unknown cell kind");
}

VecX shape_values(CellKind kind, const Vec3& p) {
  switch (kind) {
    case CellKind::Hex8: {
      VecX n(8);
      for (int a = 0; a < 8; ++a) {
        const Vec3& v = kHexVertices[a];
        n(a) = 0.125 * (1 + p(0) * v(0)) * (1 + p(1) * v(1)) *
               (1 + p(2) * v(2));
      }
      return n;
    }
    case CellKind::Tet4: {
      VecX n(4);
      n << 1.0 - p.sum(), p(0), p(1), p(2);
      return n;
    }
    case CellKind::Wedge6: {
      const double l[3] = {1.0 - p(0) - p(1), p(0), p(1)};
      const double lo = 0.5 * (1.0 - p(2));
      const double hi = 0.5 * (1.0 + p(2));
      VecX n(6);
      for (int a = 0; a < 3; ++a) {
        n(a) = l[a] * lo;
        n(a + 3) = l[a] * hi;
      }
      return n;
    }
  }
  throw Error("unknown cell kind");
}

MatX shape_gradients(CellKind kind, const Vec3& p) {
  switch (kind) {
    case CellKind::Hex8: {
      MatX g(8, 3);
      for (int a = 0; a < 8; ++a) {
        const Vec3& v = kHexVertices[a];
        const double fx = 1 + p(0) * v(0);
        const double fy = 1 + p(1) * v(1);
        const double fz = 1 + p(2) * v(2);
        g(a, 0) = 0.125 * v(0) * fy * fz;
        g(a, 1) = 0.125 * fx * v(1) * fz;
        g(a, 2) = 0.125 * fx * fy * v(2);
      }
      return g;
    }
    case CellKind::Tet4: {
      MatX g(4, 3);
      g << -1, -1, -1, 1, 0, 0, 0, 1, 0, 0, 0, 1;
      return g;
    }
    case CellKind::Wedge6: {
      const double l[3] = {1.0 - p(0) - p(1), p(0), p(1)};
      const double dl[3][2] = {{-1, -1}, {1, 0}, {0, 1}};
      const double lo = 0.5 * (1.0 - p(2));
      const double hi = 0.5 * (1.0 + p(2));
      MatX g(6, 3);
      for (int a = 0; a < 3; ++a) {
        g.row(a) << dl[a][0] * lo, dl[a][1] * lo, -0.5 * l[a];
        g.row(a + 3) << dl[a][0] * hi, dl[a][1] * hi, 0.5 * l[a];
      }
      return g;
    }
  }
  throw Error("unknown cell kind");
}

VecX face_shape_values(FaceKind kind, const Vec2& s) {
  if (kind == FaceKind::Tri3) {
    VecX n(3);
    n << 1.0 - s(0) - s(1), s(0), s(1);
    return n;
  }
  VecX n(4);
  n << 0.25 * (1 - s(0)) * (1 - s(1)), 0.25 * (1 + s(0)) * (1 - s(1)),
      0.25 * (1 + s(0)) * (1 + s(1)), 0.25 * (1 - s(0)) * (1 + s(1));
  return n;
}

MatX face_shape_gradients(FaceKind kind, const Vec2& s) {
  if (kind == FaceKind::Tri3) {
    MatX g(3, 2);
    g << -1, -1, 1, 0, 0, 1;
    return g;
  }
  MatX g(4, 2);
  g << -0.25 * (1 - s(1)), -0.25 * (1 - s(0)),  //
      0.25 * (1 - s(1)), -0.25 * (1 + s(0)),    //
      0.25 * (1 + s(1)), 0.25 * (1 + s(0)),     //
      -0.25 * (1 + s(1)), 0.25 * (1 - s(0));
  return g;
}

double face_reference_area(FaceKind kind) {
  return kind == FaceKind::Tri3 ? 0.5 : 4.0;
}

Vec3 face_to_cell_reference(CellKind cell, FaceKind face,
                            const std::vector<int>& local_vertices,
                            const Vec2& s) {
  const VecX n = face_shape_values(face, s);
  Vec3 xi = Vec3::Zero();
  for (int a = 0; a < n.size(); ++a) {
    xi += n(a) * reference_vertex(cell, local_vertices[a]);
  }
  return xi;
}

PointGeometry evaluate_geometry(CellKind kind, const MatX& coords,
                                const Vec3& xi) {
  PointGeometry g;
  const MatX dn = shape_gradients(kind, xi);
  g.jacobian = coords.transpose() * dn;
  g.det = g.jacobian.determinant();
  if (g.det > 0.0) {
    g.grad = dn * g.jacobian.inverse();
  }
  return g;
}

}  // namespace fc
