#pragma once

#include <string>
#include <vector>

#include "fc/common.hpp"

namespace fc {

enum class CellKind { Hex8, Tet4, Wedge6 };
enum class FaceKind { Quad4, Tri3 };

// Reference elements:
//   Hex8   [-1,1]^3, VTK node order.
//   Tet4   unit simplex, barycentrics (1-x-y-z, x, y, z).
//   Wedge6 unit triangle (x1,x2) times x3 in [-1,1]; nodes 0-2 at x3=-1.
// Faces are listed with their vertices in cyclic order. Tet face j is the
// face opposite vertex j. Wedge faces 0/1 are the triangles at x3=-1/+1 and
// face 2+k is the quad opposite triangle vertex k.

int num_nodes(CellKind kind);
int num_faces(CellKind kind);
int num_nodes(FaceKind kind);
std::string to_string(CellKind kind);
std::string to_string(FaceKind kind);
CellKind cell_kind_from_string(const std::string& s);
FaceKind face_kind_from_string(const std::string& s);

const std::vector<int>& local_face_nodes(CellKind kind, int face);
FaceKind local_face_kind(CellKind kind, int face);
Vec3 reference_vertex(CellKind kind, int local_node);
Vec3 reference_centroid(CellKind kind);
double reference_volume(CellKind kind);
bool inside_reference(CellKind kind, const Vec3& xi, double tol = 1e-12);

VecX shape_values(CellKind kind, const Vec3& xi);
// n x 3, row a holds dN_a/dxi.
MatX shape_gradients(CellKind kind, const Vec3& xi);

// Face reference: Quad4 on [-1,1]^2, Tri3 on the unit triangle.
VecX face_shape_values(FaceKind kind, const Vec2& s);
MatX face_shape_gradients(FaceKind kind, const Vec2& s);
double face_reference_area(FaceKind kind);

// Maps a face reference point to cell reference coordinates, given the
// cell-local vertex index of each face node.
Vec3 face_to_cell_reference(CellKind cell, FaceKind face,
                            const std::vector<int>& local_vertices,
                            const Vec2& s);

// Jacobian d x / d xi (3x3) and physical gradients at one point.
struct PointGeometry {
  Mat3 jacobian;
  double det = 0.0;
  MatX grad;  // n x 3 physical gradients of the nodal basis
};

// coords: n x 3 node coordinates.
PointGeometry evaluate_geometry(CellKind kind, const MatX& coords,
                                const Vec3& xi);

}  // namespace fc
