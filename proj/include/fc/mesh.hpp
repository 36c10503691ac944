#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fc/element.hpp"

namespace fc {

struct Cell {
  CellKind kind = CellKind::Hex8;
  std::vector<Index> nodes;
  int region = 0;
};

struct FaceFrame {
  Vec3 n = Vec3::UnitX();
  Vec3 m1 = Vec3::UnitY();
  Vec3 m2 = Vec3::UnitZ();
};

struct FaceSide {
  Index cell = -1;
  int local_face = -1;
  std::vector<Index> nodes;         // mesh node ids, face order
  std::vector<int> local_vertices;  // cell-local index of each face node
};

struct FaultFace {
  FaceKind kind = FaceKind::Quad4;
  FaceSide minus, plus;  // node lists correspond position by position
  FaceFrame frame;
  double area = 0.0;
  Vec3 centroid = Vec3::Zero();
  int tag = 0;  // which fault surface the face belongs to
};

struct BoundaryFace {
  Index cell = -1;
  int local_face = -1;
  bool operator==(const BoundaryFace&) const = default;
};

struct Mesh {
  std::vector<Vec3> nodes;
  std::vector<Cell> cells;
  std::vector<FaultFace> fault_faces;
  std::map<std::string, std::vector<Index>> node_sets;
  std::map<std::string, std::vector<BoundaryFace>> face_sets;

  Index num_nodes() const { return static_cast<Index>(nodes.size()); }
  Index num_cells() const { return static_cast<Index>(cells.size()); }
  Index num_fault_faces() const {
    return static_cast<Index>(fault_faces.size());
  }
  MatX cell_coords(Index c) const;
  Vec3 cell_centroid(Index c) const;
  double diameter() const;
  std::vector<Vec3> face_coords(const std::vector<Index>& ids) const;
};

// Frame for a planar face; n points away from `minus_point` (any point
// inside the minus cell). m1 is the projection of the global axis least
// aligned with n, ties resolved in x, y, z order.
FaceFrame compute_face_frame(const std::vector<Vec3>& face_nodes,
                             const Vec3& minus_point, Index face_id = -1);
FaceFrame frame_from_normal(const Vec3& n);

// Physical face integration helpers.
double face_area(FaceKind kind, const std::vector<Vec3>& x);
Vec3 face_centroid(FaceKind kind, const std::vector<Vec3>& x);
// Integrals of the face nodal basis over the physical face.
VecX face_node_weights(FaceKind kind, const std::vector<Vec3>& x);

// Interior face of an unsplit (or partially split) mesh.
struct InteriorFace {
  Index cell_a = -1, cell_b = -1;
  int face_a = -1, face_b = -1;
  std::vector<Index> nodes;  // cell_a local-face order
  Vec3 centroid = Vec3::Zero();
  Vec3 normal = Vec3::UnitX();  // unit, sign arbitrary
};

std::vector<InteriorFace> interior_faces(const Mesh& mesh);
std::vector<Index> boundary_face_nodes(const Mesh& mesh, const BoundaryFace& f);
std::vector<BoundaryFace> boundary_faces(const Mesh& mesh);

// Returns the fault tag for selected faces, nullopt otherwise.
using FaceSelector = std::function<std::optional<int>(const InteriorFace&)>;

struct SplitOptions {
  // Permit edges shared by more than two selected faces (intersecting
  // fractures). Each node is split into one copy per cell cluster.
  bool allow_intersections = false;
};

Mesh split_fault_nodes(const Mesh& mesh, const FaceSelector& selector,
                       const SplitOptions& options = {});

// Axis-aligned fault plane; bounds restrict the plane to
// [lo_a, hi_a] x [lo_b, hi_b] in the two remaining axes (increasing order).
struct PlaneSpec {
  int axis = 0;
  double position = 0.0;
  std::optional<std::array<double, 4>> bounds;
};

struct RegionBox {
  Vec3 lo, hi;
  int region = 0;
};

Mesh build_structured_hex_grid(const Vec3& extents,
                               const std::array<int, 3>& divisions,
                               const std::vector<PlaneSpec>& fault_planes = {},
                               const std::vector<RegionBox>& region_boxes = {});

// Tensor-product grid with explicit (possibly graded) coordinates; Tet4 uses
// the six-tet Kuhn split of every hex, Wedge6 extrudes a diagonal
// triangulation of the xy grid along z.
Mesh build_structured_grid(CellKind kind, const std::vector<double>& xs,
                           const std::vector<double>& ys,
                           const std::vector<double>& zs,
                           const std::vector<PlaneSpec>& fault_planes = {},
                           const std::vector<RegionBox>& region_boxes = {},
                           const SplitOptions& options = {});

FaceSelector plane_selector(const std::vector<PlaneSpec>& planes,
                            double tol);

struct Triangulation2D {
  std::vector<Vec2> points;
  std::vector<std::array<Index, 3>> triangles;
  std::vector<int> regions;  // optional, one per triangle
};

Mesh extrude_triangulation(const Triangulation2D& tri, double thickness,
                           int layers);
Mesh extrude_triangulation(const Triangulation2D& tri,
                           const std::vector<double>& z_levels);

// Node sets xmin..zmax and face sets of the same names for an axis box.
void add_box_boundary_sets(Mesh& mesh, double tol);

std::vector<Index> nodes_in_box(const Mesh& mesh, const Vec3& lo,
                                const Vec3& hi);
std::vector<BoundaryFace> boundary_faces_in_box(const Mesh& mesh,
                                                const Vec3& lo,
                                                const Vec3& hi);

// Fills kind, local faces, local vertices, frame, area and centroid of
// fault faces from their node lists and parent cells.
void finalize_fault_faces(Mesh& mesh);

// Checks Jacobians, fault-face coincidence and split-node topology.
void validate_mesh(const Mesh& mesh);

Mesh parse_mesh(std::istream& in);
Mesh load_mesh(const std::string& path);
void write_mesh(std::ostream& out, const Mesh& mesh);
void save_mesh(const Mesh& mesh, const std::string& path);

}  // namespace fc
