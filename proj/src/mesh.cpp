#include "fc/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "fc/elasticity.hpp"
#include "fc/quadrature.hpp"

namespace fc {

MatX Mesh::cell_coords(Index c) const {
  const Cell& cell = cells[c];
  MatX x(cell.nodes.size(), 3);
  for (std::size_t a = 0; a < cell.nodes.size(); ++a) {
    x.row(a) = nodes[cell.nodes[a]].transpose();
  }
  return x;
}

Vec3 Mesh::cell_centroid(Index c) const {
  Vec3 s = Vec3::Zero();
  for (Index v : cells[c].nodes) s += nodes[v];
  return s / static_cast<double>(cells[c].nodes.size());
}

double Mesh::diameter() const {
  if (nodes.empty()) return 0.0;
  Vec3 lo = nodes[0], hi = nodes[0];
  for (const Vec3& x : nodes) {
    lo = lo.cwiseMin(x);
    hi = hi.cwiseMax(x);
  }
  return (hi - lo).norm();
}

std::vector<Vec3> Mesh::face_coords(const std::vector<Index>& ids) const {
  std::vector<Vec3> x;
  x.reserve(ids.size());
  for (Index v : ids) x.push_back(nodes[v]);
  return x;
}

FaceFrame frame_from_normal(const Vec3& n_in) {
  FaceFrame f;
  f.n = n_in.normalized();
  const Vec3 a = f.n.cwiseAbs();
  const double lo = a.minCoeff();
  int axis = 0;
  while (a(axis) > lo + 1e-12) ++axis;
  const Vec3 e = Vec3::Unit(axis);
  f.m1 = (e - e.dot(f.n) * f.n).normalized();
  f.m2 = f.n.cross(f.m1);
  return f;
}

namespace {

Vec3 raw_normal(const std::vector<Vec3>& x) {
  if (x.size() == 3) return (x[1] - x[0]).cross(x[2] - x[0]);
  return (x[2] - x[0]).cross(x[3] - x[1]);
}

Vec3 surface_element(FaceKind kind, const std::vector<Vec3>& x,
                     const Vec2& s) {
  const MatX g = face_shape_gradients(kind, s);
  Vec3 t1 = Vec3::Zero(), t2 = Vec3::Zero();
  for (std::size_t a = 0; a < x.size(); ++a) {
    t1 += g(a, 0) * x[a];
    t2 += g(a, 1) * x[a];
  }
  return t1.cross(t2);
}

}  // namespace

FaceFrame compute_face_frame(const std::vector<Vec3>& x,
                             const Vec3& minus_point, Index face_id) {
  if (x.size() != 3 && x.size() != 4) {
    throw MeshError("face " + std::to_string(face_id) +
                    " must have 3 or 4 nodes");
  }
  Vec3 n = raw_normal(x);
  double scale = 0.0;
  for (const Vec3& p : x) scale = std::max(scale, (p - x[0]).norm());
  if (!(n.norm() > 1e-14 * scale * scale) || scale == 0.0) {
    throw MeshError("degenerate face " + std::to_string(face_id));
  }
  Vec3 c = Vec3::Zero();
  for (const Vec3& p : x) c += p;
  c /= static_cast<double>(x.size());
  if (n.dot(c - minus_point) < 0.0) n = -n;
  return frame_from_normal(n);
}

double face_area(FaceKind kind, const std::vector<Vec3>& x) {
  const FaceQuadratureRule& r = face_quadrature(kind);
  double a = 0.0;
  for (std::size_t q = 0; q < r.points.size(); ++q) {
    a += r.weights[q] * surface_element(kind, x, r.points[q]).norm();
  }
  return a;
}

VecX face_node_weights(FaceKind kind, const std::vector<Vec3>& x) {
  const FaceQuadratureRule& r = face_quadrature(kind);
  VecX w = VecX::Zero(static_cast<Index>(x.size()));
  for (std::size_t q = 0; q < r.points.size(); ++q) {
    w += r.weights[q] * surface_element(kind, x, r.points[q]).norm() *
         face_shape_values(kind, r.points[q]);
  }
  return w;
}

Vec3 face_centroid(FaceKind kind, const std::vector<Vec3>& x) {
  const FaceQuadratureRule& r = face_quadrature(kind);
  double a = 0.0;
  Vec3 c = Vec3::Zero();
  for (std::size_t q = 0; q < r.points.size(); ++q) {
    const double w = r.weights[q] * surface_element(kind, x, r.points[q]).norm();
    const VecX n = face_shape_values(kind, r.points[q]);
    Vec3 p = Vec3::Zero();
    for (std::size_t k = 0; k < x.size(); ++k) p += n(k) * x[k];
    c += w * p;
    a += w;
  }
  return c / a;
}

namespace {

using FaceKey = std::array<Index, 4>;

struct FaceKeyHash {
  std::size_t operator()(const FaceKey& k) const {
    std::size_t h = 1469598103934665603ull;
    for (Index v : k) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) +
           (h >> 2);
    }
    return h;
  }
};

FaceKey make_key(const std::vector<Index>& ids) {
  FaceKey k = {-1, -1, -1, -1};
  std::copy(ids.begin(), ids.end(), k.begin());
  std::sort(k.begin(), k.begin() + ids.size());
  return k;
}

std::vector<Index> cell_face_nodes(const Cell& cell, int f) {
  std::vector<Index> ids;
  for (int a : local_face_nodes(cell.kind, f)) ids.push_back(cell.nodes[a]);
  return ids;
}

struct FaceRef {
  Index cell;
  int face;
};

// All faces keyed by sorted node ids, in first-seen order.
struct FaceTable {
  std::vector<FaceKey> keys;
  std::vector<std::vector<FaceRef>> refs;
};

FaceTable build_face_table(const Mesh& mesh) {
  FaceTable t;
  std::unordered_map<FaceKey, std::size_t, FaceKeyHash> index;
  index.reserve(mesh.cells.size() * 4);
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    const Cell& cell = mesh.cells[c];
    for (int f = 0; f < num_faces(cell.kind); ++f) {
      const FaceKey k = make_key(cell_face_nodes(cell, f));
      auto [it, fresh] = index.emplace(k, t.keys.size());
      if (fresh) {
        t.keys.push_back(k);
        t.refs.emplace_back();
      }
      t.refs[it->second].push_back({c, f});
    }
  }
  return t;
}

}  // namespace

std::vector<InteriorFace> interior_faces(const Mesh& mesh) {
  const FaceTable t = build_face_table(mesh);
  std::vector<InteriorFace> out;
  for (std::size_t i = 0; i < t.keys.size(); ++i) {
    if (t.refs[i].size() != 2) continue;
    InteriorFace f;
    f.cell_a = t.refs[i][0].cell;
    f.face_a = t.refs[i][0].face;
    f.cell_b = t.refs[i][1].cell;
    f.face_b = t.refs[i][1].face;
    f.nodes = cell_face_nodes(mesh.cells[f.cell_a], f.face_a);
    const std::vector<Vec3> x = mesh.face_coords(f.nodes);
    const FaceKind kind = x.size() == 4 ? FaceKind::Quad4 : FaceKind::Tri3;
    f.centroid = face_centroid(kind, x);
    f.normal = raw_normal(x).normalized();
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<Index> boundary_face_nodes(const Mesh& mesh, const BoundaryFace& f) {
  return cell_face_nodes(mesh.cells[f.cell], f.local_face);
}

std::vector<BoundaryFace> boundary_faces(const Mesh& mesh) {
  std::set<std::pair<Index, int>> fault_sides;
  for (const FaultFace& f : mesh.fault_faces) {
    fault_sides.insert({f.minus.cell, f.minus.local_face});
    fault_sides.insert({f.plus.cell, f.plus.local_face});
  }
  const FaceTable t = build_face_table(mesh);
  std::vector<BoundaryFace> out;
  for (std::size_t i = 0; i < t.keys.size(); ++i) {
    if (t.refs[i].size() != 1) continue;
    const FaceRef r = t.refs[i][0];
    if (fault_sides.count({r.cell, r.face})) continue;
    out.push_back({r.cell, r.face});
  }
  std::sort(out.begin(), out.end(), [](const BoundaryFace& a,
                                       const BoundaryFace& b) {
    return a.cell != b.cell ? a.cell < b.cell : a.local_face < b.local_face;
  });
  return out;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void join(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

int canonical_axis(const Vec3& n) {
  const Vec3 a = n.cwiseAbs();
  const double hi = a.maxCoeff();
  int axis = 0;
  while (a(axis) < hi - 1e-12) ++axis;
  return axis;
}

}  // namespace

Mesh split_fault_nodes(const Mesh& mesh, const FaceSelector& selector,
                       const SplitOptions& options) {
  const std::vector<InteriorFace> faces = interior_faces(mesh);
  std::vector<int> tag(faces.size(), -1);
  std::vector<std::size_t> selected;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    if (auto t = selector(faces[i])) {
      tag[i] = *t;
      selected.push_back(i);
    }
  }
  Mesh out = mesh;
  if (selected.empty()) return out;

  // manifold check on face edges
  std::map<std::pair<Index, Index>, int> edge_count;
  for (std::size_t i : selected) {
    const auto& v = faces[i].nodes;
    for (std::size_t k = 0; k < v.size(); ++k) {
      Index a = v[k], b = v[(k + 1) % v.size()];
      if (a > b) std::swap(a, b);
      ++edge_count[{a, b}];
    }
  }
  if (!options.allow_intersections) {
    for (const auto& [e, n] : edge_count) {
      if (n > 2) {
        std::ostringstream os;
        os << "non-manifold fault selection: edge (" << e.first << ", "
           << e.second << ") shared by " << n << " selected faces";
        throw MeshError(os.str());
      }
    }
  }

  const Index nn = mesh.num_nodes();
  std::vector<char> touched(nn, 0);
  for (std::size_t i : selected) {
    for (Index v : faces[i].nodes) touched[v] = 1;
  }
  std::vector<std::vector<Index>> node_cells(nn);
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    for (Index v : mesh.cells[c].nodes) {
      if (touched[v]) node_cells[v].push_back(c);
    }
  }
  // links between cells around a node through unselected faces
  std::vector<std::vector<std::pair<Index, Index>>> links(nn);
  for (std::size_t i = 0; i < faces.size(); ++i) {
    if (tag[i] >= 0) continue;
    for (Index v : faces[i].nodes) {
      if (touched[v]) links[v].push_back({faces[i].cell_a, faces[i].cell_b});
    }
  }

  std::vector<Index> origin(nn);
  std::iota(origin.begin(), origin.end(), 0);
  for (Index v = 0; v < nn; ++v) {
    if (!touched[v]) continue;
    const auto& cells = node_cells[v];  // sorted by construction
    UnionFind uf(static_cast<int>(cells.size()));
    auto local = [&](Index c) {
      return static_cast<int>(
          std::lower_bound(cells.begin(), cells.end(), c) - cells.begin());
    };
    for (auto [a, b] : links[v]) uf.join(local(a), local(b));
    std::map<int, Index> copy_of_root;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const int r = uf.find(static_cast<int>(k));
      auto it = copy_of_root.find(r);
      if (it == copy_of_root.end()) {
        Index id = v;
        if (!copy_of_root.empty()) {
          id = static_cast<Index>(out.nodes.size());
          out.nodes.push_back(mesh.nodes[v]);
          origin.push_back(v);
        }
        it = copy_of_root.emplace(r, id).first;
      }
      if (it->second != v) {
        for (Index& w : out.cells[cells[k]].nodes) {
          if (w == v) w = it->second;
        }
      }
    }
  }

  // node sets follow their copies
  for (auto& [name, ids] : out.node_sets) {
    std::set<Index> members(ids.begin(), ids.end());
    for (Index w = nn; w < out.num_nodes(); ++w) {
      if (members.count(origin[w])) ids.push_back(w);
    }
  }

  for (std::size_t i : selected) {
    const InteriorFace& f = faces[i];
    Vec3 n = f.normal;
    if (n(canonical_axis(n)) < 0.0) n = -n;
    Index minus = f.cell_a, plus = f.cell_b;
    int fminus = f.face_a, fplus = f.face_b;
    if (mesh.cell_centroid(minus).dot(n) > f.centroid.dot(n)) {
      std::swap(minus, plus);
      std::swap(fminus, fplus);
    }
    FaultFace ff;
    ff.tag = tag[i];
    ff.minus.cell = minus;
    ff.minus.local_face = fminus;
    ff.plus.cell = plus;
    ff.plus.local_face = fplus;
    const Cell& cm = out.cells[minus];
    const Cell& cp = out.cells[plus];
    for (int a : local_face_nodes(cm.kind, fminus)) {
      ff.minus.local_vertices.push_back(a);
      ff.minus.nodes.push_back(cm.nodes[a]);
      const Index o = origin[cm.nodes[a]];
      int match = -1;
      for (int b = 0; b < static_cast<int>(cp.nodes.size()); ++b) {
        if (origin[cp.nodes[b]] == o) match = b;
      }
      if (match < 0) throw MeshError("fault face without matching plus node");
      ff.plus.local_vertices.push_back(match);
      ff.plus.nodes.push_back(cp.nodes[match]);
    }
    out.fault_faces.push_back(std::move(ff));
  }
  finalize_fault_faces(out);
  return out;
}

void finalize_fault_faces(Mesh& mesh) {
  for (Index id = 0; id < mesh.num_fault_faces(); ++id) {
    FaultFace& f = mesh.fault_faces[id];
    if (f.minus.cell == f.plus.cell) {
      throw MeshError("fault face " + std::to_string(id) +
                      " has identical parent cells");
    }
    if (f.minus.nodes.size() != f.plus.nodes.size() ||
        (f.minus.nodes.size() != 3 && f.minus.nodes.size() != 4)) {
      throw MeshError("fault face " + std::to_string(id) +
                      " has inconsistent node lists");
    }
    // locate each side's local face and reorder to the minus local order
    auto find_local = [&](const Cell& cell, const std::vector<Index>& ids) {
      const FaceKey k = make_key(ids);
      for (int lf = 0; lf < num_faces(cell.kind); ++lf) {
        if (make_key(cell_face_nodes(cell, lf)) == k) return lf;
      }
      throw MeshError("fault face " + std::to_string(id) +
                      " is not a face of its parent cell");
    };
    const Cell& cm = mesh.cells[f.minus.cell];
    const Cell& cp = mesh.cells[f.plus.cell];
    if (f.minus.local_face < 0) f.minus.local_face = find_local(cm, f.minus.nodes);
    if (f.plus.local_face < 0) f.plus.local_face = find_local(cp, f.plus.nodes);
    std::vector<Index> mn, pn;
    std::vector<int> mv, pv;
    for (int a : local_face_nodes(cm.kind, f.minus.local_face)) {
      const Index v = cm.nodes[a];
      const auto pos = std::find(f.minus.nodes.begin(), f.minus.nodes.end(), v);
      if (pos == f.minus.nodes.end()) {
        throw MeshError("fault face " + std::to_string(id) +
                        " minus nodes do not match its parent cell");
      }
      const Index w = f.plus.nodes[pos - f.minus.nodes.begin()];
      const auto pw = std::find(cp.nodes.begin(), cp.nodes.end(), w);
      if (pw == cp.nodes.end()) {
        throw MeshError("fault face " + std::to_string(id) +
                        " plus nodes do not match its parent cell");
      }
      mn.push_back(v);
      mv.push_back(a);
      pn.push_back(w);
      pv.push_back(static_cast<int>(pw - cp.nodes.begin()));
    }
    f.minus.nodes = mn;
    f.minus.local_vertices = mv;
    f.plus.nodes = pn;
    f.plus.local_vertices = pv;
    f.kind = mn.size() == 4 ? FaceKind::Quad4 : FaceKind::Tri3;
    const std::vector<Vec3> x = mesh.face_coords(mn);
    f.frame = compute_face_frame(x, mesh.cell_centroid(f.minus.cell), id);
    f.area = face_area(f.kind, x);
    f.centroid = face_centroid(f.kind, x);
  }
}

FaceSelector plane_selector(const std::vector<PlaneSpec>& planes,
                            double tol) {
  return [planes, tol](const InteriorFace& f) -> std::optional<int> {
    for (std::size_t p = 0; p < planes.size(); ++p) {
      const PlaneSpec& s = planes[p];
      const int a = (s.axis + 1) % 3, b = (s.axis + 2) % 3;
      const int lo_axis = std::min(a, b), hi_axis = std::max(a, b);
      if (std::abs(f.centroid(s.axis) - s.position) > tol) continue;
      if (std::abs(std::abs(f.normal(s.axis)) - 1.0) > 1e-9) continue;
      if (s.bounds) {
        const auto& bd = *s.bounds;
        if (f.centroid(lo_axis) < bd[0] - tol ||
            f.centroid(lo_axis) > bd[1] + tol ||
            f.centroid(hi_axis) < bd[2] - tol ||
            f.centroid(hi_axis) > bd[3] + tol) {
          continue;
        }
      }
      return static_cast<int>(p);
    }
    return std::nullopt;
  };
}

namespace {

void check_coordinates(const std::vector<double>& c, const char* axis) {
  if (c.size() < 2) {
    throw MeshError(std::string("grid needs at least one division along ") +
                    axis);
  }
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (!(c[i] > c[i - 1])) {
      throw MeshError(std::string("grid coordinates along ") + axis +
                      " must increase");
    }
  }
}

void assign_regions(Mesh& mesh, const std::vector<RegionBox>& boxes) {
  if (boxes.empty()) return;
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    const Vec3 x = mesh.cell_centroid(c);
    for (const RegionBox& b : boxes) {
      if ((x.array() >= b.lo.array()).all() &&
          (x.array() <= b.hi.array()).all()) {
        mesh.cells[c].region = b.region;
        break;
      }
    }
  }
}

double signed_volume(const Mesh& mesh, const std::vector<Index>& t) {
  const Vec3& a = mesh.nodes[t[0]];
  return (mesh.nodes[t[1]] - a).dot((mesh.nodes[t[2]] - a)
                                        .cross(mesh.nodes[t[3]] - a));
}

}  // namespace

Mesh build_structured_grid(CellKind kind, const std::vector<double>& xs,
                           const std::vector<double>& ys,
                           const std::vector<double>& zs,
                           const std::vector<PlaneSpec>& fault_planes,
                           const std::vector<RegionBox>& region_boxes,
                           const SplitOptions& options) {
  check_coordinates(xs, "x");
  check_coordinates(ys, "y");
  check_coordinates(zs, "z");
  const double extent = std::max({xs.back() - xs.front(), ys.back() - ys.front(),
                                  zs.back() - zs.front()});
  const double tol = 1e-9 * extent;
  const std::vector<double>* axes[3] = {&xs, &ys, &zs};
  for (const PlaneSpec& p : fault_planes) {
    if (p.axis < 0 || p.axis > 2) throw MeshError("fault plane axis must be 0..2");
    const auto& c = *axes[p.axis];
    double nearest = c.front();
    for (double v : c) {
      if (std::abs(v - p.position) < std::abs(nearest - p.position)) nearest = v;
    }
    if (std::abs(nearest - p.position) > tol) {
      std::ostringstream os;
      os.precision(17);
      os << "fault plane " << "xyz"[p.axis] << "=" << p.position
         << " is not grid-aligned; nearest grid coordinate " << nearest;
      throw MeshError(os.str());
    }
  }

  Mesh mesh;
  const Index nx = static_cast<Index>(xs.size()) - 1;
  const Index ny = static_cast<Index>(ys.size()) - 1;
  const Index nz = static_cast<Index>(zs.size()) - 1;
  if (kind == CellKind::Wedge6) {
    Triangulation2D tri;
    for (Index j = 0; j <= ny; ++j)
      for (Index i = 0; i <= nx; ++i) tri.points.emplace_back(xs[i], ys[j]);
    for (Index j = 0; j < ny; ++j)
      for (Index i = 0; i < nx; ++i) {
        const Index p00 = i + (nx + 1) * j, p10 = p00 + 1;
        const Index p01 = p00 + nx + 1, p11 = p01 + 1;
        tri.triangles.push_back({p00, p10, p11});
        tri.triangles.push_back({p00, p11, p01});
      }
    mesh = extrude_triangulation(tri, zs);
  } else {
    for (Index k = 0; k <= nz; ++k)
      for (Index j = 0; j <= ny; ++j)
        for (Index i = 0; i <= nx; ++i) mesh.nodes.emplace_back(xs[i], ys[j], zs[k]);
    auto id = [&](Index i, Index j, Index k) {
      return i + (nx + 1) * (j + (ny + 1) * k);
    };
    for (Index k = 0; k < nz; ++k)
      for (Index j = 0; j < ny; ++j)
        for (Index i = 0; i < nx; ++i) {
          const std::array<Index, 8> v = {
              id(i, j, k),         id(i + 1, j, k),     id(i + 1, j + 1, k),
              id(i, j + 1, k),     id(i, j, k + 1),     id(i + 1, j, k + 1),
              id(i + 1, j + 1, k + 1), id(i, j + 1, k + 1)};
          if (kind == CellKind::Hex8) {
            mesh.cells.push_back({CellKind::Hex8, {v.begin(), v.end()}, 0});
            continue;
          }
          static const int kuhn[6][4] = {{0, 1, 2, 6}, {0, 2, 3, 6},
                                         {0, 5, 1, 6}, {0, 4, 5, 6},
                                         {0, 3, 7, 6}, {0, 7, 4, 6}};
          for (const auto& t : kuhn) {
            std::vector<Index> tet = {v[t[0]], v[t[1]], v[t[2]], v[t[3]]};
            if (signed_volume(mesh, tet) < 0.0) std::swap(tet[1], tet[2]);
            mesh.cells.push_back({CellKind::Tet4, tet, 0});
          }
        }
  }
  assign_regions(mesh, region_boxes);
  add_box_boundary_sets(mesh, tol);
  if (fault_planes.empty()) return mesh;
  return split_fault_nodes(mesh, plane_selector(fault_planes, tol), options);
}

Mesh build_structured_hex_grid(const Vec3& extents,
                               const std::array<int, 3>& divisions,
                               const std::vector<PlaneSpec>& fault_planes,
                               const std::vector<RegionBox>& region_boxes) {
  std::vector<double> c[3];
  for (int a = 0; a < 3; ++a) {
    if (divisions[a] < 1) throw MeshError("divisions must be >= 1");
    if (!(extents(a) > 0.0)) throw MeshError("extents must be positive");
    for (int i = 0; i <= divisions[a]; ++i) {
      c[a].push_back(extents(a) * i / divisions[a]);
    }
  }
  return build_structured_grid(CellKind::Hex8, c[0], c[1], c[2], fault_planes,
                               region_boxes);
}

Mesh extrude_triangulation(const Triangulation2D& tri, double thickness,
                           int layers) {
  if (layers < 1 || !(thickness > 0.0)) {
    throw MeshError("extrusion needs layers >= 1 and positive thickness");
  }
  std::vector<double> z;
  for (int k = 0; k <= layers; ++k) z.push_back(thickness * k / layers);
  return extrude_triangulation(tri, z);
}

Mesh extrude_triangulation(const Triangulation2D& tri,
                           const std::vector<double>& z) {
  check_coordinates(z, "z");
  Mesh mesh;
  const Index np = static_cast<Index>(tri.points.size());
  for (double zk : z)
    for (const Vec2& p : tri.points) mesh.nodes.emplace_back(p(0), p(1), zk);
  for (std::size_t k = 0; k + 1 < z.size(); ++k) {
    for (std::size_t t = 0; t < tri.triangles.size(); ++t) {
      auto v = tri.triangles[t];
      for (Index a : v) {
        if (a < 0 || a >= np) throw MeshError("triangle references missing point");
      }
      const Vec2 e1 = tri.points[v[1]] - tri.points[v[0]];
      const Vec2 e2 = tri.points[v[2]] - tri.points[v[0]];
      const double area2 = e1(0) * e2(1) - e1(1) * e2(0);
      if (area2 == 0.0) {
        throw MeshError("degenerate triangle " + std::to_string(t));
      }
      if (area2 < 0.0) std::swap(v[1], v[2]);
      const Index lo = np * static_cast<Index>(k), hi = lo + np;
      Cell c{CellKind::Wedge6,
             {v[0] + lo, v[1] + lo, v[2] + lo, v[0] + hi, v[1] + hi, v[2] + hi},
             tri.regions.empty() ? 0 : tri.regions[t]};
      mesh.cells.push_back(std::move(c));
    }
  }
  return mesh;
}

void add_box_boundary_sets(Mesh& mesh, double tol) {
  if (mesh.nodes.empty()) return;
  Vec3 lo = mesh.nodes[0], hi = mesh.nodes[0];
  for (const Vec3& x : mesh.nodes) {
    lo = lo.cwiseMin(x);
    hi = hi.cwiseMax(x);
  }
  static const char* names[3][2] = {
      {"xmin", "xmax"}, {"ymin", "ymax"}, {"zmin", "zmax"}};
  auto on_side = [&](const Vec3& x, int a, int s) {
    return std::abs(x(a) - (s == 0 ? lo(a) : hi(a))) <= tol;
  };
  for (int a = 0; a < 3; ++a)
    for (int s = 0; s < 2; ++s) {
      auto& ids = mesh.node_sets[names[a][s]];
      ids.clear();
      for (Index v = 0; v < mesh.num_nodes(); ++v) {
        if (on_side(mesh.nodes[v], a, s)) ids.push_back(v);
      }
      mesh.face_sets[names[a][s]].clear();
    }
  for (const BoundaryFace& bf : boundary_faces(mesh)) {
    const Cell& cell = mesh.cells[bf.cell];
    for (int a = 0; a < 3; ++a)
      for (int s = 0; s < 2; ++s) {
        bool all = true;
        for (int l : local_face_nodes(cell.kind, bf.local_face)) {
          all = all && on_side(mesh.nodes[cell.nodes[l]], a, s);
        }
        if (all) mesh.face_sets[names[a][s]].push_back(bf);
      }
  }
}

std::vector<Index> nodes_in_box(const Mesh& mesh, const Vec3& lo,
                                const Vec3& hi) {
  const double tol = 1e-9 * mesh.diameter();
  std::vector<Index> ids;
  for (Index v = 0; v < mesh.num_nodes(); ++v) {
    const Vec3& x = mesh.nodes[v];
    if ((x.array() >= lo.array() - tol).all() &&
        (x.array() <= hi.array() + tol).all()) {
      ids.push_back(v);
    }
  }
  return ids;
}

std::vector<BoundaryFace> boundary_faces_in_box(const Mesh& mesh,
                                                const Vec3& lo,
                                                const Vec3& hi) {
  const double tol = 1e-9 * mesh.diameter();
  std::vector<BoundaryFace> out;
  for (const BoundaryFace& bf : boundary_faces(mesh)) {
    const Cell& cell = mesh.cells[bf.cell];
    bool inside = true;
    for (int l : local_face_nodes(cell.kind, bf.local_face)) {
      const Vec3& x = mesh.nodes[cell.nodes[l]];
      inside = inside && (x.array() >= lo.array() - tol).all() &&
               (x.array() <= hi.array() + tol).all();
    }
    if (inside) out.push_back(bf);
  }
  return out;
}

void validate_mesh(const Mesh& mesh) {
  for (Index v = 0; v < mesh.num_nodes(); ++v) {
    if (!mesh.nodes[v].allFinite()) {
      throw MeshError("node " + std::to_string(v) + " has non-finite coordinates");
    }
  }
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    const Cell& cell = mesh.cells[c];
    if (static_cast<int>(cell.nodes.size()) != num_nodes(cell.kind)) {
      throw MeshError("cell " + std::to_string(c) + " has wrong node count");
    }
    for (Index v : cell.nodes) {
      if (v < 0 || v >= mesh.num_nodes()) {
        throw MeshError("cell " + std::to_string(c) + " references missing node");
      }
    }
    const MatX x = mesh.cell_coords(c);
    for (const QuadratureRule* r :
         {&standard_quadrature(cell.kind), &bubble_quadrature(cell.kind)}) {
      for (const Vec3& p : r->points) {
        if (!(evaluate_geometry(cell.kind, x, p).det > 0.0)) {
          throw MeshError("inverted cell " + std::to_string(c) +
                          " (non-positive Jacobian)");
        }
      }
    }
  }
  const double tol = 1e-12 * std::max(mesh.diameter(), 1e-300);
  for (Index id = 0; id < mesh.num_fault_faces(); ++id) {
    const FaultFace& f = mesh.fault_faces[id];
    if (f.minus.cell == f.plus.cell) {
      throw MeshError("fault face " + std::to_string(id) + " has one parent cell");
    }
    if (!(f.area > 0.0)) {
      throw MeshError("fault face " + std::to_string(id) + " has zero area");
    }
    const Cell& cm = mesh.cells[f.minus.cell];
    const Cell& cp = mesh.cells[f.plus.cell];
    for (std::size_t k = 0; k < f.minus.nodes.size(); ++k) {
      const Index a = f.minus.nodes[k], b = f.plus.nodes[k];
      if ((mesh.nodes[a] - mesh.nodes[b]).norm() > tol) {
        throw MeshError("fault face " + std::to_string(id) +
                        " copies are not coincident");
      }
      if (a == b) continue;
      const bool bad =
          std::find(cm.nodes.begin(), cm.nodes.end(), b) != cm.nodes.end() ||
          std::find(cp.nodes.begin(), cp.nodes.end(), a) != cp.nodes.end();
      if (bad) {
        throw MeshError("fault face " + std::to_string(id) +
                        ": a cell references both copies of a split node");
      }
    }
  }
}

}  // namespace fc
