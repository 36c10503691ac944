#include "doctest.h"
#include "test_util.hpp"

#include <set>
#include <sstream>

#include "fc/mesh.hpp"

using namespace fc;

namespace {

std::vector<double> range(double lo, double hi, int n) {
  std::vector<double> v;
  for (int i = 0; i <= n; ++i) v.push_back(lo + (hi - lo) * i / n);
  return v;
}

// Tip nodes of bounded fractures keep one id on both sides.
void check_fault_geometry(const Mesh& m, bool tips = false) {
  for (const FaultFace& f : m.fault_faces) {
    REQUIRE(f.minus.nodes.size() == f.plus.nodes.size());
    for (std::size_t i = 0; i < f.minus.nodes.size(); ++i) {
      if (!tips) CHECK(f.minus.nodes[i] != f.plus.nodes[i]);
      CHECK((m.nodes[f.minus.nodes[i]] - m.nodes[f.plus.nodes[i]]).norm() < 1e-12);
    }
    const Mat3 R = (Mat3() << f.frame.n, f.frame.m1, f.frame.m2).finished();
    CHECK((R.transpose() * R - Mat3::Identity()).norm() < 1e-12);
    CHECK(R.determinant() == doctest::Approx(1.0));
    // normal points from the minus cell towards the plus cell
    const Vec3 d = m.cell_centroid(f.plus.cell) - m.cell_centroid(f.minus.cell);
    CHECK(d.dot(f.frame.n) > 0.0);
  }
}

}  // namespace

TEST_CASE("structured hex grid with one fault plane") {
  const Mesh m = build_structured_hex_grid(Vec3(1, 1, 1), {2, 2, 2}, {PlaneSpec{0, 0.5, {}}});
  CHECK(m.num_cells() == 8);
  // 27 grid nodes plus one copy of the 9 nodes on the plane
  CHECK(m.num_nodes() == 36);
  CHECK(m.num_fault_faces() == 4);
  for (const FaultFace& f : m.fault_faces) {
    CHECK(f.area == doctest::Approx(0.25));
    CHECK(std::abs(f.frame.n.dot(Vec3::UnitX())) == doctest::Approx(1.0));
    CHECK(f.centroid.x() == doctest::Approx(0.5));
  }
  check_fault_geometry(m);
  validate_mesh(m);
  for (const char* s : {"xmin", "xmax", "ymin", "ymax", "zmin", "zmax"}) {
    CHECK(m.node_sets.count(s));
    CHECK(m.face_sets.at(s).size() == 4);
  }
  CHECK(m.node_sets.at("xmin").size() == 9);
}

TEST_CASE("tet and wedge grids split consistently") {
  for (CellKind k : {CellKind::Tet4, CellKind::Wedge6}) {
    const Mesh m = build_structured_grid(k, range(0, 2, 4), range(0, 1, 2), range(0, 1, 2),
                                         {PlaneSpec{0, 1.0, {}}});
    validate_mesh(m);
    check_fault_geometry(m);
    double area = 0.0;
    for (const FaultFace& f : m.fault_faces) area += f.area;
    CHECK(area == doctest::Approx(1.0));
    CHECK(m.num_cells() == (k == CellKind::Tet4 ? 6 * 16 : 2 * 16));
  }
}

TEST_CASE("bounded fault plane leaves tip nodes shared") {
  // fault on x = 2 for y in [1, 3]; tips at y = 1 and y = 3 are not split
  const Mesh m = build_structured_grid(CellKind::Hex8, range(0, 4, 4), range(0, 4, 4),
                                       range(0, 1, 1),
                                       {PlaneSpec{0, 2.0, std::array<double, 4>{1, 3, 0, 1}}});
  CHECK(m.num_fault_faces() == 2);
  // only the interior line y = 2 (two nodes through the thickness) is duplicated
  CHECK(m.num_nodes() == 50 + 2);
  validate_mesh(m);
}

TEST_CASE("intersecting fractures: junction topology on a 4x4x1 grid") {
  // horizontal y = 2 for x in [1, 3], vertical x = 2 for y in [2, 3]
  const std::vector<PlaneSpec> planes = {{1, 2.0, std::array<double, 4>{1, 3, 0, 1}},
                                         {0, 2.0, std::array<double, 4>{2, 3, 0, 1}}};
  SplitOptions opt;
  opt.allow_intersections = true;
  const Mesh m = build_structured_grid(CellKind::Hex8, range(0, 4, 4), range(0, 4, 4),
                                       range(0, 1, 1), planes, {}, opt);
  // junction nodes (2,2,z) separate into three cell clusters: upper-left,
  // upper-right, and the connected lower half; every other node stays single
  CHECK(m.num_nodes() == 50 + 2 * 2);
  CHECK(m.num_fault_faces() == 3);
  std::set<Index> junction_copies;
  for (const FaultFace& f : m.fault_faces) {
    for (const FaceSide* s : {&f.minus, &f.plus}) {
      for (Index v : s->nodes) {
        if ((m.nodes[v] - Vec3(2, 2, 0)).norm() < 1e-12) junction_copies.insert(v);
      }
    }
  }
  CHECK(junction_copies.size() == 3);
  check_fault_geometry(m, true);
  validate_mesh(m);

  CHECK_THROWS_AS(build_structured_grid(CellKind::Hex8, range(0, 4, 4), range(0, 4, 4),
                                        range(0, 1, 1), planes),
                  MeshError);
}

TEST_CASE("region boxes tag cells by centroid") {
  const Mesh m = build_structured_hex_grid(Vec3(2, 1, 1), {2, 1, 1}, {},
                                           {RegionBox{Vec3(1, 0, 0), Vec3(2, 1, 1), 3}});
  CHECK(m.cells[0].region == 0);
  CHECK(m.cells[1].region == 3);
}

TEST_CASE("frames are deterministic and right-handed") {
  for (int i = 0; i < 50; ++i) {
    const Vec3 n = test::random_vec3(-1, 1).normalized();
    const FaceFrame f = frame_from_normal(n);
    CHECK((f.n - n).norm() < 1e-14);
    CHECK(std::abs(f.n.dot(f.m1)) < 1e-14);
    CHECK((f.n.cross(f.m1) - f.m2).norm() < 1e-14);
  }
  const FaceFrame z = frame_from_normal(Vec3::UnitZ());
  CHECK((z.m1 - Vec3::UnitX()).norm() < 1e-14);
}

TEST_CASE("face integration helpers") {
  const std::vector<Vec3> quad = {{0, 0, 0}, {2, 0, 0}, {2, 3, 0}, {0, 3, 0}};
  CHECK(face_area(FaceKind::Quad4, quad) == doctest::Approx(6.0));
  CHECK((face_centroid(FaceKind::Quad4, quad) - Vec3(1, 1.5, 0)).norm() < 1e-14);
  const VecX w = face_node_weights(FaceKind::Quad4, quad);
  for (int i = 0; i < 4; ++i) CHECK(w(i) == doctest::Approx(1.5));
  const std::vector<Vec3> tri = {{0, 0, 0}, {1, 0, 0}, {0, 1, 1}};
  const double a = 0.5 * (tri[1] - tri[0]).cross(tri[2] - tri[0]).norm();
  CHECK(face_area(FaceKind::Tri3, tri) == doctest::Approx(a));
  CHECK(face_node_weights(FaceKind::Tri3, tri).sum() == doctest::Approx(a));
}

TEST_CASE("mesh text format round-trips") {
  const Mesh m = build_structured_grid(CellKind::Wedge6, range(0, 2, 2), range(0, 1, 1),
                                       range(0, 1, 1), {PlaneSpec{0, 1.0, {}}});
  std::stringstream ss;
  write_mesh(ss, m);
  const Mesh r = parse_mesh(ss);
  REQUIRE(r.num_nodes() == m.num_nodes());
  REQUIRE(r.num_cells() == m.num_cells());
  REQUIRE(r.num_fault_faces() == m.num_fault_faces());
  for (Index v = 0; v < m.num_nodes(); ++v) CHECK(r.nodes[v] == m.nodes[v]);
  for (Index c = 0; c < m.num_cells(); ++c) CHECK(r.cells[c].nodes == m.cells[c].nodes);
  for (Index f = 0; f < m.num_fault_faces(); ++f) {
    CHECK(r.fault_faces[f].minus.nodes == m.fault_faces[f].minus.nodes);
    CHECK(r.fault_faces[f].area == doctest::Approx(m.fault_faces[f].area));
  }
  CHECK(r.node_sets == m.node_sets);
  CHECK(r.face_sets == m.face_sets);
  std::stringstream again;
  write_mesh(again, r);
  CHECK(again.str() == ss.str());
}

TEST_CASE("mesh parser rejects malformed input") {
  std::istringstream bad("CELLS\nHex8 0 1 2\n");
  CHECK_THROWS_AS(parse_mesh(bad), ParseError);
  std::istringstream orphan("1 2 3\n");
  CHECK_THROWS_AS(parse_mesh(orphan), ParseError);
}

TEST_CASE("inverted cells are rejected") {
  Mesh m = build_structured_hex_grid(Vec3(1, 1, 1), {1, 1, 1});
  std::swap(m.cells[0].nodes[0], m.cells[0].nodes[1]);
  std::swap(m.cells[0].nodes[4], m.cells[0].nodes[5]);
  CHECK_THROWS_AS(validate_mesh(m), MeshError);
}
