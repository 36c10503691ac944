#include "fc/output.hpp"

#include <Eigen/Eigenvalues>
#include <map>
#include <sstream>

#include "fc/io_util.hpp"

namespace fc {

std::vector<double> fault_coordinate(const Mesh& mesh) {
  const Index nf = mesh.num_fault_faces();
  std::map<int, std::vector<Index>> by_tag;
  for (Index f = 0; f < nf; ++f) by_tag[mesh.fault_faces[f].tag].push_back(f);
  std::vector<double> xi(nf, 0.0);
  for (const auto& [tag, ids] : by_tag) {
    Vec3 mean = Vec3::Zero();
    for (Index f : ids) mean += mesh.fault_faces[f].centroid;
    mean /= static_cast<double>(ids.size());
    Mat3 cov = Mat3::Zero();
    for (Index f : ids) {
      const Vec3 d = mesh.fault_faces[f].centroid - mean;
      cov += d * d.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Mat3> eig(cov);
    Vec3 dir = eig.eigenvectors().col(2);
    Index big = 0;
    dir.cwiseAbs().maxCoeff(&big);
    if (dir(big) < 0.0) dir = -dir;
    double lo = 1e300;
    for (Index f : ids) lo = std::min(lo, dir.dot(mesh.fault_faces[f].centroid));
    for (Index f : ids) xi[f] = dir.dot(mesh.fault_faces[f].centroid) - lo;
  }
  return xi;
}

std::vector<FaultProfileRecord> profile_records(const Mesh& mesh,
                                                const std::vector<FaceResult>& faces,
                                                std::vector<double> xi) {
  if (faces.size() != mesh.fault_faces.size()) {
    throw Error("profile: face result count does not match the mesh");
  }
  if (xi.empty()) xi = fault_coordinate(mesh);
  std::vector<FaultProfileRecord> rows(faces.size());
  for (std::size_t f = 0; f < faces.size(); ++f) {
    FaultProfileRecord& r = rows[f];
    r.face = static_cast<Index>(f);
    r.centroid = mesh.fault_faces[f].centroid;
    r.xi = xi[f];
    r.traction = faces[f].traction;
    r.g_n = faces[f].g_n;
    r.dg_t = faces[f].dg_t;
    r.state = faces[f].state;
  }
  return rows;
}

std::string profile_csv(const std::vector<FaultProfileRecord>& rows) {
  std::ostringstream os;
  os << "face,cx,cy,cz,xi,t_N,t_1,t_2,g_N,dg_1,dg_2,state\n";
  for (const FaultProfileRecord& r : rows) {
    os << r.face;
    for (double v : {r.centroid(0), r.centroid(1), r.centroid(2), r.xi, r.traction(0),
                     r.traction(1), r.traction(2), r.g_n, r.dg_t(0), r.dg_t(1)}) {
      os << ',' << fmt_e17(v);
    }
    os << ',' << to_string(r.state) << '\n';
  }
  return os.str();
}

namespace {

int vtk_type(CellKind k) {
  switch (k) {
    case CellKind::Hex8: return 12;
    case CellKind::Tet4: return 10;
    case CellKind::Wedge6: return 13;
  }
  return 0;
}

void write_vec(std::ostringstream& os, const Vec3& v) {
  os << fmt_g17(v(0)) << ' ' << fmt_g17(v(1)) << ' ' << fmt_g17(v(2)) << '\n';
}

}  // namespace

std::string vtk_field(const Mesh& mesh, const VecX& u) {
  if (u.size() != 0 && u.size() != 3 * mesh.num_nodes()) {
    throw Error("vtk: displacement length does not match the mesh");
  }
  std::ostringstream os;
  os << "# vtk DataFile Version 3.0\nfault contact displacement\nASCII\n"
     << "DATASET UNSTRUCTURED_GRID\nPOINTS " << mesh.num_nodes() << " double\n";
  for (const Vec3& x : mesh.nodes) write_vec(os, x);
  std::size_t size = 0;
  for (const Cell& c : mesh.cells) size += c.nodes.size() + 1;
  os << "CELLS " << mesh.num_cells() << ' ' << size << '\n';
  for (const Cell& c : mesh.cells) {
    std::vector<Index> n = c.nodes;
    // VTK wedges list the base triangle with its normal pointing away from the top
    if (c.kind == CellKind::Wedge6) n = {n[0], n[2], n[1], n[3], n[5], n[4]};
    os << n.size();
    for (Index v : n) os << ' ' << v;
    os << '\n';
  }
  os << "CELL_TYPES " << mesh.num_cells() << '\n';
  for (const Cell& c : mesh.cells) os << vtk_type(c.kind) << '\n';
  os << "CELL_DATA " << mesh.num_cells() << "\nSCALARS region int 1\nLOOKUP_TABLE default\n";
  for (const Cell& c : mesh.cells) os << c.region << '\n';
  if (u.size() != 0) {
    os << "POINT_DATA " << mesh.num_nodes() << "\nVECTORS displacement double\n";
    for (Index v = 0; v < mesh.num_nodes(); ++v) write_vec(os, u.segment<3>(3 * v));
  }
  return os.str();
}

std::string vtk_fault(const Mesh& mesh, const std::vector<FaceResult>& faces) {
  if (faces.size() != mesh.fault_faces.size()) {
    throw Error("vtk: face result count does not match the mesh");
  }
  std::ostringstream os;
  std::size_t npts = 0, size = 0;
  for (const FaultFace& f : mesh.fault_faces) {
    npts += f.minus.nodes.size();
    size += f.minus.nodes.size() + 1;
  }
  os << "# vtk DataFile Version 3.0\nfault faces\nASCII\n"
     << "DATASET UNSTRUCTURED_GRID\nPOINTS " << npts << " double\n";
  for (const FaultFace& f : mesh.fault_faces) {
    for (Index v : f.minus.nodes) write_vec(os, mesh.nodes[v]);
  }
  os << "CELLS " << faces.size() << ' ' << size << '\n';
  std::size_t next = 0;
  for (const FaultFace& f : mesh.fault_faces) {
    os << f.minus.nodes.size();
    for (std::size_t i = 0; i < f.minus.nodes.size(); ++i) os << ' ' << next++;
    os << '\n';
  }
  os << "CELL_TYPES " << faces.size() << '\n';
  for (const FaultFace& f : mesh.fault_faces) os << (f.kind == FaceKind::Quad4 ? 9 : 5) << '\n';
  os << "CELL_DATA " << faces.size() << "\nVECTORS traction_local double\n";
  for (const FaceResult& r : faces) write_vec(os, r.traction);
  os << "VECTORS traction double\n";
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const FaceFrame& fr = mesh.fault_faces[i].frame;
    const Vec3& t = faces[i].traction;
    write_vec(os, t(0) * fr.n + t(1) * fr.m1 + t(2) * fr.m2);
  }
  os << "VECTORS slip_increment double\n";
  for (const FaceResult& r : faces) write_vec(os, Vec3(r.g_n, r.dg_t(0), r.dg_t(1)));
  os << "SCALARS state int 1\nLOOKUP_TABLE default\n";
  for (const FaceResult& r : faces) os << static_cast<int>(r.state) << '\n';
  os << "SCALARS tag int 1\nLOOKUP_TABLE default\n";
  for (const FaultFace& f : mesh.fault_faces) os << f.tag << '\n';
  return os.str();
}

}  // namespace fc
