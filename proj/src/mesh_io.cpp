#include <fstream>
#include <sstream>

#include "fc/io_util.hpp"
#include "fc/mesh.hpp"

namespace fc {

namespace {

enum class Section { None, Nodes, Cells, Faults, NodeSet, FaceSet };

std::string strip_comment(const std::string& line) {
  const auto p = line.find('#');
  return p == std::string::npos ? line : line.substr(0, p);
}

template <typename T>
T read_value(std::istringstream& is, int line, const char* what) {
  T v;
  if (!(is >> v)) throw ParseError(std::string("expected ") + what, line);
  return v;
}

}  // namespace

Mesh parse_mesh(std::istream& in) {
  Mesh mesh;
  Section section = Section::None;
  std::string set_name;
  std::string raw;
  int line = 0;
  struct PendingFault {
    FaultFace face;
    int line;
  };
  std::vector<PendingFault> pending;
  while (std::getline(in, raw)) {
    ++line;
    std::istringstream is(strip_comment(raw));
    std::string head;
    if (!(is >> head)) continue;
    if (head == "NODES") { section = Section::Nodes; continue; }
    if (head == "CELLS") { section = Section::Cells; continue; }
    if (head == "FAULT_FACES") { section = Section::Faults; continue; }
    if (head == "NODESET" || head == "FACESET") {
      if (!(is >> set_name)) throw ParseError("set name missing", line);
      section = head == "NODESET" ? Section::NodeSet : Section::FaceSet;
      if (section == Section::NodeSet) mesh.node_sets[set_name];
      else mesh.face_sets[set_name];
      continue;
    }
    std::istringstream row(strip_comment(raw));
    switch (section) {
      case Section::None:
        throw ParseError("data outside of a section: '" + head + "'", line);
      case Section::Nodes: {
        const Index id = read_value<Index>(row, line, "node id");
        if (id != mesh.num_nodes()) throw ParseError("node ids must be dense", line);
        Vec3 x;
        for (int a = 0; a < 3; ++a) x(a) = read_value<double>(row, line, "coordinate");
        mesh.nodes.push_back(x);
        break;
      }
      case Section::Cells: {
        const Index id = read_value<Index>(row, line, "cell id");
        if (id != mesh.num_cells()) throw ParseError("cell ids must be dense", line);
        Cell c;
        const std::string kind = read_value<std::string>(row, line, "cell kind");
        try {
          c.kind = cell_kind_from_string(kind);
        } catch (const Error& e) {
          throw ParseError(e.what(), line);
        }
        for (int a = 0; a < num_nodes(c.kind); ++a) {
          const Index v = read_value<Index>(row, line, "cell node");
          if (v < 0 || v >= mesh.num_nodes()) throw ParseError("unknown node id", line);
          c.nodes.push_back(v);
        }
        c.region = read_value<int>(row, line, "region tag");
        mesh.cells.push_back(std::move(c));
        break;
      }
      case Section::Faults: {
        const Index id = read_value<Index>(row, line, "fault face id");
        if (id != static_cast<Index>(pending.size())) {
          throw ParseError("fault face ids must be dense", line);
        }
        FaultFace f;
        const std::string kind = read_value<std::string>(row, line, "face kind");
        try {
          f.kind = face_kind_from_string(kind);
        } catch (const Error& e) {
          throw ParseError(e.what(), line);
        }
        const int n = num_nodes(f.kind);
        for (int a = 0; a < n; ++a) f.minus.nodes.push_back(read_value<Index>(row, line, "minus node"));
        for (int a = 0; a < n; ++a) f.plus.nodes.push_back(read_value<Index>(row, line, "plus node"));
        f.minus.cell = read_value<Index>(row, line, "minus cell");
        f.plus.cell = read_value<Index>(row, line, "plus cell");
        int tag = 0;
        if (row >> tag) f.tag = tag;
        pending.push_back({std::move(f), line});
        break;
      }
      case Section::NodeSet: {
        auto& ids = mesh.node_sets[set_name];
        Index v;
        while (row >> v) ids.push_back(v);
        if (!row.eof()) throw ParseError("bad node id in set " + set_name, line);
        break;
      }
      case Section::FaceSet: {
        BoundaryFace bf;
        bf.cell = read_value<Index>(row, line, "face-set cell");
        bf.local_face = read_value<int>(row, line, "face-set local face");
        mesh.face_sets[set_name].push_back(bf);
        break;
      }
    }
  }
  for (auto& p : pending) {
    for (Index c : {p.face.minus.cell, p.face.plus.cell}) {
      if (c < 0 || c >= mesh.num_cells()) throw ParseError("unknown parent cell", p.line);
    }
    for (Index v : p.face.minus.nodes) {
      if (v < 0 || v >= mesh.num_nodes()) throw ParseError("unknown node id", p.line);
    }
    for (Index v : p.face.plus.nodes) {
      if (v < 0 || v >= mesh.num_nodes()) throw ParseError("unknown node id", p.line);
    }
    mesh.fault_faces.push_back(std::move(p.face));
  }
  for (const auto& [name, faces] : mesh.face_sets) {
    for (const BoundaryFace& bf : faces) {
      if (bf.cell < 0 || bf.cell >= mesh.num_cells() || bf.local_face < 0 ||
          bf.local_face >= num_faces(mesh.cells[bf.cell].kind)) {
        throw ParseError("face set " + name + " references a missing face", 0);
      }
    }
  }
  for (const auto& [name, ids] : mesh.node_sets) {
    for (Index v : ids) {
      if (v < 0 || v >= mesh.num_nodes()) {
        throw ParseError("node set " + name + " references a missing node", 0);
      }
    }
  }
  finalize_fault_faces(mesh);
  validate_mesh(mesh);
  return mesh;
}

Mesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open mesh file " + path);
  return parse_mesh(in);
}

void write_mesh(std::ostream& out, const Mesh& mesh) {
  out << "# split-node fault mesh\nNODES\n";
  for (Index v = 0; v < mesh.num_nodes(); ++v) {
    const Vec3& x = mesh.nodes[v];
    out << v << ' ' << fmt_g17(x(0)) << ' ' << fmt_g17(x(1)) << ' '
        << fmt_g17(x(2)) << '\n';
  }
  out << "CELLS\n";
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    const Cell& cell = mesh.cells[c];
    out << c << ' ' << to_string(cell.kind);
    for (Index v : cell.nodes) out << ' ' << v;
    out << ' ' << cell.region << '\n';
  }
  out << "FAULT_FACES\n";
  for (Index id = 0; id < mesh.num_fault_faces(); ++id) {
    const FaultFace& f = mesh.fault_faces[id];
    out << id << ' ' << to_string(f.kind);
    for (Index v : f.minus.nodes) out << ' ' << v;
    for (Index v : f.plus.nodes) out << ' ' << v;
    out << ' ' << f.minus.cell << ' ' << f.plus.cell << ' ' << f.tag << '\n';
  }
  for (const auto& [name, ids] : mesh.node_sets) {
    out << "NODESET " << name << '\n';
    for (std::size_t i = 0; i < ids.size(); ++i) {
      out << ids[i] << ((i + 1) % 16 == 0 || i + 1 == ids.size() ? '\n' : ' ');
    }
  }
  for (const auto& [name, faces] : mesh.face_sets) {
    out << "FACESET " << name << '\n';
    for (const BoundaryFace& bf : faces) out << bf.cell << ' ' << bf.local_face << '\n';
  }
}

void save_mesh(const Mesh& mesh, const std::string& path) {
  std::ostringstream os;
  write_mesh(os, mesh);
  write_file_atomic(path, os.str());
}

}  // namespace fc
