#include "fc/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "fc/io_util.hpp"

namespace fc {

namespace {

constexpr double kDeg = 3.14159265358979323846 / 180.0;

struct Entry {
  std::string key, value;
  int line = 0;
};

struct Section {
  std::string name;
  std::vector<Entry> entries;
  int line = 0;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<Section> tokenize(const std::string& text) {
  std::vector<Section> out;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ParseError("unterminated section header", line);
      const std::string name = trim(s.substr(1, s.size() - 2));
      if (name.empty()) throw ParseError("empty section name", line);
      if (!seen.insert(name).second) throw ParseError("duplicate section [" + name + "]", line);
      out.push_back({name, {}, line});
      continue;
    }
    if (out.empty()) throw ParseError("key outside of a section", line);
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line);
    Entry e{trim(s.substr(0, eq)), trim(s.substr(eq + 1)), line};
    if (e.key.empty()) throw ParseError("empty key", line);
    for (const Entry& o : out.back().entries) {
      if (o.key == e.key) {
        throw ParseError("duplicate key " + out.back().name + "." + e.key, line);
      }
    }
    out.back().entries.push_back(e);
  }
  return out;
}

class Reader {
 public:
  Reader(const Section& s, const Entry& e) : path_(s.name + "." + e.key), e_(e) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(path_ + ": " + what, e_.line);
  }

  double number(const std::string& tok) const {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      fail("not a number: '" + tok + "'");
    }
    if (used != tok.size() || !std::isfinite(v)) fail("not a number: '" + tok + "'");
    return v;
  }
  double real() const {
    const auto v = reals();
    if (v.size() != 1) fail("expected one value");
    return v[0];
  }
  int integer() const {
    const double v = real();
    if (v != std::floor(v) || std::abs(v) > 1e9) fail("expected an integer");
    return static_cast<int>(v);
  }
  bool boolean() const {
    if (e_.value == "true") return true;
    if (e_.value == "false") return false;
    fail("expected true or false");
  }
  std::vector<double> reals(const std::string& text) const {
    std::istringstream is(text);
    std::vector<double> v;
    std::string tok;
    while (is >> tok) v.push_back(number(tok));
    return v;
  }
  std::vector<double> reals() const { return reals(e_.value); }
  std::vector<double> reals(std::size_t n) const {
    auto v = reals();
    if (v.size() != n) fail("expected " + std::to_string(n) + " values");
    return v;
  }
  std::vector<std::string> items() const {
    std::vector<std::string> out;
    std::istringstream is(e_.value);
    std::string item;
    while (std::getline(is, item, ';')) {
      item = trim(item);
      if (!item.empty()) out.push_back(item);
    }
    return out;
  }
  const std::string& text() const { return e_.value; }

 private:
  std::string path_;
  const Entry& e_;
};

int section_index(const Section& s, const std::string& prefix) {
  const std::string tail = s.name.substr(prefix.size());
  if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos ||
      tail.size() > 9) {
    throw ParseError("section [" + s.name + "] needs a non-negative integer suffix", s.line);
  }
  return std::stoi(tail);
}

bool starts_with(const std::string& s, const std::string& p) {
  return s.compare(0, p.size(), p) == 0;
}

int axis_index(const Reader& r, const std::string& a) {
  if (a == "x") return 0;
  if (a == "y") return 1;
  if (a == "z") return 2;
  r.fail("unknown axis '" + a + "'");
}

void read_mesh(const Section& s, MeshSource& m) {
  std::optional<std::vector<double>> extents, divisions;
  std::set<std::string> grid_keys;
  for (const Entry& e : s.entries) {
    const Reader r(s, e);
    if (e.key == "builder") {
      if (e.value != "grid" && e.value != "file") r.fail("expected grid or file");
      m.builder = e.value;
    } else if (e.key == "file") {
      m.file = e.value;
    } else if (e.key == "kind") {
      try {
        m.kind = cell_kind_from_string(e.value);
      } catch (const Error&) {
        r.fail("unknown cell kind '" + e.value + "'");
      }
      grid_keys.insert(e.key);
    } else if (e.key == "x" || e.key == "y" || e.key == "z") {
      auto& c = e.key == "x" ? m.x : e.key == "y" ? m.y : m.z;
      c = r.reals();
      if (c.size() < 2) r.fail("needs at least two coordinates");
      for (std::size_t i = 1; i < c.size(); ++i) {
        if (!(c[i] > c[i - 1])) r.fail("coordinates must increase");
      }
      grid_keys.insert(e.key);
    } else if (e.key == "extents") {
      extents = r.reals(3);
      for (double v : *extents) {
        if (!(v > 0.0)) r.fail("extents must be positive");
      }
      grid_keys.insert(e.key);
    } else if (e.key == "divisions") {
      divisions = r.reals(3);
      for (double v : *divisions) {
        if (v < 1 || v != std::floor(v)) r.fail("divisions must be positive integers");
      }
      grid_keys.insert(e.key);
    } else if (e.key == "fault_planes") {
      for (const std::string& item : r.items()) {
        std::istringstream is(item);
        std::string axis;
        is >> axis;
        std::string rest;
        std::getline(is, rest);
        const auto v = r.reals(rest);
        if (v.size() != 1 && v.size() != 5) {
          r.fail("plane is 'axis position [lo_a hi_a lo_b hi_b]'");
        }
        PlaneSpec p{axis_index(r, axis), v[0], {}};
        if (v.size() == 5) p.bounds = std::array<double, 4>{v[1], v[2], v[3], v[4]};
        m.fault_planes.push_back(p);
      }
      grid_keys.insert(e.key);
    } else if (e.key == "regions") {
      for (const std::string& item : r.items()) {
        const auto v = r.reals(item);
        if (v.size() != 7 || v[6] != std::floor(v[6])) {
          r.fail("region is 'x0 y0 z0 x1 y1 z1 id'");
        }
        m.regions.push_back({Vec3(v[0], v[1], v[2]), Vec3(v[3], v[4], v[5]),
                             static_cast<int>(v[6])});
      }
      grid_keys.insert(e.key);
    } else if (e.key == "allow_intersections") {
      m.allow_intersections = r.boolean();
      grid_keys.insert(e.key);
    } else if (starts_with(e.key, "node_set.") || starts_with(e.key, "face_set.")) {
      const bool node = starts_with(e.key, "node_set.");
      const std::string name = e.key.substr(9);
      if (name.empty()) r.fail("set name missing");
      const auto v = r.reals(6);
      std::array<double, 6> box;
      std::copy(v.begin(), v.end(), box.begin());
      (node ? m.node_boxes : m.face_boxes)[name] = box;
    } else {
      r.fail("unknown key");
    }
  }
  if (m.builder == "file") {
    if (m.file.empty()) throw ParseError("mesh.file: required for builder = file", s.line);
    if (!grid_keys.empty()) {
      throw ParseError("mesh." + *grid_keys.begin() + ": only valid for builder = grid", s.line);
    }
    return;
  }
  if (!m.file.empty()) throw ParseError("mesh.file: only valid for builder = file", s.line);
  if (extents || divisions) {
    if (!extents || !divisions) {
      throw ParseError("mesh: extents and divisions go together", s.line);
    }
    if (!m.x.empty() || !m.y.empty() || !m.z.empty()) {
      throw ParseError("mesh: give either x/y/z or extents/divisions", s.line);
    }
    std::vector<double>* c[3] = {&m.x, &m.y, &m.z};
    for (int a = 0; a < 3; ++a) {
      const int n = static_cast<int>((*divisions)[a]);
      for (int i = 0; i <= n; ++i) c[a]->push_back((*extents)[a] * i / n);
    }
  }
  if (m.x.empty() || m.y.empty() || m.z.empty()) {
    throw ParseError("mesh: grid needs x, y and z (or extents and divisions)", s.line);
  }
}

void read_material(const Section& s, int region, RunConfig& c) {
  MaterialProps mp;
  bool has_e = false, has_nu = false;
  for (const Entry& e : s.entries) {
    const Reader r(s, e);
    if (e.key == "E") {
      mp.elastic.E = r.real();
      has_e = true;
    } else if (e.key == "nu") {
      mp.elastic.nu = r.real();
      has_nu = true;
    } else if (e.key == "biot") {
      mp.biot = r.real();
    } else if (e.key == "initial_stress") {
      const auto v = r.reals(6);
      Voigt sv;
      for (int i = 0; i < 6; ++i) sv(i) = v[i];
      c.initial_stress[region] = from_voigt(sv);
    } else {
      r.fail("unknown key");
    }
  }
  if (!has_e || !has_nu) throw ParseError(s.name + ": E and nu are required", s.line);
  try {
    validate(mp.elastic);
  } catch (const Error& ex) {
    throw ParseError(s.name + ": " + ex.what(), s.line);
  }
  c.materials[region] = mp;
}

void read_solver(const Section& s, SolverConfig& c) {
  for (const Entry& e : s.entries) {
    const Reader r(s, e);
    const std::string& k = e.key;
    if (k == "variant") {
      try {
        c.variant = variant_from_string(e.value);
      } catch (const Error&) {
        r.fail("unknown variant '" + e.value + "'");
      }
    } else if (k == "newton_rel_tol") c.newton_rel_tol = r.real();
    else if (k == "newton_abs_tol") c.newton_abs_tol = r.real();
    else if (k == "max_newton") c.max_newton = r.integer();
    else if (k == "max_uzawa") c.max_uzawa = r.integer();
    else if (k == "max_backtrack") c.max_backtrack = r.integer();
    else if (k == "uzawa_traction_tol") c.uzawa_traction_tol = r.real();
    else if (k == "multiplier_forcing") c.multiplier_forcing = r.real();
    else if (k == "symmetric") c.symmetric = r.boolean();
    else if (k == "threads") c.threads = r.integer();
    else if (k == "linear_solver") {
      try {
        c.krylov.method = krylov_method_from_string(e.value);
      } catch (const Error&) {
        r.fail("unknown linear solver '" + e.value + "'");
      }
    } else if (k == "linear_rel_tol") c.krylov.rel_tol = r.real();
    else if (k == "linear_max_iter") c.krylov.max_iter = r.integer();
    else if (k == "gmres_restart") c.krylov.restart = r.integer();
    else if (k == "direct_fallback_dofs") c.krylov.direct_fallback_dofs = r.integer();
    else r.fail("unknown key");
  }
}

void read_step(const Section& s, int n, LoadStep& st) {
  st.time = n;
  for (const Entry& e : s.entries) {
    const Reader r(s, e);
    const std::string& k = e.key;
    if (k == "time") {
      st.time = r.real();
    } else if (starts_with(k, "dirichlet.")) {
      DirichletBC bc{k.substr(10), {}};
      if (bc.set.empty()) r.fail("set name missing");
      std::istringstream is(e.value);
      std::string tok;
      int i = 0;
      while (is >> tok) {
        if (i == 3) r.fail("expected three components");
        if (tok != "free") bc.value[i] = r.number(tok);
        ++i;
      }
      if (i != 3) r.fail("expected three components (number or 'free')");
      st.dirichlet.push_back(bc);
    } else if (starts_with(k, "neumann.")) {
      const auto v = r.reals(3);
      NeumannBC bc{k.substr(8), Vec3(v[0], v[1], v[2])};
      if (bc.set.empty()) r.fail("set name missing");
      st.neumann.push_back(bc);
    } else if (starts_with(k, "pressure.") || starts_with(k, "fault_pressure.")) {
      const bool fault = starts_with(k, "fault_pressure.");
      const std::string id = k.substr(fault ? 15 : 9);
      if (id.empty() || id.find_first_not_of("0123456789") != std::string::npos ||
          id.size() > 9) {
        r.fail("expected an integer id");
      }
      (fault ? st.fault_pressure : st.pressure)[std::stoi(id)] = r.real();
    } else {
      r.fail("unknown key");
    }
  }
}

void check_references(const RunConfig& c) {
  for (const RegionBox& b : c.mesh.regions) {
    if (!c.materials.count(b.region)) {
      throw ParseError("mesh.regions: region " + std::to_string(b.region) +
                           " has no [material." + std::to_string(b.region) + "]",
                       0);
    }
  }
  if (c.mesh.builder == "grid" && !c.materials.count(0)) {
    throw ParseError("missing required section [material.0]", 0);
  }
  for (const auto& [r, s] : c.initial_stress) {
    (void)s;
    if (!c.materials.count(r)) throw ParseError("initial stress for unknown region", 0);
  }
  std::set<std::string> nodes, faces;
  for (const char* n : {"xmin", "xmax", "ymin", "ymax", "zmin", "zmax"}) {
    nodes.insert(n);
    faces.insert(n);
  }
  for (const auto& [n, b] : c.mesh.node_boxes) nodes.insert(n);
  for (const auto& [n, b] : c.mesh.face_boxes) faces.insert(n);
  const bool grid = c.mesh.builder == "grid";
  for (std::size_t k = 0; k < c.steps.size(); ++k) {
    const std::string sec = "steps." + std::to_string(k + 1);
    const LoadStep& st = c.steps[k];
    for (const DirichletBC& d : st.dirichlet) {
      if (grid && !nodes.count(d.set)) {
        throw ParseError(sec + ".dirichlet." + d.set + ": undefined node set '" + d.set + "'", 0);
      }
    }
    for (const NeumannBC& nb : st.neumann) {
      if (grid && !faces.count(nb.set)) {
        throw ParseError(sec + ".neumann." + nb.set + ": undefined face set '" + nb.set + "'", 0);
      }
    }
    for (const auto& [r, p] : st.pressure) {
      (void)p;
      if (!c.materials.count(r)) {
        throw ParseError(sec + ".pressure." + std::to_string(r) + ": undefined region", 0);
      }
    }
  }
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += fmt_g17(v[i]);
  }
  return s;
}

std::string axis_name(int a) { return a == 0 ? "x" : a == 1 ? "y" : "z"; }

std::string box_text(const std::array<double, 6>& b) {
  return join(std::vector<double>(b.begin(), b.end()));
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  const std::vector<Section> sections = tokenize(text);
  bool mesh = false;
  std::map<int, const Section*> steps;
  for (const Section& s : sections) {
    if (s.name == "mesh") {
      read_mesh(s, c.mesh);
      mesh = true;
    } else if (starts_with(s.name, "material.")) {
      read_material(s, section_index(s, "material."), c);
    } else if (s.name == "fault") {
      for (const Entry& e : s.entries) {
        const Reader r(s, e);
        if (e.key == "enriched") c.enriched = r.boolean();
        else r.fail("unknown key");
      }
    } else if (s.name == "friction") {
      for (const Entry& e : s.entries) {
        const Reader r(s, e);
        if (e.key == "cohesion") c.friction.cohesion = r.real();
        else if (e.key == "angle_deg") c.friction.angle = r.real() * kDeg;
        else r.fail("unknown key");
      }
    } else if (s.name == "penalty") {
      std::optional<double> en, et;
      for (const Entry& e : s.entries) {
        const Reader r(s, e);
        if (e.key == "scale") c.solver.penalty_scale = r.real();
        else if (e.key == "eps_n") en = r.real();
        else if (e.key == "eps_t") et = r.real();
        else r.fail("unknown key");
      }
      if (en.has_value() != et.has_value()) {
        throw ParseError("penalty: eps_n and eps_t go together", s.line);
      }
      if (en) c.penalty = PenaltyParams{*en, *et};
    } else if (s.name == "solver") {
      read_solver(s, c.solver);
    } else if (starts_with(s.name, "steps.")) {
      steps[section_index(s, "steps.")] = &s;
    } else if (s.name == "output") {
      for (const Entry& e : s.entries) {
        const Reader r(s, e);
        if (e.key == "profile") c.output.profile = e.value;
        else if (e.key == "field") c.output.field = e.value;
        else if (e.key == "report") c.output.report = e.value;
        else r.fail("unknown key");
      }
    } else {
      throw ParseError("unknown section [" + s.name + "]", s.line);
    }
  }
  if (!mesh) throw ParseError("missing required section [mesh]", 0);
  if (c.materials.empty()) throw ParseError("missing required section [material.<region>]", 0);
  if (steps.empty()) throw ParseError("missing required section [steps.1]", 0);
  int expect = 1;
  for (const auto& [n, s] : steps) {
    if (n != expect) {
      throw ParseError("steps must be numbered 1, 2, ... without gaps (missing [steps." +
                           std::to_string(expect) + "])",
                       s->line);
    }
    LoadStep st;
    read_step(*s, n, st);
    c.steps.push_back(st);
    ++expect;
  }
  try {
    validate(c.friction);
    validate(c.solver);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& ex) {
    throw ParseError(ex.what(), 0);
  }
  if (c.penalty && (!(c.penalty->eps_n > 0.0) || !(c.penalty->eps_t > 0.0))) {
    throw ParseError("penalty: eps_n and eps_t must be positive", 0);
  }
  check_references(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open config " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string echo_config(const RunConfig& c) {
  std::ostringstream os;
  const MeshSource& m = c.mesh;
  os << "[mesh]\nbuilder = " << m.builder << '\n';
  if (m.builder == "file") {
    os << "file = " << m.file << '\n';
  } else {
    os << "kind = " << to_string(m.kind) << '\n'
       << "x = " << join(m.x) << '\n'
       << "y = " << join(m.y) << '\n'
       << "z = " << join(m.z) << '\n'
       << "allow_intersections = " << (m.allow_intersections ? "true" : "false") << '\n';
    if (!m.fault_planes.empty()) {
      os << "fault_planes =";
      for (std::size_t i = 0; i < m.fault_planes.size(); ++i) {
        const PlaneSpec& p = m.fault_planes[i];
        os << (i ? " ; " : " ") << axis_name(p.axis) << ' ' << fmt_g17(p.position);
        if (p.bounds) {
          os << ' ' << join(std::vector<double>(p.bounds->begin(), p.bounds->end()));
        }
      }
      os << '\n';
    }
    if (!m.regions.empty()) {
      os << "regions =";
      for (std::size_t i = 0; i < m.regions.size(); ++i) {
        const RegionBox& b = m.regions[i];
        os << (i ? " ; " : " ")
           << join({b.lo(0), b.lo(1), b.lo(2), b.hi(0), b.hi(1), b.hi(2)}) << ' ' << b.region;
      }
      os << '\n';
    }
  }
  for (const auto& [n, b] : m.node_boxes) os << "node_set." << n << " = " << box_text(b) << '\n';
  for (const auto& [n, b] : m.face_boxes) os << "face_set." << n << " = " << box_text(b) << '\n';

  for (const auto& [r, mp] : c.materials) {
    os << "\n[material." << r << "]\n"
       << "E = " << fmt_g17(mp.elastic.E) << '\n'
       << "nu = " << fmt_g17(mp.elastic.nu) << '\n'
       << "biot = " << fmt_g17(mp.biot) << '\n';
    const auto it = c.initial_stress.find(r);
    const Voigt sv = to_voigt(it == c.initial_stress.end() ? Mat3(Mat3::Zero()) : it->second);
    os << "initial_stress = " << join(std::vector<double>(sv.data(), sv.data() + 6)) << '\n';
  }

  os << "\n[fault]\nenriched = " << (c.enriched ? "true" : "false") << '\n';
  os << "\n[friction]\ncohesion = " << fmt_g17(c.friction.cohesion) << '\n'
     << "angle_deg = " << fmt_g17(c.friction.angle / kDeg) << '\n';
  os << "\n[penalty]\nscale = " << fmt_g17(c.solver.penalty_scale) << '\n';
  if (c.penalty) {
    os << "eps_n = " << fmt_g17(c.penalty->eps_n) << '\n'
       << "eps_t = " << fmt_g17(c.penalty->eps_t) << '\n';
  }

  const SolverConfig& s = c.solver;
  os << "\n[solver]\n"
     << "variant = " << to_string(s.variant) << '\n'
     << "newton_rel_tol = " << fmt_g17(s.newton_rel_tol) << '\n'
     << "newton_abs_tol = " << fmt_g17(s.newton_abs_tol) << '\n'
     << "max_newton = " << s.max_newton << '\n'
     << "max_uzawa = " << s.max_uzawa << '\n'
     << "max_backtrack = " << s.max_backtrack << '\n'
     << "uzawa_traction_tol = " << fmt_g17(s.uzawa_traction_tol) << '\n'
     << "multiplier_forcing = " << fmt_g17(s.multiplier_forcing) << '\n'
     << "symmetric = " << (s.symmetric ? "true" : "false") << '\n'
     << "threads = " << s.threads << '\n'
     << "linear_solver = " << to_string(s.krylov.method) << '\n'
     << "linear_rel_tol = " << fmt_g17(s.krylov.rel_tol) << '\n'
     << "linear_max_iter = " << s.krylov.max_iter << '\n'
     << "gmres_restart = " << s.krylov.restart << '\n'
     << "direct_fallback_dofs = " << s.krylov.direct_fallback_dofs << '\n';

  for (std::size_t k = 0; k < c.steps.size(); ++k) {
    const LoadStep& st = c.steps[k];
    os << "\n[steps." << k + 1 << "]\ntime = " << fmt_g17(st.time) << '\n';
    for (const DirichletBC& d : st.dirichlet) {
      os << "dirichlet." << d.set << " =";
      for (const auto& v : d.value) os << ' ' << (v ? fmt_g17(*v) : "free");
      os << '\n';
    }
    for (const NeumannBC& n : st.neumann) {
      os << "neumann." << n.set << " = "
         << join({n.traction(0), n.traction(1), n.traction(2)}) << '\n';
    }
    for (const auto& [r, p] : st.pressure) os << "pressure." << r << " = " << fmt_g17(p) << '\n';
    for (const auto& [t, p] : st.fault_pressure) {
      os << "fault_pressure." << t << " = " << fmt_g17(p) << '\n';
    }
  }

  os << "\n[output]\n";
  if (!c.output.profile.empty()) os << "profile = " << c.output.profile << '\n';
  if (!c.output.field.empty()) os << "field = " << c.output.field << '\n';
  if (!c.output.report.empty()) os << "report = " << c.output.report << '\n';
  return os.str();
}

Mesh build_mesh(const MeshSource& m) {
  Mesh mesh;
  if (m.builder == "file") {
    mesh = load_mesh(m.file);
  } else {
    SplitOptions opt;
    opt.allow_intersections = m.allow_intersections;
    mesh = build_structured_grid(m.kind, m.x, m.y, m.z, m.fault_planes, m.regions, opt);
  }
  for (const auto& [name, b] : m.node_boxes) {
    auto ids = nodes_in_box(mesh, Vec3(b[0], b[1], b[2]), Vec3(b[3], b[4], b[5]));
    if (ids.empty()) throw Error("node set '" + name + "' selects no nodes");
    mesh.node_sets[name] = std::move(ids);
  }
  for (const auto& [name, b] : m.face_boxes) {
    auto faces = boundary_faces_in_box(mesh, Vec3(b[0], b[1], b[2]), Vec3(b[3], b[4], b[5]));
    if (faces.empty()) throw Error("face set '" + name + "' selects no boundary faces");
    mesh.face_sets[name] = std::move(faces);
  }
  return mesh;
}

ProblemDefinition build_problem(const RunConfig& c) {
  ProblemDefinition pd;
  pd.mesh = build_mesh(c.mesh);
  pd.materials = c.materials;
  pd.region_initial_stress = c.initial_stress;
  pd.friction = c.friction;
  pd.penalty = c.penalty;
  pd.enriched = c.enriched;
  pd.steps = c.steps;
  validate(pd);
  return pd;
}

}  // namespace fc
