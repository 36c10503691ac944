#include "fc/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "fc/io_util.hpp"
#include "fc/quadrature.hpp"

namespace fc {

namespace {

constexpr double kDeg = M_PI / 180.0;

// Growing steps that exactly cover `length`.
std::vector<double> growth_steps(double length, double h, double ratio,
                                 double h_max) {
  std::vector<double> steps;
  if (length <= 0.0) return steps;
  double s = h, total = 0.0;
  while (total < length) {
    s = std::min(s * ratio, h_max);
    steps.push_back(s);
    total += s;
  }
  if (steps.size() > 1 && total - length > 0.5 * steps.back()) {
    total -= steps.back();
    steps.pop_back();
  }
  for (double& v : steps) v *= length / total;
  return steps;
}

int uniform_cells(double lo, double hi, double h) {
  const double n = (hi - lo) / h;
  const int k = static_cast<int>(std::lround(n));
  if (k < 1 || std::abs(n - k) > 1e-9 * std::max(1.0, n)) {
    throw Error("interval is not a multiple of the mesh size");
  }
  return k;
}

void add_point_set(Mesh& m, const std::string& name, const Vec3& p, double tol) {
  m.node_sets[name] = nodes_in_box(m, Vec3(p.x() - tol, p.y() - tol, -1e300),
                                   Vec3(p.x() + tol, p.y() + tol, 1e300));
  if (m.node_sets[name].empty()) throw Error("no mesh node at point set " + name);
}

DirichletBC fix(const std::string& set, std::optional<double> x,
                std::optional<double> y, std::optional<double> z) {
  return DirichletBC{set, {x, y, z}};
}

constexpr std::optional<double> kFree = std::nullopt;

// Extent of a face along one global axis.
std::pair<double, double> face_extent(const Mesh& m, const FaultFace& f, int axis) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (Index n : f.minus.nodes) {
    lo = std::min(lo, m.nodes[n](axis));
    hi = std::max(hi, m.nodes[n](axis));
  }
  return {lo, hi};
}

}  // namespace

std::vector<double> graded_axis(double outer_lo, double inner_lo,
                                double inner_hi, double outer_hi, double h,
                                double ratio, double h_max) {
  if (!(outer_lo <= inner_lo && inner_lo < inner_hi && inner_hi <= outer_hi)) {
    throw Error("graded_axis: bounds out of order");
  }
  const int n = uniform_cells(inner_lo, inner_hi, h);
  std::vector<double> left = growth_steps(inner_lo - outer_lo, h, ratio, h_max);
  std::vector<double> right = growth_steps(outer_hi - inner_hi, h, ratio, h_max);
  std::vector<double> x;
  double pos = inner_lo;
  std::vector<double> lpts;
  for (double s : left) {
    pos -= s;
    lpts.push_back(pos);
  }
  if (!lpts.empty()) lpts.back() = outer_lo;
  x.assign(lpts.rbegin(), lpts.rend());
  for (int i = 0; i <= n; ++i) x.push_back(i == n ? inner_hi : inner_lo + i * h);
  pos = inner_hi;
  for (std::size_t k = 0; k < right.size(); ++k) {
    pos += right[k];
    x.push_back(k + 1 == right.size() ? outer_hi : pos);
  }
  return x;
}

// ---------------------------------------------------------------- inclined

ProblemDefinition inclined_fault_case(const InclinedFaultParams& p, int faces,
                                      CellKind kind) {
  if (!(p.alpha_deg > 0.0 && p.alpha_deg < 90.0) || !(p.b > 0.0) || faces < 1) {
    throw Error("invalid inclined-fault parameters");
  }
  const double h = 2.0 * p.b / faces;
  const double m = std::ceil(0.4 * p.b / h - 1e-9) * h;
  const double half = 0.5 * p.domain_factor * p.b;
  const std::vector<double> xs = graded_axis(-half, -p.b - m, p.b + m, half, h, p.growth);
  const std::vector<double> ys = graded_axis(-half, -m, m, half, h, p.growth);
  const std::vector<double> zs = {0.0, h};
  PlaneSpec fault{1, 0.0, std::array<double, 4>{-p.b, p.b, 0.0, h}};

  ProblemDefinition pd;
  pd.mesh = build_structured_grid(kind, xs, ys, zs, {fault});
  const double tol = 1e-6 * h;
  add_point_set(pd.mesh, "pin_a", Vec3(-half, -half, 0.0), tol);
  add_point_set(pd.mesh, "pin_b", Vec3(half, -half, 0.0), tol);
  pd.materials[0] = {{p.E, p.nu}, 0.0};
  pd.friction = {0.0, p.theta_deg * kDeg};

  const double a = p.alpha_deg * kDeg;
  const double sxx = -p.sigma * std::cos(a) * std::cos(a);
  const double syy = -p.sigma * std::sin(a) * std::sin(a);
  const double sxy = -p.sigma * std::sin(a) * std::cos(a);
  LoadStep st;
  st.neumann = {{"xmin", Vec3(-sxx, -sxy, 0.0)},
                {"xmax", Vec3(sxx, sxy, 0.0)},
                {"ymin", Vec3(-sxy, -syy, 0.0)},
                {"ymax", Vec3(sxy, syy, 0.0)}};
  st.dirichlet = {fix("zmin", kFree, kFree, 0.0), fix("zmax", kFree, kFree, 0.0),
                  fix("pin_a", 0.0, 0.0, kFree), fix("pin_b", kFree, 0.0, kFree)};
  pd.steps.push_back(st);
  return pd;
}

InclinedAnalytic inclined_fault_analytic(const InclinedFaultParams& p,
                                         double xi) {
  if (xi < -1e-12 * p.b || xi > 2.0 * p.b * (1.0 + 1e-12)) {
    throw Error("fault coordinate outside [0, 2b]");
  }
  const double a = p.alpha_deg * kDeg;
  const double s = xi - p.b;
  InclinedAnalytic r;
  r.t_n = -p.sigma * std::sin(a) * std::sin(a);
  r.slip = 4.0 * (1.0 - p.nu * p.nu) / p.E * p.sigma * std::sin(a) *
           (std::cos(a) - std::sin(a) * std::tan(p.theta_deg * kDeg)) *
           std::sqrt(std::max(0.0, p.b * p.b - s * s));
  return r;
}

double inclined_fault_slip_average(const InclinedFaultParams& p, double xi0,
                                   double xi1) {
  const double a = p.alpha_deg * kDeg;
  const double coef = 4.0 * (1.0 - p.nu * p.nu) / p.E * p.sigma * std::sin(a) *
                      (std::cos(a) - std::sin(a) * std::tan(p.theta_deg * kDeg));
  auto F = [&](double xi) {
    const double s = std::clamp(xi - p.b, -p.b, p.b);
    return 0.5 * (s * std::sqrt(p.b * p.b - s * s) + p.b * p.b * std::asin(s / p.b));
  };
  return coef * (F(xi1) - F(xi0)) / (xi1 - xi0);
}

// ---------------------------------------------------------------- vertical

double vertical_fault_C(const VerticalFaultParams& p) {
  return (1.0 - 2.0 * p.nu) * p.biot * p.p / (2.0 * M_PI * (1.0 - p.nu));
}

double vertical_fault_A(const VerticalFaultParams& p) {
  return p.G * 2.0 * M_PI * (1.0 - p.nu);
}

double vertical_fault_traction(const VerticalFaultParams& p, double y) {
  for (double s : {-p.b, -p.a, p.a, p.b}) {
    if (std::abs(y - s) <= 1e-12 * p.b) throw Error("traction singular at y = +-a, +-b");
  }
  const double num = (y - p.a) * (y - p.a) * (y + p.a) * (y + p.a);
  const double den = (y - p.b) * (y - p.b) * (y + p.b) * (y + p.b);
  return std::abs(0.5 * vertical_fault_C(p) * std::log(num / den));
}

double vertical_fault_slip_scale(const VerticalFaultParams& p) {
  return vertical_fault_C(p) * 2.0 * M_PI * (1.0 - p.nu) / p.G;
}

double vertical_fault_slip(const VerticalFaultParams& p, double y) {
  double v = 0.0;
  if (y <= -p.b || y >= p.b) {
    v = 0.0;
  } else if (y <= -p.a) {
    v = -(y + p.b);
  } else if (y < p.a) {
    v = p.a - p.b;
  } else {
    v = y - p.b;
  }
  return std::abs(vertical_fault_slip_scale(p) * v);
}

ProblemDefinition vertical_fault_case(const VerticalFaultParams& p, double h,
                                      CellKind kind,
                                      VerticalScenario scenario) {
  if (!(0.0 < p.a && p.a < p.b && p.b < 0.5 * p.H)) {
    throw Error("invalid reservoir geometry");
  }
  const double E = 2.0 * p.G * (1.0 + p.nu);
  const std::vector<double> xs =
      graded_axis(-0.5 * p.W, -p.b, p.b, 0.5 * p.W, h, p.growth);
  const std::vector<double> ys =
      graded_axis(-0.5 * p.H, -2.0 * p.b, 2.0 * p.b, 0.5 * p.H, h, p.growth);
  const std::vector<double> zs = {0.0, h};
  const double big = 1e3 * (p.W + p.H);
  const std::vector<RegionBox> boxes = {
      {Vec3(-big, -p.a, -big), Vec3(0.0, p.b, big), 1},
      {Vec3(0.0, -p.b, -big), Vec3(big, p.a, big), 2}};

  // tag 0 spans the reservoir offset |y| < b, tags 1 and 2 the rest
  const double top = 0.5 * p.H, bot = -0.5 * p.H;
  const std::vector<PlaneSpec> planes = {
      {0, 0.0, std::array<double, 4>{-p.b, p.b, 0.0, h}},
      {0, 0.0, std::array<double, 4>{bot, -p.b, 0.0, h}},
      {0, 0.0, std::array<double, 4>{p.b, top, 0.0, h}}};

  ProblemDefinition pd;
  pd.mesh = build_structured_grid(kind, xs, ys, zs, planes, boxes);
  for (int r = 0; r < 3; ++r) pd.materials[r] = {{E, p.nu}, p.biot};
  pd.initial_stress = -p.sigma_c * Mat3::Identity();
  const FrictionParams locked{1e6 * p.sigma_c, p.theta_deg * kDeg};
  pd.friction = scenario == VerticalScenario::PreSlip ? locked : FrictionParams{0.0, 0.0};
  pd.fault_friction = {{1, locked}, {2, locked}};
  LoadStep st;
  st.pressure = {{1, p.p}, {2, p.p}};
  st.dirichlet = {fix("xmin", 0.0, kFree, kFree), fix("xmax", 0.0, kFree, kFree),
                  fix("ymin", kFree, 0.0, kFree), fix("zmin", kFree, kFree, 0.0),
                  fix("zmax", kFree, kFree, 0.0)};
  st.neumann = {{"ymax", Vec3(0.0, -p.sigma_c, 0.0)}};
  pd.steps.push_back(st);
  return pd;
}

// ---------------------------------------------------------------- SSO etc.

Vec2 stick_slip_open_loads(double t) {
  if (t <= 5.0) return Vec2(-3.0e6 * t, -1.0e6 * t);
  return Vec2(-15e6 + 6.0e6 * (t - 5.0), -5e6 + 2.0e6 * (t - 5.0));
}

ProblemDefinition stick_slip_open_case(const SsoParams& p) {
  ProblemDefinition pd;
  pd.mesh = build_structured_hex_grid(Vec3(8, 20, 20), {4, 10, 10}, {PlaneSpec{0, 4.0, {}}});
  pd.mesh.face_sets["top_right"] =
      boundary_faces_in_box(pd.mesh, Vec3(4, 0, 20), Vec3(8, 20, 20));
  pd.materials[0] = {{p.E, p.nu}, 0.0};
  pd.friction = {0.0, p.theta_deg * kDeg};
  pd.initial_stress(0, 0) = p.sigma0;
  for (int k = 0; k <= 10; ++k) {
    const Vec2 s = stick_slip_open_loads(k);
    LoadStep st;
    st.time = k;
    st.dirichlet = {fix("zmin", 0.0, 0.0, 0.0), fix("xmin", 0.0, kFree, kFree)};
    st.neumann = {{"xmax", Vec3(p.sigma0 + s(0), 0.0, 0.0)},
                  {"top_right", Vec3(0.0, 0.0, s(1))}};
    pd.steps.push_back(st);
  }
  return pd;
}

ProblemDefinition constant_slip_case(const ConstantSlipParams& p) {
  std::vector<double> xs, zs;
  for (int i = 0; i <= p.nx; ++i) xs.push_back(10.0 * i / p.nx);
  for (int k = 0; k <= p.nz; ++k) zs.push_back(10.0 * k / p.nz);
  if (p.nz % 2) throw Error("constant-slip case needs an even number of z cells");
  ProblemDefinition pd;
  pd.mesh = build_structured_grid(CellKind::Hex8, xs, xs, zs,
                                  {PlaneSpec{2, 5.0, {}}});
  pd.materials[0] = {{p.E, p.nu}, 0.0};
  pd.friction = {0.0, p.theta_deg * kDeg};
  pd.initial_stress(2, 2) = p.sigma_zz;
  LoadStep st;
  st.time = 1.0;
  st.dirichlet = {fix("zmin", 0.0, 0.0, 0.0),
                  fix("zmax", p.top_displacement(0), p.top_displacement(1), 0.0)};
  pd.steps.push_back(st);
  return pd;
}

ProblemDefinition t_crack_case(int scale_factor, const TCrackParams& p) {
  if (scale_factor < 1) throw Error("t-crack scale factor must be >= 1");
  const int s = scale_factor;
  const double L = p.half_length;
  const double xn = 1.5 * L * s, yn_lo = -0.5 * L * s, yn_hi = 1.5 * L * s;
  // far zones hold 15s (x) and 20s (y) cells of growing size
  auto far = [&](int cells) {
    double len = 0.0, step = p.h_near;
    for (int k = 0; k < cells; ++k) {
      step = std::min(step * 1.25, p.h_far);
      len += step;
    }
    return len;
  };
  const double fx = far(15 * s), fy = far(20 * s);
  const std::vector<double> xs =
      graded_axis(-xn - fx, -xn, xn, xn + fx, p.h_near, 1.25, p.h_far);
  const std::vector<double> ys =
      graded_axis(yn_lo - fy, yn_lo, yn_hi, yn_hi + fy, p.h_near, 1.25, p.h_far);
  const std::vector<double> zs = {0.0, p.h_near, 2.0 * p.h_near};
  const double zt = zs.back();
  std::vector<PlaneSpec> planes = {
      {1, 0.0, std::array<double, 4>{-L, L, 0.0, zt}},
      {0, 0.0, std::array<double, 4>{0.0, L, 0.0, zt}}};
  SplitOptions opt;
  opt.allow_intersections = true;

  ProblemDefinition pd;
  pd.mesh = build_structured_grid(CellKind::Hex8, xs, ys, zs, planes, {}, opt);
  pd.materials[0] = {{p.E, p.nu}, 0.0};
  pd.friction = {0.0, p.theta_deg * kDeg};
  pd.initial_stress(1, 1) = p.sigma_yy;
  for (int k = 1; k <= p.steps; ++k) {
    LoadStep st;
    st.time = k;
    st.dirichlet = {fix("xmin", 0.0, 0.0, 0.0), fix("xmax", 0.0, 0.0, 0.0),
                    fix("ymin", 0.0, 0.0, 0.0), fix("ymax", 0.0, 0.0, 0.0),
                    fix("zmin", kFree, kFree, 0.0), fix("zmax", kFree, kFree, 0.0)};
    st.fault_pressure[1] = p.max_fault_pressure * k / p.steps;
    pd.steps.push_back(st);
  }
  return pd;
}

// ---------------------------------------------------------------- errors

double interval_average(const std::function<double(double)>& f, double lo,
                        double hi, int points) {
  std::vector<double> x, w;
  gauss_legendre(points, x, w);
  double s = 0.0;
  for (int i = 0; i < points; ++i) {
    s += w[i] * f(0.5 * (lo + hi) + 0.5 * (hi - lo) * x[i]);
  }
  return 0.5 * s;
}

double fault_l2_error(const std::vector<ProfileSample>& s,
                      const std::function<double(double, double)>& average,
                      double xi_min, double xi_max, double trim_fraction) {
  if (s.empty()) throw Error("empty fault profile");
  const double mid = 0.5 * (xi_min + xi_max);
  const double half = 0.5 * trim_fraction * (xi_max - xi_min);
  const double tol = 1e-12 * (xi_max - xi_min);
  double num = 0.0, den = 0.0;
  for (const ProfileSample& p : s) {
    const double c = 0.5 * (p.lo + p.hi);
    if (std::abs(c - mid) > half + tol) continue;
    const double a = average(p.lo, p.hi);
    num += p.weight * (p.value - a) * (p.value - a);
    den += p.weight * a * a;
  }
  if (!(den > 0.0)) throw Error("analytic profile has zero norm on the window");
  return std::sqrt(num / den);
}

double fit_rate(const std::vector<double>& h, const std::vector<double>& err,
                double exact_floor) {
  if (h.size() != err.size() || h.size() < 2) throw Error("rate fit needs >= 2 levels");
  if (std::all_of(err.begin(), err.end(), [&](double e) { return e <= exact_floor; })) {
    return std::numeric_limits<double>::infinity();
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double x = std::log(h[i]);
    const double y = std::log(std::max(err[i], std::numeric_limits<double>::min()));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ErrorReport convergence_study(const std::string& name, const LevelRunner& run,
                              int levels, const std::vector<CellKind>& kinds,
                              int first_level) {
  if (levels < 3) throw Error("convergence study needs at least 3 levels");
  ErrorReport rep;
  rep.name = name;
  for (CellKind k : kinds) {
    std::vector<double> h, et, es;
    for (int l = first_level; l < first_level + levels; ++l) {
      LevelError e;
      try {
        e = run(k, l);
      } catch (const Error& ex) {
        throw SolverError(name + " " + to_string(k) + " level " + std::to_string(l) +
                          ": " + ex.what());
      }
      rep.rows.push_back(e);
      h.push_back(e.h);
      et.push_back(e.err_traction);
      es.push_back(e.err_slip);
    }
    RateFit r;
    r.traction = fit_rate(h, et, kExactErrorFloor);
    r.slip = fit_rate(h, es, kExactErrorFloor);
    r.exact = std::isinf(r.traction) && std::isinf(r.slip);
    rep.rates.push_back({k, r});
  }
  return rep;
}

std::string error_report_csv(const ErrorReport& r) {
  std::ostringstream os;
  os << "case,kind,h,err_traction,err_slip,rate,rate_slip\n";
  for (const LevelError& e : r.rows) {
    RateFit fit;
    for (const auto& [k, f] : r.rates) {
      if (k == e.kind) fit = f;
    }
    os << r.name << ',' << to_string(e.kind) << ',' << fmt_e17(e.h) << ','
       << fmt_e17(e.err_traction) << ',' << fmt_e17(e.err_slip) << ','
       << fmt_e17(fit.traction) << ',' << fmt_e17(fit.slip) << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------- runners

SolverConfig default_bench_solver() {
  SolverConfig c;
  c.krylov.method = KrylovMethod::Direct;
  return c;
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SolveResult solve(const ProblemDefinition& pd, const SolverConfig& cfg) {
  return cfg.variant == Variant::Uzawa ? uzawa_solve(pd, cfg)
                                       : interleaved_solve(pd, cfg);
}

std::vector<PenaltyParams> penalties(const ProblemDefinition& pd,
                                     const SolverConfig& cfg) {
  return pd.penalty ? std::vector<PenaltyParams>(pd.mesh.fault_faces.size(), *pd.penalty)
                    : default_penalty(pd.mesh, pd, cfg.penalty_scale);
}

}  // namespace

BenchRun run_inclined_fault(const InclinedFaultParams& p, int level,
                            CellKind kind, const SolverConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const int faces = 10 << level;
  const ProblemDefinition pd = inclined_fault_case(p, faces, kind);
  const SolveResult res = solve(pd, cfg);
  BenchRun out;
  out.report = res.report;
  out.faces = res.report.faces.back();
  out.kkt = check_kkt(pd, penalties(pd, cfg), out.faces);

  const Mesh& m = pd.mesh;
  std::vector<ProfileSample> tn, slip;
  for (std::size_t f = 0; f < m.fault_faces.size(); ++f) {
    const auto [lo, hi] = face_extent(m, m.fault_faces[f], 0);
    const double w = m.fault_faces[f].area;
    out.xi.push_back(m.fault_faces[f].centroid.x() + p.b);
    tn.push_back({lo + p.b, hi + p.b, w, out.faces[f].traction(0)});
    slip.push_back({lo + p.b, hi + p.b, w, out.faces[f].g_t.norm()});
  }
  const double tn_exact = inclined_fault_analytic(p, p.b).t_n;
  out.error.kind = kind;
  out.error.level = level;
  out.error.h = 2.0 * p.b / faces;
  out.error.err_traction = fault_l2_error(
      tn, [&](double, double) { return tn_exact; }, 0.0, 2.0 * p.b, 0.9);
  out.error.err_slip = fault_l2_error(
      slip, [&](double a, double b) { return inclined_fault_slip_average(p, a, b); },
      0.0, 2.0 * p.b, 1.0);

  double s = 0.0, w = 0.0;
  for (const ProfileSample& t : tn) {
    if (std::abs(0.5 * (t.lo + t.hi) - p.b) <= 0.9 * p.b) {
      s += t.weight * t.value;
      w += t.weight;
    }
  }
  out.mean_t_n = s / w;
  double m1 = 0.0, m2 = 0.0, wc = 0.0;
  for (const ProfileSample& t : tn) {
    if (std::abs(0.5 * (t.lo + t.hi) - p.b) <= 0.5 * p.b) {
      m1 += t.weight * t.value;
      m2 += t.weight * t.value * t.value;
      wc += t.weight;
    }
  }
  m1 /= wc;
  out.t_n_variation = std::sqrt(std::max(0.0, m2 / wc - m1 * m1)) / std::abs(m1);
  out.error.newton = res.report.total_newton;
  out.error.krylov = res.report.total_krylov;
  out.error.kkt_ok = out.kkt.ok();
  out.error.seconds = seconds_since(t0);
  return out;
}

double vertical_fault_h(int level) { return 25.0 / (1 << level); }

BenchRun run_vertical_fault(const VerticalFaultParams& p, int level,
                            CellKind kind, const SolverConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const double h = vertical_fault_h(level);
  BenchRun out;
  out.error.kind = kind;
  out.error.level = level;
  out.error.h = h;
  out.error.kkt_ok = true;

  const double sing[4] = {-p.b, -p.a, p.a, p.b};
  auto singular_distance = [&](double lo, double hi) {
    double d = 1e300;
    for (double s : sing) d = std::min(d, std::max({lo - s, s - hi, 0.0}));
    return d;
  };
  const double slack = 1.0 + 1e-9;

  for (VerticalScenario sc : {VerticalScenario::PreSlip, VerticalScenario::Slip}) {
    const ProblemDefinition pd = vertical_fault_case(p, h, kind, sc);
    const SolveResult res = solve(pd, cfg);
    const std::vector<FaceResult>& faces = res.report.faces.back();
    const KktReport kkt = check_kkt(pd, penalties(pd, cfg), faces);
    out.kkt.faces += kkt.faces;
    out.kkt.failures += kkt.failures;
    out.kkt.messages.insert(out.kkt.messages.end(), kkt.messages.begin(), kkt.messages.end());
    out.error.kkt_ok = out.error.kkt_ok && kkt.ok();
    out.error.newton += res.report.total_newton;
    out.error.krylov += res.report.total_krylov;

    const Mesh& m = pd.mesh;
    std::vector<ProfileSample> samples;
    double plateau = 0.0, plateau_w = 0.0, zero = 0.0, zero_w = 0.0;
    for (std::size_t f = 0; f < m.fault_faces.size(); ++f) {
      const auto [lo, hi] = face_extent(m, m.fault_faces[f], 1);
      if (hi > 2.0 * p.b + 1e-9 * h || lo < -2.0 * p.b - 1e-9 * h) continue;
      // skip faces within one face width of a singular point
      if (singular_distance(lo, hi) <= (hi - lo) * slack) continue;
      const double w = m.fault_faces[f].area;
      const double v = sc == VerticalScenario::PreSlip ? faces[f].traction.tail<2>().norm()
                                                       : faces[f].g_t.norm();
      samples.push_back({lo, hi, w, v});
      if (sc == VerticalScenario::Slip && hi <= p.a && lo >= -p.a) {
        plateau += w * v;
        plateau_w += w;
      }
      if (sc == VerticalScenario::PreSlip && (std::abs(lo) < 1e-9 * h || std::abs(hi) < 1e-9 * h)) {
        zero += w * v;
        zero_w += w;
      }
    }
    if (sc == VerticalScenario::PreSlip) {
      out.report = res.report;
      out.faces = faces;
      out.traction_at_zero = zero / zero_w;
      auto avg = [&](double a, double b) {
        return interval_average([&](double y) { return vertical_fault_traction(p, y); }, a, b);
      };
      out.error.err_traction = fault_l2_error(samples, avg, -2.0 * p.b, 2.0 * p.b, 1.0);
    } else {
      out.slip_plateau = plateau / plateau_w;
      out.error.err_slip = fault_l2_error(
          samples,
          [&](double a, double b) {
            return interval_average([&](double y) { return vertical_fault_slip(p, y); }, a, b);
          },
          -2.0 * p.b, 2.0 * p.b, 1.0);
    }
  }
  out.error.seconds = seconds_since(t0);
  return out;
}

}  // namespace fc
