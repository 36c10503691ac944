#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fc/solver.hpp"

namespace fc {

// Tensor axis: uniform spacing h on [inner_lo, inner_hi] (both multiples of
// h away from each other), geometric growth by `ratio` out to the outer
// bounds, spacing capped at h_max.
std::vector<double> graded_axis(double outer_lo, double inner_lo,
                                double inner_hi, double outer_hi, double h,
                                double ratio, double h_max = 1e300);

// ---- inclined fault under uniaxial compression (plane strain) ----
struct InclinedFaultParams {
  double E = 1e5;
  double nu = 0.4;
  double alpha_deg = 20.0;
  double b = 1.0;  // half length
  double theta_deg = 30.0;
  double sigma = 1.0;  // Pa, compression magnitude
  double domain_factor = 40.0;  // square side in units of b
  double growth = 1.2;
};

// faces: number of fault faces along the fault (2b/h).
ProblemDefinition inclined_fault_case(const InclinedFaultParams& p, int faces,
                                      CellKind kind);

struct InclinedAnalytic {
  double t_n = 0.0;
  double slip = 0.0;
};
// xi in [0, 2b] measured from the left tip.
InclinedAnalytic inclined_fault_analytic(const InclinedFaultParams& p,
                                         double xi);
double inclined_fault_slip_average(const InclinedFaultParams& p, double xi0,
                                   double xi1);

// ---- vertical fault crossing a dislocated reservoir ----
struct VerticalFaultParams {
  double a = 75.0;
  double b = 150.0;
  double H = 4500.0;
  double W = 4500.0;
  double G = 6500e6;
  double nu = 0.15;
  double theta_deg = 30.0;
  double p = -25e6;
  double biot = 0.9;
  double sigma_c = 60e6;  // initial isotropic compression
  double growth = 1.2;
};

enum class VerticalScenario { PreSlip, Slip };

ProblemDefinition vertical_fault_case(const VerticalFaultParams& p, double h,
                                      CellKind kind,
                                      VerticalScenario scenario);
double vertical_fault_C(const VerticalFaultParams& p);
double vertical_fault_A(const VerticalFaultParams& p);
// |t_T|(y); throws at y = +-a, +-b.
double vertical_fault_traction(const VerticalFaultParams& p, double y);
// Slope of the slip profile on the flanks: the dislocation compliance
// 2 pi (1 - nu) / G applied to C. This is the slip that cancels the
// pre-slip traction; C/A with A = 2 pi G (1 - nu) is smaller by
// (2 pi (1 - nu))^2.
double vertical_fault_slip_scale(const VerticalFaultParams& p);
// |g_T|(y), piecewise linear, with the slope above.
double vertical_fault_slip(const VerticalFaultParams& p, double y);

// ---- iteration-study cases ----
struct SsoParams {
  double E = 450e6;
  double nu = 0.3;
  double theta_deg = 30.0;
  double sigma0 = -1e6;  // initial x stress
};
ProblemDefinition stick_slip_open_case(const SsoParams& p = {});
// sigma_x(t), sigma_z(t) of the load history, t in [0, 10]
Vec2 stick_slip_open_loads(double t);

struct ConstantSlipParams {
  double E = 250e6;
  double nu = 0.3;
  double theta_deg = 5.71;
  double sigma_zz = -10e3;
  Vec2 top_displacement = Vec2(0.1, 0.1);
  int nx = 10, nz = 10;
};
ProblemDefinition constant_slip_case(const ConstantSlipParams& p = {});

struct TCrackParams {
  double E = 20e9;
  double nu = 0.25;
  double theta_deg = 30.0;
  double sigma_yy = -10e6;
  double max_fault_pressure = 15e6;
  double half_length = 100.0;  // horizontal half length = vertical length
  double h_near = 10.0;
  double h_far = 45.0;
  int steps = 10;
};
// scale_factor 1 gives the reduced 60x60x2 grid, 5 the full 300x300x2.
ProblemDefinition t_crack_case(int scale_factor = 1, const TCrackParams& p = {});

// ---- profiles and error norms ----
struct ProfileSample {
  double lo = 0.0, hi = 0.0;  // face extent along the fault coordinate
  double weight = 0.0;        // face area
  double value = 0.0;
};

// Area-weighted relative L2 error of face values against face averages of
// the oracle, over faces whose centre lies in the central `trim_fraction`
// of [xi_min, xi_max].
double fault_l2_error(const std::vector<ProfileSample>& s,
                      const std::function<double(double, double)>& average,
                      double xi_min, double xi_max, double trim_fraction = 0.9);

// Gauss average of f over [lo, hi].
double interval_average(const std::function<double(double)>& f, double lo,
                        double hi, int points = 16);

struct LevelError {
  CellKind kind = CellKind::Hex8;
  int level = 0;
  double h = 0.0;
  double err_traction = 0.0;
  double err_slip = 0.0;
  int newton = 0;
  int krylov = 0;
  double seconds = 0.0;
  bool kkt_ok = true;
};

struct RateFit {
  double traction = 0.0;
  double slip = 0.0;
  bool exact = false;  // both quantities at the exact floor
};

struct ErrorReport {
  std::string name;
  std::vector<LevelError> rows;
  std::vector<std::pair<CellKind, RateFit>> rates;
};

// Least-squares slope of log(err) against log(h); +inf when every error is
// at or below exact_floor (the discretization reproduces the solution).
double fit_rate(const std::vector<double>& h, const std::vector<double>& err,
                double exact_floor = 0.0);

// Relative errors below this are at the nonlinear solver tolerance.
inline constexpr double kExactErrorFloor = 1e-6;

using LevelRunner = std::function<LevelError(CellKind, int)>;
// Runs levels first_level .. first_level + levels - 1 for each kind.
ErrorReport convergence_study(const std::string& name, const LevelRunner& run,
                              int levels, const std::vector<CellKind>& kinds,
                              int first_level = 0);
// CSV: case,kind,h,err_traction,err_slip,rate
std::string error_report_csv(const ErrorReport& r);

struct BenchRun {
  LevelError error;
  std::vector<FaceResult> faces;
  SolveReport report;
  KktReport kkt;
  std::vector<double> xi;  // fault coordinate of each face centre
  double mean_t_n = 0.0;       // inclined: mean over central region
  double t_n_variation = 0.0;  // inclined: coefficient of variation, central 50%
  double slip_plateau = 0.0;   // vertical: mean |g_T| inside the overlap
  double traction_at_zero = 0.0;  // vertical: |t_T| of the faces nearest y=0
};

SolverConfig default_bench_solver();

BenchRun run_inclined_fault(const InclinedFaultParams& p, int level,
                            CellKind kind, const SolverConfig& cfg);
// Runs both scenarios; traction error from PreSlip, slip error from Slip.
// Errors skip faces within one face width of the singular points.
BenchRun run_vertical_fault(const VerticalFaultParams& p, int level,
                            CellKind kind, const SolverConfig& cfg);
// Face width of the vertical-fault mesh at a level.
double vertical_fault_h(int level);

}  // namespace fc
