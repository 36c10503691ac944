#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fc/assembly.hpp"
#include "fc/linear_solver.hpp"

namespace fc {

enum class Variant { Uzawa, Interleaved };
std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);

struct SolverConfig {
  double newton_rel_tol = 1e-8;
  double newton_abs_tol = 0.0;  // 0: 1e-10 * E_ref * h_ref^2
  int max_newton = 50;
  int max_uzawa = 100;
  int max_backtrack = 20;  // residual-norm line search halvings; 0 disables
  double uzawa_traction_tol = 1e-6;
  // Interleaved variant: multipliers are updated once the Newton residual at
  // frozen multipliers has dropped by this factor (1 = every iteration).
  double multiplier_forcing = 0.1;
  KrylovConfig krylov;
  Variant variant = Variant::Uzawa;
  bool symmetric = false;
  double penalty_scale = 10.0;
  int threads = 1;
};
void validate(const SolverConfig& c);

using LoadSchedule = std::vector<LoadStep>;

struct FaceResult {
  Vec3 traction = Vec3::Zero();  // (t_N, t_1, t_2)
  double g_n = 0.0;
  Vec2 dg_t = Vec2::Zero();  // tangential jump increment over the step
  Vec2 g_t = Vec2::Zero();   // total tangential jump
  ContactState state = ContactState::Stick;
};

struct StepReport {
  int step = 0;
  int uzawa = 0;
  int newton = 0;
  int krylov = 0;
  double residual = 0.0;
  bool converged = false;
};

struct SolveReport {
  std::vector<StepReport> steps;
  std::vector<std::vector<FaceResult>> faces;  // per step, at convergence
  int total_uzawa = 0, total_newton = 0, total_krylov = 0;
  bool converged = false;
  std::vector<double> residual_history;  // every Newton residual, in order
};

// Running solution state; displacements are totals, multipliers local.
struct SolutionState {
  VecX u, ub;
  std::vector<Vec3> traction;
  std::vector<ContactState> states;  // from the latest multiplier update
  std::vector<Vec3> jump_prev;
};

class ContactSolver {
 public:
  ContactSolver(const ProblemDefinition& problem, const SolverConfig& config);

  const Discretization& discretization() const { return disc_; }
  const SolutionState& state() const { return state_; }
  SolutionState& state() { return state_; }
  const SolverConfig& config() const { return cfg_; }

  // Starts step k: prescribes Dirichlet values and records the step-start
  // jumps.
  void begin_step(int k);
  // Newton with frozen multipliers; returns linear iterations. force_step
  // takes at least one iteration even when the residual is below tolerance.
  int newton(StepReport& rep, bool force_step = false);
  // Multiplier update t <- t_hat(t, u); returns the relative change.
  double update_multipliers();
  StepReport solve_step(int k);
  SolveReport solve_all();

  std::vector<FaceResult> face_results() const;
  // Force residual at the current state (nodal, full length).
  VecX residual() const;

 private:
  double residual_norm(const SystemBlocks& s) const;
  // Newton direction; returns linear iterations.
  int direction(const SystemBlocks& s, VecX& du, VecX& dub);
  // Damped update along (du, dub); returns the accepted residual norm.
  double line_search(const VecX& du, const VecX& dub, double norm0);

  const ProblemDefinition& problem_;
  SolverConfig cfg_;
  Discretization disc_;
  SolutionState state_;
  int step_ = -1;
  std::vector<char> fixed_;
  ReducedMap reduced_;
  DirectSolver direct_;
  double r_ref_ = 0.0;
  double tol_ = 0.0;
  SolveReport* log_ = nullptr;
};

struct SolveResult {
  SolutionState state;
  SolveReport report;
};

// Newton on the augmented problem with frozen multipliers (one load step).
SolveResult newton_solve(const ProblemDefinition& p, const SolutionState& s,
                         const SolverConfig& c, int step = 0);
SolveResult uzawa_solve(const ProblemDefinition& p, SolverConfig c);
SolveResult interleaved_solve(const ProblemDefinition& p, SolverConfig c);

// Traction of the initial stress on each fault face, local frame.
std::vector<Vec3> initial_tractions(const ProblemDefinition& p);

struct KktReport {
  int faces = 0;
  int failures = 0;
  double tol_t = 0.0;
  std::vector<std::string> messages;
  bool ok() const { return failures == 0; }
};

// tol_t = kappa * T_ref (largest traction magnitude), tol_g = tol_t / eps_N.
KktReport check_kkt(const ProblemDefinition& p,
                    const std::vector<PenaltyParams>& eps,
                    const std::vector<FaceResult>& faces, double kappa = 1e-5);

// CSV: step,uzawa_k,newton_l,krylov_total,residual
std::string report_csv(const SolveReport& r);

}  // namespace fc
