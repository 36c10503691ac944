#include "fc/solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fc/io_util.hpp"

namespace fc {

std::string to_string(Variant v) {
  return v == Variant::Uzawa ? "uzawa" : "interleaved";
}

Variant variant_from_string(const std::string& s) {
  if (s == "uzawa") return Variant::Uzawa;
  if (s == "interleaved") return Variant::Interleaved;
  throw Error("unknown solver variant '" + s + "'");
}

void validate(const SolverConfig& c) {
  if (!(c.newton_rel_tol > 0.0) || c.newton_abs_tol < 0.0 ||
      !(c.uzawa_traction_tol > 0.0) || !(c.krylov.rel_tol > 0.0)) {
    throw Error("solver tolerances must be positive");
  }
  if (c.max_newton < 1 || c.max_uzawa < 1 || c.krylov.max_iter < 1 ||
      c.krylov.restart < 1) {
    throw Error("solver iteration limits must be at least 1");
  }
  if (!(c.penalty_scale > 0.0)) throw Error("penalty_scale must be positive");
  if (!(c.multiplier_forcing > 0.0 && c.multiplier_forcing <= 1.0)) {
    throw Error("multiplier_forcing must lie in (0, 1]");
  }
  if (c.max_backtrack < 0) throw Error("max_backtrack must be non-negative");
  if (c.krylov.method == KrylovMethod::CG && !c.symmetric) {
    throw Error("CG requires symmetric = true");
  }
}

std::vector<Vec3> initial_tractions(const ProblemDefinition& p) {
  const Mesh& m = p.mesh;
  std::vector<Vec3> t(m.fault_faces.size());
  for (std::size_t f = 0; f < t.size(); ++f) {
    const FaultFace& face = m.fault_faces[f];
    const Mat3 s = 0.5 * (p.initial_stress_for(m.cells[face.minus.cell].region) +
                          p.initial_stress_for(m.cells[face.plus.cell].region));
    const Vec3 tv = s * face.frame.n;
    t[f] = frame_matrix(face.frame).transpose() * tv;
  }
  return t;
}

ContactSolver::ContactSolver(const ProblemDefinition& problem,
                             const SolverConfig& config)
    : problem_(problem),
      cfg_(config),
      disc_((validate(problem), validate(config), problem), config.penalty_scale,
            config.threads) {
  state_.u = VecX::Zero(disc_.nodal_dofs());
  state_.ub = VecX::Zero(disc_.bubble_dofs());
  state_.traction = initial_tractions(problem);
  state_.states.assign(state_.traction.size(), ContactState::Stick);
  state_.jump_prev.assign(state_.traction.size(), Vec3::Zero());
  if (cfg_.newton_abs_tol == 0.0) {
    cfg_.newton_abs_tol = 1e-10 * disc_.e_ref() * disc_.h_ref() * disc_.h_ref();
  }
}

void ContactSolver::begin_step(int k) {
  step_ = k;
  const LoadStep& st = problem_.steps.at(k);
  const Index nf = disc_.mesh().num_fault_faces();
  for (Index f = 0; f < nf; ++f) {
    state_.jump_prev[f] = mean_jump(disc_.jump(f), f, state_.u, state_.ub);
  }
  std::vector<char> fixed;
  VecX values;
  disc_.dirichlet(st, fixed, values);
  for (Index i = 0; i < disc_.nodal_dofs(); ++i) {
    if (fixed[i]) state_.u(i) = values(i);
  }
  if (fixed != fixed_ || !reduced_.pattern) {
    fixed_ = std::move(fixed);
    reduced_ = make_reduced_map(*disc_.pattern(), fixed_);
  }
  r_ref_ = -1.0;
}

double ContactSolver::residual_norm(const SystemBlocks& s) const {
  double sum = s.r_b.squaredNorm();
  for (Index i : reduced_.free) sum += s.r_u(i) * s.r_u(i);
  return std::sqrt(sum);
}

int ContactSolver::direction(const SystemBlocks& s, VecX& du, VecX& dub) {
  const CondensedSystem c = static_condense(disc_, s);
  const CsrMatrix A = restrict_matrix(c.A_hat, reduced_);
  VecX rhs(reduced_.free.size());
  for (std::size_t i = 0; i < reduced_.free.size(); ++i) {
    rhs(i) = -c.r_hat(reduced_.free[i]);
  }
  const LinearSolveResult res = linear_solve(A, rhs, cfg_.krylov, cfg_.symmetric, direct_);
  du = VecX::Zero(disc_.nodal_dofs());
  for (std::size_t i = 0; i < reduced_.free.size(); ++i) du(reduced_.free[i]) = res.x(i);
  dub = disc_.bubble_dofs() > 0 ? recover_bubble_increments(disc_, s, c, du)
                                : VecX();
  return res.iterations;
}

namespace {

ContactInput input_for(const SolutionState& st, const LoadStep& step,
                       bool symmetric) {
  ContactInput in;
  in.multipliers = &st.traction;
  in.jump_prev = &st.jump_prev;
  in.step = &step;
  in.symmetric = symmetric;
  return in;
}

double relative_change(const std::vector<Vec3>& t_old,
                       const std::vector<LocalUpdate>& t_new) {
  double d = 0.0, t = 0.0;
  for (std::size_t f = 0; f < t_old.size(); ++f) {
    d = std::max(d, (t_new[f].traction - t_old[f]).norm());
    t = std::max(t, t_new[f].traction.norm());
  }
  return d == 0.0 ? 0.0 : d / std::max(t, std::numeric_limits<double>::min());
}

}  // namespace

double ContactSolver::line_search(const VecX& du, const VecX& dub,
                                  double norm0) {
  const LoadStep& st = problem_.steps.at(step_);
  const VecX u0 = state_.u, ub0 = state_.ub;
  double alpha = 1.0, best_alpha = 1.0, best = std::numeric_limits<double>::infinity();
  for (int k = 0;; ++k) {
    state_.u = u0 + alpha * du;
    if (dub.size() > 0) state_.ub = ub0 + alpha * dub;
    if (cfg_.max_backtrack == 0) return norm0;
    const double norm = residual_norm(assemble_global(
        disc_, state_.u, state_.ub, input_for(state_, st, cfg_.symmetric), false));
    if (norm <= (1.0 - 1e-4 * alpha) * norm0) return norm;
    if (norm < best) {
      best = norm;
      best_alpha = alpha;
    }
    if (k == cfg_.max_backtrack) break;
    alpha *= 0.5;
  }
  // no sufficient decrease: keep the best trial, or the full step if none
  // reduced the residual at all
  if (!(best < norm0)) best_alpha = 1.0;
  state_.u = u0 + best_alpha * du;
  if (dub.size() > 0) state_.ub = ub0 + best_alpha * dub;
  return best;
}

int ContactSolver::newton(StepReport& rep, bool force_step) {
  const LoadStep& st = problem_.steps.at(step_);
  int linear = 0;
  for (int l = 0;; ++l) {
    const SystemBlocks s =
        assemble_global(disc_, state_.u, state_.ub, input_for(state_, st, cfg_.symmetric));
    const double norm = residual_norm(s);
    if (log_) log_->residual_history.push_back(norm);
    if (r_ref_ < 0.0) {
      r_ref_ = norm;
      tol_ = std::max(cfg_.newton_rel_tol * r_ref_, cfg_.newton_abs_tol);
    }
    rep.residual = norm;
    if (norm <= tol_ && (l > 0 || !force_step)) return linear;
    if (l >= cfg_.max_newton) {
      std::ostringstream os;
      os << "Newton did not converge in " << cfg_.max_newton
         << " iterations (residual " << norm << ", tolerance " << tol_ << ")";
      throw NonConvergence(os.str(), norm);
    }
    VecX du, dub;
    const int k = direction(s, du, dub);
    line_search(du, dub, norm);
    linear += k;
    rep.krylov += k;
    ++rep.newton;
  }
}

double ContactSolver::update_multipliers() {
  const LoadStep& st = problem_.steps.at(step_);
  const SystemBlocks s = assemble_global(disc_, state_.u, state_.ub,
                                         input_for(state_, st, cfg_.symmetric), false);
  const double change = relative_change(state_.traction, s.faces);
  for (std::size_t f = 0; f < s.faces.size(); ++f) {
    state_.traction[f] = s.faces[f].traction;
    state_.states[f] = s.faces[f].state;
  }
  return change;
}

StepReport ContactSolver::solve_step(int k) {
  StepReport rep;
  rep.step = k;
  begin_step(k);
  const LoadStep& st = problem_.steps.at(k);
  if (cfg_.variant == Variant::Uzawa) {
    for (int it = 0; it < cfg_.max_uzawa; ++it) {
      // after a multiplier update always take one step: a residual just
      // under the floor would otherwise leak into the next update
      newton(rep, rep.uzawa > 0);
      ++rep.uzawa;
      if (update_multipliers() <= cfg_.uzawa_traction_tol) {
        rep.converged = true;
        return rep;
      }
    }
    std::ostringstream os;
    os << "Uzawa did not converge in " << cfg_.max_uzawa << " iterations";
    throw NonConvergence(os.str(), rep.residual);
  }
  double frozen_ref = -1.0;  // first residual at the current multipliers
  for (int l = 0;; ++l) {
    const SystemBlocks s =
        assemble_global(disc_, state_.u, state_.ub, input_for(state_, st, cfg_.symmetric));
    const double norm = residual_norm(s);
    if (log_) log_->residual_history.push_back(norm);
    if (r_ref_ < 0.0) {
      r_ref_ = norm;
      tol_ = std::max(cfg_.newton_rel_tol * r_ref_, cfg_.newton_abs_tol);
    }
    rep.residual = norm;
    if (frozen_ref < 0.0) frozen_ref = norm;
    if (l == 0 && norm <= tol_ &&
        relative_change(state_.traction, s.faces) <= cfg_.uzawa_traction_tol) {
      for (std::size_t f = 0; f < s.faces.size(); ++f) {
        state_.traction[f] = s.faces[f].traction;
        state_.states[f] = s.faces[f].state;
      }
      rep.converged = true;
      return rep;
    }
    if (l >= cfg_.max_newton) {
      std::ostringstream os;
      os << "interleaved iteration did not converge in " << cfg_.max_newton
         << " iterations (residual " << norm << ")";
      throw NonConvergence(os.str(), norm);
    }
    VecX du, dub;
    rep.krylov += direction(s, du, dub);
    const double after = line_search(du, dub, norm);
    ++rep.newton;
    rep.residual = after;
    if (after > std::max(tol_, cfg_.multiplier_forcing * frozen_ref)) continue;
    // convergence is judged before the multiplier update, as in the
    // Uzawa loop: Newton residual at frozen tractions, then traction change
    const double change = update_multipliers();
    ++rep.uzawa;
    frozen_ref = -1.0;
    if (after <= tol_ && change <= cfg_.uzawa_traction_tol) {
      rep.converged = true;
      return rep;
    }
  }
}

std::vector<FaceResult> ContactSolver::face_results() const {
  const Mesh& m = disc_.mesh();
  std::vector<FaceResult> out(m.fault_faces.size());
  for (std::size_t f = 0; f < out.size(); ++f) {
    const FaceFrame& fr = m.fault_faces[f].frame;
    const Vec3 J = mean_jump(disc_.jump(f), f, state_.u, state_.ub);
    const Vec3 dJ = J - state_.jump_prev[f];
    out[f].traction = state_.traction[f];
    out[f].g_n = fr.n.dot(J);
    out[f].dg_t = Vec2(fr.m1.dot(dJ), fr.m2.dot(dJ));
    out[f].g_t = Vec2(fr.m1.dot(J), fr.m2.dot(J));
    out[f].state = state_.states[f];
  }
  return out;
}

VecX ContactSolver::residual() const {
  const LoadStep& st = problem_.steps.at(std::max(step_, 0));
  return assemble_global(disc_, state_.u, state_.ub,
                         input_for(state_, st, cfg_.symmetric), false)
      .r_u;
}

SolveReport ContactSolver::solve_all() {
  SolveReport report;
  log_ = &report;
  for (int k = 0; k < static_cast<int>(problem_.steps.size()); ++k) {
    StepReport rep;
    try {
      rep = solve_step(k);
    } catch (const NonConvergence& e) {
      log_ = nullptr;
      throw NonConvergence("step " + std::to_string(k) + ": " + e.what(), e.residual());
    } catch (const SolverError& e) {
      log_ = nullptr;
      throw SolverError("step " + std::to_string(k) + ": " + e.what());
    }
    report.steps.push_back(rep);
    report.faces.push_back(face_results());
    report.total_uzawa += rep.uzawa;
    report.total_newton += rep.newton;
    report.total_krylov += rep.krylov;
  }
  report.converged = true;
  log_ = nullptr;
  return report;
}

SolveResult newton_solve(const ProblemDefinition& p, const SolutionState& s,
                         const SolverConfig& c, int step) {
  ContactSolver solver(p, c);
  solver.state() = s;
  SolveResult out;
  StepReport rep;
  rep.step = step;
  solver.begin_step(step);
  solver.newton(rep);
  rep.converged = true;
  out.report.steps.push_back(rep);
  out.report.faces.push_back(solver.face_results());
  out.report.total_newton = rep.newton;
  out.report.total_krylov = rep.krylov;
  out.report.converged = true;
  out.state = solver.state();
  return out;
}

namespace {

SolveResult run(const ProblemDefinition& p, const SolverConfig& c) {
  ContactSolver solver(p, c);
  SolveResult out;
  out.report = solver.solve_all();
  out.state = solver.state();
  return out;
}

}  // namespace

SolveResult uzawa_solve(const ProblemDefinition& p, SolverConfig c) {
  c.variant = Variant::Uzawa;
  return run(p, c);
}

SolveResult interleaved_solve(const ProblemDefinition& p, SolverConfig c) {
  c.variant = Variant::Interleaved;
  return run(p, c);
}

KktReport check_kkt(const ProblemDefinition& p,
                    const std::vector<PenaltyParams>& eps,
                    const std::vector<FaceResult>& faces, double kappa) {
  KktReport r;
  r.faces = static_cast<int>(faces.size());
  double t_ref = 0.0;
  for (const FaceResult& f : faces) t_ref = std::max(t_ref, f.traction.norm());
  t_ref = std::max(t_ref, std::numeric_limits<double>::min());
  r.tol_t = kappa * t_ref;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const FaceResult& f = faces[i];
    const double tol_g = r.tol_t / eps[i].eps_n;
    const double tn = f.traction(0);
    const Vec2 tt = f.traction.tail<2>();
    const double tmax = tau_max(p.friction_for(p.mesh.fault_faces[i].tag), tn);
    std::vector<std::string> bad;
    if (tn > r.tol_t) bad.push_back("t_N > 0");
    if (f.g_n < -tol_g) bad.push_back("g_N < 0");
    if (std::abs(tn * f.g_n) > t_ref * tol_g) bad.push_back("t_N g_N != 0");
    if (tt.norm() > tmax + r.tol_t) bad.push_back("|t_T| > tau_max");
    if (f.state == ContactState::Slip && tt.dot(f.dg_t) < -r.tol_t * f.dg_t.norm()) {
      bad.push_back("t_T opposes slip");
    }
    if (!bad.empty()) {
      ++r.failures;
      std::ostringstream os;
      os << "face " << i << ":";
      for (const auto& b : bad) os << ' ' << b << ';';
      r.messages.push_back(os.str());
    }
  }
  return r;
}

std::string report_csv(const SolveReport& r) {
  std::ostringstream os;
  os << "step,uzawa_k,newton_l,krylov_total,residual\n";
  for (const StepReport& s : r.steps) {
    os << s.step << ',' << s.uzawa << ',' << s.newton << ',' << s.krylov << ','
       << fmt_e17(s.residual) << '\n';
  }
  return os.str();
}

}  // namespace fc
