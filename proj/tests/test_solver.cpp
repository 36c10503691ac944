#include "doctest.h"
#include "checks.hpp"
#include "test_util.hpp"

#include "fc/solver.hpp"

using namespace fc;

namespace {

Mesh cube_mesh() {
  return build_structured_hex_grid(Vec3(1, 1, 1), {4, 4, 4}, {PlaneSpec{0, 0.5, {}}});
}

double max_traction_gap(const std::vector<FaceResult>& a, const std::vector<FaceResult>& b) {
  double gap = 0.0, ref = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    gap = std::max(gap, (a[i].traction - b[i].traction).norm());
    ref = std::max(ref, a[i].traction.norm());
  }
  return gap / ref;
}

}  // namespace

TEST_CASE("a fault pulled apart carries no traction") {
  ProblemDefinition pd = checks::block_problem(cube_mesh());
  pd.initial_stress.setZero();
  pd.steps[0].dirichlet = {{"xmin", {0.0, 0.0, 0.0}}, {"xmax", {1e-3, 0.0, 0.0}}};
  const SolveResult r = uzawa_solve(pd, SolverConfig{});
  REQUIRE(r.report.converged);
  for (const FaceResult& f : r.report.faces.back()) {
    CHECK(f.state == ContactState::Open);
    CHECK(f.traction.norm() == 0.0);
    CHECK(f.g_n > 0.0);
  }
}

TEST_CASE("Uzawa and interleaved variants reach the same state") {
  ProblemDefinition pd = checks::block_problem(cube_mesh());
  pd.steps[0].dirichlet[1].value = {-1e-4, 2e-3, 0.0};
  SolverConfig c;
  c.uzawa_traction_tol = 1e-9;
  const SolveResult a = uzawa_solve(pd, c);
  const SolveResult b = interleaved_solve(pd, c);
  REQUIRE(a.report.converged);
  REQUIRE(b.report.converged);
  CHECK(max_traction_gap(a.report.faces.back(), b.report.faces.back()) < 1e-6);
  int sliding = 0;
  for (const FaceResult& f : a.report.faces.back()) sliding += f.state == ContactState::Slip;
  CHECK(sliding > 0);
}

TEST_CASE("converged solutions satisfy the contact conditions") {
  const ProblemDefinition pd = checks::block_problem(cube_mesh());
  for (bool sym : {false, true}) {
    SolverConfig c;
    c.symmetric = sym;
    const SolveResult r = uzawa_solve(pd, c);
    REQUIRE(r.report.converged);
    ContactSolver s(pd, c);
    const KktReport k = check_kkt(pd, s.discretization().penalties(), r.report.faces.back());
    CHECK(k.ok());
    CHECK(k.faces == 16);
  }
}

TEST_CASE("symmetric linearization assembles a symmetric operator") {
  const ProblemDefinition pd = checks::block_problem(cube_mesh());
  CHECK(checks::assembled_asymmetry(pd, true, test::rng()) <= 1e-12);
  // the consistent tangent couples normal and tangential slip asymmetrically
  ProblemDefinition sliding = pd;
  sliding.steps[0].dirichlet[1].value = {-1e-4, 2e-3, 0.0};
  CHECK(checks::assembled_asymmetry(sliding, false, test::rng()) > 1e-6);
}

TEST_CASE("repeated solves are bit-identical") {
  const ProblemDefinition pd = checks::block_problem(cube_mesh());
  const SolveResult a = interleaved_solve(pd, SolverConfig{});
  const SolveResult b = interleaved_solve(pd, SolverConfig{});
  CHECK(report_csv(a.report) == report_csv(b.report));
  CHECK(a.state.u == b.state.u);
  CHECK(a.report.residual_history == b.report.residual_history);
}

TEST_CASE("GMRES and direct linear solves agree") {
  const ProblemDefinition pd = checks::block_problem(cube_mesh());
  SolverConfig g, d;
  d.krylov.method = KrylovMethod::Direct;
  const SolveResult a = uzawa_solve(pd, g);
  const SolveResult b = uzawa_solve(pd, d);
  REQUIRE(a.report.converged);
  REQUIRE(b.report.converged);
  CHECK(a.report.total_krylov > 0);
  CHECK(max_traction_gap(a.report.faces.back(), b.report.faces.back()) < 1e-6);
}

TEST_CASE("multi-threaded assembly matches serial") {
  const ProblemDefinition pd = checks::block_problem(cube_mesh());
  SolverConfig one, two;
  two.threads = 2;
  const SolveResult a = uzawa_solve(pd, one);
  const SolveResult b = uzawa_solve(pd, two);
  CHECK(report_csv(a.report) == report_csv(b.report));
  CHECK((a.state.u - b.state.u).norm() <= 1e-12 * a.state.u.norm());
}

TEST_CASE("solver configuration is validated") {
  auto rejects = [](auto&& edit) {
    SolverConfig c;
    edit(c);
    CHECK_THROWS_AS(validate(c), Error);
  };
  rejects([](SolverConfig& c) { c.newton_rel_tol = 0.0; });
  rejects([](SolverConfig& c) { c.max_uzawa = 0; });
  rejects([](SolverConfig& c) { c.penalty_scale = -1.0; });
  rejects([](SolverConfig& c) { c.multiplier_forcing = 1.5; });
  rejects([](SolverConfig& c) { c.max_backtrack = -1; });
  rejects([](SolverConfig& c) { c.krylov.method = KrylovMethod::CG; });
  CHECK_NOTHROW(validate(SolverConfig{}));
  CHECK(variant_from_string(to_string(Variant::Interleaved)) == Variant::Interleaved);
  CHECK_THROWS_AS(variant_from_string("newton"), Error);
}

TEST_CASE("report CSV lists every step") {
  ProblemDefinition pd = checks::block_problem(cube_mesh());
  LoadStep s2 = pd.steps[0];
  s2.time = 2.0;
  s2.dirichlet[1].value = {-2e-4, 4e-4, 0.0};
  pd.steps.push_back(s2);
  const SolveResult r = uzawa_solve(pd, SolverConfig{});
  const std::string csv = report_csv(r.report);
  CHECK(csv.rfind("step,uzawa_k,newton_l,krylov_total,residual\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(r.report.faces.size() == 2);
}
