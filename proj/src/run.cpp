#include "fc/run.hpp"

#include <ostream>

#include "fc/io_util.hpp"
#include "fc/output.hpp"

namespace fc {

RunOutcome run_config(const RunConfig& c, std::ostream& log) {
  const ProblemDefinition pd = build_problem(c);
  RunOutcome out;
  SolveResult res;
  try {
    res = c.solver.variant == Variant::Uzawa ? uzawa_solve(pd, c.solver)
                                             : interleaved_solve(pd, c.solver);
  } catch (const NonConvergence& e) {
    log << "not converged: " << e.what() << '\n';
    return out;
  }
  out.report = res.report;
  out.converged = res.report.converged;

  const std::vector<double> xi = fault_coordinate(pd.mesh);
  if (!c.output.profile.empty()) {
    for (std::size_t k = 0; k < res.report.faces.size(); ++k) {
      write_file_atomic(c.output.profile + "_step" + std::to_string(k + 1) + ".csv",
                        profile_csv(profile_records(pd.mesh, res.report.faces[k], xi)));
    }
  }
  if (!c.output.field.empty()) {
    write_file_atomic(c.output.field + ".vtk", vtk_field(pd.mesh, res.state.u));
    if (!res.report.faces.empty()) {
      write_file_atomic(c.output.field + "_fault.vtk",
                        vtk_fault(pd.mesh, res.report.faces.back()));
    }
  }
  if (!c.output.report.empty()) write_file_atomic(c.output.report, report_csv(res.report));
  log << "steps " << res.report.steps.size() << ", uzawa " << res.report.total_uzawa
      << ", newton " << res.report.total_newton << ", linear " << res.report.total_krylov
      << '\n';
  return out;
}

}  // namespace fc
