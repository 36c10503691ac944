#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "fc/bench.hpp"
#include "fc/config.hpp"
#include "fc/infsup.hpp"
#include "fc/io_util.hpp"
#include "fc/output.hpp"
#include "fc/run.hpp"

namespace {

using namespace fc;

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) std::cout << text;
  else write_file_atomic(path, text);
}

std::vector<CellKind> parse_kinds(const std::string& list) {
  std::vector<CellKind> kinds;
  std::istringstream is(list);
  std::string k;
  while (std::getline(is, k, ',')) kinds.push_back(cell_kind_from_string(k));
  if (kinds.empty()) throw Error("no element kinds given");
  return kinds;
}

LevelRunner error_case(const std::string& name, const SolverConfig& cfg,
                       std::vector<BenchRun>* runs) {
  if (name == "inclined-fault") {
    return [=](CellKind k, int l) {
      BenchRun r = run_inclined_fault({}, l, k, cfg);
      if (runs) runs->push_back(r);
      return r.error;
    };
  }
  if (name == "vertical-fault") {
    return [=](CellKind k, int l) {
      BenchRun r = run_vertical_fault({}, l, k, cfg);
      if (runs) runs->push_back(r);
      return r.error;
    };
  }
  throw Error("unknown convergence case '" + name + "' (inclined-fault, vertical-fault)");
}

ProblemDefinition iteration_case(const std::string& name, int scale) {
  if (name == "constant-slip") return constant_slip_case();
  if (name == "stick-slip-open") return stick_slip_open_case();
  if (name == "t-crack") return t_crack_case(scale);
  throw Error("unknown bench case '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fcsim: frictional fault contact solver"};
  app.require_subcommand(1);
  int threads = 1;
  unsigned seed = 0;
  app.add_option("--threads", threads, "assembly threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "seed for randomized test drivers (solves are deterministic)");

  auto* run = app.add_subcommand("run", "solve a configuration file");
  std::string config_path;
  bool echo = false;
  run->add_option("config", config_path, "configuration file")->required();
  run->add_flag("--echo", echo, "print the effective configuration before solving");

  auto* bench = app.add_subcommand("bench", "run one benchmark case");
  std::string bench_case, bench_kind = "hex", variant = "uzawa", out, profile;
  int level = -1, levels = 3, first_level = 1, scale = 1;
  bench->add_option("case", bench_case,
                    "inclined-fault | vertical-fault | constant-slip | stick-slip-open | t-crack")
      ->required();
  bench->add_option("--kind", bench_kind, "hex | tet | wedge");
  bench->add_option("--level", level, "single refinement level (error cases)");
  bench->add_option("--levels", levels, "number of levels (error cases)");
  bench->add_option("--first-level", first_level, "coarsest level (error cases)");
  bench->add_option("--variant", variant, "uzawa | interleaved");
  bench->add_option("--scale", scale, "t-crack mesh scale factor (5 = full size)");
  bench->add_option("--profile", profile, "write the final fault profile CSV here");
  bench->add_option("--out", out, "write the CSV here instead of stdout");

  auto* conv = app.add_subcommand("convergence", "multi-kind convergence study");
  std::string conv_case, kinds = "hex,tet,wedge";
  conv->add_option("case", conv_case, "inclined-fault | vertical-fault")->required();
  conv->add_option("--levels", levels, "number of levels (>= 3)");
  conv->add_option("--first-level", first_level, "coarsest level");
  conv->add_option("--kinds", kinds, "comma-separated element kinds");
  conv->add_option("--out", out, "write the CSV here instead of stdout");

  auto* infsup = app.add_subcommand("infsup", "inf-sup constant on refined two-block meshes");
  infsup->add_option("--levels", levels, "number of refinements");
  infsup->add_option("--out", out, "write the CSV here instead of stdout");

  CLI11_PARSE(app, argc, argv);
  (void)seed;

  try {
    SolverConfig cfg = default_bench_solver();
    cfg.threads = threads;
    cfg.variant = variant_from_string(variant);

    if (*run) {
      RunConfig rc = load_config(config_path);
      if (app.count("--threads")) rc.solver.threads = threads;
      if (echo) std::cout << echo_config(rc);
      const RunOutcome o = run_config(rc, std::cerr);
      return o.converged ? 0 : 2;
    }

    if (*bench) {
      if (bench_case == "inclined-fault" || bench_case == "vertical-fault") {
        const CellKind k = cell_kind_from_string(bench_kind);
        std::vector<BenchRun> runs;
        ErrorReport rep;
        if (level >= 0) {
          const LevelError e = error_case(bench_case, cfg, &runs)(k, level);
          rep.name = bench_case;
          rep.rows.push_back(e);
          const double nan = std::numeric_limits<double>::quiet_NaN();
          rep.rates.push_back({k, RateFit{nan, nan, false}});
        } else {
          rep = convergence_study(bench_case, error_case(bench_case, cfg, &runs),
                                  levels, {k}, first_level);
        }
        emit(error_report_csv(rep), out);
        if (!profile.empty()) {
          const BenchRun& r = runs.back();
          const ProblemDefinition pd =
              bench_case == "inclined-fault"
                  ? inclined_fault_case({}, 10 << r.error.level, k)
                  : vertical_fault_case({}, r.error.h, k, VerticalScenario::PreSlip);
          write_file_atomic(profile, profile_csv(profile_records(pd.mesh, r.faces, r.xi)));
        }
        return 0;
      }
      const ProblemDefinition pd = iteration_case(bench_case, scale);
      const SolveResult res = cfg.variant == Variant::Uzawa ? uzawa_solve(pd, cfg)
                                                            : interleaved_solve(pd, cfg);
      emit(report_csv(res.report), out);
      if (!profile.empty()) {
        write_file_atomic(profile, profile_csv(profile_records(pd.mesh, res.report.faces.back())));
      }
      return 0;
    }

    if (*conv) {
      const ErrorReport rep = convergence_study(
          conv_case, error_case(conv_case, cfg, nullptr), levels,
          parse_kinds(kinds), first_level);
      emit(error_report_csv(rep), out);
      return 0;
    }

    if (*infsup) {
      emit(infsup_csv(infsup_study(levels)), out);
      return 0;
    }
  } catch (const NonConvergence& e) {
    std::cerr << "fcsim: not converged: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "fcsim: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
