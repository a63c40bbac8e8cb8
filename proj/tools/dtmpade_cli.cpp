// dtmpade: DTM-Pade and shooting solvers for boundary-layer similarity problems.
//
//   dtmpade series  --problem free-convection --order 6 --mode paper --a 1 --b 1
//   dtmpade solve   --pr 1 --pade 3 --mode paper
//   dtmpade shoot   --pr 1
//   dtmpade profile --source both --a 0.6421 --b -0.5671 --grid 0:1:0.1 --format csv
//   dtmpade compare --pr 1 --pade 2,3,4,5 --mode corrected

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dtmpade/app.hpp"

namespace {

using dtmpade::app::exit_code::kUsage;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DTM-Pade solver for semi-infinite boundary-layer problems"};
  app.set_version_flag("--version", std::string(dtmpade::app::kVersion));
  app.set_config("--config", "", "key=value file using the long flag names; command-line flags win");
  app.require_subcommand(1);
  app.fallthrough();

  dtmpade::app::RunOptions opts;
  std::string problem = "free-convection", mode = "corrected", format = "table", source = "integrator";
  std::string out_path;
  int order = 0;
  double a = 0.0, b = 0.0, tol = 0.0;
  std::vector<double> guess;

  app.add_option("--problem", problem, "free-convection | blasius")
      ->check(CLI::IsMember({"free-convection", "blasius"}));
  app.add_option("--pr", opts.pr, "Prandtl number")->check(CLI::PositiveNumber);
  auto* order_opt = app.add_option("--order", order, "series truncation order (>= 3)");
  app.add_option("--pade", opts.pade, "diagonal Pade degree(s) n, comma separated")->delimiter(',');
  app.add_option("--mode", mode, "corrected | paper")->check(CLI::IsMember({"corrected", "paper"}));
  auto* a_opt = app.add_option("--a", a, "A = f''(0)");
  auto* b_opt = app.add_option("--b", b, "B = theta'(0)");
  app.add_option("--eta-max", opts.eta_max, "shooting truncation point standing in for infinity");
  app.add_option("--step", opts.step, "RK4 step");
  auto* tol_opt = app.add_option("--tol", tol, "Newton residual tolerance");
  auto* guess_opt = app.add_option("--guess", guess, "initial guess a[,b]")->delimiter(',');
  app.add_option("--format", format, "table | csv | json")->check(CLI::IsMember({"table", "csv", "json"}));
  app.add_option("--digits", opts.digits, "significant digits in table/csv output");
  app.add_option("--out", out_path, "write output to this file instead of stdout");
  app.add_option("--source", source, "profile source: series | integrator | both")
      ->check(CLI::IsMember({"series", "integrator", "both"}));
  app.add_option("--grid", opts.grid, "profile grid start:end:step (inclusive)");
  app.add_flag("--check-paper", opts.check_paper, "compare paper-mode coefficients with the published series");

  app.add_subcommand("series", "print the DTM coefficients F(k), Theta(k)");
  app.add_subcommand("solve", "solve the Pade closure for the wall derivatives");
  app.add_subcommand("shoot", "shooting-method oracle");
  app.add_subcommand("profile", "tabulate (eta, f, f', theta)");
  app.add_subcommand("compare", "DTM-Pade against the shooting oracle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  opts.subcommand = app.get_subcommands().front()->get_name();
  opts.problem = *dtmpade::parse_problem(problem);
  opts.mode = *dtmpade::parse_mode(mode);
  opts.format = *dtmpade::app::parse_format(format);
  opts.source = *dtmpade::app::parse_source(source);
  if (order_opt->count() > 0) opts.order = order;
  if (a_opt->count() > 0) opts.a = a;
  if (b_opt->count() > 0) opts.b = b;
  if (tol_opt->count() > 0) opts.tol = tol;
  if (guess_opt->count() > 0) opts.guess = guess;

  const auto result = dtmpade::app::execute(opts);
  const std::string doc = dtmpade::app::render(opts, result);
  if (out_path.empty()) {
    std::cout << doc;
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      std::cerr << "cannot open " << out_path << " for writing\n";
      return kUsage;
    }
    file << doc;
  }
  if (!result.diagnostics.empty()) std::cerr << "dtmpade: " << result.diagnostics << "\n";
  return result.exit_code;
}
