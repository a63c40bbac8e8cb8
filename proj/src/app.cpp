#include "dtmpade/app.hpp"

#include <cmath>
#include <future>
#include <stdexcept>

#include "dtmpade/format.hpp"
#include "dtmpade/profile.hpp"
#include "dtmpade/rootfind.hpp"
#include "dtmpade/shooting.hpp"

namespace dtmpade::app {

using nlohmann::json;

namespace {

constexpr double kSolveTol = 1e-10;
constexpr double kShootTol = 1e-8;
constexpr int kDefaultSeriesOrder = 6;

struct Fraction {
  int num;
  int den;
  double value() const { return static_cast<double>(num) / den; }
};

// Published coefficients of f and theta at A = B = 1, order 6.
constexpr Fraction kPaperF[] = {{0, 1}, {0, 1}, {1, 2}, {-1, 6}, {-1, 24}, {1, 48}, {-7, 720}};
constexpr Fraction kPaperTheta[] = {{1, 1}, {1, 1}, {0, 1}, {0, 1}, {-1, 8}, {1, 40}, {1, 240}};

double resolved_tol(const RunOptions& opts, bool shooting) {
  return opts.tol.value_or(shooting ? kShootTol : kSolveTol);
}

std::vector<double> resolved_guess(const RunOptions& opts) {
  if (opts.guess) return *opts.guess;
  const auto g = default_guess<double>(opts.problem);
  return {g.data(), g.data() + g.size()};
}

VectorX<double> guess_vector(const RunOptions& opts) {
  const auto g = resolved_guess(opts);
  const std::size_t want = opts.problem == Problem::Blasius ? 1 : 2;
  if (g.size() != want) {
    throw PreconditionError("--guess needs " + std::to_string(want) + " value(s) for " +
                            std::string(to_string(opts.problem)));
  }
  return Eigen::Map<const VectorX<double>>(g.data(), static_cast<Eigen::Index>(g.size()));
}

ClosureConfig closure_config(const RunOptions& opts, int degree) {
  ClosureConfig cfg;
  cfg.pade_degree = degree;
  cfg.series_order = opts.order;
  cfg.newton.tol = resolved_tol(opts, false);
  return cfg;
}

ShootConfig shoot_config(const RunOptions& opts) {
  ShootConfig cfg;
  cfg.eta_max = opts.eta_max;
  cfg.step = opts.step;
  cfg.newton.tol = resolved_tol(opts, opts.subcommand == "shoot");
  return cfg;
}

json solve_json(const SolveResult<double>& r) {
  json j{{"a", r.a},
         {"b", r.b ? json(*r.b) : json(nullptr)},
         {"residual_norm", r.residual_norm},
         {"iterations", r.iterations},
         {"warnings", r.warnings}};
  if (std::holds_alternative<ClosureConfig>(r.settings)) {
    j["pade_degree"] = std::get<ClosureConfig>(r.settings).pade_degree;
    j["series_order"] = r.params.order;
    j["mode"] = std::string(to_string(r.params.mode));
  }
  return j;
}

struct Failure {
  int code;
  json detail;
};

// Maps library exceptions onto the exit-code contract.
Failure classify(const std::exception& e) {
  json detail{{"error", e.what()}};
  if (const auto* nc = dynamic_cast<const NonConvergenceError*>(&e)) {
    detail["kind"] = "non-convergence";
    detail["last_iterate"] = nc->last_iterate();
    detail["residual_norm"] = nc->residual_norm();
    detail["iterations"] = nc->iterations();
    return {exit_code::kNonConvergence, detail};
  }
  if (const auto* bu = dynamic_cast<const BlowUpError*>(&e)) {
    detail["kind"] = "blow-up";
    detail["eta"] = bu->eta();
    return {exit_code::kNonConvergence, detail};
  }
  if (dynamic_cast<const NumericalError*>(&e) || dynamic_cast<const NonFiniteCoefficientError*>(&e) ||
      dynamic_cast<const PoleError*>(&e)) {
    detail["kind"] = "numerical";
    return {exit_code::kNonConvergence, detail};
  }
  if (const auto* da = dynamic_cast<const DegenerateApproximantError*>(&e)) {
    detail["kind"] = "degenerate-approximant";
    if (!da->source().empty()) detail["source"] = da->source();
    return {exit_code::kDegenerate, detail};
  }
  if (dynamic_cast<const PreconditionError*>(&e)) {
    detail["kind"] = "usage";
    return {exit_code::kUsage, detail};
  }
  detail["kind"] = "internal";
  return {exit_code::kNonConvergence, detail};
}

json run_series(const RunOptions& opts) {
  if (opts.check_paper) {
    ProblemParams<double> params{Problem::FreeConvection, 1.0, 1.0, 1.0, 6, RecurrenceMode::PaperFidelity};
    const auto sol = generate(params);
    double worst = 0.0;
    json expected_f = json::array(), expected_theta = json::array();
    for (int k = 0; k <= 6; ++k) {
      worst = std::max(worst, std::abs(sol.f_series[k] - kPaperF[k].value()));
      worst = std::max(worst, std::abs((*sol.theta_series)[k] - kPaperTheta[k].value()));
      expected_f.push_back(kPaperF[k].value());
      expected_theta.push_back(kPaperTheta[k].value());
    }
    const auto coeffs = [](const TruncatedSeries<double>& s) {
      return std::vector<double>(s.coeffs().data(), s.coeffs().data() + s.coeffs().size());
    };
    return {{"f", coeffs(sol.f_series)},
            {"theta", coeffs(*sol.theta_series)},
            {"check",
             {{"expected_f", expected_f},
              {"expected_theta", expected_theta},
              {"max_abs_error", worst},
              {"tolerance", 1e-14},
              {"passed", worst <= 1e-14}}}};
  }

  ProblemParams<double> params{opts.problem, opts.pr, opts.a.value_or(1.0), opts.b.value_or(1.0),
                               opts.order.value_or(kDefaultSeriesOrder), opts.mode};
  const auto sol = generate(params);
  const auto coeffs = [](const TruncatedSeries<double>& s) {
    return std::vector<double>(s.coeffs().data(), s.coeffs().data() + s.coeffs().size());
  };
  return {{"f", coeffs(sol.f_series)}, {"theta", sol.theta_series ? json(coeffs(*sol.theta_series)) : json(nullptr)}};
}

json run_solve(const RunOptions& opts) {
  if (opts.pade.size() != 1) throw PreconditionError("solve takes a single --pade degree");
  ProblemParams<double> params;
  params.problem = opts.problem;
  params.pr = opts.pr;
  params.mode = opts.mode;
  return solve_json(solve_problem(params, closure_config(opts, opts.pade.front()), guess_vector(opts)));
}

json run_shoot(const RunOptions& opts) {
  return solve_json(shoot_solve(opts.problem, opts.pr, shoot_config(opts), guess_vector(opts)));
}

json profile_rows(const Profile<double>& p) {
  json rows = json::array();
  for (const auto& r : p.rows) rows.push_back({r.eta, r.f, r.fprime, r.theta});
  return rows;
}

json run_profile(const RunOptions& opts) {
  if (opts.problem != Problem::FreeConvection) throw PreconditionError("profile supports free-convection only");
  if (!opts.a || !opts.b) throw PreconditionError("profile needs --a and --b");
  const auto grid = parse_grid(opts.grid);
  validate_grid(grid);

  std::optional<Profile<double>> from_series, from_integrator;
  if (opts.source != ProfileSource::Integrator) {
    ProblemParams<double> params{Problem::FreeConvection, opts.pr, *opts.a, *opts.b,
                                 opts.order.value_or(kDefaultSeriesOrder), opts.mode};
    from_series = series_profile(generate(params), grid);
  }
  if (opts.source != ProfileSource::Series) {
    from_integrator = tabulate_profile(*opts.a, *opts.b, opts.pr, grid, shoot_config(opts));
  }

  json out{{"a", *opts.a}, {"b", *opts.b}, {"source", std::string(to_string(opts.source))}};
  if (from_series && from_integrator) {
    out["columns"] = {"eta", "f_series", "fprime_series", "theta_series", "f_integrator", "fprime_integrator",
                      "theta_integrator"};
    json rows = json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto& s = from_series->rows[i];
      const auto& n = from_integrator->rows[i];
      rows.push_back({s.eta, s.f, s.fprime, s.theta, n.f, n.fprime, n.theta});
    }
    out["rows"] = rows;
  } else {
    out["columns"] = {"eta", "f", "fprime", "theta"};
    out["rows"] = profile_rows(from_series ? *from_series : *from_integrator);
  }
  return out;
}

struct CompareRun {
  json result;
  int code = exit_code::kOk;
};

json run_compare(const RunOptions& opts, int& code) {
  // Degrees and the oracle are independent pure computations.
  std::vector<std::future<CompareRun>> degree_runs;
  for (const int n : opts.pade) {
    degree_runs.push_back(std::async(std::launch::async, [&opts, n]() -> CompareRun {
      try {
        ProblemParams<double> params;
        params.problem = opts.problem;
        params.pr = opts.pr;
        params.mode = opts.mode;
        return {solve_json(solve_problem(params, closure_config(opts, n), guess_vector(opts)))};
      } catch (const std::exception& e) {
        auto f = classify(e);
        return {f.detail, f.code};
      }
    }));
  }

  json oracle;
  try {
    oracle = solve_json(shoot_solve(opts.problem, opts.pr, shoot_config(opts), guess_vector(opts)));
  } catch (const std::exception& e) {
    auto f = classify(e);
    code = f.code;
    oracle = f.detail;
  }

  json rows = json::array();
  int first_failure = exit_code::kOk;
  bool any_success = false;
  for (std::size_t i = 0; i < degree_runs.size(); ++i) {
    CompareRun run = degree_runs[i].get();
    json row{{"pade_degree", opts.pade[i]}, {"mode", std::string(to_string(opts.mode))}};
    if (run.code != exit_code::kOk) {
      if (first_failure == exit_code::kOk) first_failure = run.code;
      row["status"] = run.result.value("kind", "error");
      row["error"] = run.result["error"];
    } else {
      any_success = true;
      row["status"] = "ok";
      for (const char* key : {"a", "b", "residual_norm", "iterations", "series_order"}) row[key] = run.result[key];
      if (oracle.contains("a")) {
        row["abs_diff_a"] = std::abs(run.result["a"].get<double>() - oracle["a"].get<double>());
        if (!run.result["b"].is_null() && !oracle["b"].is_null()) {
          row["abs_diff_b"] = std::abs(run.result["b"].get<double>() - oracle["b"].get<double>());
        }
      }
    }
    rows.push_back(row);
  }
  if (code == exit_code::kOk && !any_success) code = first_failure;
  return {{"oracle", oracle}, {"rows", rows}};
}

template <typename Enum>
Enum parse_or_throw(std::optional<Enum> value, const std::string& what, const std::string& text) {
  if (!value) throw PreconditionError("unknown " + what + " '" + text + "'");
  return *value;
}

std::string num(const json& j, int digits) {
  if (j.is_null()) return "-";
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_number()) return format_number(j.get<double>(), digits);
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

struct Tabular {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> notes;
};

Tabular tabulate(const RunOptions& opts, const json& result) {
  const int d = opts.digits;
  Tabular t;
  const auto& sub = opts.subcommand;
  if (sub == "series") {
    const bool has_theta = !result["theta"].is_null();
    t.header = has_theta ? std::vector<std::string>{"k", "F", "Theta"} : std::vector<std::string>{"k", "F"};
    for (std::size_t k = 0; k < result["f"].size(); ++k) {
      std::vector<std::string> row{std::to_string(k), num(result["f"][k], d)};
      if (has_theta) row.push_back(num(result["theta"][k], d));
      t.rows.push_back(row);
    }
    if (result.contains("check")) {
      t.notes.push_back(std::string("check-paper: ") + (result["check"]["passed"].get<bool>() ? "PASS" : "FAIL") +
                        " (max abs error " + num(result["check"]["max_abs_error"], 3) + ")");
    }
  } else if (sub == "solve" || sub == "shoot") {
    t.header = {"quantity", "value"};
    t.rows.push_back({"A", num(result["a"], d)});
    if (!result["b"].is_null()) t.rows.push_back({"B", num(result["b"], d)});
    t.rows.push_back({"residual_norm", num(result["residual_norm"], 3)});
    t.rows.push_back({"iterations", num(result["iterations"], d)});
    if (result.contains("series_order")) t.rows.push_back({"series_order", num(result["series_order"], d)});
    for (const auto& w : result["warnings"]) t.notes.push_back("warning: " + w.get<std::string>());
  } else if (sub == "profile") {
    for (const auto& c : result["columns"]) t.header.push_back(c.get<std::string>());
    for (const auto& row : result["rows"]) {
      std::vector<std::string> cells;
      for (const auto& v : row) cells.push_back(num(v, d));
      t.rows.push_back(cells);
    }
  } else if (sub == "compare") {
    const bool two = opts.problem == Problem::FreeConvection;
    const auto& oracle = result["oracle"];
    t.header = {"pade", "mode", "A", "A_ref", "|dA|"};
    if (two) t.header.insert(t.header.end(), {"B", "B_ref", "|dB|"});
    t.header.insert(t.header.end(), {"residual", "status"});
    for (const auto& row : result["rows"]) {
      const auto get = [&](const json& obj, const char* key) { return obj.contains(key) ? obj[key] : json(nullptr); };
      std::vector<std::string> cells{num(row["pade_degree"], d), num(row["mode"], d), num(get(row, "a"), d),
                                     num(get(oracle, "a"), d), num(get(row, "abs_diff_a"), 3)};
      if (two) {
        cells.insert(cells.end(),
                     {num(get(row, "b"), d), num(get(oracle, "b"), d), num(get(row, "abs_diff_b"), 3)});
      }
      cells.push_back(num(get(row, "residual_norm"), 3));
      cells.push_back(num(row["status"], d));
      t.rows.push_back(cells);
    }
    if (oracle.contains("error")) t.notes.push_back("oracle failed: " + oracle["error"].get<std::string>());
  }
  return t;
}

}  // namespace

std::string_view to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Json: return "json";
    default: return "table";
  }
}

std::string_view to_string(ProfileSource source) {
  switch (source) {
    case ProfileSource::Series: return "series";
    case ProfileSource::Both: return "both";
    default: return "integrator";
  }
}

std::optional<OutputFormat> parse_format(std::string_view text) {
  if (text == "table") return OutputFormat::Table;
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  return std::nullopt;
}

std::optional<ProfileSource> parse_source(std::string_view text) {
  if (text == "series") return ProfileSource::Series;
  if (text == "integrator") return ProfileSource::Integrator;
  if (text == "both") return ProfileSource::Both;
  return std::nullopt;
}

json manifest_of(const RunOptions& opts) {
  const bool shooting = opts.subcommand == "shoot";
  return {{"version", std::string(kVersion)},
          {"subcommand", opts.subcommand},
          {"problem", std::string(to_string(opts.problem))},
          {"pr", opts.pr},
          {"order", opts.order ? json(*opts.order) : json("auto")},
          {"pade", opts.pade},
          {"mode", std::string(to_string(opts.mode))},
          {"a", opts.a ? json(*opts.a) : json(nullptr)},
          {"b", opts.b ? json(*opts.b) : json(nullptr)},
          {"eta_max", opts.eta_max},
          {"step", opts.step},
          {"tol", resolved_tol(opts, shooting)},
          {"guess", resolved_guess(opts)},
          {"format", std::string(to_string(opts.format))},
          {"digits", opts.digits},
          {"source", std::string(to_string(opts.source))},
          {"grid", opts.grid},
          {"check_paper", opts.check_paper}};
}

RunOptions options_from_manifest(const json& m) {
  try {
    RunOptions o;
    o.subcommand = m.at("subcommand").get<std::string>();
    o.problem = parse_or_throw(parse_problem(m.at("problem").get<std::string>()), "problem", m.at("problem"));
    o.pr = m.at("pr").get<double>();
    if (m.at("order").is_number_integer()) o.order = m.at("order").get<int>();
    o.pade = m.at("pade").get<std::vector<int>>();
    o.mode = parse_or_throw(parse_mode(m.at("mode").get<std::string>()), "mode", m.at("mode"));
    if (!m.at("a").is_null()) o.a = m.at("a").get<double>();
    if (!m.at("b").is_null()) o.b = m.at("b").get<double>();
    o.eta_max = m.at("eta_max").get<double>();
    o.step = m.at("step").get<double>();
    o.tol = m.at("tol").get<double>();
    o.guess = m.at("guess").get<std::vector<double>>();
    o.format = parse_or_throw(parse_format(m.at("format").get<std::string>()), "format", m.at("format"));
    o.digits = m.at("digits").get<int>();
    o.source = parse_or_throw(parse_source(m.at("source").get<std::string>()), "source", m.at("source"));
    o.grid = m.at("grid").get<std::string>();
    o.check_paper = m.at("check_paper").get<bool>();
    return o;
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("malformed manifest: ") + e.what());
  }
}

RunOutput execute(const RunOptions& opts) {
  RunOutput out;
  out.manifest = manifest_of(opts);
  try {
    if (opts.digits < 1 || opts.digits > 17) throw PreconditionError("--digits must lie in 1..17");
    for (const int n : opts.pade) {
      if (n < 1) throw PreconditionError("Pade degree must be >= 1, got " + std::to_string(n));
    }
    if (opts.pade.empty()) throw PreconditionError("--pade needs at least one degree");
    if (opts.subcommand == "series") {
      out.result = run_series(opts);
      if (opts.check_paper && !out.result["check"]["passed"].get<bool>()) {
        out.exit_code = exit_code::kCheckFailed;
        out.diagnostics = "series coefficients do not match the published values";
      }
    } else if (opts.subcommand == "solve") {
      out.result = run_solve(opts);
    } else if (opts.subcommand == "shoot") {
      out.result = run_shoot(opts);
    } else if (opts.subcommand == "profile") {
      out.result = run_profile(opts);
    } else if (opts.subcommand == "compare") {
      int code = exit_code::kOk;
      out.result = run_compare(opts, code);
      out.exit_code = code;
      if (code != exit_code::kOk) out.diagnostics = "compare: oracle or every Pade degree failed";
    } else {
      throw PreconditionError("unknown subcommand '" + opts.subcommand + "'");
    }
  } catch (const std::exception& e) {
    auto f = classify(e);
    out.exit_code = f.code;
    out.result = f.detail;
    out.diagnostics = e.what();
  }
  return out;
}

std::string render(const RunOptions& opts, const RunOutput& out) {
  if (opts.format == OutputFormat::Json) return json{{"manifest", out.manifest}, {"result", out.result}}.dump(2) + "\n";

  std::string doc = "# manifest: " + out.manifest.dump() + "\n";
  if (out.result.contains("error") && out.exit_code != exit_code::kOk) {
    return doc + "# error: " + out.result["error"].get<std::string>() + "\n";
  }
  const auto t = tabulate(opts, out.result);
  for (const auto& note : t.notes) doc += "# " + note + "\n";
  doc += opts.format == OutputFormat::Csv ? render_csv(t.header, t.rows) : render_table(t.header, t.rows);
  return doc;
}

}  // namespace dtmpade::app
