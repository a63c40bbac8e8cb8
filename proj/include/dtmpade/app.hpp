#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dtmpade/dtm.hpp"

namespace dtmpade::app {

inline constexpr std::string_view kVersion = "0.1.0";

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;  ///< series --check-paper mismatch
inline constexpr int kUsage = 2;
inline constexpr int kNonConvergence = 3;
inline constexpr int kDegenerate = 4;
}  // namespace exit_code

enum class OutputFormat { Table, Csv, Json };
enum class ProfileSource { Series, Integrator, Both };

/// Every knob of a run. Serialized verbatim as the manifest embedded in each output.
struct RunOptions {
  std::string subcommand;
  Problem problem = Problem::FreeConvection;
  double pr = 1.0;
  std::optional<int> order;  ///< empty: subcommand default (series/profile: 6, solve: derived from --pade)
  std::vector<int> pade{3};
  RecurrenceMode mode = RecurrenceMode::Corrected;
  std::optional<double> a;
  std::optional<double> b;
  double eta_max = 8.0;
  double step = 0.01;
  std::optional<double> tol;  ///< empty: 1e-10 for solve, 1e-8 for shoot
  std::optional<std::vector<double>> guess;
  OutputFormat format = OutputFormat::Table;
  int digits = 10;
  ProfileSource source = ProfileSource::Integrator;
  std::string grid = "0:1:0.1";
  bool check_paper = false;
};

struct RunOutput {
  int exit_code = exit_code::kOk;
  nlohmann::json manifest;
  nlohmann::json result;
  std::string diagnostics;  ///< for standard error
};

std::string_view to_string(OutputFormat format);
std::string_view to_string(ProfileSource source);
std::optional<OutputFormat> parse_format(std::string_view text);
std::optional<ProfileSource> parse_source(std::string_view text);

/// Manifest with defaults resolved (tolerance, guess, ...).
nlohmann::json manifest_of(const RunOptions& opts);

/// Inverse of manifest_of. Throws PreconditionError on malformed input.
RunOptions options_from_manifest(const nlohmann::json& manifest);

/// Runs one subcommand. Library errors are mapped onto exit codes, never thrown.
RunOutput execute(const RunOptions& opts);

/// Output document in the requested format; every format embeds the manifest.
std::string render(const RunOptions& opts, const RunOutput& out);

}  // namespace dtmpade::app
