#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "dtmpade/dtm.hpp"
#include "dtmpade/error.hpp"
#include "dtmpade/series.hpp"

namespace dtmpade {

template <typename Scalar = double>
struct ProfileRow {
  Scalar eta;
  Scalar f;
  Scalar fprime;
  Scalar theta;
};

/// (eta, f, f', theta) samples with strictly increasing eta.
template <typename Scalar = double>
struct Profile {
  std::vector<ProfileRow<Scalar>> rows;
};

/// Checks a tabulation grid: nonempty, finite, nonnegative, strictly increasing.
template <typename Scalar>
void validate_grid(const std::vector<Scalar>& grid) {
  if (grid.empty()) throw PreconditionError("grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    using std::isfinite;
    if (!isfinite(grid[i]) || grid[i] < Scalar(0)) throw PreconditionError("grid points must be finite and >= 0");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw PreconditionError("grid must be strictly increasing");
  }
}

/// Inclusive grid start, start+step, ..., end. The regular point within half a
/// step of `end` is snapped onto it, so the final spacing lies in [step/2, 3step/2)
/// unless the whole interval is shorter than that.
std::vector<double> make_grid(double start, double end, double step);

/// Parses "start:end:step".
std::vector<double> parse_grid(std::string_view text);

/// Evaluates the truncated DTM series (and the derivative of f) on a grid.
template <typename Scalar>
Profile<Scalar> series_profile(const DtmSolution<Scalar>& sol, const std::vector<Scalar>& grid) {
  validate_grid(grid);
  if (!sol.theta_series) throw PreconditionError("series profiles need the free-convection theta series");
  const auto slope = differentiate(sol.f_series);
  Profile<Scalar> out;
  out.rows.reserve(grid.size());
  for (const Scalar eta : grid) {
    out.rows.push_back({eta, evaluate(sol.f_series, eta), evaluate(slope, eta), evaluate(*sol.theta_series, eta)});
  }
  return out;
}

}  // namespace dtmpade
