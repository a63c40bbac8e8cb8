#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dtmpade/error.hpp"
#include "dtmpade/series.hpp"

namespace dtmpade {

/// How the f f'' product term of the momentum recurrence is transformed.
///
/// Corrected uses the plain product rule sum (k-r+1)(k-r+2) U(r) V(k-r+2).
/// PaperFidelity divides each summand by r!, which is what the published
/// series and the published closure root were computed with.
enum class RecurrenceMode { Corrected, PaperFidelity };

enum class Problem {
  FreeConvection,  ///< f''' + 3 f f'' - 2 f'^2 + theta = 0, theta'' + 3 Pr f theta' = 0
  Blasius,         ///< f''' + f f'' / 2 = 0, f'(inf) = 1
};

std::string_view to_string(RecurrenceMode mode);
std::string_view to_string(Problem problem);
std::optional<RecurrenceMode> parse_mode(std::string_view text);
std::optional<Problem> parse_problem(std::string_view text);

template <typename Scalar = double>
struct ProblemParams {
  Problem problem = Problem::FreeConvection;
  Scalar pr = Scalar(1);  ///< Prandtl number; ignored by Blasius
  Scalar a = Scalar(0);   ///< f''(0)
  Scalar b = Scalar(0);   ///< theta'(0); ignored by Blasius
  int order = 6;          ///< truncation order m
  RecurrenceMode mode = RecurrenceMode::Corrected;

  void validate() const {
    using std::isfinite;
    if (order < 3) throw PreconditionError("series order must be >= 3, got " + std::to_string(order));
    if (!isfinite(pr) || !(pr > Scalar(0))) throw PreconditionError("Prandtl number must be finite and positive");
    if (!isfinite(a) || !isfinite(b)) throw PreconditionError("initial derivatives must be finite");
  }
};

template <typename Scalar = double>
struct DtmSolution {
  TruncatedSeries<Scalar> f_series;
  std::optional<TruncatedSeries<Scalar>> theta_series;  ///< absent for Blasius
  ProblemParams<Scalar> params;
};

template <typename Scalar = double>
struct InitialTransforms {
  std::array<Scalar, 3> f;                     ///< F(0), F(1), F(2)
  std::optional<std::array<Scalar, 2>> theta;  ///< Theta(0), Theta(1)
};

/// Transforms fixed by the wall conditions f = f' = 0, f'' = A, theta = 1, theta' = B.
template <typename Scalar>
InitialTransforms<Scalar> init_transforms(const ProblemParams<Scalar>& params) {
  params.validate();
  InitialTransforms<Scalar> init{{Scalar(0), Scalar(0), params.a / Scalar(2)}, std::nullopt};
  if (params.problem == Problem::FreeConvection) init.theta = std::array<Scalar, 2>{Scalar(1), params.b};
  return init;
}

/// One step of the free-convection recurrence: given F(0..k+2) and Theta(0..k+1),
/// returns (F(k+3), Theta(k+2)).
template <typename Scalar>
std::pair<Scalar, Scalar> advance_free_convection(std::span<const Scalar> f, std::span<const Scalar> theta, int k,
                                                  Scalar pr, RecurrenceMode mode) {
  if (k < 0) throw PreconditionError("recurrence index must be nonnegative");
  if (static_cast<int>(f.size()) < k + 3 || static_cast<int>(theta.size()) < k + 2) {
    throw PreconditionError("recurrence step " + std::to_string(k) + " needs F(0.." + std::to_string(k + 2) +
                            ") and Theta(0.." + std::to_string(k + 1) + ")");
  }

  // (f')^2
  Scalar slope_sq(0);
  for (int r = 0; r <= k; ++r) slope_sq += Scalar((r + 1) * (k - r + 1)) * f[r + 1] * f[k - r + 1];

  // f f''
  Scalar f_fpp(0);
  Scalar r_factorial(1);
  for (int r = 0; r <= k; ++r) {
    if (r > 0) r_factorial *= Scalar(r);
    Scalar term = Scalar((k - r + 1) * (k - r + 2)) * f[r] * f[k - r + 2];
    if (mode == RecurrenceMode::PaperFidelity) term /= r_factorial;
    f_fpp += term;
  }

  // f theta'
  Scalar f_thetap(0);
  for (int r = 0; r <= k; ++r) f_thetap += Scalar(k - r + 1) * f[r] * theta[k - r + 1];

  const Scalar next_f = (Scalar(2) * slope_sq - theta[k] - Scalar(3) * f_fpp) / Scalar((k + 1) * (k + 2) * (k + 3));
  const Scalar next_theta = -Scalar(3) * pr * f_thetap / Scalar((k + 1) * (k + 2));
  return {next_f, next_theta};
}

/// One step of the Blasius recurrence f''' = -f f'' / 2: returns F(k+3) from F(0..k+2).
template <typename Scalar>
Scalar advance_blasius(std::span<const Scalar> f, int k) {
  if (k < 0) throw PreconditionError("recurrence index must be nonnegative");
  if (static_cast<int>(f.size()) < k + 3) {
    throw PreconditionError("recurrence step " + std::to_string(k) + " needs F(0.." + std::to_string(k + 2) + ")");
  }
  Scalar f_fpp(0);
  for (int r = 0; r <= k; ++r) f_fpp += Scalar((k - r + 1) * (k - r + 2)) * f[r] * f[k - r + 2];
  return -f_fpp / (Scalar(2) * Scalar((k + 1) * (k + 2) * (k + 3)));
}

/// Builds F(0..m) (and Theta(0..m) for free convection) by seeding the wall
/// transforms and advancing the recurrence until both series reach order m.
template <typename Scalar>
DtmSolution<Scalar> generate(const ProblemParams<Scalar>& params) {
  const auto init = init_transforms(params);
  const int m = params.order;
  const auto check = [](const char* name, Scalar value, int index) {
    using std::isfinite;
    if (!isfinite(value)) throw NonFiniteCoefficientError(name, index);
  };

  std::vector<Scalar> f(init.f.begin(), init.f.end());
  f.reserve(m + 1);

  if (params.problem == Problem::Blasius) {
    for (int k = 0; k + 3 <= m; ++k) {
      f.push_back(advance_blasius<Scalar>(f, k));
      check("F", f.back(), k + 3);
    }
    return {TruncatedSeries<Scalar>(Eigen::Map<const VectorX<Scalar>>(f.data(), m + 1)), std::nullopt, params};
  }

  std::vector<Scalar> theta(init.theta->begin(), init.theta->end());
  theta.reserve(m + 2);
  // Theta runs one index behind F; the final step only tops up Theta(m).
  for (int k = 0; k + 2 <= m; ++k) {
    const auto [next_f, next_theta] = advance_free_convection<Scalar>(f, theta, k, params.pr, params.mode);
    if (k + 3 <= m) {
      check("F", next_f, k + 3);
      f.push_back(next_f);
    }
    check("Theta", next_theta, k + 2);
    theta.push_back(next_theta);
  }
  return {TruncatedSeries<Scalar>(Eigen::Map<const VectorX<Scalar>>(f.data(), m + 1)),
          TruncatedSeries<Scalar>(Eigen::Map<const VectorX<Scalar>>(theta.data(), m + 1)), params};
}

}  // namespace dtmpade
