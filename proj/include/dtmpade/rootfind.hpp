#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dtmpade/config.hpp"
#include "dtmpade/dtm.hpp"
#include "dtmpade/newton.hpp"
#include "dtmpade/pade.hpp"
#include "dtmpade/series.hpp"

namespace dtmpade {

template <typename Scalar = double>
struct SolveResult {
  Scalar a;                ///< f''(0)
  std::optional<Scalar> b;  ///< theta'(0); empty for Blasius
  Scalar residual_norm;
  int iterations;
  ProblemParams<Scalar> params;                    ///< a/b hold the root, order the effective order
  std::variant<ClosureConfig, ShootConfig> settings;
  std::vector<std::string> warnings;
};

/// Series order actually generated for a closure solve.
///
/// Free convection needs f' through degree 2n and theta through degree 2n. The
/// default is 2n+1 in corrected mode; paper-fidelity mode defaults to 2n, in
/// which case the f' polynomial has degree 2n-1 and its degree-2n coefficient is
/// zero (the published procedure). Blasius applies the approximant to (f')^3 in
/// t = eta^3 and needs f through degree 6n+1.
inline int closure_series_order(Problem problem, RecurrenceMode mode, const ClosureConfig& cfg) {
  const int n = cfg.pade_degree;
  if (problem == Problem::Blasius) return std::max(cfg.series_order.value_or(6 * n + 1), 6 * n + 1);
  const int fallback = mode == RecurrenceMode::PaperFidelity ? 2 * n : 2 * n + 1;
  return std::max({cfg.series_order.value_or(fallback), 2 * n, 3});
}

namespace detail {

template <typename Scalar>
Scalar tagged_limit(const TruncatedSeries<Scalar>& c, int n, const char* source) {
  try {
    return limit_at_infinity(build(c, n, n));
  } catch (const DegenerateLimitError& e) {
    throw DegenerateLimitError(e.what(), source);
  } catch (const DegenerateApproximantError& e) {
    throw DegenerateApproximantError(e.what(), source);
  }
}

}  // namespace detail

/// Limits at infinity of the [n/n] approximants of f' and theta. Both vanish at a
/// root of the free-convection closure.
template <typename Scalar>
VectorX<Scalar> closure_residual(Scalar a, Scalar b, Scalar pr, const ClosureConfig& cfg, RecurrenceMode mode) {
  cfg.validate();
  const int n = cfg.pade_degree;
  ProblemParams<Scalar> params{Problem::FreeConvection, pr, a, b, closure_series_order(Problem::FreeConvection, mode, cfg),
                               mode};
  const auto sol = generate(params);
  const auto slope = differentiate(sol.f_series).padded(2 * n);

  VectorX<Scalar> out(2);
  out[0] = detail::tagged_limit(slope, n, "f' approximant");
  out[1] = detail::tagged_limit(*sol.theta_series, n, "theta approximant");
  return out;
}

/// Blasius closure: limit of the [n/n] approximant of (f')^3 in t = eta^3, minus 1.
///
/// f' = eta g(eta^3) for this problem, so every diagonal approximant of f' in
/// eta tends to 0 or infinity. (f')^3 = t g(t)^3 is a plain series in t whose
/// limit is 1 exactly when f' tends to 1.
template <typename Scalar>
Scalar blasius_closure_residual(Scalar a, const ClosureConfig& cfg) {
  cfg.validate();
  const int n = cfg.pade_degree;
  ProblemParams<Scalar> params{Problem::Blasius, Scalar(1), a, Scalar(0),
                               closure_series_order(Problem::Blasius, RecurrenceMode::Corrected, cfg),
                               RecurrenceMode::Corrected};
  const auto sol = generate(params);
  const auto slope = differentiate(sol.f_series);
  const auto cube = slope * slope * slope;
  VectorX<Scalar> in_t(cube.order() / 3 + 1);
  for (Eigen::Index j = 0; j < in_t.size(); ++j) in_t[j] = cube[static_cast<int>(3 * j)];
  return detail::tagged_limit(TruncatedSeries<Scalar>(std::move(in_t)), n, "(f')^3 approximant") - Scalar(1);
}

/// Closure residual of either problem as a vector map over the unknowns
/// (A, B) for free convection, (A) for Blasius.
template <typename Scalar>
VectorX<Scalar> closure_residual(const ProblemParams<Scalar>& params, const ClosureConfig& cfg) {
  if (params.problem == Problem::Blasius) {
    VectorX<Scalar> out(1);
    out[0] = blasius_closure_residual(params.a, cfg);
    return out;
  }
  return closure_residual(params.a, params.b, params.pr, cfg, params.mode);
}

/// Default initial guess: physical branch A > 0, B < 0.
template <typename Scalar = double>
VectorX<Scalar> default_guess(Problem problem) {
  if (problem == Problem::Blasius) return VectorX<Scalar>::Constant(1, Scalar(0.3));
  VectorX<Scalar> x(2);
  x << Scalar(0.6), Scalar(-0.6);
  return x;
}

/// Solves the Pade closure for the unknown wall derivatives. `params.a/b` are
/// ignored; the initial guess comes from `x0`.
template <typename Scalar>
SolveResult<Scalar> solve_problem(ProblemParams<Scalar> params, const ClosureConfig& cfg, const VectorX<Scalar>& x0) {
  cfg.validate();
  const bool blasius = params.problem == Problem::Blasius;
  if (blasius) params.mode = RecurrenceMode::Corrected;
  params.order = closure_series_order(params.problem, params.mode, cfg);
  params.a = Scalar(0);
  params.b = Scalar(0);
  params.validate();
  if (x0.size() != (blasius ? 1 : 2)) throw PreconditionError("initial guess has the wrong dimension");

  const auto residual = [&](const VectorX<Scalar>& x) {
    ProblemParams<Scalar> p = params;
    p.a = x[0];
    if (!blasius) p.b = x[1];
    return closure_residual(p, cfg);
  };
  auto nr = newton_solve<Scalar>(residual, x0, cfg.newton);

  SolveResult<Scalar> out{nr.x[0], std::nullopt, nr.residual_norm, nr.iterations, params, cfg, {}};
  out.params.a = nr.x[0];
  if (!blasius) {
    out.b = nr.x[1];
    out.params.b = nr.x[1];
    if (!(out.a > Scalar(0)) || !(*out.b < Scalar(0))) {
      out.warnings.emplace_back("root lies off the physical branch A > 0, B < 0");
    }
  } else if (!(out.a > Scalar(0))) {
    out.warnings.emplace_back("root lies off the physical branch A > 0");
  }
  return out;
}

}  // namespace dtmpade
