#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dtmpade/config.hpp"
#include "dtmpade/dtm.hpp"
#include "dtmpade/error.hpp"
#include "dtmpade/newton.hpp"
#include "dtmpade/profile.hpp"
#include "dtmpade/rootfind.hpp"

namespace dtmpade {

/// One classical fourth-order Runge-Kutta step of y' = rhs(t, y).
template <typename Scalar, typename State, typename Rhs>
State rk4_step(const Rhs& rhs, Scalar t, const State& y, Scalar h) {
  const State k1 = rhs(t, y);
  const State k2 = rhs(t + h / 2, State(y + (h / 2) * k1));
  const State k3 = rhs(t + h / 2, State(y + (h / 2) * k2));
  const State k4 = rhs(t + h, State(y + h * k3));
  return y + (h / 6) * (k1 + Scalar(2) * k2 + Scalar(2) * k3 + k4);
}

/// Fixed-step RK4 from t0 to t1; the final step is shortened to land on t1.
/// `observe(t, y)` is called after every step. Throws BlowUpError when the
/// state leaves the finite range.
template <typename Scalar, typename State, typename Rhs, typename Observer>
State rk4_integrate(const Rhs& rhs, State y, Scalar t0, Scalar t1, Scalar step, Observer&& observe) {
  if (!(step > Scalar(0))) throw PreconditionError("RK4 step must be positive");
  const auto steps = static_cast<long>(std::ceil(static_cast<double>((t1 - t0) / step) - 1e-9));
  Scalar t = t0;
  for (long i = 0; i < steps; ++i) {
    const Scalar h = i + 1 == steps ? t1 - t : step;
    y = rk4_step(rhs, t, y, h);
    t = i + 1 == steps ? t1 : t + h;
    if (!y.allFinite() || y.cwiseAbs().maxCoeff() > Scalar(1e100)) {
      throw BlowUpError("integration blew up at eta = " + detail::short_number(static_cast<double>(t)),
                        static_cast<double>(t));
    }
    observe(t, y);
  }
  return y;
}

template <typename Scalar, typename State, typename Rhs>
State rk4_integrate(const Rhs& rhs, State y, Scalar t0, Scalar t1, Scalar step) {
  return rk4_integrate(rhs, std::move(y), t0, t1, step, [](Scalar, const State&) {});
}

/// State (f, f', f'', theta, theta').
template <typename Scalar>
using ConvectionState = Eigen::Matrix<Scalar, 5, 1>;

/// State (f, f', f'').
template <typename Scalar>
using BlasiusState = Eigen::Matrix<Scalar, 3, 1>;

template <typename Scalar>
struct FreeConvectionRhs {
  Scalar pr;
  ConvectionState<Scalar> operator()(Scalar, const ConvectionState<Scalar>& y) const {
    ConvectionState<Scalar> dy;
    dy << y[1], y[2], Scalar(2) * y[1] * y[1] - y[3] - Scalar(3) * y[0] * y[2], y[4], -Scalar(3) * pr * y[0] * y[4];
    return dy;
  }
};

template <typename Scalar>
struct BlasiusRhs {
  BlasiusState<Scalar> operator()(Scalar, const BlasiusState<Scalar>& y) const {
    BlasiusState<Scalar> dy;
    dy << y[1], y[2], -y[0] * y[2] / Scalar(2);
    return dy;
  }
};

template <typename Scalar>
ConvectionState<Scalar> wall_state(Scalar a, Scalar b) {
  ConvectionState<Scalar> y;
  y << Scalar(0), Scalar(0), a, Scalar(1), b;
  return y;
}

template <typename Scalar = double>
struct TrajectoryPoint {
  Scalar eta;
  ConvectionState<Scalar> state;
};

/// Full free-convection state on [0, eta_end] at every RK4 step, starting at the wall.
template <typename Scalar>
std::vector<TrajectoryPoint<Scalar>> integrate_free_convection(Scalar a, Scalar b, Scalar pr, Scalar eta_end,
                                                               Scalar step) {
  using std::isfinite;
  if (!isfinite(a) || !isfinite(b)) throw PreconditionError("initial derivatives must be finite");
  if (!(pr > Scalar(0))) throw PreconditionError("Prandtl number must be positive");
  if (!(eta_end > Scalar(0))) throw PreconditionError("integration end must be positive");
  std::vector<TrajectoryPoint<Scalar>> out{{Scalar(0), wall_state(a, b)}};
  rk4_integrate(FreeConvectionRhs<Scalar>{pr}, wall_state(a, b), Scalar(0), eta_end, step,
                [&](Scalar t, const ConvectionState<Scalar>& y) { out.push_back({t, y}); });
  return out;
}

template <typename Scalar>
Profile<Scalar> to_profile(const std::vector<TrajectoryPoint<Scalar>>& trajectory) {
  Profile<Scalar> out;
  out.rows.reserve(trajectory.size());
  for (const auto& p : trajectory) out.rows.push_back({p.eta, p.state[0], p.state[1], p.state[3]});
  return out;
}

/// RK4 trajectory of the free-convection system on [0, cfg.eta_max].
template <typename Scalar>
Profile<Scalar> rk4_integrate(Scalar a, Scalar b, Scalar pr, const ShootConfig& cfg) {
  cfg.validate();
  return to_profile(integrate_free_convection(a, b, pr, Scalar(cfg.eta_max), Scalar(cfg.step)));
}

/// (f'(eta_max), theta(eta_max)); both vanish for the correct wall derivatives.
template <typename Scalar>
VectorX<Scalar> boundary_residual(Scalar a, Scalar b, Scalar pr, const ShootConfig& cfg) {
  cfg.validate();
  if (!(pr > Scalar(0))) throw PreconditionError("Prandtl number must be positive");
  const auto end = rk4_integrate(FreeConvectionRhs<Scalar>{pr}, wall_state(a, b), Scalar(0), Scalar(cfg.eta_max),
                                 Scalar(cfg.step));
  VectorX<Scalar> r(2);
  r << end[1], end[3];
  return r;
}

/// f'(eta_max) - 1 for the Blasius problem.
template <typename Scalar>
Scalar blasius_boundary_residual(Scalar a, const ShootConfig& cfg) {
  cfg.validate();
  BlasiusState<Scalar> y0;
  y0 << Scalar(0), Scalar(0), a;
  const auto end = rk4_integrate(BlasiusRhs<Scalar>{}, y0, Scalar(0), Scalar(cfg.eta_max), Scalar(cfg.step));
  return end[1] - Scalar(1);
}

/// Shooting oracle: Newton on the far-boundary residual.
///
/// A truncated far boundary admits spurious roots where f' merely crosses zero
/// at eta_max, and their number grows with eta_max. The solve therefore starts
/// at eta = min(eta_max, 6) and walks the truncation point out in unit steps,
/// seeding each Newton run with the previous root.
template <typename Scalar>
SolveResult<Scalar> shoot_solve(Problem problem, Scalar pr, const ShootConfig& cfg, const VectorX<Scalar>& x0) {
  cfg.validate();
  const bool blasius = problem == Problem::Blasius;
  if (x0.size() != (blasius ? 1 : 2)) throw PreconditionError("initial guess has the wrong dimension");
  if (!blasius && !(pr > Scalar(0))) throw PreconditionError("Prandtl number must be positive");

  std::vector<double> stages;
  for (double eta = std::min(cfg.eta_max, 6.0); eta < cfg.eta_max; eta += 1.0) stages.push_back(eta);
  stages.push_back(cfg.eta_max);

  VectorX<Scalar> x = x0;
  NewtonResult<Scalar> nr{x, VectorX<Scalar>(), Scalar(0), 0};
  int iterations = 0;
  for (const double eta_end : stages) {
    ShootConfig stage = cfg;
    stage.eta_max = eta_end;
    const auto residual = [&](const VectorX<Scalar>& v) -> VectorX<Scalar> {
      if (blasius) return VectorX<Scalar>::Constant(1, blasius_boundary_residual(v[0], stage));
      return boundary_residual(v[0], v[1], pr, stage);
    };
    nr = newton_solve<Scalar>(residual, x, cfg.newton);
    iterations += nr.iterations;
    x = nr.x;
  }

  ProblemParams<Scalar> params{problem, blasius ? Scalar(1) : pr, x[0], blasius ? Scalar(0) : x[1], 3,
                               RecurrenceMode::Corrected};
  SolveResult<Scalar> out{x[0], std::nullopt, nr.residual_norm, iterations, params, cfg, {}};
  if (!blasius) out.b = x[1];
  return out;
}

/// Integrated profile sampled exactly at the grid points: each interval between
/// consecutive grid points is split into equal RK4 steps no longer than cfg.step.
template <typename Scalar>
Profile<Scalar> tabulate_profile(Scalar a, Scalar b, Scalar pr, const std::vector<Scalar>& grid,
                                 const ShootConfig& cfg) {
  cfg.validate();
  validate_grid(grid);
  if (grid.back() > Scalar(cfg.eta_max) * (Scalar(1) + Scalar(1e-12))) {
    throw PreconditionError("grid point " + detail::short_number(static_cast<double>(grid.back())) +
                            " lies beyond eta_max = " + std::to_string(cfg.eta_max));
  }
  if (!(pr > Scalar(0))) throw PreconditionError("Prandtl number must be positive");

  const FreeConvectionRhs<Scalar> rhs{pr};
  Profile<Scalar> out;
  ConvectionState<Scalar> y = wall_state(a, b);
  Scalar eta(0);
  for (const Scalar target : grid) {
    if (target > eta) {
      const auto pieces = std::max<long>(1, static_cast<long>(std::ceil(static_cast<double>((target - eta) /
                                                                                           Scalar(cfg.step)) -
                                                                        1e-9)));
      y = rk4_integrate(rhs, y, eta, target, (target - eta) / Scalar(pieces));
      eta = target;
    }
    out.rows.push_back({target, y[0], y[1], y[3]});
  }
  return out;
}

}  // namespace dtmpade
