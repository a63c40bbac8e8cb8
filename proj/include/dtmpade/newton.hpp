#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dtmpade/config.hpp"
#include "dtmpade/error.hpp"
#include "dtmpade/series.hpp"

namespace dtmpade {

template <typename Scalar = double>
struct NewtonResult {
  VectorX<Scalar> x;
  VectorX<Scalar> residual;
  Scalar residual_norm;
  int iterations;
};

namespace detail {

template <typename Scalar>
std::vector<double> to_std(const VectorX<Scalar>& v) {
  std::vector<double> out(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = static_cast<double>(v[i]);
  return out;
}

template <typename Scalar>
Scalar inf_norm(const VectorX<Scalar>& v) {
  return v.size() == 0 ? Scalar(0) : v.cwiseAbs().maxCoeff();
}

}  // namespace detail

/// Damped Newton iteration with a forward-difference Jacobian.
///
/// `residual` maps a d-vector to a d-vector and may throw dtmpade::Error for
/// points where it is undefined. A trial point that throws or does not reduce
/// the infinity norm has its step multiplied by `damping`, at most
/// `max_backtracks` times, after which the solve stagnates.
template <typename Scalar, typename Residual>
NewtonResult<Scalar> newton_solve(Residual&& residual, VectorX<Scalar> x0, const NewtonOptions& opts) {
  opts.validate();
  if (!x0.allFinite()) throw PreconditionError("initial guess must be finite");
  const Eigen::Index d = x0.size();
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  VectorX<Scalar> x = std::move(x0);
  VectorX<Scalar> r = residual(x);
  if (r.size() != d) throw PreconditionError("residual dimension does not match the unknowns");
  Scalar norm = detail::inf_norm(r);
  if (!std::isfinite(static_cast<double>(norm))) throw PreconditionError("residual is not finite at the initial guess");

  int iter = 0;
  for (; iter < opts.max_iter && !(norm <= Scalar(opts.tol)); ++iter) {
    Matrix jac(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
      VectorX<Scalar> probe = x;
      probe[j] += Scalar(opts.fd_step);
      const Scalar h = probe[j] - x[j];  // exactly representable step
      VectorX<Scalar> rp;
      try {
        rp = residual(probe);
      } catch (const Error& e) {
        throw JacobianProbeError(std::string("residual failed during Jacobian probe: ") + e.what());
      }
      jac.col(j) = (rp - r) / h;
    }
    if (!jac.allFinite()) throw JacobianProbeError("finite-difference Jacobian is not finite");

    VectorX<Scalar> row_max = jac.cwiseAbs().rowwise().maxCoeff();
    if ((row_max.array() == Scalar(0)).any()) throw SingularJacobianError("Jacobian has a zero row");
    const Matrix scaled = row_max.cwiseInverse().asDiagonal() * jac;
    using std::abs;
    if (abs(scaled.determinant()) < Scalar(1e-14)) throw SingularJacobianError("Jacobian is singular");

    const VectorX<Scalar> step = scaled.partialPivLu().solve(-(row_max.cwiseInverse().asDiagonal() * r));

    Scalar t(1);
    bool accepted = false;
    for (int attempt = 0; attempt <= opts.max_backtracks; ++attempt, t *= Scalar(opts.damping)) {
      VectorX<Scalar> trial = x + t * step;
      VectorX<Scalar> rt;
      try {
        rt = residual(trial);
      } catch (const Error&) {
        continue;
      }
      const Scalar trial_norm = detail::inf_norm(rt);
      if (trial_norm < norm) {
        x = std::move(trial);
        r = std::move(rt);
        norm = trial_norm;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      throw NonConvergenceError("Newton stagnated: no step reduced the residual norm " +
                                    detail::short_number(static_cast<double>(norm)),
                                detail::to_std(x), static_cast<double>(norm), iter);
    }
  }

  if (!(norm <= Scalar(opts.tol))) {
    throw NonConvergenceError("Newton reached max_iter = " + std::to_string(opts.max_iter) + " with residual norm " +
                                  detail::short_number(static_cast<double>(norm)),
                              detail::to_std(x), static_cast<double>(norm), iter);
  }
  return {std::move(x), std::move(r), norm, iter};
}

}  // namespace dtmpade
