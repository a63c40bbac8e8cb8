#pragma once

#include <optional>
#include <string>

#include "dtmpade/error.hpp"

namespace dtmpade {

struct NewtonOptions {
  double tol = 1e-10;    ///< stop when the residual infinity norm is at or below this
  int max_iter = 50;
  double fd_step = 1e-7;  ///< forward-difference step per coordinate
  double damping = 0.5;   ///< step shrink factor on a non-decreasing residual
  int max_backtracks = 8;

  void validate() const {
    if (!(tol > 0.0)) throw PreconditionError("tolerance must be positive");
    if (max_iter < 1) throw PreconditionError("max_iter must be positive");
    if (!(fd_step > 0.0)) throw PreconditionError("finite-difference step must be positive");
    if (!(damping > 0.0 && damping <= 1.0)) throw PreconditionError("damping must lie in (0, 1]");
    if (max_backtracks < 0) throw PreconditionError("max_backtracks must be nonnegative");
  }
};

/// Settings of the Pade closure: which diagonal approximant, how many series terms.
struct ClosureConfig {
  int pade_degree = 3;  ///< n of the diagonal [n/n] approximant
  /// Requested series truncation order. Empty means the default for the problem
  /// and mode; requests below the required minimum are raised to it.
  std::optional<int> series_order;
  NewtonOptions newton;

  void validate() const {
    if (pade_degree < 1) throw PreconditionError("Pade degree must be >= 1, got " + std::to_string(pade_degree));
    if (series_order && *series_order < 3) {
      throw PreconditionError("series order must be >= 3, got " + std::to_string(*series_order));
    }
    newton.validate();
  }
};

/// Settings of the shooting oracle; eta_max stands in for infinity.
struct ShootConfig {
  double eta_max = 8.0;
  double step = 0.01;  ///< RK4 step; the last step is shortened to land on eta_max
  NewtonOptions newton{1e-8, 50, 1e-7, 0.5, 8};

  void validate() const {
    if (!(eta_max >= 5.0)) throw PreconditionError("eta_max must be >= 5 for a converged far field");
    if (!(step > 0.0) || !(step <= eta_max)) throw PreconditionError("RK4 step must lie in (0, eta_max]");
    newton.validate();
  }
};

}  // namespace dtmpade
