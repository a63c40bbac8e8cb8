#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace dtmpade {

namespace detail {
/// Three significant digits for error messages.
inline std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}
}  // namespace detail

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a documented precondition (bad order, degree, grid...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A recurrence produced a NaN/Inf coefficient.
class NonFiniteCoefficientError : public Error {
 public:
  NonFiniteCoefficientError(std::string series, int index)
      : Error("non-finite coefficient " + series + "(" + std::to_string(index) + ")"),
        series_(std::move(series)),
        index_(index) {}

  const std::string& series() const noexcept { return series_; }
  int index() const noexcept { return index_; }

 private:
  std::string series_;
  int index_;
};

/// Pade linear system singular or too ill-conditioned to trust.
///
/// `source` names which approximant failed when several are built together
/// (empty when raised directly by the Pade module).
class DegenerateApproximantError : public Error {
 public:
  explicit DegenerateApproximantError(const std::string& what, std::string source = {})
      : Error(source.empty() ? what : source + ": " + what), source_(std::move(source)) {}

  const std::string& source() const noexcept { return source_; }

 private:
  std::string source_;
};

/// Leading denominator coefficient is effectively zero; the limit at infinity is undefined.
class DegenerateLimitError : public DegenerateApproximantError {
 public:
  using DegenerateApproximantError::DegenerateApproximantError;
};

/// Rational function evaluated at (or next to) a pole.
class PoleError : public Error {
 public:
  PoleError(const std::string& what, double x) : Error(what), x_(x) {}
  double x() const noexcept { return x_; }

 private:
  double x_;
};

/// Base for iterative-solver failures.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class SingularJacobianError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Newton stopped without meeting its tolerance. Carries the last iterate.
class NonConvergenceError : public NumericalError {
 public:
  NonConvergenceError(const std::string& what, std::vector<double> last_iterate,
                      double residual_norm, int iterations)
      : NumericalError(what),
        last_iterate_(std::move(last_iterate)),
        residual_norm_(residual_norm),
        iterations_(iterations) {}

  const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }
  double residual_norm() const noexcept { return residual_norm_; }
  int iterations() const noexcept { return iterations_; }

 private:
  std::vector<double> last_iterate_;
  double residual_norm_;
  int iterations_;
};

/// Residual evaluation failed while building the finite-difference Jacobian.
class JacobianProbeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// IVP integration left the finite range.
class BlowUpError : public NumericalError {
 public:
  BlowUpError(const std::string& what, double eta) : NumericalError(what), eta_(eta) {}
  double eta() const noexcept { return eta_; }

 private:
  double eta_;
};

}  // namespace dtmpade
