#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>

#include <Eigen/Dense>

#include "dtmpade/error.hpp"
#include "dtmpade/series.hpp"

namespace dtmpade {

/// Rational function (a_0 + ... + a_L x^L) / (1 + b_1 x + ... + b_M x^M).
template <typename Scalar = double>
class RationalApproximant {
 public:
  RationalApproximant(VectorX<Scalar> numerator, VectorX<Scalar> denominator)
      : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {
    if (numerator_.size() == 0 || denominator_.size() == 0) {
      throw PreconditionError("rational approximant needs nonempty coefficient vectors");
    }
    if (denominator_[0] != Scalar(1)) throw PreconditionError("denominator must be normalized to b_0 = 1");
    if (!numerator_.allFinite() || !denominator_.allFinite()) {
      throw DegenerateApproximantError("rational approximant has non-finite coefficients");
    }
  }

  int numerator_degree() const noexcept { return static_cast<int>(numerator_.size()) - 1; }
  int denominator_degree() const noexcept { return static_cast<int>(denominator_.size()) - 1; }
  const VectorX<Scalar>& numerator() const noexcept { return numerator_; }
  const VectorX<Scalar>& denominator() const noexcept { return denominator_; }

 private:
  VectorX<Scalar> numerator_;
  VectorX<Scalar> denominator_;
};

struct PadeOptions {
  /// Largest accepted condition estimate of the equilibrated coefficient system.
  double max_condition = 1e12;
  /// |b_M| must exceed this fraction of max |b_j| for the limit at infinity to exist.
  double leading_floor = 1e-10;
};

/// Pade [L/M] approximant whose expansion agrees with `c` through degree L+M.
///
/// b_1..b_M solve the Toeplitz system that cancels degrees L+1..L+M of
/// (denominator * c); the numerator is then the truncated product. The system is
/// row/column equilibrated before factoring so the condition check does not
/// depend on the scale of the expansion variable.
template <typename Scalar>
RationalApproximant<Scalar> build(const TruncatedSeries<Scalar>& c, int L, int M, const PadeOptions& opts = {}) {
  if (L < 0 || M < 0) throw PreconditionError("Pade degrees must be nonnegative");
  if (c.order() < L + M) {
    throw PreconditionError("Pade [" + std::to_string(L) + "/" + std::to_string(M) + "] needs series order >= " +
                            std::to_string(L + M) + ", got " + std::to_string(c.order()));
  }
  const auto coeff = [&](int k) { return k < 0 ? Scalar(0) : c[k]; };

  VectorX<Scalar> den = VectorX<Scalar>::Zero(M + 1);
  den[0] = Scalar(1);
  bool taylor_matches = true;
  for (int i = 1; i <= M; ++i) taylor_matches = taylor_matches && coeff(L + i) == Scalar(0);
  // With c_{L+1..L+M} all zero the Taylor polynomial itself is the approximant.
  if (M > 0 && !taylor_matches) {
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    Matrix sys(M, M);
    VectorX<Scalar> rhs(M);
    for (int i = 1; i <= M; ++i) {
      for (int j = 1; j <= M; ++j) sys(i - 1, j - 1) = coeff(L + i - j);
      rhs[i - 1] = -coeff(L + i);
    }

    VectorX<Scalar> row_scale = sys.cwiseAbs().rowwise().maxCoeff();
    if ((row_scale.array() == Scalar(0)).any()) {
      throw DegenerateApproximantError("Pade [" + std::to_string(L) + "/" + std::to_string(M) +
                                       "] system has a zero row");
    }
    row_scale = row_scale.cwiseInverse();
    sys = row_scale.asDiagonal() * sys;
    rhs = row_scale.asDiagonal() * rhs;
    VectorX<Scalar> col_scale = sys.cwiseAbs().colwise().maxCoeff().transpose();
    if ((col_scale.array() == Scalar(0)).any()) {
      throw DegenerateApproximantError("Pade [" + std::to_string(L) + "/" + std::to_string(M) +
                                       "] system has a zero column");
    }
    col_scale = col_scale.cwiseInverse();
    sys = sys * col_scale.asDiagonal();

    const Eigen::PartialPivLU<Matrix> lu(sys);
    const Scalar rcond = lu.rcond();
    using std::isfinite;
    if (!isfinite(rcond) || rcond * Scalar(opts.max_condition) < Scalar(1)) {
      throw DegenerateApproximantError("Pade [" + std::to_string(L) + "/" + std::to_string(M) +
                                       "] system is singular or ill-conditioned (rcond " +
                                       detail::short_number(static_cast<double>(rcond)) + ")");
    }
    den.tail(M) = col_scale.asDiagonal() * lu.solve(rhs);
    // Refinement with the residual of the unscaled equations accumulated in extended precision.
    using Wide = std::conditional_t<std::is_same_v<Scalar, double>, long double, Scalar>;
    for (int pass = 0; pass < 2; ++pass) {
      VectorX<Scalar> res(M);
      for (int i = 1; i <= M; ++i) {
        Wide acc = -static_cast<Wide>(coeff(L + i));
        for (int j = 1; j <= M; ++j) acc -= static_cast<Wide>(coeff(L + i - j)) * static_cast<Wide>(den[j]);
        res[i - 1] = static_cast<Scalar>(acc);
      }
      den.tail(M) += col_scale.asDiagonal() * lu.solve(VectorX<Scalar>(row_scale.asDiagonal() * res));
    }
  }

  VectorX<Scalar> num(L + 1);
  for (int i = 0; i <= L; ++i) {
    Scalar acc(0);
    for (int j = 0; j <= std::min(i, M); ++j) acc += den[j] * c[i - j];
    num[i] = acc;
  }
  return RationalApproximant<Scalar>(std::move(num), std::move(den));
}

namespace detail {
template <typename Scalar>
Scalar horner(const VectorX<Scalar>& p, Scalar x) {
  Scalar acc(0);
  for (Eigen::Index k = p.size() - 1; k >= 0; --k) acc = acc * x + p[k];
  return acc;
}
}  // namespace detail

template <typename Scalar>
Scalar evaluate(const RationalApproximant<Scalar>& r, Scalar x) {
  const Scalar den = detail::horner(r.denominator(), x);
  using std::abs;
  if (!(abs(den) > Scalar(1e-300))) {
    throw PoleError("rational approximant has a pole at x = " + detail::short_number(static_cast<double>(x)),
                    static_cast<double>(x));
  }
  return detail::horner(r.numerator(), x) / den;
}

/// a_L / b_L for a diagonal approximant.
///
/// Leading terms that vanish in both numerator and denominator are dropped
/// first, so a diagonal approximant of lower effective degree (e.g. a constant
/// written as [n/n]) still has its limit.
template <typename Scalar>
Scalar limit_at_infinity(const RationalApproximant<Scalar>& r, const PadeOptions& opts = {}) {
  const int M = r.denominator_degree();
  if (r.numerator_degree() != M) {
    throw PreconditionError("limit at infinity is only implemented for diagonal approximants, got [" +
                            std::to_string(r.numerator_degree()) + "/" + std::to_string(M) + "]");
  }
  using std::abs;
  const Scalar den_floor = Scalar(opts.leading_floor) * r.denominator().cwiseAbs().maxCoeff();
  const Scalar num_floor = Scalar(opts.leading_floor) * r.numerator().cwiseAbs().maxCoeff();
  int degree = M;
  while (degree > 0 && !(abs(r.denominator()[degree]) > den_floor) && !(abs(r.numerator()[degree]) > num_floor)) {
    --degree;
  }
  const Scalar leading = r.denominator()[degree];
  if (!(abs(leading) > den_floor)) {
    throw DegenerateLimitError("leading denominator coefficient of [" + std::to_string(M) + "/" + std::to_string(M) +
                               "] is effectively zero");
  }
  return r.numerator()[degree] / leading;
}

}  // namespace dtmpade
