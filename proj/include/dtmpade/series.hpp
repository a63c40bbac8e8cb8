#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <string>

#include <Eigen/Core>

#include "dtmpade/error.hpp"

namespace dtmpade {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Power series c_0 + c_1 x + ... + c_m x^m truncated at order m, expanded about x = 0.
///
/// The k-th coefficient is the k-th differential transform Y(k) = y^(k)(0) / k!.
/// Every coefficient is finite; constructors reject NaN/Inf.
template <typename Scalar = double>
class TruncatedSeries {
 public:
  using Coeffs = VectorX<Scalar>;

  /// Zero series of the given order.
  explicit TruncatedSeries(int order = 0) : coeffs_(Coeffs::Zero(checked_length(order))) {}

  explicit TruncatedSeries(Coeffs coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() == 0) throw PreconditionError("series needs at least one coefficient");
    check_finite();
  }

  TruncatedSeries(std::initializer_list<Scalar> coeffs) : coeffs_(static_cast<Eigen::Index>(coeffs.size())) {
    if (coeffs.size() == 0) throw PreconditionError("series needs at least one coefficient");
    std::copy(coeffs.begin(), coeffs.end(), coeffs_.data());
    check_finite();
  }

  static TruncatedSeries zero(int order) { return TruncatedSeries(order); }

  int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const Coeffs& coeffs() const noexcept { return coeffs_; }
  Scalar operator[](int k) const { return coeffs_[k]; }

  /// First `order + 1` coefficients.
  TruncatedSeries truncated(int order) const {
    if (order < 0 || order > this->order()) throw PreconditionError("truncation order out of range");
    return TruncatedSeries(Coeffs(coeffs_.head(order + 1)));
  }

  /// Same polynomial viewed as a series of higher order (trailing zeros).
  TruncatedSeries padded(int order) const {
    if (order <= this->order()) return *this;
    Coeffs c = Coeffs::Zero(order + 1);
    c.head(coeffs_.size()) = coeffs_;
    return TruncatedSeries(std::move(c));
  }

  friend bool operator==(const TruncatedSeries& s, const TruncatedSeries& t) {
    return s.coeffs_.size() == t.coeffs_.size() && s.coeffs_ == t.coeffs_;
  }

 private:
  static Eigen::Index checked_length(int order) {
    if (order < 0) throw PreconditionError("series order must be nonnegative");
    return order + 1;
  }

  void check_finite() const {
    for (Eigen::Index k = 0; k < coeffs_.size(); ++k) {
      using std::isfinite;
      if (!isfinite(coeffs_[k])) throw NonFiniteCoefficientError("c", static_cast<int>(k));
    }
  }

  Coeffs coeffs_;
};

TruncatedSeries(std::initializer_list<double>) -> TruncatedSeries<double>;

// Mixed orders truncate to the shorter series; no coefficient is invented.

template <typename Scalar>
TruncatedSeries<Scalar> add(const TruncatedSeries<Scalar>& s, const TruncatedSeries<Scalar>& t) {
  const int m = std::min(s.order(), t.order());
  return TruncatedSeries<Scalar>(VectorX<Scalar>(s.coeffs().head(m + 1) + t.coeffs().head(m + 1)));
}

template <typename Scalar>
TruncatedSeries<Scalar> subtract(const TruncatedSeries<Scalar>& s, const TruncatedSeries<Scalar>& t) {
  const int m = std::min(s.order(), t.order());
  return TruncatedSeries<Scalar>(VectorX<Scalar>(s.coeffs().head(m + 1) - t.coeffs().head(m + 1)));
}

template <typename Scalar>
TruncatedSeries<Scalar> scale(Scalar c, const TruncatedSeries<Scalar>& s) {
  using std::isfinite;
  if (!isfinite(c)) throw PreconditionError("scale factor must be finite");
  return TruncatedSeries<Scalar>(VectorX<Scalar>(c * s.coeffs()));
}

/// Coefficient k is sum_{r=0..k} s_r t_{k-r}.
template <typename Scalar>
TruncatedSeries<Scalar> cauchy_product(const TruncatedSeries<Scalar>& s, const TruncatedSeries<Scalar>& t) {
  const int m = std::min(s.order(), t.order());
  VectorX<Scalar> out = VectorX<Scalar>::Zero(m + 1);
  for (int k = 0; k <= m; ++k) {
    Scalar acc(0);
    for (int r = 0; r <= k; ++r) acc += s[r] * t[k - r];
    out[k] = acc;
  }
  return TruncatedSeries<Scalar>(std::move(out));
}

/// n-th derivative: coefficient k is (k+n)!/k! * s_{k+n}.
template <typename Scalar>
TruncatedSeries<Scalar> differentiate(const TruncatedSeries<Scalar>& s, int n = 1) {
  if (n < 1) throw PreconditionError("derivative count must be positive");
  if (s.order() < n) {
    throw PreconditionError("series of order " + std::to_string(s.order()) + " cannot be differentiated " +
                            std::to_string(n) + " times");
  }
  const int m = s.order() - n;
  VectorX<Scalar> out(m + 1);
  for (int k = 0; k <= m; ++k) {
    Scalar falling(1);
    for (int j = k + 1; j <= k + n; ++j) falling *= Scalar(j);
    out[k] = falling * s[k + n];
  }
  return TruncatedSeries<Scalar>(std::move(out));
}

/// Horner evaluation of the partial sum.
template <typename Scalar>
Scalar evaluate(const TruncatedSeries<Scalar>& s, Scalar x) {
  Scalar acc(0);
  for (int k = s.order(); k >= 0; --k) acc = acc * x + s[k];
  return acc;
}

template <typename Scalar>
TruncatedSeries<Scalar> operator+(const TruncatedSeries<Scalar>& s, const TruncatedSeries<Scalar>& t) {
  return add(s, t);
}

template <typename Scalar>
TruncatedSeries<Scalar> operator-(const TruncatedSeries<Scalar>& s, const TruncatedSeries<Scalar>& t) {
  return subtract(s, t);
}

template <typename Scalar>
TruncatedSeries<Scalar> operator*(Scalar c, const TruncatedSeries<Scalar>& s) {
  return scale(c, s);
}

template <typename Scalar>
TruncatedSeries<Scalar> operator*(const TruncatedSeries<Scalar>& s, const TruncatedSeries<Scalar>& t) {
  return cauchy_product(s, t);
}

}  // namespace dtmpade
