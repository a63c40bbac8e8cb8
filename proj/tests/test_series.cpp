#include <doctest.h>

#include <cmath>
#include <random>

#include "dtmpade/series.hpp"

using dtmpade::TruncatedSeries;
using Series = TruncatedSeries<double>;

namespace {

Series random_series(std::mt19937& rng, int order) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  dtmpade::VectorX<double> c(order + 1);
  for (int k = 0; k <= order; ++k) c[k] = u(rng);
  return Series(c);
}

void check_coeffs(const Series& s, std::initializer_list<double> expected, double tol = 0.0) {
  REQUIRE(s.order() + 1 == static_cast<int>(expected.size()));
  int k = 0;
  for (const double e : expected) CHECK(std::abs(s[k++] - e) <= tol);
}

}  // namespace

TEST_CASE("construction rejects non-finite coefficients and empty input") {
  CHECK_THROWS_AS(Series({1.0, std::nan("")}), dtmpade::NonFiniteCoefficientError);
  CHECK_THROWS_AS(Series({std::numeric_limits<double>::infinity()}), dtmpade::NonFiniteCoefficientError);
  CHECK_THROWS_AS(Series(-1), dtmpade::PreconditionError);
  CHECK(Series::zero(4).order() == 4);
  CHECK(Series::zero(4).coeffs().isZero());
}

TEST_CASE("add") {
  check_coeffs(add(Series{1, 2}, Series{3, 4}), {4, 6});
  check_coeffs(add(Series{1, 1, 1}, Series{0, -1, 0}), {1, 0, 1});
  // zero series of lower order truncates
  check_coeffs(add(Series{1, 2, 3}, Series::zero(1)), {1, 2});
}

TEST_CASE("scale") {
  check_coeffs(scale(2.0, Series{1, 3}), {2, 6});
  CHECK(scale(0.0, Series{1, -2, 5}) == Series::zero(2));
  CHECK(scale(1.0, Series{1, -2, 5}) == Series({1, -2, 5}));
  CHECK_THROWS_AS(scale(std::nan(""), Series{1}), dtmpade::PreconditionError);
}

TEST_CASE("cauchy_product") {
  const auto sq = cauchy_product(Series{1, 1}, Series{1, 1});
  check_coeffs(sq, {1, 2});
  check_coeffs(cauchy_product(Series{1, 1, 1, 1}, Series{1, -1, 0, 0}), {1, 0, 0, 0});
  // truncation to the shorter operand
  CHECK(cauchy_product(Series{1, 2, 3, 4}, Series{1, 1}).order() == 1);
}

TEST_CASE("differentiate") {
  check_coeffs(differentiate(Series{1, 1, 1}, 1), {1, 2});
  check_coeffs(differentiate(Series{0, 0, 0.5}, 2), {1});
  CHECK_THROWS_AS(differentiate(Series{1, 2}, 2), dtmpade::PreconditionError);
  CHECK_THROWS_AS(differentiate(Series{1, 2}, 0), dtmpade::PreconditionError);

  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = random_series(rng, 9);
    const auto twice = differentiate(differentiate(s, 1), 1);
    const auto direct = differentiate(s, 2);
    REQUIRE(twice.order() == direct.order());
    CHECK((twice.coeffs() - direct.coeffs()).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("evaluate") {
  CHECK(evaluate(Series{1, 2, 3}, 0.0) == 1.0);
  CHECK(evaluate(Series{0, 1}, 5.0) == 5.0);
  // 1 + 1 + 1/2 + 1/6 = 8/3
  CHECK(evaluate(Series{1, 1, 0.5, 1.0 / 6.0}, 1.0) == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("property: length contract, commutativity, distributivity") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> ord(0, 12);
  for (int trial = 0; trial < 200; ++trial) {
    const int m1 = ord(rng), m2 = ord(rng), m3 = ord(rng);
    const auto s = random_series(rng, m1), t = random_series(rng, m2), u = random_series(rng, m3);
    CHECK(add(s, t).order() == std::min(m1, m2));
    CHECK(cauchy_product(s, t).order() == std::min(m1, m2));
    CHECK(scale(0.3, s).order() == m1);

    const auto st = cauchy_product(s, t), ts = cauchy_product(t, s);
    CHECK((st.coeffs() - ts.coeffs()).cwiseAbs().maxCoeff() <= 1e-14);

    const auto lhs = cauchy_product(s, add(t, u));
    const auto rhs = add(cauchy_product(s, t), cauchy_product(s, u));
    REQUIRE(lhs.order() == rhs.order());
    CHECK((lhs.coeffs() - rhs.coeffs()).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("property: derivative agrees with central differences") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> where(-0.9, 0.9);
  const double h = 1e-4;
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = random_series(rng, 8);
    const double x = where(rng);
    const double fd = (evaluate(s, x + h) - evaluate(s, x - h)) / (2 * h);
    // third derivative of a degree-8 series with |c| <= 1 on |x| < 1 is bounded by ~ 8*7*6*8
    CHECK(std::abs(fd - evaluate(differentiate(s, 1), x)) <= 3000.0 * h * h);
  }
}
