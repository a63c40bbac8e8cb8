#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dtmpade/dtm.hpp"

using namespace dtmpade;
using Params = ProblemParams<double>;

namespace {

using Poly = std::vector<double>;

// Plain dense polynomial helpers, independent of the library's series code.
Poly deriv(const Poly& p) {
  Poly d(p.size() > 1 ? p.size() - 1 : 1, 0.0);
  for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = static_cast<double>(k) * p[k];
  return d;
}

Poly mul(const Poly& p, const Poly& q) {
  Poly r(p.size() + q.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  return r;
}

Poly axpy(double a, const Poly& x, const Poly& y) {
  Poly r(std::max(x.size(), y.size()), 0.0);
  for (std::size_t k = 0; k < x.size(); ++k) r[k] += a * x[k];
  for (std::size_t k = 0; k < y.size(); ++k) r[k] += y[k];
  return r;
}

Poly to_poly(const TruncatedSeries<double>& s) { return Poly(s.coeffs().data(), s.coeffs().data() + s.coeffs().size()); }

// f f'' with the product weighted by 1/r! on the f-index, as in the fidelity recurrence.
Poly fidelity_f_fpp(const Poly& f) {
  Poly g(f.size(), 0.0);
  double fact = 1.0;
  for (std::size_t r = 0; r < f.size(); ++r) {
    if (r > 0) fact *= static_cast<double>(r);
    g[r] = f[r] / fact;
  }
  return mul(g, deriv(deriv(f)));
}

// Coefficients of f''' + 3 f f'' - 2 f'^2 + theta  and  theta'' + 3 Pr f theta'.
std::pair<Poly, Poly> ode_residuals(const Poly& f, const Poly& theta, double pr, bool fidelity) {
  const Poly f1 = deriv(f), f2 = deriv(f1), f3 = deriv(f2);
  const Poly ffpp = fidelity ? fidelity_f_fpp(f) : mul(f, f2);
  Poly mom = axpy(3.0, ffpp, f3);
  mom = axpy(-2.0, mul(f1, f1), mom);
  mom = axpy(1.0, theta, mom);
  Poly energy = axpy(3.0 * pr, mul(f, deriv(theta)), deriv(deriv(theta)));
  return {mom, energy};
}

}  // namespace

TEST_CASE("init_transforms follows the wall conditions") {
  Params p;
  p.a = 1.0;
  auto init = init_transforms(p);
  CHECK(init.f == std::array<double, 3>{0.0, 0.0, 0.5});
  p.b = -0.5671;
  init = init_transforms(p);
  REQUIRE(init.theta);
  CHECK((*init.theta)[0] == 1.0);
  CHECK((*init.theta)[1] == -0.5671);
  p.a = 0.0;
  CHECK(init_transforms(p).f == std::array<double, 3>{0.0, 0.0, 0.0});
  p.problem = Problem::Blasius;
  CHECK_FALSE(init_transforms(p).theta);
}

TEST_CASE("params validation") {
  Params p;
  p.order = 2;
  CHECK_THROWS_AS(p.validate(), PreconditionError);
  p.order = 3;
  p.pr = 0.0;
  CHECK_THROWS_AS(p.validate(), PreconditionError);
  p.pr = std::nan("");
  CHECK_THROWS_AS(generate(p), PreconditionError);
}

TEST_CASE("advance_free_convection low orders") {
  const double A = 0.7, B = -0.4;
  for (const auto mode : {RecurrenceMode::Corrected, RecurrenceMode::PaperFidelity}) {
    std::vector<double> F{0, 0, A / 2}, T{1, B};
    auto [f3, t2] = advance_free_convection<double>(F, T, 0, 1.0, mode);
    CHECK(f3 == doctest::Approx(-1.0 / 6.0).epsilon(1e-15));
    CHECK(t2 == 0.0);
    F.push_back(f3);
    T.push_back(t2);
    auto [f4, t3] = advance_free_convection<double>(F, T, 1, 1.0, mode);
    CHECK(f4 == doctest::Approx(-B / 24.0).epsilon(1e-15));
    F.push_back(f4);
    T.push_back(t3);
    auto [f5, t4] = advance_free_convection<double>(F, T, 2, 1.0, mode);
    CHECK(t4 == doctest::Approx(-A * B / 8.0).epsilon(1e-15));
    const double expected_f5 = mode == RecurrenceMode::PaperFidelity ? A * A / 48.0 : A * A / 120.0;
    CHECK(f5 == doctest::Approx(expected_f5).epsilon(1e-15));
    F.push_back(f5);
    T.push_back(t4);
    auto [f6, t5] = advance_free_convection<double>(F, T, 3, 1.0, mode);
    if (mode == RecurrenceMode::PaperFidelity) {
      CHECK(f6 == doctest::Approx(-7.0 * A / 720.0).epsilon(1e-15));
    } else {
      CHECK(std::abs(f6) <= 1e-16);
    }
    (void)t5;
  }
  std::vector<double> short_f{0, 0};
  std::vector<double> t{1, 0};
  CHECK_THROWS_AS(advance_free_convection<double>(short_f, t, 0, 1.0, RecurrenceMode::Corrected), PreconditionError);
}

TEST_CASE("advance_blasius") {
  const double A = 0.9;
  std::vector<double> F{0, 0, A / 2};
  CHECK(advance_blasius<double>(F, 0) == 0.0);
  F.push_back(0.0);
  F.push_back(advance_blasius<double>(F, 1));
  CHECK(F.back() == 0.0);
  CHECK(advance_blasius<double>(F, 2) == doctest::Approx(-A * A / 240.0).epsilon(1e-15));

  Params p;
  p.problem = Problem::Blasius;
  p.a = 0.0;
  p.order = 15;
  CHECK(generate(p).f_series.coeffs().isZero());
}

TEST_CASE("generate reproduces the published order-6 series at A = B = 1") {
  Params p{Problem::FreeConvection, 1.0, 1.0, 1.0, 6, RecurrenceMode::PaperFidelity};
  const auto sol = generate(p);
  const double f[] = {0, 0, 1.0 / 2, -1.0 / 6, -1.0 / 24, 1.0 / 48, -7.0 / 720};
  const double t[] = {1, 1, 0, 0, -1.0 / 8, 1.0 / 40, 1.0 / 240};
  REQUIRE(sol.f_series.order() == 6);
  REQUIRE(sol.theta_series->order() == 6);
  for (int k = 0; k <= 6; ++k) {
    CHECK(std::abs(sol.f_series[k] - f[k]) <= 1e-14);
    CHECK(std::abs((*sol.theta_series)[k] - t[k]) <= 1e-14);
  }
}

TEST_CASE("theta is identically 1 when A = B = 0") {
  for (const auto mode : {RecurrenceMode::Corrected, RecurrenceMode::PaperFidelity}) {
    for (const int order : {3, 6, 11}) {
      const auto sol = generate(Params{Problem::FreeConvection, 1.0, 0.0, 0.0, order, mode});
      CHECK((*sol.theta_series)[0] == 1.0);
      CHECK(sol.theta_series->coeffs().tail(order).isZero());
    }
  }
}

TEST_CASE("non-finite coefficients name the offending index") {
  Params p{Problem::FreeConvection, 1.0, 1e200, 1e200, 12, RecurrenceMode::Corrected};
  try {
    generate(p);
    FAIL("expected overflow");
  } catch (const NonFiniteCoefficientError& e) {
    CHECK(e.index() >= 3);
    CHECK(e.index() <= 12);
  }
}

TEST_CASE("property: generated series satisfy the ODEs through the guaranteed degree") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> upr(0.1, 5.0);
  for (const auto mode : {RecurrenceMode::Corrected, RecurrenceMode::PaperFidelity}) {
    for (int trial = 0; trial < 20; ++trial) {
      const double pr = trial % 2 == 0 ? 1.0 : upr(rng);
      const int order = 12;
      const auto sol = generate(Params{Problem::FreeConvection, pr, u(rng), u(rng), order, mode});
      const auto [mom, energy] =
          ode_residuals(to_poly(sol.f_series), to_poly(*sol.theta_series), pr, mode == RecurrenceMode::PaperFidelity);
      for (int k = 0; k <= order - 3; ++k) CHECK(std::abs(mom[k]) < 1e-12);
      for (int k = 0; k <= order - 2; ++k) CHECK(std::abs(energy[k]) < 1e-12);
    }
  }
}

TEST_CASE("property: Blasius series satisfies f''' + f f''/2 = 0") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Params p;
    p.problem = Problem::Blasius;
    p.a = u(rng);
    p.order = 16;
    const auto f = to_poly(generate(p).f_series);
    const Poly res = axpy(0.5, mul(f, deriv(deriv(f))), deriv(deriv(deriv(f))));
    for (int k = 0; k <= p.order - 3; ++k) CHECK(std::abs(res[k]) < 1e-14);
  }
}

TEST_CASE("property: modes agree where the 1/r! factor cannot reach") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = u(rng), b = u(rng);
    const auto c = generate(Params{Problem::FreeConvection, 1.0, a, b, 12, RecurrenceMode::Corrected});
    const auto p = generate(Params{Problem::FreeConvection, 1.0, a, b, 12, RecurrenceMode::PaperFidelity});
    for (int k = 0; k <= 4; ++k) CHECK(c.f_series[k] == p.f_series[k]);
    // Theta(k+2) reads F(0..k), so Theta agrees through index 6.
    for (int k = 0; k <= 6; ++k) CHECK((*c.theta_series)[k] == (*p.theta_series)[k]);
  }
}

TEST_CASE("property: every theta coefficient past the first carries a factor of B") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = u(rng);
    for (const auto mode : {RecurrenceMode::Corrected, RecurrenceMode::PaperFidelity}) {
      const auto sol = generate(Params{Problem::FreeConvection, 1.0, a, 0.0, 12, mode});
      CHECK(sol.theta_series->coeffs().tail(12).isZero());
    }
  }
  // Along A = 0, Theta(k) / B tends to a finite limit as B -> 0.
  for (const auto mode : {RecurrenceMode::Corrected, RecurrenceMode::PaperFidelity}) {
    const auto small = generate(Params{Problem::FreeConvection, 1.0, 0.0, 1e-6, 12, mode});
    const auto smaller = generate(Params{Problem::FreeConvection, 1.0, 0.0, 1e-7, 12, mode});
    for (int k = 1; k <= 12; ++k) {
      CHECK((*small.theta_series)[k] / 1e-6 == doctest::Approx((*smaller.theta_series)[k] / 1e-7).epsilon(1e-5));
    }
  }
}
