#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <random>

#include "qdilog/dilog.hpp"
#include "qdilog/errors.hpp"

using namespace qdilog;
using cplx = std::complex<double>;

namespace {

// Plain power series, long double, for |x| <= 0.95.
double li2_power_series(double x) {
  long double sum = 0, p = x;
  for (int k = 1; k < 4000; ++k) {
    sum += p / (static_cast<long double>(k) * k);
    p *= x;
  }
  return static_cast<double>(sum);
}

// -∫_0^1 log(1 - z t) / t dt
cplx li2_integral(cplx z) {
  auto f = [&](double t) -> cplx { return t == 0.0 ? z : -std::log(1.0 - z * t) / t; };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 15, 1e-14);
}

// Σ_n (-q x)^n / (q²; q²)_n, valid for |q x| < 1.
cplx psi_series_sum(cplx x, cplx q) {
  cplx sum = 1.0, term = 1.0, q2n = 1.0;
  for (int n = 1; n < 2000; ++n) {
    q2n *= q * q;
    term *= -q * x / (1.0 - q2n);
    sum += term;
    if (std::abs(term) < 1e-18) break;
  }
  return sum;
}

}  // namespace

TEST_CASE("real Li2 against the power series") {
  for (double x = -0.95; x <= 0.95; x += 0.05) CHECK(li2(x) == doctest::Approx(li2_power_series(x)).epsilon(1e-14));
}

TEST_CASE("real Li2 special values") {
  const double l2 = std::log(2.0);
  const double phi = (1 + std::sqrt(5.0)) / 2;
  CHECK(li2(1.0) == doctest::Approx(kPi * kPi / 6).epsilon(1e-15));
  CHECK(li2(-1.0) == doctest::Approx(-kPi * kPi / 12).epsilon(1e-15));
  CHECK(li2(0.5) == doctest::Approx(kPi * kPi / 12 - l2 * l2 / 2).epsilon(1e-15));
  CHECK(li2((3 - std::sqrt(5.0)) / 2) == doctest::Approx(kPi * kPi / 15 - std::log(phi) * std::log(phi)).epsilon(1e-14));
  CHECK(li2(0.0) == 0.0);
  CHECK_THROWS_AS(li2(1.5), std::domain_error);
}

TEST_CASE("real Li2 inversion region") {
  // Li2(x) + Li2(1/x) = -π²/6 - ½ log²(-x) for x < 0
  for (double x : {-1.5, -3.0, -40.0, -1e4}) {
    const double l = std::log(-x);
    CHECK(li2(x) + li2(1 / x) == doctest::Approx(-kPi * kPi / 6 - l * l / 2).epsilon(1e-13));
  }
}

TEST_CASE("complex Li2 against the integral representation") {
  for (cplx z : {cplx(0.3, 0.4), cplx(-2.0, 0.5), cplx(0.9, -0.2), cplx(-0.5, -3.0), cplx(1.5, 0.7), cplx(5.0, -0.1)}) {
    const cplx want = li2_integral(z);
    CHECK(std::abs(li2(z) - want) < 1e-12 * std::max(1.0, std::abs(want)));
  }
  for (double x : {-7.0, -0.6, 0.2, 0.7}) CHECK(std::abs(li2(cplx(x, 0.0)) - li2(x)) < 1e-14);
  CHECK_THROWS_AS(li2(cplx(2.0, 1e-8)), BranchProximity);
  CHECK_THROWS_AS(li2(cplx(1.0 + 1e-7, 0.0)), BranchProximity);
}

TEST_CASE("Rogers dilogarithm identities") {
  CHECK(rogers_L(0.5) == doctest::Approx(kPi * kPi / 12).epsilon(1e-15));
  CHECK(rogers_L((std::sqrt(5.0) - 1) / 2) == doctest::Approx(kPi * kPi / 10).epsilon(1e-14));
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng);
    const double y = u(rng);
    CHECK(rogers_L(x) + rogers_L(1 - x) == doctest::Approx(kPi * kPi / 6).epsilon(1e-14));
    const double lhs = rogers_L(x) + rogers_L(y);
    const double rhs = rogers_L(x * y) + rogers_L(x * (1 - y) / (1 - x * y)) + rogers_L(y * (1 - x) / (1 - x * y));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
    const double t = std::exp(12 * (u(rng) - 0.5));
    CHECK(rogers_L_ratio(t) == doctest::Approx(rogers_L(t / (1 + t))).epsilon(1e-12));
  }
  CHECK_THROWS_AS(rogers_L(1.2), std::domain_error);
  CHECK_THROWS_AS(rogers_L_ratio(0.0), std::domain_error);
}

TEST_CASE("Psi_q product against its power series") {
  for (cplx q : {cplx(0.6), cplx(0.3, 0.4), std::polar(0.8, 2.0)}) {
    for (cplx x : {cplx(0.5), cplx(-0.4, 0.3), cplx(0.1, 1.0)}) {
      const cplx want = psi_series_sum(x, q);
      CHECK(std::abs(psiq_numeric(x, q) - want) < 1e-12 * std::abs(want));
      CHECK(std::abs(std::exp(log_psiq_numeric(x, q)) - want) < 1e-12 * std::abs(want));
    }
  }
  CHECK_THROWS_AS(psiq_numeric(1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(psiq_numeric(-1.0 / 0.5, 0.5), PoleHit);
}

TEST_CASE("semiclassical limit of Psi_q") {
  const std::vector<double> qs{0.9, 0.95, 0.99, 0.999};
  for (double x : {0.5, 1.0, 2.0}) {
    const auto e = psiq_asymptotics(x, qs);
    for (std::size_t i = 1; i < e.size(); ++i) CHECK(e[i] < e[i - 1]);
    CHECK(e.back() < 1e-6);
  }
}

TEST_CASE("classical A2 identity at random points") {
  const ExchangeMatrix b({{0, -1}, {1, 0}});
  const MutationSchedule s{{0, 1, 0, 1, 0}, {1, 0}};
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> e(-3, 3);
  for (int i = 0; i < 100; ++i) {
    const std::vector<double> y{std::pow(10.0, e(rng)), std::pow(10.0, e(rng))};
    const auto r = verify_classical_identity(b, s, y);
    CHECK(r.signed_residual() < 1e-10);
    CHECK(r.di_residual() < 1e-10);
    CHECK(r.diprime_residual() < 1e-10);
    CHECK(r.n_minus == 3);
    CHECK(r.n_plus == 2);
    // The five-term relation in the variables of the A2 example.
    const double y1 = y[0], y2 = y[1];
    const double sum = rogers_L(y1 / (1 + y1)) + rogers_L(y2 * (1 + y1) / (1 + y2 + y1 * y2)) -
                       rogers_L(y1 / ((1 + y1) * (1 + y2))) - rogers_L(y1 * y2 / (1 + y2 + y1 * y2)) -
                       rogers_L(y2 / (1 + y2));
    CHECK(std::abs(sum) < 1e-10);
  }
  CHECK_THROWS_AS(verify_classical_identity(b, {{0, 1}, {0, 1}}, std::vector<double>{1.0, 1.0}), NotAPeriod);
}
