#include <doctest.h>

#include <cmath>

#include "qdilog/dilog.hpp"
#include "qdilog/errors.hpp"
#include "qdilog/faddeev.hpp"

using namespace qdilog;
using cplx = std::complex<double>;

namespace {

const std::vector<double> kZs{-0.4, -0.2, 0.0, 0.2, 0.4};
const std::vector<cplx> kBs{0.7, 1.0, 1.3, std::polar(1.0, kPi / 7), std::polar(1.0, kPi / 5)};

}  // namespace

TEST_CASE("Phi_b grid properties") {
  const auto grid = check_phib_grid(kZs, kBs);
  for (std::size_t bi = 0; bi < kBs.size(); ++bi) {
    for (std::size_t zi = 0; zi < kZs.size(); ++zi) {
      const auto& c = grid[bi * kZs.size() + zi];
      CAPTURE(kBs[bi]);
      CAPTURE(kZs[zi]);
      CHECK(c.modulus_error < 1e-8);  // real b and |b| = 1 both
      CHECK(c.recurrence_b < 1e-7);
      CHECK(c.recurrence_inv_b < 1e-7);
      CHECK(c.duality < 1e-7);
      if ((kBs[bi] * kBs[bi]).imag() > 0) {
        CHECK(c.psi_relation >= 0.0);
        CHECK(c.psi_relation < 1e-6);
      } else {
        CHECK(c.psi_relation == -1.0);
      }
    }
  }
}

TEST_CASE("OpenMP grid equals the serial reference") {
  const auto par = check_phib_grid(kZs, kBs, true);
  const auto ser = check_phib_grid(kZs, kBs, false);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].modulus_error == ser[i].modulus_error);
    CHECK(par[i].recurrence_b == ser[i].recurrence_b);
    CHECK(par[i].duality == ser[i].duality);
  }
}

TEST_CASE("value at zero and the inversion relation") {
  // Reciprocal of the usual normalization: Φ_b(0) = e^{-iπ(b²+b⁻²)/24} and
  // Φ_b(z)Φ_b(-z) = Φ_b(0)² e^{-iπz²}.
  for (cplx b : kBs) {
    const PhibParams p(b);
    const cplx v0 = phib(0.0, p);
    CHECK(std::abs(v0 - std::exp(cplx(0, -kPi / 24) * (b * b + 1.0 / (b * b)))) < 1e-10);
    for (double z : {0.13, 0.37, 0.9}) {
      const cplx lhs = phib(z, p) * phib(-z, p);
      CHECK(std::abs(lhs - v0 * v0 * std::exp(cplx(0, -kPi * z * z))) < 1e-10);
    }
  }
}

TEST_CASE("continuation outside the strip") {
  const PhibParams p(1.3);
  const cplx z(0.2, 0.1);
  const cplx far = z + cplx(0, 1.3);
  const cplx via = phib(far, p);
  CHECK(std::abs(via - (1.0 + std::exp(2 * kPi * 1.3 * z) * p.q()) * phib(z, p)) < 1e-9);
  CHECK_THROWS_AS(log_phib_integral(cplx(0.0, 2.0), p), std::domain_error);
  CHECK_THROWS_AS(PhibParams(cplx(0.0, 1.0)), std::invalid_argument);
}

TEST_CASE("quadrature failure is reported with the achieved error") {
  PhibOptions strict;
  strict.tolerance = 1e-30;
  try {
    log_phib_integral(0.1, PhibParams(1.0), strict);
    FAIL("expected QuadratureFailure");
  } catch (const QuadratureFailure& e) {
    CHECK(e.achieved_error > 0.0);
    CHECK(std::string(e.what()).find("achieved error estimate") != std::string::npos);
  }
}

TEST_CASE("semiclassical limit of Phi_b") {
  const auto e = phib_asymptotics(0.0, std::vector<double>{0.5, 0.4, 0.3, 0.2});
  for (std::size_t i = 1; i < e.size(); ++i) CHECK(e[i] < e[i - 1]);
  const auto e2 = phib_asymptotics(0.8, std::vector<double>{0.5, 0.4, 0.3, 0.2});
  for (std::size_t i = 1; i < e2.size(); ++i) CHECK(e2[i] < e2[i - 1]);
}
