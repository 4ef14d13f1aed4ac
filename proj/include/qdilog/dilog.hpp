#pragma once

// Euler and Rogers dilogarithms, the q-exponential Ψ_q in product form, and
// the classical identities attached to a period.

#include <complex>
#include <span>
#include <vector>

#include "qdilog/exchange.hpp"

namespace qdilog {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kZeta2 = kPi * kPi / 6.0;

// Li2 for real x <= 1. Throws std::domain_error for x > 1.
double li2(double x);

// Principal branch. Throws BranchProximity within 1e-6 of the cut [1, ∞).
std::complex<double> li2(std::complex<double> z);

// L(x) = Li2(x) + ½ log x log(1-x) on [0, 1], with L(0) = 0 and L(1) = π²/6.
double rogers_L(double x);

// L(y/(1+y)) for y > 0, computed as -Li2(-y) - ½ log y log(1+y) so that
// large and small y lose no digits to the cancellation in 1 - y/(1+y).
double rogers_L_ratio(double y);

// Ψ_q(x) = 1 / Π_{k>=0} (1 + q^{2k+1} x) for |q| < 1. The product is cut
// once the neglected tail is below 1e-13 in relative terms.
// Throws std::domain_error for |q| >= 1, PoleHit on a vanishing factor.
std::complex<double> psiq_numeric(std::complex<double> x, std::complex<double> q);

// -Σ_k log(1 + q^{2k+1} x), the logarithm of the same product taken
// factor by factor (no overflow near q -> 1).
std::complex<double> log_psiq_numeric(std::complex<double> x, std::complex<double> q);

struct ClassicalTerm {
  std::size_t t = 0;  // 1-based step
  std::size_t k = 0;  // 1-based mutated index
  int epsilon = 0;
  double y = 0.0;          // y_{k_t}(t)
  double argument = 0.0;   // y^ε / (1 + y^ε)
  double value = 0.0;      // L(argument)
};

struct ClassicalIdentityReport {
  std::vector<ClassicalTerm> terms;
  double sum_signed = 0.0;     // Σ ε_t L(y^ε/(1+y^ε)), expected 0
  double sum_DI = 0.0;         // Σ L(y/(1+y)), expected N₋ π²/6
  double sum_DIprime = 0.0;    // Σ L(1/(1+y)), expected N₊ π²/6
  int n_plus = 0;
  int n_minus = 0;

  double signed_residual() const;
  double di_residual() const;       // |sum_DI - N₋ π²/6|
  double diprime_residual() const;  // |sum_DIprime - N₊ π²/6|
};

// Throws NotAPeriod unless the schedule passes check_period.
ClassicalIdentityReport verify_classical_identity(const ExchangeMatrix& b, const MutationSchedule& sched,
                                                  std::span<const double> y0);

// |2 log q · log Ψ_q(x) + Li2(-x)| for each q.
std::vector<double> psiq_asymptotics(double x, std::span<const double> qs);

}  // namespace qdilog
