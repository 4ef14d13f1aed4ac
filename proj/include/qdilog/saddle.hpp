#pragma once

// Stationary point of the phase of the integral attached to a period, its
// stationarity equations, and the value of the phase there.
//
// Time t runs over 0..L-1 here (step t+1 externally). All arrays are L×n.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qdilog/exchange.hpp"

namespace qdilog {

enum class SaddleMode { B, Lambda };

struct SaddleOptions {
  SaddleMode mode = SaddleMode::B;
  std::complex<double> lambda = 1.0;  // λ-mode only; Im λ² > 0 required
  double max_imag_lambda = 0.1;       // BranchProximity above this |Im λ|
};

using CMatrix = std::vector<std::vector<std::complex<double>>>;

// In b-mode every entry is real (zero imaginary part).
struct SaddleState {
  SaddleMode mode = SaddleMode::B;
  std::complex<double> lambda = 1.0;
  CMatrix u, p, ptilde, w;
  std::vector<std::complex<double>> yvals;  // y_{k_t}(t)
  std::vector<int> signs;
  std::complex<double> action = 0.0;

  std::size_t length() const { return u.size(); }
};

struct SaddleReport {
  double residual_u_eqs = 0.0;        // derivative in u(t), t >= 2
  double residual_p_eqs = 0.0;        // derivative in p(t), t <= L-1
  double residual_w_eqs = 0.0;        // w recursion and e^{2λw} = y
  double residual_constraints = 0.0;  // p̃(1) = w(1), p̃ from p, p(L) from p̃(1), p_k = p̃_k
  std::complex<double> action_value = 0.0;
  std::complex<double> cross_check_value = 0.0;

  double max_residual() const;
};

// Throws NotAPeriod, std::invalid_argument (bad u1 size or Im λ² <= 0),
// BranchProximity (λ-mode).
SaddleState build_solution(const ExchangeMatrix& b, const MutationSchedule& sched, std::span<const double> u1,
                           const SaddleOptions& opt = SaddleOptions());

SaddleReport residuals(const SaddleState& state, const ExchangeMatrix& b, const MutationSchedule& sched);

struct ActionValue {
  std::complex<double> value = 0.0;
  std::complex<double> cross_check = 0.0;  // -½ Σ ε_t L(y^ε/(1+y^ε))
};

ActionValue action(const SaddleState& state, const ExchangeMatrix& b, const MutationSchedule& sched);

// Phase as a function of the free variables p(1..L-1), u(2..L) (in that
// order, flattened time-major), with u(1) and p̃(1) = w(1) held fixed.
std::complex<double> phase_of_free(const ExchangeMatrix& b, const MutationSchedule& sched,
                                   std::span<const int> signs, std::span<const std::complex<double>> u1,
                                   std::span<const std::complex<double>> free, std::complex<double> lambda);

std::vector<std::complex<double>> free_variables(const SaddleState& state);

struct NewtonResult {
  double gradient_norm = 0.0;  // max |∂S|
  double step_norm = 0.0;      // max |Δx|
};

// One Newton step on the real phase (b-mode): complex-step gradient,
// central-difference Hessian, least-squares solve.
NewtonResult newton_refinement(const SaddleState& state, const ExchangeMatrix& b, const MutationSchedule& sched);

// ---------------------------------------------------------------------------
// Induced linear maps on u, p, w, D under one mutation step.

using IntMatrix = std::vector<std::vector<long>>;

struct TransformSpec {
  IntMatrix u;  // u'' = U u'
  IntMatrix p;  // p'' = P p'
  IntMatrix w;  // w'' = W w'
  IntMatrix d;  // D'' = W D'

  // Uᵀ W == identity, i.e. Σ u''w'' = Σ u'w' for all u', w'.
  bool dual() const;
};

TransformSpec coordinate_maps(const ExchangeMatrix& b_prime, std::size_t k, int epsilon);

std::vector<double> apply_map(const IntMatrix& m, std::span<const double> v);

}  // namespace qdilog
