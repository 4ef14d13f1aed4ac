#pragma once

// Quantum y-seed mutation in the truncated torus and the Ψ_q identities
// attached to a period: tropical form, universal form, shuffle formula, and
// the dual pair behind the Φ_b identity.

#include <memory>
#include <string>
#include <vector>

#include "qdilog/exchange.hpp"
#include "qdilog/torus.hpp"

namespace qdilog {

template <class Field>
struct QuantumSeedSeries {
  ExchangeMatrix matrix;               // current matrix B(t)
  std::vector<TorusElement<Field>> Y;  // Y_i(t) in the initial torus

  static QuantumSeedSeries initial(const std::shared_ptr<const TorusContext<Field>>& ctx);
};

// Exchange relation in its ε-decomposed form (ε = ±1). Both signs give the
// same seed; the tropical sign keeps every base on the c-vector.
template <class Field>
QuantumSeedSeries<Field> quantum_mutate(const QuantumSeedSeries<Field>& s, std::size_t k, int epsilon);

// Seeds at t = 1..L+1, mutating with the tropical sign at each step.
template <class Field>
std::vector<QuantumSeedSeries<Field>> quantum_trajectory(const std::shared_ptr<const TorusContext<Field>>& ctx,
                                                         std::span<const std::size_t> sequence);

// Same, but every step uses the fixed sign `epsilon`.
template <class Field>
std::vector<QuantumSeedSeries<Field>> quantum_trajectory_fixed_sign(
    const std::shared_ptr<const TorusContext<Field>>& ctx, std::span<const std::size_t> sequence, int epsilon);

struct IdentityReport {
  std::string identity;
  int order = 0;
  std::string coefficients;  // description of the coefficient field
  bool probabilistic = false;
  std::vector<std::string> factors;
  std::vector<std::string> residual_terms;
  bool pass() const { return residual_terms.empty(); }
};

// Π_t Ψ(Y^{ε_t α_t})^{ε_t}, t = 1..L, compared with 1. Throws NotAPeriod.
template <class Field>
IdentityReport verify_tropical_identity(const ExchangeMatrix& b, const MutationSchedule& sched, int order,
                                        const Field& field = Field());

// Ψ(Y_{k_L}(L)^{ε_L})^{ε_L} ⋯ Ψ(Y_{k_1}(1)^{ε_1})^{ε_1}, compared with 1.
// Throws NotAPeriod. If `arguments` is given, receives the Ψ arguments.
template <class Field>
IdentityReport verify_universal_identity(const ExchangeMatrix& b, const MutationSchedule& sched, int order,
                                         const Field& field = Field(),
                                         std::vector<TorusElement<Field>>* arguments = nullptr);

// Π_{s<=t} Ψ(Y^{ε_s α_s})^{ε_s} against Ψ(Y_{k_t}(t)^{ε_t})^{ε_t} ⋯ Ψ(Y_{k_1}(1)^{ε_1})^{ε_1}.
// Needs no periodicity; `t` counts from 1.
template <class Field>
IdentityReport verify_shuffle(const ExchangeMatrix& b, std::span<const std::size_t> sequence, std::size_t t,
                              int order, const Field& field = Field());

// The q-identity (same as the tropical form) and its order-reversed twin
// Ψ_{q̄}(Z^{ε_L α_L})^{ε_L} ⋯ Ψ_{q̄}(Z^{ε_1 α_1})^{ε_1}, q̄ = 1/q^∨, where the
// torus variable plays q^∨.
template <class Field>
std::pair<IdentityReport, IdentityReport> verify_dual_pair(const ExchangeMatrix& b, const MutationSchedule& sched,
                                                           int order, const Field& field = Field());

}  // namespace qdilog
