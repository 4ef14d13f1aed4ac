#include "qdilog/quantum_identities.hpp"

#include "qdilog/errors.hpp"

namespace qdilog {

template <class Field>
QuantumSeedSeries<Field> QuantumSeedSeries<Field>::initial(const std::shared_ptr<const TorusContext<Field>>& ctx) {
  QuantumSeedSeries s{ctx->matrix(), {}};
  const std::size_t n = ctx->rank();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    s.Y.push_back(TorusElement<Field>::monomial(ctx, e));
  }
  return s;
}

template <class Field>
QuantumSeedSeries<Field> quantum_mutate(const QuantumSeedSeries<Field>& s, std::size_t k, int epsilon) {
  if (epsilon != 1 && epsilon != -1) throw std::invalid_argument("epsilon must be +1 or -1");
  const ExchangeMatrix& b = s.matrix;
  const std::size_t n = b.rank();
  if (k >= n) throw std::out_of_range("mutation index out of range");
  const auto& ctx = s.Y[k].context();
  const Field& f = ctx->field();

  const TorusElement<Field> yk_inv = invert(s.Y[k]);
  const TorusElement<Field>& yk_eps = epsilon > 0 ? s.Y[k] : yk_inv;
  const TorusElement<Field> one = TorusElement<Field>::one(ctx);

  QuantumSeedSeries<Field> out{mutate_matrix(b, k), s.Y};
  out.Y[k] = yk_inv;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == k) continue;
    const int bki = b(k, i);
    if (bki == 0) continue;
    const int sgn = bki > 0 ? 1 : -1;
    const int m = positive_part(epsilon * bki);
    TorusElement<Field> monomial_part = multiply(s.Y[i], power(s.Y[k], m)).times_q_power(b(i, k) * m);
    TorusElement<Field> prod = one;
    for (int r = 1; r <= std::abs(bki); ++r) {
      prod = multiply(prod, one + yk_eps.scaled(f.q_power(-epsilon * sgn * (2 * r - 1))));
    }
    out.Y[i] = multiply(monomial_part, sgn > 0 ? invert(prod) : prod);
  }
  return out;
}

template <class Field>
std::vector<QuantumSeedSeries<Field>> quantum_trajectory(const std::shared_ptr<const TorusContext<Field>>& ctx,
                                                         std::span<const std::size_t> sequence) {
  const SignSequence signs = sign_sequence(ctx->matrix(), sequence);
  std::vector<QuantumSeedSeries<Field>> out{QuantumSeedSeries<Field>::initial(ctx)};
  for (std::size_t t = 0; t < sequence.size(); ++t) {
    out.push_back(quantum_mutate(out.back(), sequence[t], signs.signs[t]));
  }
  return out;
}

template <class Field>
std::vector<QuantumSeedSeries<Field>> quantum_trajectory_fixed_sign(
    const std::shared_ptr<const TorusContext<Field>>& ctx, std::span<const std::size_t> sequence, int epsilon) {
  std::vector<QuantumSeedSeries<Field>> out{QuantumSeedSeries<Field>::initial(ctx)};
  for (std::size_t k : sequence) out.push_back(quantum_mutate(out.back(), k, epsilon));
  return out;
}

namespace {

void require_period(const ExchangeMatrix& b, const MutationSchedule& sched) {
  const PeriodReport rep = check_period(b, sched);
  if (!rep.periodic) {
    throw NotAPeriod(std::string("schedule is not a period (matrix ") + (rep.matrix_periodic ? "ok" : "fails") +
                     ", tropical " + (rep.tropical_periodic ? "ok" : "fails") + ")");
  }
}

std::string sign_label(int eps) { return eps > 0 ? "+1" : "-1"; }

template <class Field>
TorusElement<Field> psi_factor(const TorusElement<Field>& arg, int eps, bool inverted_parameter) {
  TorusElement<Field> psi = psi_series(arg, inverted_parameter);
  return eps > 0 ? psi : invert(psi);
}

template <class Field>
std::shared_ptr<const TorusContext<Field>> make_context(const ExchangeMatrix& b, int order, const Field& field) {
  return std::make_shared<const TorusContext<Field>>(b, order, field);
}

// Π_{t in order} Ψ(Y^{ε_t α_t})^{ε_t} over the tropical data.
template <class Field>
TorusElement<Field> tropical_product(const std::shared_ptr<const TorusContext<Field>>& ctx, const SignSequence& signs,
                                     std::size_t count, bool reversed, bool inverted_parameter,
                                     std::vector<std::string>* factors, const std::string& var) {
  TorusElement<Field> acc = TorusElement<Field>::one(ctx);
  for (std::size_t s = 0; s < count; ++s) {
    const std::size_t t = reversed ? count - 1 - s : s;
    const int eps = signs.signs[t];
    std::vector<int> alpha = signs.cvectors[t];
    for (int& v : alpha) v *= eps;
    acc = multiply(acc, psi_factor(TorusElement<Field>::monomial(ctx, alpha), eps, inverted_parameter));
    if (factors) {
      factors->push_back(std::string(inverted_parameter ? "Psi_qbar(" : "Psi_q(") + var + "^" +
                         format_vector(alpha) + ")^" + sign_label(eps));
    }
  }
  return acc;
}

template <class Field>
TorusElement<Field> universal_product(const std::vector<QuantumSeedSeries<Field>>& traj,
                                      std::span<const std::size_t> sequence, const SignSequence& signs,
                                      std::size_t count, std::vector<TorusElement<Field>>* arguments,
                                      std::vector<std::string>* factors) {
  const auto& ctx = traj.front().Y.front().context();
  std::vector<TorusElement<Field>> args;
  for (std::size_t t = 0; t < count; ++t) {
    const TorusElement<Field>& y = traj[t].Y[sequence[t]];
    args.push_back(signs.signs[t] > 0 ? y : invert(y));
  }
  TorusElement<Field> acc = TorusElement<Field>::one(ctx);
  for (std::size_t s = 0; s < count; ++s) {
    const std::size_t t = count - 1 - s;
    acc = multiply(acc, psi_factor(args[t], signs.signs[t], false));
    if (factors) {
      factors->push_back("Psi_q(Y_" + std::to_string(sequence[t] + 1) + "(" + std::to_string(t + 1) + ")^" +
                         sign_label(signs.signs[t]) + ")^" + sign_label(signs.signs[t]));
    }
  }
  if (arguments) *arguments = std::move(args);
  return acc;
}

template <class Field>
IdentityReport make_report(const std::string& identity, int order, const Field& field) {
  IdentityReport r;
  r.identity = identity;
  r.order = order;
  r.coefficients = field.describe();
  r.probabilistic = Field::probabilistic;
  return r;
}

}  // namespace

template <class Field>
IdentityReport verify_tropical_identity(const ExchangeMatrix& b, const MutationSchedule& sched, int order,
                                        const Field& field) {
  require_period(b, sched);
  const auto ctx = make_context(b, order, field);
  const SignSequence signs = sign_sequence(b, sched.sequence);
  IdentityReport rep = make_report("tropical", order, field);
  const auto product = tropical_product(ctx, signs, sched.length(), false, false, &rep.factors, "Y");
  rep.residual_terms = residual_terms(product);
  return rep;
}

template <class Field>
IdentityReport verify_universal_identity(const ExchangeMatrix& b, const MutationSchedule& sched, int order,
                                         const Field& field, std::vector<TorusElement<Field>>* arguments) {
  require_period(b, sched);
  const auto ctx = make_context(b, order, field);
  const SignSequence signs = sign_sequence(b, sched.sequence);
  const auto traj = quantum_trajectory(ctx, sched.sequence);
  IdentityReport rep = make_report("universal", order, field);
  const auto product = universal_product(traj, sched.sequence, signs, sched.length(), arguments, &rep.factors);
  rep.residual_terms = residual_terms(product);
  return rep;
}

template <class Field>
IdentityReport verify_shuffle(const ExchangeMatrix& b, std::span<const std::size_t> sequence, std::size_t t,
                              int order, const Field& field) {
  if (t < 1 || t > sequence.size()) throw std::invalid_argument("shuffle length must lie in 1..L");
  const auto ctx = make_context(b, order, field);
  const auto prefix = sequence.subspan(0, t);
  const SignSequence signs = sign_sequence(b, prefix);
  const auto traj = quantum_trajectory(ctx, prefix);
  IdentityReport rep = make_report("shuffle", order, field);
  const auto lhs = tropical_product(ctx, signs, t, false, false, &rep.factors, "Y");
  rep.factors.push_back("=");
  const auto rhs = universal_product<Field>(traj, prefix, signs, t, nullptr, &rep.factors);
  const TorusElement<Field> diff = lhs - rhs;
  for (const auto& [e, c] : diff.terms()) {
    rep.residual_terms.push_back("Y^" + format_vector(e) + ": " + field.to_string(c));
  }
  return rep;
}

template <class Field>
std::pair<IdentityReport, IdentityReport> verify_dual_pair(const ExchangeMatrix& b, const MutationSchedule& sched,
                                                           int order, const Field& field) {
  require_period(b, sched);
  const auto ctx = make_context(b, order, field);
  const SignSequence signs = sign_sequence(b, sched.sequence);

  IdentityReport forward = make_report("dual-q", order, field);
  forward.residual_terms =
      residual_terms(tropical_product(ctx, signs, sched.length(), false, false, &forward.factors, "Y"));

  // Same torus, its variable read as q^∨; the Ψ parameter is q̄ = 1/q^∨.
  IdentityReport dual = make_report("dual-qbar", order, field);
  dual.residual_terms =
      residual_terms(tropical_product(ctx, signs, sched.length(), true, true, &dual.factors, "Z"));
  return {forward, dual};
}

#define QDILOG_INSTANTIATE_IDENTITIES(F)                                                                        \
  template struct QuantumSeedSeries<F>;                                                                         \
  template QuantumSeedSeries<F> quantum_mutate(const QuantumSeedSeries<F>&, std::size_t, int);                  \
  template std::vector<QuantumSeedSeries<F>> quantum_trajectory(const std::shared_ptr<const TorusContext<F>>&,  \
                                                                std::span<const std::size_t>);                  \
  template std::vector<QuantumSeedSeries<F>> quantum_trajectory_fixed_sign(                                     \
      const std::shared_ptr<const TorusContext<F>>&, std::span<const std::size_t>, int);                        \
  template IdentityReport verify_tropical_identity(const ExchangeMatrix&, const MutationSchedule&, int,         \
                                                   const F&);                                                   \
  template IdentityReport verify_universal_identity(const ExchangeMatrix&, const MutationSchedule&, int,        \
                                                    const F&, std::vector<TorusElement<F>>*);                   \
  template IdentityReport verify_shuffle(const ExchangeMatrix&, std::span<const std::size_t>, std::size_t, int, \
                                         const F&);                                                             \
  template std::pair<IdentityReport, IdentityReport> verify_dual_pair(const ExchangeMatrix&,                    \
                                                                      const MutationSchedule&, int, const F&);

QDILOG_INSTANTIATE_IDENTITIES(RationalFunctionField)
QDILOG_INSTANTIATE_IDENTITIES(SpecializedField)

}  // namespace qdilog
