#include <doctest.h>

#include <random>

#include "qdilog/errors.hpp"
#include "qdilog/quantum_identities.hpp"

using namespace qdilog;

namespace {

const ExchangeMatrix kA2({{0, -1}, {1, 0}});
const MutationSchedule kA2Period{{0, 1, 0, 1, 0}, {1, 0}};

ExactElement mono(const std::shared_ptr<const ExactContext>& ctx, std::vector<int> a) {
  return ExactElement::monomial(ctx, a);
}

}  // namespace

TEST_CASE("pentagon in tropical form") {
  for (int order : {2, 5, 8}) {
    const auto r = verify_tropical_identity(kA2, kA2Period, order, RationalFunctionField{});
    CHECK(r.pass());
    CHECK_FALSE(r.probabilistic);
    CHECK(r.factors.size() == 5);
  }
  const auto s = verify_tropical_identity(kA2, kA2Period, 8, SpecializedField(mpq_class(2, 9)));
  CHECK(s.pass());
  CHECK(s.probabilistic);
}

TEST_CASE("a wrong sign sequence leaves a residual") {
  // Ψ(Y1)Ψ(Y2) alone is not the identity; the shuffle's left side at t = 2
  // differs from 1 already in degree 1.
  auto ctx = std::make_shared<const ExactContext>(kA2, 4);
  const auto lhs = psi_series(mono(ctx, {1, 0})) * psi_series(mono(ctx, {0, 1}));
  CHECK_FALSE(residual_terms(lhs).empty());
}

TEST_CASE("universal form and its arguments") {
  constexpr int order = 6;
  std::vector<ExactElement> args;
  const auto r = verify_universal_identity(kA2, kA2Period, order, RationalFunctionField{}, &args);
  CHECK(r.pass());
  REQUIRE(args.size() == 5);
  // The arguments written out in the A2 example, built here by torus arithmetic.
  auto ctx = args[0].context();
  const auto one = ExactElement::one(ctx);
  const auto y1 = mono(ctx, {1, 0});
  const auto y2 = mono(ctx, {0, 1});
  CHECK(args[0] == y1);
  CHECK(args[1] == y2 * (one + y1.times_q_power(1)));
  CHECK(args[2] == invert(one + y2.times_q_power(1) + y1 * y2) * y1);
  CHECK(args[3] == (invert(one + y2.times_q_power(1)) * y2 * y1).times_q_power(1));
  CHECK(args[4] == y2);
}

TEST_CASE("shuffle formula") {
  for (std::size_t t = 1; t <= 5; ++t) CHECK(verify_shuffle(kA2, kA2Period.sequence, t, 6, RationalFunctionField{}).pass());
  const std::vector<std::size_t> prefix{0, 1, 0};
  for (std::size_t t = 1; t <= 3; ++t) CHECK(verify_shuffle(kA2, prefix, t, 6, RationalFunctionField{}).pass());
  const ExchangeMatrix b3({{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}});
  const std::vector<std::size_t> seq3{0, 1, 2, 0};
  for (std::size_t t = 1; t <= seq3.size(); ++t) CHECK(verify_shuffle(b3, seq3, t, 4, RationalFunctionField{}).pass());
}

TEST_CASE("dual pair") {
  const auto [q, qbar] = verify_dual_pair(kA2, kA2Period, 6, RationalFunctionField{});
  CHECK(q.pass());
  CHECK(qbar.pass());
  CHECK(q.identity != qbar.identity);
}

TEST_CASE("non-periods are rejected") {
  const MutationSchedule bad{{0, 1, 0}, {0, 1}};
  CHECK_THROWS_AS(verify_tropical_identity(kA2, bad, 4, RationalFunctionField{}), NotAPeriod);
  CHECK_THROWS_AS(verify_universal_identity(kA2, bad, 4, RationalFunctionField{}), NotAPeriod);
  CHECK_THROWS_AS(verify_dual_pair(kA2, bad, 4, RationalFunctionField{}), NotAPeriod);
}

TEST_CASE("quantum mutation does not depend on the sign") {
  std::mt19937_64 rng(41);
  int compared = 0;
  const std::vector<ExchangeMatrix> mats{kA2, ExchangeMatrix({{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}}),
                                         ExchangeMatrix({{0, 2}, {-2, 0}})};
  for (const auto& b : mats) {
    auto ctx = std::make_shared<const ExactContext>(b, 5);
    std::uniform_int_distribution<std::size_t> pick(0, b.rank() - 1);
    auto s = QuantumSeedSeries<RationalFunctionField>::initial(ctx);
    for (int step = 0; step < 4; ++step) {
      const std::size_t k = pick(rng);
      const auto plus = quantum_mutate(s, k, 1);
      const auto minus = quantum_mutate(s, k, -1);
      REQUIRE(plus.matrix == minus.matrix);
      for (std::size_t i = 0; i < b.rank(); ++i) {
        // Both routes are truncated; compare where neither has lost terms.
        if (plus.Y[i].base() != minus.Y[i].base()) continue;
        CHECK(plus.Y[i] == minus.Y[i]);
        ++compared;
      }
      s = plus;
    }
  }
  MESSAGE("compared ", compared, " variables");
  CHECK(compared >= 20);
}

TEST_CASE("principal extension keeps the pentagon") {
  const ExchangeMatrix ext = principal_extension(kA2);
  const auto r = verify_tropical_identity(ext, kA2Period.extended(4), 6, RationalFunctionField{});
  CHECK(r.pass());
  CHECK(verify_universal_identity(ext, kA2Period.extended(4), 4, RationalFunctionField{}).pass());
}
