#include <doctest.h>

#include <random>

#include "qdilog/errors.hpp"
#include "qdilog/exchange.hpp"
#include "qdilog/period_search.hpp"

using namespace qdilog;

namespace {

const ExchangeMatrix kA2({{0, -1}, {1, 0}});
const MutationSchedule kA2Period{{0, 1, 0, 1, 0}, {1, 0}};

ExchangeMatrix random_skew(std::mt19937_64& rng, std::size_t n, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  std::vector<std::vector<int>> rows(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      rows[i][j] = d(rng);
      rows[j][i] = -rows[i][j];
    }
  }
  return ExchangeMatrix(rows);
}

// The rational functions of the A2 trajectory written out by hand.
std::vector<std::vector<double>> a2_closed_form(double y1, double y2) {
  const double s = 1 + y2 + y1 * y2;
  return {{y1, y2},
          {1 / y1, y2 * (1 + y1)},
          {s / y1, 1 / (y2 * (1 + y1))},
          {y1 / s, (1 + y2) / (y1 * y2)},
          {1 / y2, y1 * y2 / (1 + y2)},
          {y2, y1}};
}

}  // namespace

TEST_CASE("exchange matrix validation") {
  CHECK_THROWS_AS(ExchangeMatrix({{0, 1}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(ExchangeMatrix({{0, 1, 0}, {-1, 0}}), std::invalid_argument);
  CHECK(ExchangeMatrix::zero(3).rank() == 3);
}

TEST_CASE("A2 matrix alternates sign under the period") {
  const auto mats = matrix_trajectory(kA2, kA2Period.sequence);
  REQUIRE(mats.size() == 6);
  for (std::size_t t = 0; t < mats.size(); ++t) {
    const int s = t % 2 == 0 ? 1 : -1;
    CHECK(mats[t](0, 1) == -s);
    CHECK(mats[t](1, 0) == s);
  }
}

TEST_CASE("mutation is an involution on matrices and y-seeds") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ud(0.1, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const ExchangeMatrix b = random_skew(rng, n, 3);
    NumericSeed seed{b, std::vector<double>(n)};
    for (auto& v : seed.y) v = ud(rng);
    const std::size_t k = static_cast<std::size_t>(trial) % n;
    CHECK(mutate_matrix(mutate_matrix(b, k), k) == b);
    const NumericSeed back = mutate_y_numeric(mutate_y_numeric(seed, k), k);
    for (std::size_t i = 0; i < n; ++i) CHECK(back.y[i] == doctest::Approx(seed.y[i]).epsilon(1e-13));
  }
}

TEST_CASE("both displayed exchange forms agree") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> ud(0.05, 20.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 3;
    NumericSeed seed{random_skew(rng, n, 2), std::vector<double>(n)};
    for (auto& v : seed.y) v = ud(rng);
    const std::size_t k = static_cast<std::size_t>(trial) % n;
    const auto a = mutate_y_numeric(seed, k, ExchangeForm::PlusPart);
    const auto b = mutate_y_numeric(seed, k, ExchangeForm::MinusPart);
    const auto c = exchange_y<double>(seed.matrix, seed.y, k, -1);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(a.y[i] == doctest::Approx(b.y[i]).epsilon(1e-13));
      CHECK(a.y[i] == doctest::Approx(c[i]).epsilon(1e-13));
    }
  }
  CHECK_THROWS_AS(mutate_y_numeric({kA2, {1.0, -1.0}}, 0), std::domain_error);
}

TEST_CASE("A2 trajectory matches the closed forms") {
  for (auto [y1, y2] : {std::pair{1.0, 1.0}, {0.3, 7.0}, {12.0, 0.01}}) {
    const std::vector<double> y0{y1, y2};
    const auto traj = numeric_trajectory(kA2, kA2Period.sequence, y0);
    const auto want = a2_closed_form(y1, y2);
    for (std::size_t t = 0; t < want.size(); ++t) {
      for (std::size_t i = 0; i < 2; ++i) CHECK(traj[t][i] == doctest::Approx(want[t][i]).epsilon(1e-13));
    }
  }
  const auto traj = numeric_trajectory(kA2, kA2Period.sequence, std::vector<double>{1.0, 1.0});
  const std::vector<double> active{1, 2, 3, 2, 1};
  for (std::size_t t = 0; t < 5; ++t) CHECK(traj[t][kA2Period.sequence[t]] == doctest::Approx(active[t]));
}

TEST_CASE("A2 tropical data") {
  const SignSequence s = sign_sequence(kA2, kA2Period.sequence);
  CHECK(s.signs == std::vector<int>{1, 1, -1, -1, -1});
  CHECK(s.n_plus == 2);
  CHECK(s.n_minus == 3);
  const std::vector<std::vector<int>> alpha{{1, 0}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}};
  CHECK(s.cvectors == alpha);
}

TEST_CASE("c-vectors agree with the mutated principal extension") {
  // Oracle: the frozen block of the principal extension carries the c-vectors.
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const ExchangeMatrix b = random_skew(rng, n, 1);
    ExchangeMatrix ext = principal_extension(b);
    TropicalState st = TropicalState::initial(b);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int step = 0; step < 10; ++step) {
      const std::size_t k = pick(rng);
      st = mutate_tropical(st, k);
      ext = mutate_matrix(ext, k);
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) CHECK(st.cvectors[j][i] == ext(n + i, j));
        CHECK_NOTHROW(tropical_sign(st.cvectors[j]));  // sign-coherence
      }
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) CHECK(st.matrix(i, j) == ext(i, j));
      }
    }
  }
}

TEST_CASE("tropical_sign rejects zero and mixed vectors") {
  CHECK(tropical_sign(std::vector<int>{0, 2}) == 1);
  CHECK(tropical_sign(std::vector<int>{-1, 0}) == -1);
  CHECK_THROWS_AS(tropical_sign(std::vector<int>{0, 0}), ZeroCVector);
  CHECK_THROWS_AS(tropical_sign(std::vector<int>{1, -1}), MixedSignCVector);
}

TEST_CASE("periodicity checks") {
  CHECK(check_period(kA2, kA2Period).periodic);
  CHECK_FALSE(check_period(kA2, {{0, 1, 0}, {0, 1}}).periodic);
  CHECK_FALSE(check_period(kA2, {{0, 1, 0, 1, 0}, {0, 1}}).periodic);
  const ExchangeMatrix a1(std::vector<std::vector<int>>{{0}});
  CHECK(check_period(a1, {{0, 0}, {0}}).periodic);
  CHECK_THROWS_AS(MutationSchedule({{0, 2}, {1, 0}}).validate(2), std::invalid_argument);
  CHECK_THROWS_AS(MutationSchedule({{0}, {0, 0}}).validate(2), std::invalid_argument);

  const auto traj = matrix_trajectory(kA2, kA2Period.sequence);
  TropicalState st = TropicalState::initial(kA2);
  for (auto k : kA2Period.sequence) st = mutate_tropical(st, k);
  const auto nu = matching_permutation(kA2, st);
  REQUIRE(nu.has_value());
  CHECK(*nu == std::vector<std::size_t>{1, 0});
}

TEST_CASE("extension by principal coefficients keeps the period") {
  const ExchangeMatrix ext = principal_extension(kA2);
  CHECK(check_period(ext, kA2Period.extended(4)).periodic);
  const auto s = sign_sequence(ext, kA2Period.sequence);
  CHECK(s.signs == sign_sequence(kA2, kA2Period.sequence).signs);
}

TEST_CASE("period search") {
  const auto a2 = find_periods(kA2, 5);
  bool found = false;
  for (const auto& p : a2) {
    CHECK(check_period(kA2, p).periodic);
    if (p.sequence == kA2Period.sequence && p.nu == kA2Period.nu) found = true;
  }
  CHECK(found);
  for (const auto& p : find_periods(kA2, 3)) CHECK(p.length() != 3);
  // Exhaustive oracle at depth 3: no sequence of length 3 is a period.
  for (std::size_t code = 0; code < 8; ++code) {
    const MutationSchedule s{{code & 1, (code >> 1) & 1, (code >> 2) & 1}, {}};
    TropicalState st = TropicalState::initial(kA2);
    for (auto k : s.sequence) st = mutate_tropical(st, k);
    CHECK_FALSE(matching_permutation(kA2, st).has_value());
  }
  const auto a1 = find_periods(ExchangeMatrix(std::vector<std::vector<int>>{{0}}), 2);
  REQUIRE(a1.size() == 1);
  CHECK(a1[0].sequence == std::vector<std::size_t>{0, 0});
  CHECK_THROWS_AS(find_periods(ExchangeMatrix::zero(5), 2), std::invalid_argument);
  CHECK_THROWS_AS(find_periods(kA2, 13), std::invalid_argument);
}
