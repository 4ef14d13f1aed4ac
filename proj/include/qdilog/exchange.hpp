#pragma once

// Exchange matrices, classical and tropical y-seed mutation, periodicity.
//
// All indices in this header are 0-based. External formats (JSON seeds, CLI)
// are 1-based and convert on the way in.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qdilog {

inline int positive_part(int a) { return a > 0 ? a : 0; }

class ExchangeMatrix {
 public:
  ExchangeMatrix() = default;
  // Throws std::invalid_argument unless rows form a square skew-symmetric matrix.
  explicit ExchangeMatrix(const std::vector<std::vector<int>>& rows);

  static ExchangeMatrix zero(std::size_t n);

  std::size_t rank() const { return n_; }
  int operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  std::vector<std::vector<int>> rows() const;

  // b'_{ij} = b_{perm(i) perm(j)}
  ExchangeMatrix relabeled(std::span<const std::size_t> perm) const;

  bool operator==(const ExchangeMatrix&) const = default;

 private:
  friend ExchangeMatrix mutate_matrix(const ExchangeMatrix&, std::size_t);
  std::size_t n_ = 0;
  std::vector<int> entries_;
};

ExchangeMatrix mutate_matrix(const ExchangeMatrix& b, std::size_t k);

// Matrices B(1), ..., B(L+1) along a mutation sequence.
std::vector<ExchangeMatrix> matrix_trajectory(const ExchangeMatrix& b,
                                              std::span<const std::size_t> sequence);

ExchangeMatrix principal_extension(const ExchangeMatrix& b);

struct MutationSchedule {
  std::vector<std::size_t> sequence;
  std::vector<std::size_t> nu;  // image list: nu[i] = ν(i)

  std::size_t length() const { return sequence.size(); }
  // Throws std::invalid_argument on out-of-range indices or a non-bijective nu.
  void validate(std::size_t n) const;
  // Same sequence, nu extended by the identity up to rank n.
  MutationSchedule extended(std::size_t n) const;
};

std::vector<std::size_t> identity_permutation(std::size_t n);

// ---------------------------------------------------------------------------
// Classical y-seeds

// The two displayed forms of the y exchange relation. They agree as rational
// functions; both are kept so the agreement can be tested numerically.
enum class ExchangeForm { PlusPart, MinusPart };

struct NumericSeed {
  ExchangeMatrix matrix;
  std::vector<double> y;
};

// Throws std::domain_error on a nonpositive y entry.
NumericSeed mutate_y_numeric(const NumericSeed& seed, std::size_t k,
                             ExchangeForm form = ExchangeForm::PlusPart);

// Exchange relation in ε-form, y''_i = y'_i y'_k^{[ε b'_{ki}]_+} (1 + y'_k^ε)^{-b'_{ki}},
// usable for complex y (λ-deformed saddle) as well as reals. No positivity check.
template <class T>
std::vector<T> exchange_y(const ExchangeMatrix& b, std::span<const T> y, std::size_t k, int epsilon) {
  std::vector<T> out(y.begin(), y.end());
  const T yk = y[k];
  const T yk_eps = epsilon > 0 ? yk : T(T(1) / yk);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i == k) continue;
    const int bki = b(k, i);
    if (bki == 0) continue;
    const int m = positive_part(epsilon * bki);
    T factor = T(1);
    for (int r = 0; r < m; ++r) factor *= yk;
    const T base = T(1) + yk_eps;
    T pw = T(1);
    for (int r = 0; r < std::abs(bki); ++r) pw *= base;
    out[i] = bki > 0 ? T(y[i] * factor / pw) : T(y[i] * factor * pw);
  }
  out[k] = T(T(1) / yk);
  return out;
}

// y(1), ..., y(L+1) of the classical trajectory (ε = +1 form).
std::vector<std::vector<double>> numeric_trajectory(const ExchangeMatrix& b,
                                                    std::span<const std::size_t> sequence,
                                                    std::span<const double> y0);

// ---------------------------------------------------------------------------
// Tropical y-seeds (c-vectors)

struct TropicalState {
  ExchangeMatrix matrix;
  // cvectors[i] is the exponent vector of [y_i] in the initial y.
  std::vector<std::vector<int>> cvectors;

  static TropicalState initial(const ExchangeMatrix& b);
  bool operator==(const TropicalState&) const = default;
};

// +1 for a nonzero vector with all entries >= 0, -1 for all <= 0.
// Throws ZeroCVector or MixedSignCVector otherwise.
int tropical_sign(std::span<const int> c);

TropicalState mutate_tropical(const TropicalState& state, std::size_t k);

struct SignSequence {
  std::vector<int> signs;
  std::vector<std::vector<int>> cvectors;  // α_t, c-vector of y_{k_t}(t)
  int n_plus = 0;
  int n_minus = 0;
};

SignSequence sign_sequence(const ExchangeMatrix& b, std::span<const std::size_t> sequence);

struct PeriodReport {
  bool matrix_periodic = false;
  bool tropical_periodic = false;
  bool periodic = false;
};

PeriodReport check_period(const ExchangeMatrix& b, const MutationSchedule& schedule);

// If the state after a sequence equals the initial one up to relabeling,
// returns that ν.
std::optional<std::vector<std::size_t>> matching_permutation(const ExchangeMatrix& initial,
                                                             const TropicalState& current);

std::string format_vector(std::span<const int> v);

}  // namespace qdilog
