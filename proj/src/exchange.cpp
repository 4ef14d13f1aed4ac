#include "qdilog/exchange.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qdilog/errors.hpp"

namespace qdilog {

namespace {

void check_index(std::size_t k, std::size_t n) {
  if (k >= n) {
    throw std::out_of_range("mutation index " + std::to_string(k + 1) + " outside 1.." +
                            std::to_string(n));
  }
}

}  // namespace

ExchangeMatrix::ExchangeMatrix(const std::vector<std::vector<int>>& rows) : n_(rows.size()) {
  entries_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw std::invalid_argument("exchange matrix is not square");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if ((*this)(i, j) != -(*this)(j, i)) {
        throw std::invalid_argument("exchange matrix is not skew-symmetric at (" +
                                    std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      }
    }
  }
}

ExchangeMatrix ExchangeMatrix::zero(std::size_t n) {
  return ExchangeMatrix(std::vector<std::vector<int>>(n, std::vector<int>(n, 0)));
}

std::vector<std::vector<int>> ExchangeMatrix::rows() const {
  std::vector<std::vector<int>> out(n_, std::vector<int>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

ExchangeMatrix ExchangeMatrix::relabeled(std::span<const std::size_t> perm) const {
  ExchangeMatrix out = *this;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out.entries_[i * n_ + j] = (*this)(perm[i], perm[j]);
  return out;
}

ExchangeMatrix mutate_matrix(const ExchangeMatrix& b, std::size_t k) {
  const std::size_t n = b.rank();
  check_index(k, n);
  ExchangeMatrix out = b;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      int v;
      if (i == k || j == k) {
        v = -b(i, j);
      } else {
        v = b(i, j) + positive_part(-b(i, k)) * b(k, j) + b(i, k) * positive_part(b(k, j));
      }
      out.entries_[i * n + j] = v;
    }
  }
  return out;
}

std::vector<ExchangeMatrix> matrix_trajectory(const ExchangeMatrix& b,
                                              std::span<const std::size_t> sequence) {
  std::vector<ExchangeMatrix> out;
  out.reserve(sequence.size() + 1);
  out.push_back(b);
  for (std::size_t k : sequence) out.push_back(mutate_matrix(out.back(), k));
  return out;
}

ExchangeMatrix principal_extension(const ExchangeMatrix& b) {
  const std::size_t n = b.rank();
  std::vector<std::vector<int>> rows(2 * n, std::vector<int>(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = b(i, j);
    rows[n + i][i] = 1;   // b̃_{i' i}
    rows[i][n + i] = -1;  // b̃_{i i'}
  }
  return ExchangeMatrix(rows);
}

std::vector<std::size_t> identity_permutation(std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  return p;
}

void MutationSchedule::validate(std::size_t n) const {
  for (std::size_t k : sequence) {
    if (k >= n) throw std::invalid_argument("sequence index " + std::to_string(k + 1) + " out of range");
  }
  if (nu.size() != n) throw std::invalid_argument("nu must have one entry per index");
  std::vector<bool> seen(n, false);
  for (std::size_t v : nu) {
    if (v >= n || seen[v]) throw std::invalid_argument("nu is not a bijection");
    seen[v] = true;
  }
}

MutationSchedule MutationSchedule::extended(std::size_t n) const {
  MutationSchedule out = *this;
  for (std::size_t i = out.nu.size(); i < n; ++i) out.nu.push_back(i);
  return out;
}

NumericSeed mutate_y_numeric(const NumericSeed& seed, std::size_t k, ExchangeForm form) {
  const std::size_t n = seed.matrix.rank();
  check_index(k, n);
  if (seed.y.size() != n) throw std::invalid_argument("y has wrong length");
  for (double v : seed.y) {
    if (!(v > 0.0)) throw std::domain_error("y-variables must be strictly positive");
  }
  const ExchangeMatrix& b = seed.matrix;
  const double yk = seed.y[k];
  NumericSeed out{mutate_matrix(b, k), seed.y};
  for (std::size_t i = 0; i < n; ++i) {
    if (i == k) continue;
    const int bki = b(k, i);
    if (form == ExchangeForm::PlusPart) {
      out.y[i] = seed.y[i] * std::pow(yk, positive_part(bki)) * std::pow(1.0 + yk, -bki);
    } else {
      out.y[i] = seed.y[i] * std::pow(yk, positive_part(-bki)) * std::pow(1.0 + 1.0 / yk, -bki);
    }
  }
  out.y[k] = 1.0 / yk;
  return out;
}

std::vector<std::vector<double>> numeric_trajectory(const ExchangeMatrix& b,
                                                    std::span<const std::size_t> sequence,
                                                    std::span<const double> y0) {
  std::vector<std::vector<double>> out;
  out.reserve(sequence.size() + 1);
  NumericSeed seed{b, std::vector<double>(y0.begin(), y0.end())};
  out.push_back(seed.y);
  for (std::size_t k : sequence) {
    seed = mutate_y_numeric(seed, k);
    out.push_back(seed.y);
  }
  return out;
}

TropicalState TropicalState::initial(const ExchangeMatrix& b) {
  const std::size_t n = b.rank();
  TropicalState s{b, std::vector<std::vector<int>>(n, std::vector<int>(n, 0))};
  for (std::size_t i = 0; i < n; ++i) s.cvectors[i][i] = 1;
  return s;
}

int tropical_sign(std::span<const int> c) {
  bool pos = false;
  bool neg = false;
  for (int v : c) {
    pos |= v > 0;
    neg |= v < 0;
  }
  if (pos && neg) throw MixedSignCVector("c-vector " + format_vector(c) + " is not sign-coherent");
  if (!pos && !neg) throw ZeroCVector("zero c-vector");
  return pos ? 1 : -1;
}

TropicalState mutate_tropical(const TropicalState& state, std::size_t k) {
  const std::size_t n = state.matrix.rank();
  check_index(k, n);
  const int eps = tropical_sign(state.cvectors[k]);
  TropicalState out{mutate_matrix(state.matrix, k), state.cvectors};
  const auto& ck = state.cvectors[k];
  for (std::size_t i = 0; i < n; ++i) {
    if (i == k) continue;
    const int m = positive_part(eps * state.matrix(k, i));
    if (m == 0) continue;
    for (std::size_t j = 0; j < n; ++j) out.cvectors[i][j] += m * ck[j];
  }
  for (int& v : out.cvectors[k]) v = -v;
  return out;
}

SignSequence sign_sequence(const ExchangeMatrix& b, std::span<const std::size_t> sequence) {
  SignSequence out;
  TropicalState state = TropicalState::initial(b);
  for (std::size_t k : sequence) {
    check_index(k, b.rank());
    const int eps = tropical_sign(state.cvectors[k]);
    out.signs.push_back(eps);
    out.cvectors.push_back(state.cvectors[k]);
    (eps > 0 ? out.n_plus : out.n_minus) += 1;
    state = mutate_tropical(state, k);
  }
  return out;
}

PeriodReport check_period(const ExchangeMatrix& b, const MutationSchedule& schedule) {
  const std::size_t n = b.rank();
  schedule.validate(n);
  TropicalState state = TropicalState::initial(b);
  for (std::size_t k : schedule.sequence) state = mutate_tropical(state, k);

  PeriodReport report;
  report.matrix_periodic = state.matrix.relabeled(schedule.nu) == b;
  report.tropical_periodic = true;
  for (std::size_t i = 0; i < n && report.tropical_periodic; ++i) {
    const auto& c = state.cvectors[schedule.nu[i]];
    for (std::size_t j = 0; j < n; ++j) {
      if (c[j] != (i == j ? 1 : 0)) {
        report.tropical_periodic = false;
        break;
      }
    }
  }
  report.periodic = report.matrix_periodic && report.tropical_periodic;
  return report;
}

std::optional<std::vector<std::size_t>> matching_permutation(const ExchangeMatrix& initial,
                                                             const TropicalState& current) {
  const std::size_t n = initial.rank();
  std::vector<std::size_t> nu(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& c = current.cvectors[j];
    std::size_t unit = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (c[i] == 1 && unit == n) {
        unit = i;
      } else if (c[i] != 0) {
        return std::nullopt;
      }
    }
    if (unit == n || nu[unit] != n) return std::nullopt;
    nu[unit] = j;
  }
  if (current.matrix.relabeled(nu) != initial) return std::nullopt;
  return nu;
}

std::string format_vector(std::span<const int> v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

}  // namespace qdilog
