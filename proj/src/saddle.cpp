#include "qdilog/saddle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qdilog/dilog.hpp"
#include "qdilog/errors.hpp"

namespace qdilog {

using cplx = std::complex<double>;

namespace {

cplx checked_log(cplx z) {
  if (z.real() <= 0.0 && std::abs(z.imag()) < 1e-6) throw BranchProximity("log argument within 1e-6 of (-inf, 0]");
  return std::log(z);
}

// Li2(-Y) with the cut check done by li2 itself.
cplx li2_minus(cplx y) { return li2(-y); }

// L(Y/(1+Y)) continued to complex Y.
cplx rogers_ratio(cplx y) { return -li2_minus(y) - 0.5 * checked_log(y) * checked_log(1.0 + y); }

cplx pow_eps(cplx y, int eps) { return eps > 0 ? y : 1.0 / y; }

// w_i = Σ_j b_{ji} u_j
std::vector<cplx> w_of(const ExchangeMatrix& b, std::span<const cplx> u) {
  const std::size_t n = b.rank();
  std::vector<cplx> w(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w[i] += static_cast<double>(b(j, i)) * u[j];
  }
  return w;
}

// p̃(t+1) from p(t).
std::vector<cplx> ptilde_next(const ExchangeMatrix& b, std::span<const cplx> p, std::size_t k, int eps) {
  std::vector<cplx> out(p.begin(), p.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i != k) out[i] += static_cast<double>(positive_part(eps * b(k, i))) * p[k];
  }
  out[k] = -p[k];
  return out;
}

// p(t) from p̃(t+1), inverting ptilde_next.
std::vector<cplx> p_from_next(const ExchangeMatrix& b, std::span<const cplx> pt_next, std::size_t k, int eps) {
  std::vector<cplx> out(pt_next.begin(), pt_next.end());
  out[k] = -pt_next[k];
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i != k) out[i] -= static_cast<double>(positive_part(eps * b(k, i))) * out[k];
  }
  return out;
}

// p(L) from p̃(1): p̃(L+1) relabeled by ν is p̃(1).
std::vector<cplx> p_last(const ExchangeMatrix& b_last, const MutationSchedule& sched, std::span<const cplx> pt1,
                         int eps) {
  const std::size_t n = pt1.size();
  std::vector<cplx> next(n);
  for (std::size_t i = 0; i < n; ++i) next[sched.nu[i]] = pt1[i];
  return p_from_next(b_last, next, sched.sequence.back(), eps);
}

void check_lambda(const SaddleOptions& opt) {
  if (opt.mode != SaddleMode::Lambda) return;
  const cplx l = opt.lambda;
  if (!((l * l).imag() > 0.0)) throw std::invalid_argument("lambda-mode needs Im lambda^2 > 0");
  if (std::abs(l.imag()) > opt.max_imag_lambda) {
    throw BranchProximity("|Im lambda| exceeds the configured branch-safe bound");
  }
}

double max_abs(double acc, cplx v) { return std::max(acc, std::abs(v)); }

}  // namespace

double SaddleReport::max_residual() const {
  return std::max({residual_u_eqs, residual_p_eqs, residual_w_eqs, residual_constraints});
}

SaddleState build_solution(const ExchangeMatrix& b, const MutationSchedule& sched, std::span<const double> u1,
                           const SaddleOptions& opt) {
  const std::size_t n = b.rank();
  if (u1.size() != n) throw std::invalid_argument("u1 has the wrong length");
  if (!check_period(b, sched).periodic) throw NotAPeriod("schedule is not a period of the seed");
  check_lambda(opt);
  const cplx lam = opt.mode == SaddleMode::Lambda ? opt.lambda : cplx(1.0);
  const std::size_t L = sched.length();
  const auto mats = matrix_trajectory(b, sched.sequence);
  const auto signs = sign_sequence(b, sched.sequence).signs;

  SaddleState s;
  s.mode = opt.mode;
  s.lambda = lam;
  s.signs = signs;
  s.u.assign(L, std::vector<cplx>(n));
  s.p = s.ptilde = s.w = s.u;

  // (i) y-variables
  std::vector<std::vector<cplx>> y(L);
  for (std::size_t j = 0; j < n; ++j) s.u[0][j] = u1[j];
  s.w[0] = w_of(mats[0], s.u[0]);
  y[0].resize(n);
  for (std::size_t i = 0; i < n; ++i) y[0][i] = std::exp(2.0 * lam * s.w[0][i]);
  for (std::size_t t = 0; t + 1 < L; ++t) {
    y[t + 1] = exchange_y<cplx>(mats[t], y[t], sched.sequence[t], signs[t]);
  }

  // (ii) u-variables
  for (std::size_t t = 0; t + 1 < L; ++t) {
    const std::size_t k = sched.sequence[t];
    const int eps = signs[t];
    s.u[t + 1] = s.u[t];
    cplx uk = -s.u[t][k] + checked_log(1.0 + pow_eps(y[t][k], eps)) / (2.0 * lam);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != k) uk += static_cast<double>(positive_part(eps * mats[t](k, j))) * s.u[t][j];
    }
    s.u[t + 1][k] = uk;
    s.w[t + 1] = w_of(mats[t + 1], s.u[t + 1]);
  }

  // (iii) p-variables
  s.ptilde[0] = s.w[0];
  for (std::size_t t = 1; t < L; ++t) {
    for (std::size_t i = 0; i < n; ++i) s.ptilde[t][i] = checked_log(y[t][i]) / (2.0 * lam);
  }
  for (std::size_t t = 0; t + 1 < L; ++t) s.p[t] = p_from_next(mats[t], s.ptilde[t + 1], sched.sequence[t], signs[t]);
  s.p[L - 1] = p_last(mats[L - 1], sched, s.ptilde[0], signs[L - 1]);

  for (std::size_t t = 0; t < L; ++t) s.yvals.push_back(y[t][sched.sequence[t]]);
  s.action = action(s, b, sched).value;
  return s;
}

ActionValue action(const SaddleState& s, const ExchangeMatrix& /*b*/, const MutationSchedule& /*sched*/) {
  ActionValue a;
  const cplx lam2 = s.lambda * s.lambda;
  for (std::size_t t = 0; t < s.length(); ++t) {
    const int eps = s.signs[t];
    const cplx ye = pow_eps(s.yvals[t], eps);
    cplx pair = 0.0;
    for (std::size_t i = 0; i < s.u[t].size(); ++i) pair += s.u[t][i] * (s.p[t][i] - s.ptilde[t][i]);
    a.value += 0.5 * static_cast<double>(eps) * li2_minus(ye) + lam2 * pair;
    a.cross_check -= 0.5 * static_cast<double>(eps) * rogers_ratio(ye);
  }
  return a;
}

SaddleReport residuals(const SaddleState& s, const ExchangeMatrix& b, const MutationSchedule& sched) {
  const std::size_t n = b.rank();
  const std::size_t L = sched.length();
  const cplx lam = s.lambda;
  const auto mats = matrix_trajectory(b, sched.sequence);
  SaddleReport r;

  std::vector<std::vector<cplx>> w(L);
  std::vector<cplx> yk(L), log1p(L);
  for (std::size_t t = 0; t < L; ++t) {
    const std::size_t k = sched.sequence[t];
    w[t] = w_of(mats[t], s.u[t]);
    yk[t] = std::exp(lam * (s.p[t][k] + w[t][k]));
    log1p[t] = checked_log(1.0 + pow_eps(yk[t], s.signs[t]));
  }

  // Derivatives in u_i(t), t = 2..L.
  for (std::size_t t = 1; t < L; ++t) {
    const std::size_t k = sched.sequence[t];
    for (std::size_t i = 0; i < n; ++i) {
      const cplx e = s.p[t][i] - s.ptilde[t][i] + static_cast<double>(mats[t](k, i)) * log1p[t] / (2.0 * lam);
      r.residual_u_eqs = max_abs(r.residual_u_eqs, e);
    }
  }

  // Derivatives in p_i(t), t = 1..L-1.
  for (std::size_t t = 0; t + 1 < L; ++t) {
    const std::size_t k = sched.sequence[t];
    const int eps = s.signs[t];
    for (std::size_t i = 0; i < n; ++i) {
      cplx e;
      if (i == k) {
        e = -log1p[t] / (2.0 * lam) + s.u[t][k] + s.u[t + 1][k];
        for (std::size_t j = 0; j < n; ++j) {
          if (j != k) e -= static_cast<double>(positive_part(eps * mats[t](k, j))) * s.u[t + 1][j];
        }
      } else {
        e = s.u[t][i] - s.u[t + 1][i];
      }
      r.residual_p_eqs = max_abs(r.residual_p_eqs, e);
    }
  }

  // w recursion, in the form λw(t+1) against λw(t), and e^{2λw(t)} = y(t).
  std::vector<cplx> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = std::exp(2.0 * lam * w[0][i]);
  for (std::size_t t = 0; t < L; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      r.residual_w_eqs = max_abs(r.residual_w_eqs, (std::exp(2.0 * lam * w[t][i]) - y[i]) / y[i]);
    }
    if (t + 1 == L) break;
    const std::size_t k = sched.sequence[t];
    const int eps = s.signs[t];
    for (std::size_t i = 0; i < n; ++i) {
      cplx e;
      if (i == k) {
        e = lam * (w[t + 1][k] + w[t][k]);
      } else {
        e = lam * (w[t + 1][i] - w[t][i] - static_cast<double>(positive_part(eps * mats[t](k, i))) * w[t][k]) +
            0.5 * static_cast<double>(mats[t](k, i)) * log1p[t];
      }
      r.residual_w_eqs = max_abs(r.residual_w_eqs, e);
    }
    y = exchange_y<cplx>(mats[t], y, k, eps);
  }

  // Structural relations among the stored arrays.
  double c = 0.0;
  for (std::size_t i = 0; i < n; ++i) c = max_abs(c, s.ptilde[0][i] - w[0][i]);
  for (std::size_t t = 0; t < L; ++t) {
    const std::size_t k = sched.sequence[t];
    c = max_abs(c, s.p[t][k] - s.ptilde[t][k]);
    c = max_abs(c, (s.yvals[t] - yk[t]) / yk[t]);
    for (std::size_t i = 0; i < n; ++i) c = max_abs(c, s.w[t][i] - w[t][i]);
    if (t + 1 < L) {
      const auto next = ptilde_next(mats[t], s.p[t], k, s.signs[t]);
      for (std::size_t i = 0; i < n; ++i) c = max_abs(c, s.ptilde[t + 1][i] - next[i]);
    }
  }
  const auto last = p_last(mats[L - 1], sched, s.ptilde[0], s.signs[L - 1]);
  for (std::size_t i = 0; i < n; ++i) c = max_abs(c, s.p[L - 1][i] - last[i]);
  r.residual_constraints = c;

  const ActionValue a = action(s, b, sched);
  r.action_value = a.value;
  r.cross_check_value = a.cross_check;
  return r;
}

std::vector<cplx> free_variables(const SaddleState& s) {
  std::vector<cplx> x;
  const std::size_t L = s.length();
  for (std::size_t t = 0; t + 1 < L; ++t) x.insert(x.end(), s.p[t].begin(), s.p[t].end());
  for (std::size_t t = 1; t < L; ++t) x.insert(x.end(), s.u[t].begin(), s.u[t].end());
  return x;
}

cplx phase_of_free(const ExchangeMatrix& b, const MutationSchedule& sched, std::span<const int> signs,
                   std::span<const cplx> u1, std::span<const cplx> free, cplx lambda) {
  const std::size_t n = b.rank();
  const std::size_t L = sched.length();
  if (free.size() != 2 * n * (L - 1)) throw std::invalid_argument("wrong number of free variables");
  const auto mats = matrix_trajectory(b, sched.sequence);

  std::vector<std::vector<cplx>> u(L), p(L);
  u[0].assign(u1.begin(), u1.end());
  for (std::size_t t = 0; t + 1 < L; ++t) {
    p[t].assign(free.begin() + static_cast<long>(t * n), free.begin() + static_cast<long>((t + 1) * n));
    const std::size_t off = (L - 1 + t) * n;
    u[t + 1].assign(free.begin() + static_cast<long>(off), free.begin() + static_cast<long>(off + n));
  }
  std::vector<cplx> pt = w_of(mats[0], u[0]);
  p[L - 1] = p_last(mats[L - 1], sched, pt, signs[L - 1]);

  const cplx lam2 = lambda * lambda;
  cplx total = 0.0;
  for (std::size_t t = 0; t < L; ++t) {
    const std::size_t k = sched.sequence[t];
    const auto w = w_of(mats[t], u[t]);
    const cplx y = std::exp(lambda * (p[t][k] + w[k]));
    cplx pair = 0.0;
    for (std::size_t i = 0; i < n; ++i) pair += u[t][i] * (p[t][i] - pt[i]);
    total += 0.5 * static_cast<double>(signs[t]) * li2_minus(pow_eps(y, signs[t])) + lam2 * pair;
    if (t + 1 < L) pt = ptilde_next(mats[t], p[t], k, signs[t]);
  }
  return total;
}

NewtonResult newton_refinement(const SaddleState& s, const ExchangeMatrix& b, const MutationSchedule& sched) {
  if (s.mode != SaddleMode::B) throw std::invalid_argument("Newton refinement is for b-mode states");
  const std::vector<cplx> x0 = free_variables(s);
  const std::size_t m = x0.size();
  std::vector<double> x(m);
  for (std::size_t j = 0; j < m; ++j) x[j] = x0[j].real();
  const std::vector<cplx> u1 = s.u[0];

  constexpr double h = 1e-30;
  auto gradient = [&](const std::vector<double>& at) {
    Eigen::VectorXd g(static_cast<long>(m));
    std::vector<cplx> z(at.begin(), at.end());
    for (std::size_t j = 0; j < m; ++j) {
      z[j] += cplx(0.0, h);
      g[static_cast<long>(j)] = phase_of_free(b, sched, s.signs, u1, z, 1.0).imag() / h;
      z[j] = at[j];
    }
    return g;
  };

  const Eigen::VectorXd g = gradient(x);
  constexpr double delta = 1e-4;
  Eigen::MatrixXd hess(static_cast<long>(m), static_cast<long>(m));
  for (std::size_t j = 0; j < m; ++j) {
    auto xp = x;
    auto xm = x;
    xp[j] += delta;
    xm[j] -= delta;
    hess.col(static_cast<long>(j)) = (gradient(xp) - gradient(xm)) / (2.0 * delta);
  }
  hess = 0.5 * (hess + hess.transpose()).eval();
  const Eigen::VectorXd step = hess.completeOrthogonalDecomposition().solve(-g);

  NewtonResult nr;
  nr.gradient_norm = g.cwiseAbs().maxCoeff();
  nr.step_norm = step.cwiseAbs().maxCoeff();
  return nr;
}

// ---------------------------------------------------------------------------

bool TransformSpec::dual() const {
  const std::size_t n = u.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      long v = 0;
      for (std::size_t r = 0; r < n; ++r) v += u[r][i] * w[r][j];
      if (v != (i == j ? 1 : 0)) return false;
    }
  }
  return true;
}

TransformSpec coordinate_maps(const ExchangeMatrix& bp, std::size_t k, int epsilon) {
  const std::size_t n = bp.rank();
  if (k >= n) throw std::out_of_range("mutation index out of range");
  if (epsilon != 1 && epsilon != -1) throw std::invalid_argument("epsilon must be +1 or -1");
  IntMatrix id(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;

  TransformSpec spec;
  spec.u = id;
  spec.u[k][k] = -1;
  for (std::size_t j = 0; j < n; ++j) {
    if (j != k) spec.u[k][j] = positive_part(-epsilon * bp(j, k));
  }
  spec.w = id;
  spec.w[k][k] = -1;
  for (std::size_t i = 0; i < n; ++i) {
    if (i != k) spec.w[i][k] = positive_part(epsilon * bp(k, i));
  }
  spec.p = spec.w;
  spec.d = spec.w;
  return spec;
}

std::vector<double> apply_map(const IntMatrix& m, std::span<const double> v) {
  std::vector<double> out(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += static_cast<double>(m[i][j]) * v[j];
  }
  return out;
}

}  // namespace qdilog
