#include "qdilog/dilog.hpp"

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <cmath>
#include <stdexcept>

#include "qdilog/errors.hpp"

namespace qdilog {

namespace {

// Σ x^k / k², |x| <= 1/2.
double li2_series(double x) {
  double sum = 0.0;
  double p = x;
  for (int k = 1; k < 200; ++k) {
    const double term = p / (static_cast<double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    p *= x;
  }
  return sum;
}

// Li2 = Σ_{n>=0} B_n u^{n+1}/(n+1)! with u = -log(1-z); converges for |u| < 2π.
std::complex<double> li2_bernoulli(std::complex<double> z) {
  const std::complex<double> u = -std::log(1.0 - z);
  const std::complex<double> u2 = u * u;
  std::complex<double> sum = u - 0.25 * u2;
  std::complex<double> p = u;  // u^{2m+1}
  for (int m = 1; m < 40; ++m) {
    p *= u2;
    const double coef = boost::math::bernoulli_b2n<double>(m) / boost::math::factorial<double>(2 * m + 1);
    const std::complex<double> term = coef * p;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

double li2(double x) {
  if (x > 1.0) throw std::domain_error("real Li2 is defined only for x <= 1");
  if (x == 1.0) return kZeta2;
  if (x == 0.0) return 0.0;
  if (x < -1.0) {
    const double l = std::log(-x);
    return -kZeta2 - 0.5 * l * l - li2(1.0 / x);
  }
  if (x < -0.5) {
    const double l = std::log1p(-x);
    return -li2_series(x / (x - 1.0)) - 0.5 * l * l;
  }
  if (x > 0.5) return kZeta2 - std::log(x) * std::log1p(-x) - li2_series(1.0 - x);
  return li2_series(x);
}

std::complex<double> li2(std::complex<double> z) {
  const double dist_to_cut = z.real() >= 1.0 ? std::abs(z.imag()) : std::abs(z - 1.0);
  if (dist_to_cut < 1e-6) throw BranchProximity("Li2 argument within 1e-6 of the cut [1, inf)");
  if (z == 0.0) return 0.0;
  if (std::abs(z) > 1.0) {
    const std::complex<double> l = std::log(-z);
    return -kZeta2 - 0.5 * l * l - li2(1.0 / z);
  }
  if (z.real() > 0.5) return kZeta2 - std::log(z) * std::log(1.0 - z) - li2_bernoulli(1.0 - z);
  return li2_bernoulli(z);
}

double rogers_L(double x) {
  if (x < 0.0 || x > 1.0) throw std::domain_error("Rogers L is defined on [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return kZeta2;
  return li2(x) + 0.5 * std::log(x) * std::log1p(-x);
}

double rogers_L_ratio(double y) {
  if (!(y > 0.0)) throw std::domain_error("rogers_L_ratio needs y > 0");
  return -li2(-y) - 0.5 * std::log(y) * std::log1p(y);
}

namespace {

template <class Visit>
void walk_product(std::complex<double> x, std::complex<double> q, Visit visit) {
  const double aq = std::abs(q);
  if (!(aq < 1.0)) throw std::domain_error("Psi_q product needs |q| < 1");
  if (x == 0.0) return;
  const std::complex<double> q2 = q * q;
  const double tail_scale = 1.0 / (1.0 - aq * aq);
  std::complex<double> p = q * x;  // q^{2k+1} x
  for (long k = 0; k < 10'000'000; ++k) {
    const std::complex<double> factor = 1.0 + p;
    if (std::abs(factor) < 1e-14) throw PoleHit("Psi_q evaluated at a pole");
    visit(factor);
    p *= q2;
    if (std::abs(p) * tail_scale < 1e-14) return;
  }
  throw std::runtime_error("Psi_q product failed to converge");
}

}  // namespace

std::complex<double> psiq_numeric(std::complex<double> x, std::complex<double> q) {
  std::complex<double> prod = 1.0;
  walk_product(x, q, [&](std::complex<double> f) { prod *= f; });
  return 1.0 / prod;
}

std::complex<double> log_psiq_numeric(std::complex<double> x, std::complex<double> q) {
  std::complex<double> sum = 0.0;
  walk_product(x, q, [&](std::complex<double> f) { sum -= std::log(f); });
  return sum;
}

double ClassicalIdentityReport::signed_residual() const { return std::abs(sum_signed); }
double ClassicalIdentityReport::di_residual() const { return std::abs(sum_DI - n_minus * kZeta2); }
double ClassicalIdentityReport::diprime_residual() const { return std::abs(sum_DIprime - n_plus * kZeta2); }

ClassicalIdentityReport verify_classical_identity(const ExchangeMatrix& b, const MutationSchedule& sched,
                                                  std::span<const double> y0) {
  const PeriodReport period = check_period(b, sched);
  if (!period.periodic) throw NotAPeriod("schedule is not a period of the seed");
  const SignSequence signs = sign_sequence(b, sched.sequence);
  const auto traj = numeric_trajectory(b, sched.sequence, y0);

  ClassicalIdentityReport rep;
  rep.n_plus = signs.n_plus;
  rep.n_minus = signs.n_minus;
  for (std::size_t t = 0; t < sched.length(); ++t) {
    const std::size_t k = sched.sequence[t];
    const double y = traj[t][k];
    const int eps = signs.signs[t];
    const double ye = eps > 0 ? y : 1.0 / y;
    ClassicalTerm term{t + 1, k + 1, eps, y, ye / (1.0 + ye), rogers_L_ratio(ye)};
    rep.sum_signed += eps * term.value;
    rep.sum_DI += rogers_L_ratio(y);
    rep.sum_DIprime += rogers_L_ratio(1.0 / y);
    rep.terms.push_back(term);
  }
  return rep;
}

std::vector<double> psiq_asymptotics(double x, std::span<const double> qs) {
  std::vector<double> out;
  for (double q : qs) {
    const std::complex<double> lp = log_psiq_numeric(x, q);
    out.push_back(std::abs(2.0 * std::log(q) * lp + li2(-x)));
  }
  return out;
}

}  // namespace qdilog
