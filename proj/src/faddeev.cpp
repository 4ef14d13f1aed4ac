#include "qdilog/faddeev.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdilog/dilog.hpp"
#include "qdilog/errors.hpp"

namespace qdilog {

using cplx = std::complex<double>;

namespace {

constexpr cplx kI(0.0, 1.0);

}  // namespace

PhibParams::PhibParams(cplx b) : b_(b) {
  if (b.real() == 0.0) throw std::invalid_argument("Phi_b needs Re b != 0");
}

cplx PhibParams::c_b() const { return (b_ + 1.0 / b_) * kI / 2.0; }
cplx PhibParams::q() const { return std::exp(kI * kPi * b_ * b_); }
cplx PhibParams::q_dual() const { return std::exp(kI * kPi / (b_ * b_)); }
cplx PhibParams::q_bar() const { return 1.0 / q_dual(); }
cplx PhibParams::hbar() const { return kPi * b_ * b_; }

cplx log_phib_integral(cplx z, const PhibParams& p, const PhibOptions& opt) {
  // Φ_{-b} = Φ_b, and the decaying form below wants Re b > 0.
  const cplx b = p.b().real() > 0 ? p.b() : -p.b();
  const cplx binv = 1.0 / b;
  const double h = p.strip_half_width();
  if (!(std::abs(z.imag()) < h)) throw std::domain_error("Phi_b integral used outside its strip");

  const cplx s = b + binv;
  const double r = 1e-2 * (std::abs(b) + 1.0 / std::abs(b));

  // Real line, both halves folded together:
  // f(x) + f(-x) = -2i sin(2zx) / (x sinh(bx) sinh(x/b)).
  // Far out the same expression is rewritten with decaying exponentials.
  const double growth = std::max(b.real(), binv.real());
  auto folded = [&](double x) -> cplx {
    if (growth * x < 300.0) {
      return -2.0 * kI * std::sin(2.0 * z * x) / (x * std::sinh(b * x) * std::sinh(binv * x));
    }
    const cplx den = x * (1.0 - std::exp(-2.0 * b * x)) * (1.0 - std::exp(-2.0 * binv * x));
    return -4.0 * (std::exp((2.0 * kI * z - s) * x) - std::exp((-2.0 * kI * z - s) * x)) / den;
  };

  // Cut the tail where 8 e^{-κx}/(κx) drops below 1e-17.
  const double kappa = 2.0 * (h - std::abs(z.imag()));
  double x_max = 40.0 / kappa;
  for (int it = 0; it < 8; ++it) x_max = std::log(8e17 / (kappa * x_max)) / kappa;
  x_max = std::max(x_max, r + 1.0);

  // Panels: geometric near the 1/x² behaviour at the arc, then of bounded
  // width so the Kronrod estimate stays honest on the oscillation.
  std::vector<double> cuts{r};
  while (cuts.back() < 1.0 && cuts.back() < x_max) cuts.push_back(std::min(2.0 * cuts.back(), 1.0));
  const double panel = std::max(1.0, x_max / 64.0);
  while (cuts.back() < x_max) cuts.push_back(std::min(cuts.back() + panel, x_max));

  cplx line = 0.0;
  double line_err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double err = 0.0;
    line += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(folded, cuts[i], cuts[i + 1], 10, 1e-12,
                                                                          &err);
    line_err += err;
  }

  // Upper semicircle from -r to r: x = r e^{iφ}, φ from π down to 0.
  auto arc = [&](double phi) -> cplx {
    const cplx x = r * std::exp(kI * phi);
    return -kI * std::exp(-2.0 * kI * z * x) / (std::sinh(b * x) * std::sinh(binv * x));
  };
  const cplx arc_value = boost::math::quadrature::gauss<double, 64>::integrate(arc, 0.0, kPi);

  if (!(line_err < opt.tolerance) || !std::isfinite(line.real()) || !std::isfinite(line.imag())) {
    throw QuadratureFailure("Phi_b quadrature did not reach tolerance", line_err);
  }
  return -0.25 * (line + arc_value);
}

namespace {

struct Shift {
  int m = 0;  // multiples of i b
  int n = 0;  // multiples of i / b
};

Shift choose_shift(cplx z, const PhibParams& p, const PhibOptions& opt) {
  const cplx b = p.b();
  const double h = p.strip_half_width();
  const int mm = opt.family == ShiftFamily::OnlyInverseB ? 0 : opt.max_shift;
  const int nn = opt.family == ShiftFamily::OnlyB ? 0 : opt.max_shift;
  Shift best;
  double best_im = std::numeric_limits<double>::infinity();
  int best_steps = 0;
  for (int m = -mm; m <= mm; ++m) {
    for (int n = -nn; n <= nn; ++n) {
      const cplx z0 = z - static_cast<double>(m) * kI * b - static_cast<double>(n) * kI / b;
      const double im = std::abs(z0.imag());
      const int steps = std::abs(m) + std::abs(n);
      if (im < best_im - 1e-12 || (std::abs(im - best_im) <= 1e-12 && steps < best_steps)) {
        best = {m, n};
        best_im = im;
        best_steps = steps;
      }
    }
  }
  if (!(best_im < 0.95 * h)) throw std::domain_error("Phi_b: no admissible shift into the integration strip");
  return best;
}

}  // namespace

cplx phib(cplx z, const PhibParams& p, const PhibOptions& opt) {
  const Shift sh = choose_shift(z, p, opt);
  const cplx b = p.b();
  cplx w = z - static_cast<double>(sh.m) * kI * b - static_cast<double>(sh.n) * kI / b;
  cplx value = std::exp(log_phib_integral(w, p, opt));
  const cplx q = p.q();
  const cplx qd = p.q_dual();
  auto apply = [&](cplx factor, bool divide) {
    if (std::abs(factor) < 1e-300) throw PoleHit("Phi_b continuation crossed a zero or pole");
    value = divide ? value / factor : value * factor;
  };
  for (int i = 0; i < std::abs(sh.m); ++i) {
    if (sh.m > 0) {
      apply(1.0 + std::exp(2.0 * kPi * b * w) * q, false);
      w += kI * b;
    } else {
      apply(1.0 + std::exp(2.0 * kPi * b * w) / q, true);
      w -= kI * b;
    }
  }
  for (int i = 0; i < std::abs(sh.n); ++i) {
    if (sh.n > 0) {
      apply(1.0 + std::exp(2.0 * kPi * w / b) * qd, false);
      w += kI / b;
    } else {
      apply(1.0 + std::exp(2.0 * kPi * w / b) / qd, true);
      w -= kI / b;
    }
  }
  return value;
}

cplx phib_from_psi(cplx z, const PhibParams& p) {
  const cplx b = p.b();
  return psiq_numeric(std::exp(2.0 * kPi * b * z), p.q()) / psiq_numeric(std::exp(2.0 * kPi * z / b), p.q_bar());
}

double check_duality(cplx z, cplx b) {
  const cplx v = phib(z, PhibParams(b));
  const cplx v_inv = phib(z, PhibParams(1.0 / b));
  const cplx v_neg = phib(z, PhibParams(-b));
  return std::max(std::abs(v - v_inv), std::abs(v - v_neg));
}

PhibPointCheck check_phib_point(cplx z, cplx b) {
  const PhibParams p(b);
  PhibPointCheck c;
  const cplx v = phib(z, p);
  c.modulus_error = std::abs(std::abs(v) - 1.0);

  PhibOptions via_inv;
  via_inv.family = ShiftFamily::OnlyInverseB;
  PhibOptions via_b;
  via_b.family = ShiftFamily::OnlyB;
  const cplx up_b = phib(z + kI * b, p, via_inv);
  const cplx up_inv = phib(z + kI / b, p, via_b);
  c.recurrence_b = std::abs(up_b - (1.0 + std::exp(2.0 * kPi * b * z) * p.q()) * v);
  c.recurrence_inv_b = std::abs(up_inv - (1.0 + std::exp(2.0 * kPi * z / b) * p.q_dual()) * v);

  // Centered pairs z ∓ ib/2 and z ∓ i/(2b) both sit inside the strip, so
  // these use quadrature alone (the only independent route when b = 1).
  const cplx lo_b = z - 0.5 * kI * b;
  const cplx lo_inv = z - 0.5 * kI / b;
  const double centered_b = std::abs(std::exp(log_phib_integral(z + 0.5 * kI * b, p)) -
                                   (1.0 + std::exp(2.0 * kPi * b * lo_b) * p.q()) *
                                       std::exp(log_phib_integral(lo_b, p)));
  const double centered_inv = std::abs(std::exp(log_phib_integral(z + 0.5 * kI / b, p)) -
                                     (1.0 + std::exp(2.0 * kPi * lo_inv / b) * p.q_dual()) *
                                         std::exp(log_phib_integral(lo_inv, p)));
  c.recurrence_b = std::max(c.recurrence_b, centered_b);
  c.recurrence_inv_b = std::max(c.recurrence_inv_b, centered_inv);

  c.duality = check_duality(z, b);
  if ((b * b).imag() > 0.0) c.psi_relation = std::abs(v - phib_from_psi(z, p));
  return c;
}

std::vector<PhibPointCheck> check_phib_grid(std::span<const double> zs, std::span<const cplx> bs, bool parallel) {
  const long nz = static_cast<long>(zs.size());
  const long total = nz * static_cast<long>(bs.size());
  std::vector<PhibPointCheck> out(static_cast<std::size_t>(total));
  std::vector<std::string> errors(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long idx = 0; idx < total; ++idx) {
    try {
      out[static_cast<std::size_t>(idx)] = check_phib_point(zs[static_cast<std::size_t>(idx % nz)],
                                                            bs[static_cast<std::size_t>(idx / nz)]);
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(idx)] = e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw std::runtime_error("Phi_b grid: " + e);
  }
  return out;
}

std::vector<double> phib_asymptotics(double z, std::span<const double> bs) {
  std::vector<double> out;
  const double target = li2(-std::exp(z));
  for (double b : bs) {
    const PhibParams p(b);
    const cplx lp = log_phib_integral(z / (2.0 * kPi * b), p);
    out.push_back(std::abs(2.0 * kPi * b * b * kI * lp + target));
  }
  return out;
}

}  // namespace qdilog
