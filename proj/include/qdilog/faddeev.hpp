#pragma once

// Faddeev's noncompact quantum dilogarithm Φ_b from its integral
// representation, with the analytic continuation supplied by the
// difference equations in both shift directions.

#include <complex>
#include <span>
#include <vector>

namespace qdilog {

class PhibParams {
 public:
  // Throws std::invalid_argument if Re b == 0.
  explicit PhibParams(std::complex<double> b);

  std::complex<double> b() const { return b_; }
  std::complex<double> c_b() const;     // (b + 1/b) i / 2
  std::complex<double> q() const;       // e^{iπb²}
  std::complex<double> q_dual() const;  // e^{iπ/b²}
  std::complex<double> q_bar() const;   // 1 / q_dual
  std::complex<double> hbar() const;    // πb²
  double strip_half_width() const { return std::abs(c_b().imag()); }

 private:
  std::complex<double> b_;
};

// Which difference equations may be used to reach the integration strip.
enum class ShiftFamily { Both, OnlyB, OnlyInverseB };

struct PhibOptions {
  double tolerance = 1e-8;  // bound on the quadrature error estimate for log Φ_b
  int max_shift = 3;         // continuation steps per direction
  ShiftFamily family = ShiftFamily::Both;
};

// log Φ_b(z) from the integral; z must lie in the open strip |Im z| < |Im c_b|.
// Throws std::domain_error outside the strip and QuadratureFailure when the
// error estimate misses the tolerance.
std::complex<double> log_phib_integral(std::complex<double> z, const PhibParams& p,
                                       const PhibOptions& opt = PhibOptions());

std::complex<double> phib(std::complex<double> z, const PhibParams& p, const PhibOptions& opt = PhibOptions());

// The Ψ_q ratio valid when Im b² > 0: Ψ_q(e^{2πbz}) / Ψ_{q̄}(e^{2πz/b}).
std::complex<double> phib_from_psi(std::complex<double> z, const PhibParams& p);

struct PhibPointCheck {
  double modulus_error = 0.0;      // ||Φ_b(z)| - 1|, meaningful for real b or |b| = 1 and real z
  double recurrence_b = 0.0;       // |Φ(z+ib) - (1 + e^{2πbz} q) Φ(z)|
  double recurrence_inv_b = 0.0;   // |Φ(z+i/b) - (1 + e^{2πz/b} q^∨) Φ(z)|
  double duality = 0.0;            // max |Φ_b - Φ_{1/b}|, |Φ_b - Φ_{-b}|
  double psi_relation = -1.0;      // |Φ_b - Ψ ratio|, -1 when Im b² <= 0
};

// Each shifted value is reached through the other family's difference
// equation (or directly by quadrature), and the recurrences are also checked
// on the pair z ∓ ib/2 where both sides come straight from quadrature.
PhibPointCheck check_phib_point(std::complex<double> z, std::complex<double> b);

double check_duality(std::complex<double> z, std::complex<double> b);

// check_phib_point over the grid zs × bs, row-major in b. The parallel and
// serial paths share the point kernel; the serial one is the reference.
std::vector<PhibPointCheck> check_phib_grid(std::span<const double> zs, std::span<const std::complex<double>> bs,
                                            bool parallel = true);

// |2πb² i log Φ_b(z/(2πb)) + Li2(-e^z)| for each real b.
std::vector<double> phib_asymptotics(double z, std::span<const double> bs);

}  // namespace qdilog
