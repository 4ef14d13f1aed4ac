#pragma once

// Dense univariate polynomials over the integers, with exact big-integer
// coefficients. Just enough for a canonical rational-function field in q.

#include <gmpxx.h>

#include <string>
#include <vector>

namespace qdilog {

class IntPoly {
 public:
  IntPoly() = default;
  IntPoly(long c);  // NOLINT(google-explicit-constructor)
  explicit IntPoly(std::vector<mpz_class> coeffs);

  static IntPoly monomial(const mpz_class& c, int degree);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const mpz_class& operator[](int i) const { return c_[i]; }
  const mpz_class& leading() const { return c_.back(); }
  const std::vector<mpz_class>& coefficients() const { return c_; }

  // Largest v with q^v dividing the polynomial; 0 for zero.
  int valuation() const;
  IntPoly shifted_down(int v) const;  // divide by q^v, v <= valuation()
  IntPoly shifted_up(int v) const;    // multiply by q^v

  mpz_class content() const;  // nonnegative gcd of coefficients
  mpz_class max_norm() const;

  IntPoly operator-() const;
  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  IntPoly scaled(const mpz_class& s) const;
  IntPoly divided_exactly(const mpz_class& s) const;

  bool operator==(const IntPoly& o) const { return c_ == o.c_; }

  mpz_class eval(const mpz_class& x) const;
  mpq_class eval(const mpq_class& x) const;

  std::string to_string(const std::string& var = "q") const;

 private:
  void trim();
  std::vector<mpz_class> c_;  // c_[i] multiplies q^i; no trailing zeros
};

// Exact quotient a / b if b divides a in Z[q], otherwise false.
bool try_divide(const IntPoly& a, const IntPoly& b, IntPoly& quotient);
// Throws std::logic_error if b does not divide a.
IntPoly divide_exact(const IntPoly& a, const IntPoly& b);

// Pseudo-remainder of a by b (b nonzero).
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b);

// gcd in Z[q], normalized to positive leading coefficient; gcd(0,0) = 0.
IntPoly gcd(const IntPoly& a, const IntPoly& b);

// Same result through the primitive remainder sequence only. Kept separately
// so the heuristic path in gcd() can be tested against it.
IntPoly gcd_prs(const IntPoly& a, const IntPoly& b);

}  // namespace qdilog
