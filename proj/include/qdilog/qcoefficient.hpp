#pragma once

// Exact elements of Q(q), kept in the canonical form q^e * N(q) / D(q) with
// N(0) != 0, D(0) != 0, gcd(N, D) = 1 in Z[q] and a positive leading
// coefficient on D. Zero is (e = 0, N = 0, D = 1).
//
// Pulling the q-adic valuation into e matters here: the torus arithmetic
// multiplies by powers of q constantly, and those become integer additions.

#include <gmpxx.h>

#include <string>

#include "qdilog/poly.hpp"

namespace qdilog {

class QCoefficient {
 public:
  QCoefficient() : den_(1) {}
  QCoefficient(long c);  // NOLINT(google-explicit-constructor)
  QCoefficient(int exponent, IntPoly num, IntPoly den);

  static QCoefficient q_power(int k);

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return e_ == 0 && num_ == IntPoly(1) && den_ == IntPoly(1); }
  int exponent() const { return e_; }
  const IntPoly& numerator() const { return num_; }
  const IntPoly& denominator() const { return den_; }

  QCoefficient operator-() const;
  QCoefficient inverse() const;  // throws NonInvertible on zero
  QCoefficient times_q_power(int k) const;

  friend QCoefficient operator+(const QCoefficient& a, const QCoefficient& b);
  friend QCoefficient operator-(const QCoefficient& a, const QCoefficient& b) { return a + (-b); }
  friend QCoefficient operator*(const QCoefficient& a, const QCoefficient& b);
  friend QCoefficient operator/(const QCoefficient& a, const QCoefficient& b) { return a * b.inverse(); }
  QCoefficient& operator+=(const QCoefficient& o) { return *this = *this + o; }
  QCoefficient& operator*=(const QCoefficient& o) { return *this = *this * o; }

  // Canonical forms make this a field-wise comparison.
  bool operator==(const QCoefficient& o) const = default;

  // Value at an exact rational point. Throws std::domain_error at a pole.
  mpq_class eval(const mpq_class& q0) const;

  std::string to_string() const;

 private:
  void normalize();
  int e_ = 0;
  IntPoly num_;
  IntPoly den_;
};

}  // namespace qdilog
