#include "qdilog/qcoefficient.hpp"

#include <stdexcept>

#include "qdilog/errors.hpp"

namespace qdilog {

namespace {

const IntPoly& one_poly() {
  static const IntPoly one(1);
  return one;
}

bool is_unit(const IntPoly& p) { return p == one_poly(); }

}  // namespace

QCoefficient::QCoefficient(long c) : num_(c), den_(1) {}

QCoefficient::QCoefficient(int exponent, IntPoly num, IntPoly den)
    : e_(exponent), num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("zero denominator");
  normalize();
}

QCoefficient QCoefficient::q_power(int k) {
  QCoefficient c(1);
  c.e_ = k;
  return c;
}

void QCoefficient::normalize() {
  if (num_.is_zero()) {
    e_ = 0;
    den_ = one_poly();
    return;
  }
  const int vn = num_.valuation();
  const int vd = den_.valuation();
  num_ = num_.shifted_down(vn);
  den_ = den_.shifted_down(vd);
  e_ += vn - vd;
  if (!is_unit(den_)) {
    IntPoly g = gcd(num_, den_);
    if (!is_unit(g)) {
      num_ = divide_exact(num_, g);
      den_ = divide_exact(den_, g);
    }
  }
  if (den_.leading() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

QCoefficient QCoefficient::operator-() const {
  QCoefficient c = *this;
  c.num_ = -c.num_;
  return c;
}

QCoefficient QCoefficient::inverse() const {
  if (is_zero()) throw NonInvertible("inverse of zero coefficient");
  QCoefficient c;
  c.e_ = -e_;
  c.num_ = den_;
  c.den_ = num_;
  if (c.den_.leading() < 0) {
    c.num_ = -c.num_;
    c.den_ = -c.den_;
  }
  return c;
}

QCoefficient QCoefficient::times_q_power(int k) const {
  if (is_zero()) return *this;
  QCoefficient c = *this;
  c.e_ += k;
  return c;
}

QCoefficient operator+(const QCoefficient& a, const QCoefficient& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const int e = std::min(a.e_, b.e_);
  const IntPoly an = a.num_.shifted_up(a.e_ - e);
  const IntPoly bn = b.num_.shifted_up(b.e_ - e);
  QCoefficient r;
  r.e_ = e;
  if (is_unit(a.den_) && is_unit(b.den_)) {
    r.num_ = an + bn;
    r.den_ = one_poly();
  } else if (a.den_ == b.den_) {
    IntPoly t = an + bn;
    IntPoly g = gcd(t, a.den_);
    r.num_ = divide_exact(t, g);
    r.den_ = divide_exact(a.den_, g);
  } else {
    // Knuth's trick: only the common part of the denominators can cancel.
    IntPoly g = gcd(a.den_, b.den_);
    if (is_unit(g)) {
      r.num_ = an * b.den_ + bn * a.den_;
      r.den_ = a.den_ * b.den_;
    } else {
      IntPoly ad = divide_exact(a.den_, g);
      IntPoly bd = divide_exact(b.den_, g);
      IntPoly t = an * bd + bn * ad;
      IntPoly g2 = gcd(t, g);
      r.num_ = divide_exact(t, g2);
      r.den_ = ad * divide_exact(b.den_, g2);
    }
  }
  if (r.num_.is_zero()) return QCoefficient();
  const int v = r.num_.valuation();
  r.num_ = r.num_.shifted_down(v);
  r.e_ += v;
  if (r.den_.leading() < 0) {
    r.num_ = -r.num_;
    r.den_ = -r.den_;
  }
  return r;
}

QCoefficient operator*(const QCoefficient& a, const QCoefficient& b) {
  if (a.is_zero() || b.is_zero()) return QCoefficient();
  QCoefficient r;
  r.e_ = a.e_ + b.e_;
  if (is_unit(a.den_) && is_unit(b.den_)) {
    r.num_ = a.num_ * b.num_;
    r.den_ = one_poly();
    return r;
  }
  IntPoly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
  if (!is_unit(bd)) {
    IntPoly g = gcd(an, bd);
    if (!is_unit(g)) {
      an = divide_exact(an, g);
      bd = divide_exact(bd, g);
    }
  }
  if (!is_unit(ad)) {
    IntPoly g = gcd(bn, ad);
    if (!is_unit(g)) {
      bn = divide_exact(bn, g);
      ad = divide_exact(ad, g);
    }
  }
  r.num_ = an * bn;
  r.den_ = ad * bd;
  if (r.den_.leading() < 0) {
    r.num_ = -r.num_;
    r.den_ = -r.den_;
  }
  return r;
}

mpq_class QCoefficient::eval(const mpq_class& q0) const {
  if (is_zero()) return 0;
  const mpq_class d = den_.eval(q0);
  if (d == 0) throw std::domain_error("coefficient has a pole at the evaluation point");
  mpq_class v = num_.eval(q0) / d;
  if (e_ != 0) {
    if (q0 == 0) throw std::domain_error("negative power of q at q = 0");
    mpq_class p = 1;
    const mpq_class base = e_ > 0 ? q0 : mpq_class(1) / q0;
    for (int i = 0; i < std::abs(e_); ++i) p *= base;
    v *= p;
  }
  v.canonicalize();
  return v;
}

std::string QCoefficient::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  if (e_ != 0) s = "q^" + std::to_string(e_) + "*";
  s += "(" + num_.to_string() + ")";
  if (!is_unit(den_)) s += "/(" + den_.to_string() + ")";
  return s;
}

}  // namespace qdilog
