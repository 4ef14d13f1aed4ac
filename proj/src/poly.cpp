#include "qdilog/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qdilog {

IntPoly::IntPoly(long c) {
  if (c != 0) c_.emplace_back(c);
}

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::monomial(const mpz_class& c, int degree) {
  IntPoly p;
  if (c != 0) {
    p.c_.assign(degree + 1, mpz_class(0));
    p.c_[degree] = c;
  }
  return p;
}

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int IntPoly::valuation() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return static_cast<int>(i);
  return 0;
}

IntPoly IntPoly::shifted_down(int v) const {
  if (v == 0 || is_zero()) return *this;
  IntPoly p;
  p.c_.assign(c_.begin() + v, c_.end());
  return p;
}

IntPoly IntPoly::shifted_up(int v) const {
  if (v == 0 || is_zero()) return *this;
  IntPoly p;
  p.c_.assign(v, mpz_class(0));
  p.c_.insert(p.c_.end(), c_.begin(), c_.end());
  return p;
}

mpz_class IntPoly::content() const {
  mpz_class g = 0;
  for (const auto& x : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

mpz_class IntPoly::max_norm() const {
  mpz_class m = 0;
  for (const auto& x : c_) {
    mpz_class a = abs(x);
    if (a > m) m = a;
  }
  return m;
}

IntPoly IntPoly::operator-() const {
  IntPoly p = *this;
  for (auto& x : p.c_) x = -x;
  return p;
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), mpz_class(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), mpz_class(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  IntPoly p;
  if (a.is_zero() || b.is_zero()) return p;
  p.c_.assign(a.c_.size() + b.c_.size() - 1, mpz_class(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      mpz_addmul(p.c_[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
  }
  p.trim();
  return p;
}

IntPoly IntPoly::scaled(const mpz_class& s) const {
  if (s == 0) return IntPoly();
  IntPoly p = *this;
  for (auto& x : p.c_) x *= s;
  return p;
}

IntPoly IntPoly::divided_exactly(const mpz_class& s) const {
  IntPoly p = *this;
  for (auto& x : p.c_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), s.get_mpz_t());
  return p;
}

mpz_class IntPoly::eval(const mpz_class& x) const {
  mpz_class acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

mpq_class IntPoly::eval(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + mpq_class(*it);
  acc.canonicalize();
  return acc;
}

std::string IntPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    mpz_class a = abs(c_[i]);
    if (first) {
      if (c_[i] < 0) os << '-';
    } else {
      os << (c_[i] < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << '*';
    os << var;
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

bool try_divide(const IntPoly& a, const IntPoly& b, IntPoly& quotient) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.is_zero()) {
    quotient = IntPoly();
    return true;
  }
  const int da = a.degree();
  const int db = b.degree();
  if (da < db) return false;
  // Cheap necessary condition before the full division.
  if (b[0] != 0 && a[0] != 0 && !mpz_divisible_p(a[0].get_mpz_t(), b[0].get_mpz_t())) return false;
  std::vector<mpz_class> r = a.coefficients();
  std::vector<mpz_class> q(da - db + 1);
  const mpz_class& lc = b.leading();
  for (int i = da; i >= db; --i) {
    if (r[i] == 0) continue;
    if (!mpz_divisible_p(r[i].get_mpz_t(), lc.get_mpz_t())) return false;
    mpz_class qi;
    mpz_divexact(qi.get_mpz_t(), r[i].get_mpz_t(), lc.get_mpz_t());
    for (int j = 0; j <= db; ++j) {
      mpz_submul(r[i - db + j].get_mpz_t(), qi.get_mpz_t(), b[j].get_mpz_t());
    }
    q[i - db] = std::move(qi);
  }
  for (int i = 0; i < db; ++i)
    if (r[i] != 0) return false;
  quotient = IntPoly(std::move(q));
  return true;
}

IntPoly divide_exact(const IntPoly& a, const IntPoly& b) {
  IntPoly q;
  if (!try_divide(a, b, q)) throw std::logic_error("inexact polynomial division");
  return q;
}

IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw std::domain_error("pseudo-remainder by zero");
  IntPoly r = a;
  const int db = b.degree();
  int steps = std::max(a.degree() - db + 1, 0);
  const mpz_class& lc = b.leading();
  while (!r.is_zero() && r.degree() >= db) {
    IntPoly t = b.scaled(r.leading()).shifted_up(r.degree() - db);
    r = r.scaled(lc) - t;
    --steps;
  }
  for (; steps > 0; --steps) r = r.scaled(lc);
  return r;
}

namespace {

IntPoly positive_lead(IntPoly p) {
  if (!p.is_zero() && p.leading() < 0) p = -p;
  return p;
}

IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return p;
  return positive_lead(p.divided_exactly(p.content()));
}

// Symmetric xi-adic expansion of an integer, read back as polynomial coefficients.
IntPoly xi_adic(mpz_class h, const mpz_class& xi) {
  std::vector<mpz_class> coeffs;
  const mpz_class half = xi / 2;
  while (h != 0) {
    mpz_class g;
    mpz_fdiv_r(g.get_mpz_t(), h.get_mpz_t(), xi.get_mpz_t());
    if (g > half) g -= xi;
    coeffs.push_back(g);
    h -= g;
    mpz_divexact(h.get_mpz_t(), h.get_mpz_t(), xi.get_mpz_t());
  }
  return IntPoly(std::move(coeffs));
}

}  // namespace

IntPoly gcd_prs(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return positive_lead(b);
  if (b.is_zero()) return positive_lead(a);
  mpz_class c;
  const mpz_class ca = a.content();
  const mpz_class cb = b.content();
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  IntPoly x = primitive_part(a);
  IntPoly y = primitive_part(b);
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    IntPoly r = pseudo_remainder(x, y);
    x = std::move(y);
    y = primitive_part(r);
  }
  return primitive_part(x).scaled(c);
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return positive_lead(b);
  if (b.is_zero()) return positive_lead(a);
  const int v = std::min(a.valuation(), b.valuation());
  const IntPoly a0 = a.shifted_down(a.valuation());
  const IntPoly b0 = b.shifted_down(b.valuation());
  mpz_class c;
  const mpz_class ca = a0.content();
  const mpz_class cb = b0.content();
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  const IntPoly pa = primitive_part(a0);
  const IntPoly pb = primitive_part(b0);
  if (pa.degree() == 0 || pb.degree() == 0) return IntPoly::monomial(c, v);
  if (pa == pb) return pa.scaled(c).shifted_up(v);

  // Heuristic gcd: evaluate at a large integer, take the integer gcd, and
  // read the answer back; accepted only if it divides both inputs.
  mpz_class xi = 2 * std::min(pa.max_norm(), pb.max_norm()) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    mpz_class gamma;
    const mpz_class alpha = pa.eval(xi);
    const mpz_class beta = pb.eval(xi);
    mpz_gcd(gamma.get_mpz_t(), alpha.get_mpz_t(), beta.get_mpz_t());
    IntPoly g = primitive_part(xi_adic(gamma, xi));
    IntPoly unused;
    if (!g.is_zero() && try_divide(pa, g, unused) && try_divide(pb, g, unused)) {
      return g.scaled(c).shifted_up(v);
    }
    mpz_class s = sqrt(sqrt(xi));
    xi = xi * 73794 * s / 27011;
  }
  return gcd_prs(pa, pb).scaled(c).shifted_up(v);
}

}  // namespace qdilog
