#include "qdilog/torus.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qdilog/errors.hpp"

namespace qdilog {

int pairing(std::span<const int> alpha, std::span<const int> beta, const ExchangeMatrix& b) {
  const std::size_t n = b.rank();
  if (alpha.size() != n || beta.size() != n) throw std::invalid_argument("pairing: dimension mismatch");
  int s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (alpha[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) s += alpha[i] * b(i, j) * beta[j];
  }
  return s;
}

mpq_class SpecializedField::q_power(int k) const {
  mpz_class num = q0.get_num();
  mpz_class den = q0.get_den();
  if (k < 0) {
    if (num == 0) throw std::domain_error("negative power of q0 = 0");
    std::swap(num, den);
    k = -k;
  }
  mpz_class pn, pd;
  mpz_pow_ui(pn.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(k));
  mpz_pow_ui(pd.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(k));
  mpq_class r(pn, pd);
  r.canonicalize();
  return r;
}

mpq_class SpecializedField::inverse(const mpq_class& c) const {
  if (c == 0) throw NonInvertible("inverse of zero coefficient");
  return mpq_class(1) / c;
}

// ---------------------------------------------------------------------------
// Context

template <class Field>
TorusContext<Field>::TorusContext(ExchangeMatrix b, int order, Field field)
    : b_(std::move(b)), order_(order), field_(std::move(field)) {
  if (order_ < 0) throw std::invalid_argument("truncation order must be nonnegative");
  const std::size_t n = b_.rank();
  const std::size_t radix = static_cast<std::size_t>(order_) + 1;
  std::size_t cells = 1;
  for (std::size_t i = 0; i < n; ++i) cells *= radix;
  dense_index_.assign(cells, npos);

  std::vector<int> cur(n, 0);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    std::size_t rest = cell;
    int deg = 0;
    for (std::size_t i = 0; i < n; ++i) {
      cur[i] = static_cast<int>(rest % radix);
      rest /= radix;
      deg += cur[i];
    }
    if (deg <= order_) shifts_.push_back(cur);
  }
  std::stable_sort(shifts_.begin(), shifts_.end(), [](const auto& x, const auto& y) {
    return std::accumulate(x.begin(), x.end(), 0) < std::accumulate(y.begin(), y.end(), 0);
  });
  for (std::size_t idx = 0; idx < shifts_.size(); ++idx) {
    std::size_t key = 0;
    std::size_t scale = 1;
    int deg = 0;
    for (std::size_t i = 0; i < n; ++i) {
      key += static_cast<std::size_t>(shifts_[idx][i]) * scale;
      scale *= radix;
      deg += shifts_[idx][i];
    }
    dense_index_[key] = idx;
    degrees_.push_back(deg);
  }

  plan_.assign(shifts_.size(), {});
  std::vector<int> sum(n);
  for (std::size_t l = 0; l < shifts_.size(); ++l) {
    for (std::size_t r = 0; r < shifts_.size(); ++r) {
      if (degrees_[l] + degrees_[r] > order_) continue;
      for (std::size_t i = 0; i < n; ++i) sum[i] = shifts_[l][i] + shifts_[r][i];
      plan_[index_of(sum)].push_back({l, r, pairing(shifts_[l], shifts_[r], b_)});
    }
  }
}

template <class Field>
std::size_t TorusContext<Field>::index_of(std::span<const int> delta) const {
  const std::size_t radix = static_cast<std::size_t>(order_) + 1;
  std::size_t key = 0;
  std::size_t scale = 1;
  int deg = 0;
  for (int v : delta) {
    if (v < 0) return npos;
    deg += v;
    if (deg > order_) return npos;
    key += static_cast<std::size_t>(v) * scale;
    scale *= radix;
  }
  return dense_index_[key];
}

template <class Field>
bool TorusContext<Field>::compatible(const TorusContext& other) const {
  return this == &other || (b_ == other.b_ && order_ == other.order_ && field_ == other.field_);
}

// ---------------------------------------------------------------------------
// Elements

namespace {

template <class Field>
void require_compatible(const TorusElement<Field>& a, const TorusElement<Field>& b) {
  if (!a.context()->compatible(*b.context())) {
    throw IncompatibleContext("torus elements built over different matrices, orders, or fields");
  }
}

}  // namespace

template <class Field>
TorusElement<Field>::TorusElement(ContextPtr ctx, std::vector<int> base, std::vector<Coeff> coeffs)
    : ctx_(std::move(ctx)), base_(std::move(base)), coeffs_(std::move(coeffs)) {
  if (base_.size() != ctx_->rank()) throw std::invalid_argument("base exponent has wrong length");
  if (coeffs_.size() != ctx_->shift_count()) throw std::invalid_argument("coefficient table has wrong size");
}

template <class Field>
TorusElement<Field> TorusElement<Field>::zero(ContextPtr ctx) {
  const Field& f = ctx->field();
  std::vector<Coeff> c(ctx->shift_count(), f.from_int(0));
  std::vector<int> base(ctx->rank(), 0);
  return TorusElement(std::move(ctx), std::move(base), std::move(c));
}

template <class Field>
TorusElement<Field> TorusElement<Field>::constant(ContextPtr ctx, const Coeff& value) {
  TorusElement e = zero(std::move(ctx));
  e.coeffs_[0] = value;
  return e;
}

template <class Field>
TorusElement<Field> TorusElement<Field>::one(ContextPtr ctx) {
  const Coeff c = ctx->field().from_int(1);
  return constant(std::move(ctx), c);
}

template <class Field>
TorusElement<Field> TorusElement<Field>::monomial(ContextPtr ctx, std::span<const int> alpha) {
  TorusElement e = one(std::move(ctx));
  if (alpha.size() != e.base_.size()) throw std::invalid_argument("monomial exponent has wrong length");
  e.base_.assign(alpha.begin(), alpha.end());
  return e;
}

template <class Field>
bool TorusElement<Field>::is_zero() const {
  const Field& f = ctx_->field();
  return std::all_of(coeffs_.begin(), coeffs_.end(), [&](const Coeff& c) { return f.is_zero(c); });
}

template <class Field>
TorusElement<Field> TorusElement<Field>::rebased(std::span<const int> new_base) const {
  const std::size_t n = base_.size();
  std::vector<int> d(n);
  bool same = true;
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = base_[i] - new_base[i];
    if (d[i] < 0) throw std::logic_error("rebase target must lie below the current base");
    same &= d[i] == 0;
  }
  if (same) return *this;
  const Field& f = ctx_->field();
  TorusElement out = zero(ctx_);
  out.base_.assign(new_base.begin(), new_base.end());
  std::vector<int> s(n);
  for (std::size_t idx = 0; idx < coeffs_.size(); ++idx) {
    if (f.is_zero(coeffs_[idx])) continue;
    const auto& delta = ctx_->shift(idx);
    for (std::size_t i = 0; i < n; ++i) s[i] = delta[i] + d[i];
    const std::size_t j = ctx_->index_of(s);
    if (j != Context::npos) out.coeffs_[j] = coeffs_[idx];
  }
  return out;
}

template <class Field>
TorusElement<Field> TorusElement<Field>::operator-() const {
  TorusElement out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

template <class Field>
TorusElement<Field> TorusElement<Field>::scaled(const Coeff& s) const {
  TorusElement out = *this;
  for (auto& c : out.coeffs_) c = c * s;
  return out;
}

template <class Field>
TorusElement<Field> TorusElement<Field>::times_q_power(int k) const {
  const Field& f = ctx_->field();
  TorusElement out = *this;
  for (auto& c : out.coeffs_) c = f.times_q_power(c, k);
  return out;
}

template <class Field>
std::vector<std::pair<std::vector<int>, typename Field::value_type>> TorusElement<Field>::terms() const {
  const Field& f = ctx_->field();
  std::vector<std::pair<std::vector<int>, Coeff>> out;
  for (std::size_t idx = 0; idx < coeffs_.size(); ++idx) {
    if (f.is_zero(coeffs_[idx])) continue;
    std::vector<int> e = ctx_->shift(idx);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += base_[i];
    out.emplace_back(std::move(e), coeffs_[idx]);
  }
  return out;
}

namespace {

std::vector<int> componentwise_min(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = std::min(a[i], b[i]);
  return m;
}

}  // namespace

template <class Field>
bool TorusElement<Field>::operator==(const TorusElement& o) const {
  require_compatible(*this, o);
  const auto m = componentwise_min(base_, o.base_);
  return rebased(m).coeffs_ == o.rebased(m).coeffs_;
}

template <class Field>
TorusElement<Field> operator+(const TorusElement<Field>& a, const TorusElement<Field>& b) {
  require_compatible(a, b);
  const auto m = componentwise_min(a.base(), b.base());
  const TorusElement<Field> ra = a.rebased(m);
  const TorusElement<Field> rb = b.rebased(m);
  std::vector<typename Field::value_type> c = ra.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = c[i] + rb.coeff(i);
  return TorusElement<Field>(a.context(), m, std::move(c));
}

template <class Field>
TorusElement<Field> operator-(const TorusElement<Field>& a, const TorusElement<Field>& b) {
  return a + (-b);
}

template <class Field>
TorusElement<Field> multiply(const TorusElement<Field>& a, const TorusElement<Field>& b) {
  require_compatible(a, b);
  using Coeff = typename Field::value_type;
  const auto& ctx = *a.context();
  const Field& f = ctx.field();
  const ExchangeMatrix& bm = ctx.matrix();
  const std::size_t n = ctx.rank();
  const std::size_t count = ctx.shift_count();

  // <γa + δl, γb + δr> = <γa,γb> + <γa,δr> + <δl,γb> + <δl,δr>
  const int base_pair = pairing(a.base(), b.base(), bm);
  std::vector<int> left_lin(n, 0), right_lin(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      right_lin[j] += a.base()[i] * bm(i, j);  // γaᵀB
      left_lin[i] += bm(i, j) * b.base()[j];   // B γb
    }
  }
  std::vector<int> pair_with_b(count), pair_with_a(count);
  std::vector<char> a_nz(count), b_nz(count);
  for (std::size_t idx = 0; idx < count; ++idx) {
    const auto& d = ctx.shift(idx);
    int l = 0, r = 0;
    for (std::size_t i = 0; i < n; ++i) {
      l += d[i] * left_lin[i];
      r += right_lin[i] * d[i];
    }
    pair_with_b[idx] = l;
    pair_with_a[idx] = r;
    a_nz[idx] = !f.is_zero(a.coeff(idx));
    b_nz[idx] = !f.is_zero(b.coeff(idx));
  }

  std::vector<Coeff> out(count, f.from_int(0));
  const long total = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 4) if (total > 32)
  for (long o = 0; o < total; ++o) {
    Coeff acc = f.from_int(0);
    for (const auto& e : ctx.plan(static_cast<std::size_t>(o))) {
      if (!a_nz[e.left] || !b_nz[e.right]) continue;
      const int k = base_pair + pair_with_a[e.right] + pair_with_b[e.left] + e.pairing;
      acc = acc + f.times_q_power(a.coeff(e.left) * b.coeff(e.right), -k);
    }
    out[static_cast<std::size_t>(o)] = std::move(acc);
  }

  std::vector<int> base(n);
  for (std::size_t i = 0; i < n; ++i) base[i] = a.base()[i] + b.base()[i];
  return TorusElement<Field>(a.context(), std::move(base), std::move(out));
}

template <class Field>
TorusElement<Field> multiply_reference(const TorusElement<Field>& a, const TorusElement<Field>& b) {
  require_compatible(a, b);
  using Coeff = typename Field::value_type;
  const auto& ctx = *a.context();
  const Field& f = ctx.field();
  const std::size_t n = ctx.rank();
  std::vector<int> base(n);
  for (std::size_t i = 0; i < n; ++i) base[i] = a.base()[i] + b.base()[i];

  std::map<std::vector<int>, Coeff> acc;
  const auto ta = a.terms();
  const auto tb = b.terms();
  std::vector<int> e(n);
  for (const auto& [ea, ca] : ta) {
    for (const auto& [eb, cb] : tb) {
      int deg = 0;
      for (std::size_t i = 0; i < n; ++i) {
        e[i] = ea[i] + eb[i];
        deg += e[i] - base[i];
      }
      if (deg > ctx.order()) continue;
      const Coeff term = f.times_q_power(ca * cb, -pairing(ea, eb, ctx.matrix()));
      auto it = acc.find(e);
      if (it == acc.end()) {
        acc.emplace(e, term);
      } else {
        it->second = it->second + term;
      }
    }
  }

  TorusElement<Field> out = TorusElement<Field>::zero(a.context());
  std::vector<Coeff> coeffs(ctx.shift_count(), f.from_int(0));
  std::vector<int> d(n);
  for (const auto& [exp, c] : acc) {
    for (std::size_t i = 0; i < n; ++i) d[i] = exp[i] - base[i];
    coeffs[ctx.index_of(d)] = c;
  }
  return TorusElement<Field>(a.context(), std::move(base), std::move(coeffs));
}

template <class Field>
TorusElement<Field> invert(const TorusElement<Field>& a) {
  using Coeff = typename Field::value_type;
  const auto& ctx = *a.context();
  const Field& f = ctx.field();
  if (f.is_zero(a.coeff(0))) {
    throw NonInvertible("lowest coefficient of the shift series is zero");
  }
  // a = Σ c_δ Y^{γ+δ} = Y^γ S with S = Σ c_δ q^{<γ,δ>} Y^δ, so a^{-1} = S^{-1} Y^{-γ};
  // invert S degree by degree.
  const std::size_t count = ctx.shift_count();
  std::vector<Coeff> s(count);
  for (std::size_t idx = 0; idx < count; ++idx) {
    s[idx] = f.times_q_power(a.coeff(idx), pairing(a.base(), ctx.shift(idx), ctx.matrix()));
  }
  const Coeff inv0 = f.inverse(s[0]);
  std::vector<Coeff> r(count, f.from_int(0));
  r[0] = inv0;
  for (std::size_t idx = 1; idx < count; ++idx) {
    Coeff acc = f.from_int(0);
    for (const auto& e : ctx.plan(idx)) {
      if (e.left == 0 || f.is_zero(s[e.left]) || f.is_zero(r[e.right])) continue;
      acc = acc + f.times_q_power(s[e.left] * r[e.right], -e.pairing);
    }
    r[idx] = -(inv0 * acc);
  }
  TorusElement<Field> s_inv(a.context(), std::vector<int>(ctx.rank(), 0), std::move(r));
  std::vector<int> neg(a.base());
  for (int& v : neg) v = -v;
  return multiply(s_inv, TorusElement<Field>::monomial(a.context(), neg));
}

template <class Field>
TorusElement<Field> power(const TorusElement<Field>& a, int m) {
  if (m < 0) return power(invert(a), -m);
  TorusElement<Field> result = TorusElement<Field>::one(a.context());
  TorusElement<Field> sq = a;
  while (m > 0) {
    if (m & 1) result = multiply(result, sq);
    m >>= 1;
    if (m > 0) sq = multiply(sq, sq);
  }
  return result;
}

template <class Field>
TorusElement<Field> psi_series(const TorusElement<Field>& x, bool inverted_parameter) {
  using Coeff = typename Field::value_type;
  const auto& ctx = *x.context();
  const Field& f = ctx.field();
  bool base_zero = true;
  for (int v : x.base()) {
    if (v < 0) throw NonTruncating("argument of the quantum dilogarithm has a negative exponent");
    base_zero &= v == 0;
  }
  if (base_zero && !f.is_zero(x.coeff(0))) {
    throw NonTruncating("argument of the quantum dilogarithm has a constant term");
  }
  const int s = inverted_parameter ? -1 : 1;
  const std::vector<int> origin(ctx.rank(), 0);
  TorusElement<Field> result = TorusElement<Field>::one(x.context());
  TorusElement<Field> xn = TorusElement<Field>::one(x.context());
  Coeff pochhammer = f.from_int(1);  // (p²;p²)_n
  for (int m = 1; m <= ctx.order(); ++m) {
    xn = multiply(xn, x);
    const TorusElement<Field> term = xn.rebased(origin);
    if (term.is_zero()) break;
    pochhammer = pochhammer * (f.from_int(1) - f.q_power(2 * s * m));
    Coeff c = f.q_power(s * m) * f.inverse(pochhammer);
    if (m % 2 == 1) c = -c;
    result = result + term.scaled(c);
  }
  return result;
}

template <class Field>
std::vector<std::string> residual_terms(const TorusElement<Field>& a) {
  const TorusElement<Field> r = a - TorusElement<Field>::one(a.context());
  const Field& f = a.context()->field();
  std::vector<std::string> out;
  for (const auto& [e, c] : r.terms()) out.push_back("Y^" + format_vector(e) + ": " + f.to_string(c));
  return out;
}

double evaluate_at_q_one(const TorusElement<RationalFunctionField>& a, std::span<const double> y) {
  double total = 0.0;
  const mpq_class one(1);
  for (const auto& [e, c] : a.terms()) {
    double t = c.eval(one).get_d();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) t *= std::pow(y[i], e[i]);
    }
    total += t;
  }
  return total;
}

std::string format_element(const TorusElement<RationalFunctionField>& a) {
  const auto ts = a.terms();
  if (ts.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) os << " + ";
    os << ts[i].second.to_string() << "*Y^" << format_vector(ts[i].first);
  }
  return os.str();
}

#define QDILOG_INSTANTIATE_TORUS(F)                                                   \
  template class TorusContext<F>;                                                     \
  template class TorusElement<F>;                                                     \
  template TorusElement<F> operator+(const TorusElement<F>&, const TorusElement<F>&); \
  template TorusElement<F> operator-(const TorusElement<F>&, const TorusElement<F>&); \
  template TorusElement<F> multiply(const TorusElement<F>&, const TorusElement<F>&);  \
  template TorusElement<F> multiply_reference(const TorusElement<F>&,                 \
                                              const TorusElement<F>&);                \
  template TorusElement<F> invert(const TorusElement<F>&);                            \
  template TorusElement<F> power(const TorusElement<F>&, int);                        \
  template TorusElement<F> psi_series(const TorusElement<F>&, bool);                  \
  template std::vector<std::string> residual_terms(const TorusElement<F>&);

QDILOG_INSTANTIATE_TORUS(RationalFunctionField)
QDILOG_INSTANTIATE_TORUS(SpecializedField)

}  // namespace qdilog
