#pragma once

// Truncated completed quantum torus.
//
// Generators Y^α, α in Z^n, with q^{<α,β>} Y^α Y^β = Y^{α+β} and <α,β> = αᵀBβ.
// An element is stored as Σ_δ c_δ Y^{γ+δ}: a base exponent γ and coefficients
// on the shifts δ >= 0 with |δ| <= N. Every stored coefficient is exact; terms
// whose shift would exceed N are dropped, never approximated.
//
// Coefficients come from a Field policy: exact rational functions of q, or an
// exact rational specialization q = q0 (a probabilistic identity test).

#include <gmpxx.h>

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "qdilog/exchange.hpp"
#include "qdilog/qcoefficient.hpp"

namespace qdilog {

int pairing(std::span<const int> alpha, std::span<const int> beta, const ExchangeMatrix& b);

struct RationalFunctionField {
  using value_type = QCoefficient;
  static constexpr bool probabilistic = false;

  value_type from_int(long c) const { return value_type(c); }
  value_type q_power(int k) const { return value_type::q_power(k); }
  value_type times_q_power(const value_type& c, int k) const { return c.times_q_power(k); }
  bool is_zero(const value_type& c) const { return c.is_zero(); }
  value_type inverse(const value_type& c) const { return c.inverse(); }
  std::string to_string(const value_type& c) const { return c.to_string(); }
  std::string describe() const { return "exact Q(q)"; }
  bool operator==(const RationalFunctionField&) const = default;
};

// q replaced by an exact rational q0 (q0 != 0, q0 not a root of unity).
// Agreement here is evidence, not proof, of an identity in Q(q).
struct SpecializedField {
  using value_type = mpq_class;
  static constexpr bool probabilistic = true;

  explicit SpecializedField(mpq_class q) : q0(std::move(q)) {}
  mpq_class q0;

  value_type from_int(long c) const { return value_type(c); }
  value_type q_power(int k) const;
  value_type times_q_power(const value_type& c, int k) const { return c == 0 ? c : value_type(c * q_power(k)); }
  bool is_zero(const value_type& c) const { return c == 0; }
  value_type inverse(const value_type& c) const;
  std::string to_string(const value_type& c) const { return c.get_str(); }
  std::string describe() const { return "specialized at q = " + q0.get_str() + " (probabilistic)"; }
  bool operator==(const SpecializedField& o) const { return q0 == o.q0; }
};

// Shared, immutable data for one (B, N, field): the shift table and the
// convolution plan used by the parallel product.
template <class Field>
class TorusContext {
 public:
  TorusContext(ExchangeMatrix b, int order, Field field = Field());

  const ExchangeMatrix& matrix() const { return b_; }
  std::size_t rank() const { return b_.rank(); }
  int order() const { return order_; }
  const Field& field() const { return field_; }

  std::size_t shift_count() const { return shifts_.size(); }
  const std::vector<int>& shift(std::size_t idx) const { return shifts_[idx]; }
  int shift_degree(std::size_t idx) const { return degrees_[idx]; }
  // Index of a shift vector, or npos if it has a negative entry or |δ| > N.
  std::size_t index_of(std::span<const int> delta) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  struct PlanEntry {
    std::size_t left;
    std::size_t right;
    int pairing;  // <δ_left, δ_right>
  };
  // All (δ1, δ2) with δ1 + δ2 equal to the shift at `out`.
  const std::vector<PlanEntry>& plan(std::size_t out) const { return plan_[out]; }

  bool compatible(const TorusContext& other) const;

 private:
  ExchangeMatrix b_;
  int order_;
  Field field_;
  std::vector<std::vector<int>> shifts_;
  std::vector<int> degrees_;
  std::vector<std::size_t> dense_index_;  // mixed radix (N+1)^n lookup
  std::vector<std::vector<PlanEntry>> plan_;
};

template <class Field>
class TorusElement {
 public:
  using Coeff = typename Field::value_type;
  using Context = TorusContext<Field>;
  using ContextPtr = std::shared_ptr<const Context>;

  TorusElement(ContextPtr ctx, std::vector<int> base, std::vector<Coeff> coeffs);

  static TorusElement zero(ContextPtr ctx);
  static TorusElement one(ContextPtr ctx);
  static TorusElement monomial(ContextPtr ctx, std::span<const int> alpha);
  static TorusElement constant(ContextPtr ctx, const Coeff& c);

  const ContextPtr& context() const { return ctx_; }
  const std::vector<int>& base() const { return base_; }
  const Coeff& coeff(std::size_t shift_idx) const { return coeffs_[shift_idx]; }
  const std::vector<Coeff>& coeffs() const { return coeffs_; }
  bool is_zero() const;

  // Same series, expressed against a smaller base (componentwise <= base()).
  TorusElement rebased(std::span<const int> new_base) const;

  TorusElement operator-() const;
  TorusElement scaled(const Coeff& c) const;
  TorusElement times_q_power(int k) const;

  // Sparse list of (absolute exponent, coefficient), nonzero terms only.
  std::vector<std::pair<std::vector<int>, Coeff>> terms() const;

  bool operator==(const TorusElement& o) const;

 private:
  ContextPtr ctx_;
  std::vector<int> base_;
  std::vector<Coeff> coeffs_;
};

template <class Field>
TorusElement<Field> operator+(const TorusElement<Field>& a, const TorusElement<Field>& b);
template <class Field>
TorusElement<Field> operator-(const TorusElement<Field>& a, const TorusElement<Field>& b);

// Graded product, parallelized over output shifts with OpenMP.
template <class Field>
TorusElement<Field> multiply(const TorusElement<Field>& a, const TorusElement<Field>& b);
template <class Field>
TorusElement<Field> operator*(const TorusElement<Field>& a, const TorusElement<Field>& b) {
  return multiply(a, b);
}

// Serial product over a sparse term map with pairings recomputed from B.
// Independent of the shift table and plan; used as a test oracle.
template <class Field>
TorusElement<Field> multiply_reference(const TorusElement<Field>& a, const TorusElement<Field>& b);

// Throws NonInvertible if the lowest (δ = 0) coefficient is zero.
template <class Field>
TorusElement<Field> invert(const TorusElement<Field>& a);

template <class Field>
TorusElement<Field> power(const TorusElement<Field>& a, int m);

// Ψ_p(x) = Σ_n (-p x)^n / (p²;p²)_n with p = q, or p = 1/q when
// `inverted_parameter` is set. Throws NonTruncating unless every term of x
// lies strictly inside the nonnegative cone.
template <class Field>
TorusElement<Field> psi_series(const TorusElement<Field>& x, bool inverted_parameter = false);

// Nonzero terms of a - 1, formatted for reports.
template <class Field>
std::vector<std::string> residual_terms(const TorusElement<Field>& a);

// Commutative q = 1 image evaluated at numeric y (exact field only).
double evaluate_at_q_one(const TorusElement<RationalFunctionField>& a, std::span<const double> y);

std::string format_element(const TorusElement<RationalFunctionField>& a);

using ExactContext = TorusContext<RationalFunctionField>;
using ExactElement = TorusElement<RationalFunctionField>;
using SpecializedContext = TorusContext<SpecializedField>;
using SpecializedElement = TorusElement<SpecializedField>;

}  // namespace qdilog
