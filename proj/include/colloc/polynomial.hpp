#pragma once

// Dense univariate polynomials with real coefficients stored in ascending
// order (coeffs[k] multiplies t^k), plus the handful of constructions the
// quadrature and tableau code needs: products of linear factors, Lagrange
// basis polynomials and isolation of simple real roots on [0, 1].
//
// Everything is templated on the coefficient type. The public data types use
// double; quadrature and tableau assembly run the monomial expansions in
// `extended` and round once at the end, because Lagrange basis coefficients
// grow like 1e5 at ten stages and cancel heavily when integrated.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <ranges>
#include <utility>
#include <vector>

#include "colloc/error.hpp"

namespace colloc {

using extended = long double;

template <class T>
class BasicPolynomial {
 public:
  using value_type = T;

  /// The zero polynomial, stored as the single coefficient 0.
  BasicPolynomial() : coeffs_{T(0)} {}

  explicit BasicPolynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

  BasicPolynomial(std::initializer_list<T> coeffs) : coeffs_(coeffs) { normalize(); }

  const std::vector<T>& coeffs() const { return coeffs_; }

  /// Degree of the polynomial; the zero polynomial reports 0.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == T(0); }

  /// Coefficient of t^k, zero beyond the stored degree.
  T operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : T(0); }

  T leading() const { return coeffs_.back(); }

  /// Horner evaluation; also accepts complex arguments.
  template <class U>
  U operator()(U t) const {
    U acc = U(coeffs_.back());
    for (std::size_t k = coeffs_.size() - 1; k-- > 0;) acc = acc * t + U(coeffs_[k]);
    return acc;
  }

  template <class U>
  BasicPolynomial<U> cast() const {
    return BasicPolynomial<U>(std::vector<U>(coeffs_.begin(), coeffs_.end()));
  }

  friend bool operator==(const BasicPolynomial&, const BasicPolynomial&) = default;

 private:
  // Only exact trailing zeros are dropped; rounding residue is kept.
  void normalize() {
    while (coeffs_.size() > 1 && coeffs_.back() == T(0)) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(T(0));
  }

  std::vector<T> coeffs_;
};

using Polynomial = BasicPolynomial<double>;

template <class T>
T eval(const BasicPolynomial<T>& p, T t) {
  return p(t);
}

template <class T>
BasicPolynomial<T> derivative(const BasicPolynomial<T>& p) {
  if (p.degree() == 0) return {};
  std::vector<T> out(static_cast<std::size_t>(p.degree()));
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = static_cast<T>(k + 1) * p[k + 1];
  return BasicPolynomial<T>(std::move(out));
}

/// Antiderivative with zero constant term.
template <class T>
BasicPolynomial<T> antiderivative(const BasicPolynomial<T>& p) {
  if (p.is_zero()) return {};
  std::vector<T> out(p.coeffs().size() + 1, T(0));
  for (std::size_t k = 0; k < p.coeffs().size(); ++k) out[k + 1] = p[k] / static_cast<T>(k + 1);
  return BasicPolynomial<T>(std::move(out));
}

template <class T>
T definite_integral(const BasicPolynomial<T>& p, T a, T b) {
  const BasicPolynomial<T> prim = antiderivative(p);
  return prim(b) - prim(a);
}

template <class T>
BasicPolynomial<T> add(const BasicPolynomial<T>& p, const BasicPolynomial<T>& q) {
  std::vector<T> out(std::max(p.coeffs().size(), q.coeffs().size()), T(0));
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = p[k] + q[k];
  return BasicPolynomial<T>(std::move(out));
}

template <class T>
BasicPolynomial<T> scale(const BasicPolynomial<T>& p, T s) {
  std::vector<T> out = p.coeffs();
  for (T& c : out) c *= s;
  return BasicPolynomial<T>(std::move(out));
}

template <class T>
BasicPolynomial<T> mul(const BasicPolynomial<T>& p, const BasicPolynomial<T>& q) {
  if (p.is_zero() || q.is_zero()) return {};
  std::vector<T> out(p.coeffs().size() + q.coeffs().size() - 1, T(0));
  for (std::size_t i = 0; i < p.coeffs().size(); ++i)
    for (std::size_t j = 0; j < q.coeffs().size(); ++j) out[i + j] += p[i] * q[j];
  return BasicPolynomial<T>(std::move(out));
}

template <class T>
BasicPolynomial<T> operator+(const BasicPolynomial<T>& p, const BasicPolynomial<T>& q) {
  return add(p, q);
}

template <class T>
BasicPolynomial<T> operator-(const BasicPolynomial<T>& p, const BasicPolynomial<T>& q) {
  return add(p, scale(q, T(-1)));
}

template <class T>
BasicPolynomial<T> operator*(const BasicPolynomial<T>& p, const BasicPolynomial<T>& q) {
  return mul(p, q);
}

/// Monic polynomial with the given roots; the empty product is 1.
template <std::ranges::input_range R>
auto from_roots(const R& roots) {
  using T = std::ranges::range_value_t<R>;
  std::vector<T> c{T(1)};
  for (T r : roots) {
    c.push_back(T(0));
    for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
    c[0] *= -r;
  }
  return BasicPolynomial<T>(std::move(c));
}

/// Quotient of synthetic division by (t - root). The remainder is discarded,
/// so callers only use this for roots they know to be exact.
template <class T>
BasicPolynomial<T> deflate(const BasicPolynomial<T>& p, T root) {
  if (p.degree() == 0) return {};
  std::vector<T> q(static_cast<std::size_t>(p.degree()));
  T carry = T(0);
  for (std::size_t k = q.size() + 1; k-- > 1;) {
    carry = p[k] + carry * root;
    q[k - 1] = carry;
  }
  return BasicPolynomial<T>(std::move(q));
}

/// Lagrange basis polynomial l_j for the given nodes (j is zero-based).
template <std::ranges::random_access_range R>
auto lagrange_basis(const R& nodes, std::size_t j) {
  using T = std::ranges::range_value_t<R>;
  const std::size_t m = std::ranges::size(nodes);
  if (j >= m) throw Error("lagrange basis index out of range");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = i + 1; k < m; ++k)
      if (nodes[i] == nodes[k]) throw Error("degenerate node set");
  std::vector<T> others;
  others.reserve(m - 1);
  T denom = T(1);
  for (std::size_t i = 0; i < m; ++i) {
    if (i == j) continue;
    denom *= nodes[j] - nodes[i];
    others.push_back(nodes[i]);
  }
  return scale(from_roots(others), T(1) / denom);
}

/// Coefficient-wise comparison with mixed tolerance
/// |a - b| <= abs_tol + rel_tol * max(|a|, |b|).
template <class T>
bool approx_equal(const BasicPolynomial<T>& p, const BasicPolynomial<T>& q, T abs_tol = T(1e-12),
                  T rel_tol = T(1e-10)) {
  using std::abs;
  const std::size_t n = std::max(p.coeffs().size(), q.coeffs().size());
  for (std::size_t k = 0; k < n; ++k) {
    const T a = p[k], b = q[k];
    if (abs(a - b) > abs_tol + rel_tol * std::max(abs(a), abs(b))) return false;
  }
  return true;
}

namespace detail {

template <class T>
std::pair<T, T> value_and_slope(const BasicPolynomial<T>& p, T t) {
  T v = p.leading(), d = T(0);
  for (int k = p.degree(); k-- > 0;) {
    d = d * t + v;
    v = v * t + p[static_cast<std::size_t>(k)];
  }
  return {v, d};
}

// Bisect [lo, hi] (sign change, neither end a root) to width 1e-10, then
// polish with Newton. If Newton escapes the bracket, bisection continues down
// to floating-point resolution instead.
template <class T>
T refine_root(const BasicPolynomial<T>& p, T lo, T hi, T flo) {
  using std::abs;
  auto bisect_to = [&](T width) {
    while (hi - lo > width) {
      const T mid = (lo + hi) / 2;
      if (mid <= lo || mid >= hi) break;
      const T fm = p(mid);
      if (fm == T(0)) {
        lo = hi = mid;
        break;
      }
      if (std::signbit(fm) == std::signbit(flo)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    return (lo + hi) / 2;
  };

  T x = bisect_to(T(1e-10));
  if (lo == hi) return x;
  const T a = lo, b = hi;
  constexpr T eps = std::numeric_limits<T>::epsilon();
  for (int it = 0; it < 50; ++it) {
    const auto [f, df] = value_and_slope(p, x);
    if (f == T(0)) return x;
    if (df == T(0)) break;
    const T next = x - f / df;
    if (!(next >= a && next <= b)) return bisect_to(T(0));
    if (abs(next - x) <= 4 * eps * std::max(T(1), abs(x))) return next;
    x = next;
  }
  return x;
}

}  // namespace detail

/// All roots of p in [0, 1], ascending. Roots must be simple. Exact zeros at
/// t = 0 and t = 1 are factored out first; the rest are bracketed on a grid of
/// 64 * deg(p) intervals and refined. Throws "root count mismatch" unless
/// exactly deg(p) distinct roots are found.
template <class T>
std::vector<T> real_roots_in_unit_interval(const BasicPolynomial<T>& p) {
  if (p.is_zero()) throw Error("root count mismatch");
  std::vector<T> roots;
  BasicPolynomial<T> q = p;
  if (q.degree() > 0 && q[0] == T(0)) {
    roots.push_back(T(0));
    q = deflate(q, T(0));
  }
  bool root_at_one = false;
  if (q.degree() > 0 && q(T(1)) == T(0)) {
    root_at_one = true;
    q = deflate(q, T(1));
  }

  if (q.degree() > 0) {
    const int intervals = 64 * q.degree();
    auto grid = [intervals](int k) { return static_cast<T>(k) / static_cast<T>(intervals); };
    std::vector<T> f(static_cast<std::size_t>(intervals) + 1);
    for (int k = 0; k <= intervals; ++k) f[static_cast<std::size_t>(k)] = q(grid(k));
    for (int k = 0; k <= intervals; ++k) {
      const T fk = f[static_cast<std::size_t>(k)];
      if (fk == T(0)) {
        roots.push_back(grid(k));
        continue;
      }
      if (k == intervals) break;
      const T fn = f[static_cast<std::size_t>(k) + 1];
      if (fn != T(0) && std::signbit(fk) != std::signbit(fn))
        roots.push_back(detail::refine_root(q, grid(k), grid(k + 1), fk));
    }
  }
  if (root_at_one) roots.push_back(T(1));

  std::sort(roots.begin(), roots.end());
  const bool distinct = std::adjacent_find(roots.begin(), roots.end()) == roots.end();
  if (static_cast<int>(roots.size()) != p.degree() || !distinct) throw Error("root count mismatch");
  return roots;
}

}  // namespace colloc
