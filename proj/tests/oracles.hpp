#pragma once

// Test-only reference computations. None of these go through the monomial
// expansions, the extended-precision paths, or the trace recursion the
// library uses, so they can check those routes independently.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include "colloc/tableau.hpp"

namespace oracle {

/// l_j(t) evaluated in product form.
inline double lagrange_product(const std::vector<double>& nodes, std::size_t j, double t) {
  double v = 1.0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (i != j) v *= (t - nodes[i]) / (nodes[j] - nodes[i]);
  return v;
}

/// Composite 5-point Gauss-Legendre on [a, b] with `panels` pieces; exact
/// for polynomials of degree <= 9 up to rounding.
template <class F>
double integrate(F&& f, double a, double b, int panels = 4) {
  static constexpr std::array<double, 5> x{-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                           0.9061798459386640};
  static constexpr std::array<double, 5> w{0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                           0.4786286704993665, 0.2369268850561891};
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (std::size_t k = 0; k < 5; ++k) sum += w[k] * f(mid + 0.5 * h * x[k]);
  }
  return 0.5 * h * sum;
}

/// Collocation matrix by quadrature of the product-form basis (m <= 10).
inline colloc::Matrix collocation_matrix(const std::vector<double>& nodes) {
  const std::size_t m = nodes.size();
  colloc::Matrix a(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      a(i, j) = integrate([&](double t) { return lagrange_product(nodes, j, t); }, 0.0, nodes[i]);
  return a;
}

/// det(lambda I - A) by Gaussian elimination with partial pivoting.
inline std::complex<double> shifted_determinant(const colloc::Matrix& a, std::complex<double> lambda) {
  using C = std::complex<long double>;
  const std::size_t n = a.rows();
  std::vector<C> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m[i * n + j] = (i == j ? C(lambda.real(), lambda.imag()) : C(0)) - C(a(i, j));
  C det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r * n + col]) > std::abs(m[piv * n + col])) piv = r;
    if (m[piv * n + col] == C(0)) return 0.0;
    if (piv != col) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m[col * n + k], m[piv * n + k]);
      det = -det;
    }
    det *= m[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const C f = m[r * n + col] / m[col * n + col];
      for (std::size_t k = col; k < n; ++k) m[r * n + k] -= f * m[col * n + k];
    }
  }
  return {static_cast<double>(det.real()), static_cast<double>(det.imag())};
}

/// Real roots of c0 + c1 t + c2 t^2 (c2 != 0, nonnegative discriminant), ascending.
inline std::array<double, 2> quadratic_roots(double c0, double c1, double c2) {
  const double disc = std::sqrt(c1 * c1 - 4 * c2 * c0);
  const double q = -0.5 * (c1 + std::copysign(disc, c1));
  double r1 = q / c2, r2 = c0 / q;
  if (r1 > r2) std::swap(r1, r2);
  return {r1, r2};
}

/// Sorted points in [lo, hi] with pairwise gaps >= gap.
inline std::vector<double> spaced_points(std::mt19937_64& rng, std::size_t n, double lo, double hi, double gap) {
  const double slack = (hi - lo) - gap * static_cast<double>(n - 1);
  std::uniform_real_distribution<double> u(0.0, slack);
  std::vector<double> pts(n);
  for (double& p : pts) p = u(rng);
  std::sort(pts.begin(), pts.end());
  for (std::size_t i = 0; i < n; ++i) pts[i] += lo + gap * static_cast<double>(i);
  return pts;
}

}  // namespace oracle
