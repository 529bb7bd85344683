#pragma once

// Spectrum of the collocation matrix A.
//
// With the node polynomial w(t) = prod (t - t_i) = sum a_k t^k, the
// characteristic polynomial of a nonsingular A is sum k! a_k lambda^k.
// Eigenvectors follow from the monic eigenpolynomial
//   g(t) = t^m + d_{m-1} t^{m-1} + ... + d_1 t,   g - lambda g' = w,
// whose coefficients satisfy the triangular recurrence
//   d_{m-1} = a_{m-1} + m lambda,  d_k = a_k + (k+1) lambda d_{k+1},
// and x_i = g'(t_i). The first equation of the system, -lambda d_1 = a_0, is
// redundant exactly when lambda is a root and serves as a consistency check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "colloc/error.hpp"
#include "colloc/polynomial.hpp"
#include "colloc/quadrature.hpp"
#include "colloc/tableau.hpp"

namespace colloc {

using complex = std::complex<double>;

/// Characteristic polynomial of A in the normalization sum k! a_k lambda^k,
/// i.e. m! det(lambda I - A). Coefficients ascend in lambda.
struct CharPoly {
  std::vector<double> coeffs;

  int stages() const { return static_cast<int>(coeffs.size()) - 1; }
  Polynomial polynomial() const { return Polynomial(coeffs); }
};

struct EigenPair {
  complex lambda;
  std::vector<complex> d;  // d_1 .. d_{m-1}
  std::vector<complex> x;  // x_i = g'(t_i)
  double residual;         // ||A x - lambda x||_inf
  double consistency;      // |lambda d_1 + a_0|

  /// Ascending coefficients of g: [0, d_1, ..., d_{m-1}, 1].
  std::vector<complex> g_coeffs() const {
    std::vector<complex> g{complex(0.0)};
    g.insert(g.end(), d.begin(), d.end());
    g.push_back(complex(1.0));
    return g;
  }

  /// residual / (max(1, |lambda|) ||x||_inf)
  double relative_residual() const {
    double xnorm = 0.0;
    for (const complex& v : x) xnorm = std::max(xnorm, std::abs(v));
    return residual / (std::max(1.0, std::abs(lambda)) * xnorm);
  }
};

struct SpectralReport {
  Family family;
  int m;
  CharPoly charpoly_formula;
  std::vector<double> charpoly_oracle;
  double max_coeff_err;
  std::vector<complex> eigenvalues;
  std::vector<EigenPair> eigenpairs;  // only |lambda| > zero_eigenvalue_cutoff
  double max_eigen_residual;          // largest relative residual over eigenpairs
  double max_consistency;
  bool singular;
};

/// Eigenvalues at or below this magnitude are treated as the zero eigenvalue
/// of a singular tableau and are not reconstructed.
inline constexpr double zero_eigenvalue_cutoff = 1e-8;

namespace detail {

inline extended factorial(int n) {
  extended f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace detail

inline CharPoly charpoly_from_nodes(std::span<const double> nodes) {
  const std::vector<extended> wide(nodes.begin(), nodes.end());
  const auto omega = from_roots(wide);
  CharPoly cp;
  cp.coeffs.resize(nodes.size() + 1);
  for (std::size_t k = 0; k <= nodes.size(); ++k)
    cp.coeffs[k] = static_cast<double>(detail::factorial(static_cast<int>(k)) * omega[k]);
  return cp;
}

/// m! det(lambda I - A) by the Faddeev-LeVerrier trace recursion:
///   M_1 = I, c_{m-k} = -tr(A M_k) / k, M_{k+1} = A M_k + c_{m-k} I.
inline std::vector<double> charpoly_oracle(const Matrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw Error("characteristic polynomial needs a square matrix");
  DenseMatrix<extended> wa(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) wa(i, j) = a(i, j);

  std::vector<extended> c(n + 1, 0);
  c[n] = 1;
  DenseMatrix<extended> mk = DenseMatrix<extended>::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    DenseMatrix<extended> am = wa * mk;
    extended trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += am(i, i);
    c[n - k] = -trace / static_cast<extended>(k);
    for (std::size_t i = 0; i < n; ++i) am(i, i) += c[n - k];
    mk = std::move(am);
  }

  const extended scale = detail::factorial(static_cast<int>(n));
  std::vector<double> out(n + 1);
  for (std::size_t k = 0; k <= n; ++k) out[k] = static_cast<double>(scale * c[k]);
  return out;
}

/// All m roots of the characteristic polynomial by Durand-Kerner iteration,
/// sorted by (real, imaginary). Exact zero constant terms are split off as
/// exact zero roots first.
inline std::vector<complex> eigenvalues(const CharPoly& cp) {
  using wide = std::complex<extended>;
  std::vector<extended> c(cp.coeffs.begin(), cp.coeffs.end());
  while (c.size() > 1 && c.back() == 0) c.pop_back();
  if (c.back() == 0) throw Error("characteristic polynomial has zero leading coefficient");

  std::vector<complex> roots;
  std::size_t shift = 0;
  while (shift + 1 < c.size() && c[shift] == 0) {
    roots.emplace_back(0.0, 0.0);
    ++shift;
  }
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(shift));
  const std::size_t n = c.size() - 1;
  for (extended& v : c) v /= c[n];

  if (n > 0) {
    // Fujiwara bound on the root moduli sets the radius of the start circle.
    extended radius = 0;
    for (std::size_t k = 1; k <= n; ++k)
      radius = std::max(radius, std::pow(std::abs(c[n - k]), extended(1) / static_cast<extended>(k)));
    radius = std::max(extended(2) * radius, extended(1e-3));

    std::vector<wide> z(n);
    for (std::size_t k = 0; k < n; ++k) {
      const extended angle = 2 * std::numbers::pi_v<extended> * static_cast<extended>(k) / static_cast<extended>(n) + extended(0.4);
      z[k] = std::polar(radius, angle);
    }
    auto eval = [&](wide t) {
      wide acc(c[n]);
      for (std::size_t k = n; k-- > 0;) acc = acc * t + c[k];
      return acc;
    };

    bool converged = false;
    for (int sweep = 0; sweep < 500 && !converged; ++sweep) {
      extended max_update = 0;
      for (std::size_t i = 0; i < n; ++i) {
        wide denom(1);
        for (std::size_t j = 0; j < n; ++j)
          if (j != i) denom *= z[i] - z[j];
        const wide step = eval(z[i]) / denom;
        z[i] -= step;
        max_update = std::max(max_update, std::abs(step));
      }
      converged = max_update < extended(1e-13);
    }
    if (!converged) throw Error("eigenvalue iteration stalled");

    // A few extra sweeps settle the last bits once the roots are isolated.
    for (int sweep = 0; sweep < 3; ++sweep)
      for (std::size_t i = 0; i < n; ++i) {
        wide denom(1);
        for (std::size_t j = 0; j < n; ++j)
          if (j != i) denom *= z[i] - z[j];
        z[i] -= eval(z[i]) / denom;
      }

    for (const wide& r : z) {
      complex v(static_cast<double>(r.real()), static_cast<double>(r.imag()));
      if (std::abs(v.imag()) <= 1e-14 * std::max(1.0, std::abs(v))) v.imag(0.0);
      roots.push_back(v);
    }
  }

  std::sort(roots.begin(), roots.end(), [](const complex& a, const complex& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

/// Reconstructs the eigenvector for a nonzero eigenvalue through the
/// eigenpolynomial recurrence and measures it against the collocation matrix
/// built from the same nodes.
inline EigenPair eigenvector_from_eigenvalue(std::span<const double> nodes, complex lambda) {
  using wide = std::complex<extended>;
  if (lambda == complex(0.0)) throw Error("zero eigenvalue: reconstruction requires nonsingular A");
  const std::size_t m = nodes.size();
  if (m == 0) throw Error("empty node set");
  const std::vector<extended> tw(nodes.begin(), nodes.end());
  const auto omega = from_roots(tw);
  const wide lam(lambda.real(), lambda.imag());

  // g[k] for k = 0..m with g[m] = 1 and g[0] = 0.
  std::vector<wide> g(m + 1, wide(0));
  g[m] = 1;
  for (std::size_t k = m - 1; k >= 1; --k) g[k] = omega[k] + static_cast<extended>(k + 1) * lam * g[k + 1];

  EigenPair pair;
  pair.lambda = lambda;
  for (std::size_t k = 1; k < m; ++k) pair.d.emplace_back(static_cast<double>(g[k].real()), static_cast<double>(g[k].imag()));

  pair.x.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    wide slope(0);
    for (std::size_t k = m; k >= 1; --k) slope = slope * tw[i] + static_cast<extended>(k) * g[k];
    pair.x[i] = complex(static_cast<double>(slope.real()), static_cast<double>(slope.imag()));
  }

  const Matrix a = collocation_matrix(std::vector<double>(nodes.begin(), nodes.end()));
  const std::vector<complex> ax = apply(a, std::span<const complex>(pair.x));
  pair.residual = 0.0;
  for (std::size_t i = 0; i < m; ++i) pair.residual = std::max(pair.residual, std::abs(ax[i] - lambda * pair.x[i]));
  const wide closure = lam * g[1] + omega[0];
  pair.consistency = static_cast<double>(std::abs(closure));
  return pair;
}

/// max_k ||A v_k - v_{k+1} / (k+1)||_inf with v_k = (c_1^k, ..., c_m^k).
/// A integrates the interpolant of s^k, which is s^k itself for k < m.
inline double monomial_mapping_check(const ButcherTableau& tab) {
  const std::size_t m = tab.c.size();
  double worst = 0.0;
  std::vector<double> vk(m, 1.0);
  for (std::size_t k = 0; k < m; ++k) {
    const std::vector<double> avk = apply(tab.A, std::span<const double>(vk));
    for (std::size_t i = 0; i < m; ++i) {
      const double target = std::pow(tab.c[i], static_cast<double>(k + 1)) / static_cast<double>(k + 1);
      worst = std::max(worst, std::abs(avk[i] - target));
    }
    for (std::size_t i = 0; i < m; ++i) vk[i] = std::pow(tab.c[i], static_cast<double>(k + 1));
  }
  return worst;
}

inline double max_relative_coeff_error(std::span<const double> formula, std::span<const double> oracle) {
  double worst = 0.0;
  for (std::size_t k = 0; k < std::max(formula.size(), oracle.size()); ++k) {
    const double f = k < formula.size() ? formula[k] : 0.0;
    const double o = k < oracle.size() ? oracle[k] : 0.0;
    worst = std::max(worst, std::abs(f - o) / std::max(1.0, std::abs(f)));
  }
  return worst;
}

inline SpectralReport spectral_report(const QuadratureRule& rule) {
  const ButcherTableau tab = build_tableau(rule);
  SpectralReport rep;
  rep.family = rule.family;
  rep.m = rule.m;
  rep.singular = rule.nodes.front() == 0.0;
  rep.charpoly_formula = charpoly_from_nodes(rule.nodes);
  rep.charpoly_oracle = charpoly_oracle(tab.A);
  rep.max_coeff_err = max_relative_coeff_error(rep.charpoly_formula.coeffs, rep.charpoly_oracle);
  rep.eigenvalues = eigenvalues(rep.charpoly_formula);
  rep.max_eigen_residual = 0.0;
  rep.max_consistency = 0.0;
  for (const complex& lambda : rep.eigenvalues) {
    if (rep.singular && std::abs(lambda) <= zero_eigenvalue_cutoff) continue;
    EigenPair pair = eigenvector_from_eigenvalue(rule.nodes, lambda);
    rep.max_eigen_residual = std::max(rep.max_eigen_residual, pair.relative_residual());
    rep.max_consistency = std::max(rep.max_consistency, pair.consistency);
    rep.eigenpairs.push_back(std::move(pair));
  }
  return rep;
}

}  // namespace colloc
