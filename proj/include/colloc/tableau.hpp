#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "colloc/error.hpp"
#include "colloc/quadrature.hpp"

namespace colloc {

/// Small dense row-major matrix.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, T fill = T(0)) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix id(n, n);
    for (std::size_t i = 0; i < n; ++i) id(i, i) = T(1);
    return id;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using Matrix = DenseMatrix<double>;

template <class T>
DenseMatrix<T> operator*(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  DenseMatrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
  return out;
}

/// y = A x, with x allowed to be of a different (e.g. complex) scalar type.
template <class T, class U>
std::vector<U> apply(const DenseMatrix<T>& a, std::span<const U> x) {
  std::vector<U> y(a.rows(), U(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

/// Collocation Runge-Kutta method: A(i, j) is the integral of the j-th
/// Lagrange basis polynomial from 0 to c_i.
struct ButcherTableau {
  Family family;
  int m;
  std::vector<double> c;
  std::vector<double> b;
  Matrix A;
};

/// Collocation matrix for arbitrary distinct nodes.
inline Matrix collocation_matrix(const std::vector<double>& nodes) {
  const std::size_t m = nodes.size();
  const std::vector<extended> wide(nodes.begin(), nodes.end());
  std::vector<BasicPolynomial<extended>> primitives;
  primitives.reserve(m);
  for (std::size_t j = 0; j < m; ++j) primitives.push_back(antiderivative(lagrange_basis(wide, j)));

  Matrix a(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) a(i, j) = static_cast<double>(primitives[j](wide[i]) - primitives[j](extended(0)));
  return a;
}

inline ButcherTableau build_tableau(const QuadratureRule& rule) {
  return ButcherTableau{rule.family, rule.m, rule.nodes, rule.weights, collocation_matrix(rule.nodes)};
}

/// Maximum absolute row sum.
template <class T>
T inf_norm(const DenseMatrix<T>& a) {
  T best = T(0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    T sum = T(0);
    for (const T& v : a.row(i)) sum += std::abs(v);
    best = std::max(best, sum);
  }
  return best;
}

/// max_i |sum_j A(i, j) - c_i|; zero in exact arithmetic since the Lagrange
/// basis sums to one.
inline double row_sum_error(const ButcherTableau& tab) {
  double worst = 0.0;
  for (std::size_t i = 0; i < tab.A.rows(); ++i) {
    double sum = 0.0;
    for (double v : tab.A.row(i)) sum += v;
    worst = std::max(worst, std::abs(sum - tab.c[i]));
  }
  return worst;
}

/// Additive slack for the norm bounds. The lower bound is attained exactly
/// whenever a row of A has constant sign.
inline constexpr double bound_slack = 1e-12;

/// The chain t_m <= ||A||_inf <= sqrt(t_m) <= 1 evaluated for one tableau.
struct BoundCheck {
  double t_max;
  double norm_inf;
  double sqrt_t_max;
  bool lower_ok;
  bool upper_ok;
  bool le_one_ok;

  bool all_ok() const { return lower_ok && upper_ok && le_one_ok; }
};

inline BoundCheck bound_check(const ButcherTableau& tab) {
  if (tab.c.empty()) throw Error("empty tableau");
  BoundCheck bc{};
  bc.t_max = tab.c.back();
  bc.norm_inf = inf_norm(tab.A);
  bc.sqrt_t_max = std::sqrt(bc.t_max);
  bc.lower_ok = bc.t_max <= bc.norm_inf + bound_slack;
  bc.upper_ok = bc.norm_inf <= bc.sqrt_t_max + bound_slack;
  bc.le_one_ok = bc.norm_inf <= 1.0 + bound_slack;
  return bc;
}

}  // namespace colloc
