#pragma once

// Interpolatory quadrature rules on [0, 1] built from shifted Legendre
// polynomials: Gauss-Legendre, left and right Radau, and Lobatto.

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "colloc/error.hpp"
#include "colloc/polynomial.hpp"

namespace colloc {

/// Largest supported stage count. Monomial-basis Lagrange expansion loses
/// accuracy quickly past this point.
inline constexpr int max_stages = 12;

enum class Family { GaussLegendre, RadauLeft, RadauRight, Lobatto };

inline constexpr std::array<Family, 4> all_families{Family::GaussLegendre, Family::RadauLeft,
                                                    Family::RadauRight, Family::Lobatto};

/// Lowercase command-line key for a family.
constexpr std::string_view family_key(Family f) {
  switch (f) {
    case Family::GaussLegendre: return "gauss";
    case Family::RadauLeft: return "radau-left";
    case Family::RadauRight: return "radau-right";
    case Family::Lobatto: return "lobatto";
  }
  return "";
}

inline std::optional<Family> parse_family(std::string_view key) {
  for (Family f : all_families)
    if (family_key(f) == key) return f;
  return std::nullopt;
}

constexpr int min_stages(Family f) { return f == Family::Lobatto ? 2 : 1; }

constexpr bool valid_stage_count(Family f, int m) { return m >= min_stages(f) && m <= max_stages; }

/// Polynomial degree integrated exactly by an m-point rule of the family.
constexpr int exactness_degree(Family f, int m) {
  switch (f) {
    case Family::GaussLegendre: return 2 * m - 1;
    case Family::RadauLeft:
    case Family::RadauRight: return 2 * m - 2;
    case Family::Lobatto: return 2 * m - 3;
  }
  return 0;
}

struct QuadratureRule {
  Family family;
  int m;
  std::vector<double> nodes;    // strictly ascending, inside [0, 1]
  std::vector<double> weights;  // positive, summing to 1
  int exactness_degree;
};

/// Legendre polynomial shifted to [0, 1], normalized so that P(1) = 1, from
/// (k+1) P_{k+1} = (2k+1)(2t-1) P_k - k P_{k-1}. The coefficients are integers
/// below 2^53 for k <= 12 and the recurrence reproduces them exactly.
template <class T = double>
BasicPolynomial<T> shifted_legendre(int k) {
  if (k < 0 || k > max_stages) throw Error("shifted Legendre degree must be in 0.." + std::to_string(max_stages));
  const BasicPolynomial<T> two_t_minus_one{T(-1), T(2)};
  BasicPolynomial<T> prev{T(1)};
  if (k == 0) return prev;
  BasicPolynomial<T> cur = two_t_minus_one;
  for (int n = 1; n < k; ++n) {
    BasicPolynomial<T> next = scale(mul(two_t_minus_one, cur), T(2 * n + 1)) - scale(prev, T(n));
    prev = std::move(cur);
    cur = scale(next, T(1) / T(n + 1));
  }
  return cur;
}

namespace detail {

inline void check_stages(Family f, int m) {
  if (f == Family::Lobatto && m < 2) throw Error("Lobatto requires at least two stages");
  if (m < 1 || m > max_stages) throw Error("stage count must be in 1.." + std::to_string(max_stages));
}

// Polynomial whose roots are the free (non-endpoint) nodes of the rule.
template <class T>
BasicPolynomial<T> interior_node_polynomial(Family f, int m) {
  switch (f) {
    case Family::GaussLegendre: return shifted_legendre<T>(m);
    case Family::RadauLeft: return deflate(shifted_legendre<T>(m) + shifted_legendre<T>(m - 1), T(0));
    case Family::RadauRight: return deflate(shifted_legendre<T>(m) - shifted_legendre<T>(m - 1), T(1));
    case Family::Lobatto: return m == 2 ? BasicPolynomial<T>{T(1)} : derivative(shifted_legendre<T>(m - 1));
  }
  return BasicPolynomial<T>{T(1)};
}

// Integrals of the Lagrange basis for `nodes` from 0 to `upper`, accumulated
// in extended precision and rounded once.
inline std::vector<double> lagrange_integrals(const std::vector<double>& nodes, double upper) {
  const std::vector<extended> wide(nodes.begin(), nodes.end());
  std::vector<double> out(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j)
    out[j] = static_cast<double>(definite_integral(lagrange_basis(wide, j), extended(0), extended(upper)));
  return out;
}

}  // namespace detail

/// Polynomial whose roots in [0, 1] are exactly the m nodes of the rule.
inline Polynomial node_polynomial(Family f, int m) {
  detail::check_stages(f, m);
  switch (f) {
    case Family::GaussLegendre: return shifted_legendre(m);
    case Family::RadauLeft: return shifted_legendre(m) + shifted_legendre(m - 1);
    case Family::RadauRight: return shifted_legendre(m) - shifted_legendre(m - 1);
    case Family::Lobatto: return mul(Polynomial{0.0, -1.0, 1.0}, detail::interior_node_polynomial<double>(f, m));
  }
  return Polynomial{1.0};
}

/// Builds the m-point rule. Endpoint nodes are inserted as exact 0.0 / 1.0
/// and the weights are the integrals of the Lagrange basis over [0, 1] for
/// the (rounded) nodes, so the rule is interpolatory for exactly those nodes.
inline QuadratureRule build_rule(Family f, int m) {
  detail::check_stages(f, m);
  std::vector<double> nodes;
  nodes.reserve(static_cast<std::size_t>(m));
  if (f == Family::RadauLeft || f == Family::Lobatto) nodes.push_back(0.0);
  for (extended r : real_roots_in_unit_interval(detail::interior_node_polynomial<extended>(f, m)))
    nodes.push_back(static_cast<double>(r));
  if (f == Family::RadauRight || f == Family::Lobatto) nodes.push_back(1.0);
  if (static_cast<int>(nodes.size()) != m) throw Error("root count mismatch");

  std::vector<double> weights = detail::lagrange_integrals(nodes, 1.0);
  return QuadratureRule{f, m, std::move(nodes), std::move(weights), exactness_degree(f, m)};
}

/// |sum_i w_i t_i^d - 1/(d+1)|: the rule's error on the monomial t^d.
inline double exactness_residual(const QuadratureRule& rule, int d) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], d);
  return std::abs(sum - 1.0 / (d + 1.0));
}

}  // namespace colloc
