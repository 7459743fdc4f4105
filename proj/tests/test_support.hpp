#pragma once

// Shared test-only oracles. These stay independent of the library code paths
// they are used to check: naive loops, explicit polynomial algebra, plain
// stencils.

#include <map>
#include <vector>

#include "plurischwarz/oracles.hpp"

namespace test_support {

using namespace plurischwarz;

// Naive triple-loop matrix product.
inline CMatrix matmul_naive(const CMatrix& a, const CMatrix& b) {
  const int n = a.dim();
  CMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (int k = 0; k < n; ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

// ---- explicit polynomial algebra for the composition oracle ----

// scalar multivariate polynomial: multi-index -> coefficient
using ScalarPoly = std::map<std::vector<int>, Complex>;

inline ScalarPoly poly_mul(const ScalarPoly& a, const ScalarPoly& b) {
  ScalarPoly out;
  for (const auto& [aa, ca] : a)
    for (const auto& [ab, cb] : b) {
      std::vector<int> sum(aa.size());
      for (std::size_t k = 0; k < aa.size(); ++k) sum[k] = aa[k] + ab[k];
      out[sum] += ca * cb;
    }
  return out;
}

inline ScalarPoly poly_pow(const ScalarPoly& a, int e, int n) {
  ScalarPoly out;
  out[std::vector<int>(static_cast<std::size_t>(n), 0)] = 1.0;
  for (int k = 0; k < e; ++k) out = poly_mul(out, a);
  return out;
}

// component polynomials of a PolyMap
inline std::vector<ScalarPoly> components(const PolyMap& f) {
  std::vector<ScalarPoly> out(static_cast<std::size_t>(f.dim()));
  for (const auto& term : f.terms())
    for (int i = 0; i < f.dim(); ++i)
      if (term.coeff[i] != Complex(0.0)) out[static_cast<std::size_t>(i)][term.alpha] += term.coeff[i];
  return out;
}

// Substitutes inner into outer by expanding each monomial: the explicit
// composition oracle for jet composition.
inline PolyMap poly_compose(const PolyMap& outer, const PolyMap& inner) {
  const int n = outer.dim();
  const std::vector<ScalarPoly> inner_comp = components(inner);
  std::vector<PolyTerm> out_terms;
  for (const auto& term : outer.terms()) {
    ScalarPoly expanded;
    expanded[std::vector<int>(static_cast<std::size_t>(n), 0)] = 1.0;
    for (int j = 0; j < n; ++j) {
      const int e = term.alpha[static_cast<std::size_t>(j)];
      if (e > 0) expanded = poly_mul(expanded, poly_pow(inner_comp[static_cast<std::size_t>(j)], e, n));
    }
    for (const auto& [alpha, c] : expanded)
      out_terms.push_back(PolyTerm{alpha, c * term.coeff});
  }
  return PolyMap(n, std::move(out_terms));
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

inline double rel_diff(const CMatrix& a, const CMatrix& b) {
  return max_abs(a - b) / std::max({1.0, max_abs(a), max_abs(b)});
}

}  // namespace test_support
