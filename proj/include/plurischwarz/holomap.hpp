#pragma once

#include <map>
#include <variant>
#include <vector>

#include "plurischwarz/complex_linalg.hpp"

namespace plurischwarz {

// ---------------------------------------------------------------------------
// PolyMap: holomorphic polynomial map C^n -> C^n as a merged table of
// (multi-index, coefficient vector) terms. f(z) = sum_alpha coeff_alpha z^alpha.
// ---------------------------------------------------------------------------

struct PolyTerm {
  std::vector<int> alpha;  // multi-index, length n
  CVector coeff;           // length n
};

class PolyMap {
 public:
  PolyMap() = default;
  PolyMap(int n, std::vector<PolyTerm> terms) : n_(n) {
    if (n < 1) throw DimensionMismatch("polynomial map dimension must be >= 1");
    // canonical merged form: one term per multi-index, sorted
    std::map<std::vector<int>, CVector> merged;
    for (auto& t : terms) {
      if (static_cast<int>(t.alpha.size()) != n)
        throw DimensionMismatch("polynomial term multi-index length differs from dimension");
      if (t.coeff.dim() != n)
        throw DimensionMismatch("polynomial term coefficient length differs from dimension");
      for (int a : t.alpha)
        if (a < 0) throw DimensionMismatch("polynomial multi-index entries must be >= 0");
      auto it = merged.find(t.alpha);
      if (it == merged.end())
        merged.emplace(std::move(t.alpha), std::move(t.coeff));
      else
        it->second = it->second + t.coeff;
    }
    terms_.reserve(merged.size());
    for (auto& [alpha, coeff] : merged) terms_.push_back(PolyTerm{alpha, coeff});
  }

  static PolyMap identity(int n) {
    std::vector<PolyTerm> terms;
    for (int k = 0; k < n; ++k) {
      std::vector<int> alpha(static_cast<std::size_t>(n), 0);
      alpha[static_cast<std::size_t>(k)] = 1;
      terms.push_back(PolyTerm{alpha, CVector::basis(n, k)});
    }
    return PolyMap(n, std::move(terms));
  }

  static PolyMap zero(int n) { return PolyMap(n, {}); }

  // f(z) = m z + b
  static PolyMap affine(const CMatrix& m, const CVector& b) {
    const int n = m.dim();
    require_same_dim(n, b.dim(), "affine polynomial map");
    std::vector<PolyTerm> terms;
    terms.push_back(PolyTerm{std::vector<int>(static_cast<std::size_t>(n), 0), b});
    for (int j = 0; j < n; ++j) {
      std::vector<int> alpha(static_cast<std::size_t>(n), 0);
      alpha[static_cast<std::size_t>(j)] = 1;
      CVector col(n);
      for (int i = 0; i < n; ++i) col[i] = m(i, j);
      terms.push_back(PolyTerm{alpha, col});
    }
    return PolyMap(n, std::move(terms));
  }

  int dim() const { return n_; }
  const std::vector<PolyTerm>& terms() const { return terms_; }

  int degree() const {
    int d = 0;
    for (const auto& t : terms_) {
      int total = 0;
      for (int a : t.alpha) total += a;
      d = std::max(d, total);
    }
    return d;
  }

 private:
  int n_ = 0;
  std::vector<PolyTerm> terms_;
};

inline PolyMap operator+(const PolyMap& a, const PolyMap& b) {
  require_same_dim(a.dim(), b.dim(), "polynomial map add");
  std::vector<PolyTerm> terms = a.terms();
  for (const auto& t : b.terms()) terms.push_back(t);
  return PolyMap(a.dim(), std::move(terms));
}

inline PolyMap left_mul(const CMatrix& m, const PolyMap& f) {
  require_same_dim(m.dim(), f.dim(), "polynomial map left multiply");
  std::vector<PolyTerm> terms;
  for (const auto& t : f.terms()) terms.push_back(PolyTerm{t.alpha, m * t.coeff});
  return PolyMap(f.dim(), std::move(terms));
}

inline PolyMap operator*(Complex s, const PolyMap& f) {
  std::vector<PolyTerm> terms;
  for (const auto& t : f.terms()) terms.push_back(PolyTerm{t.alpha, s * t.coeff});
  return PolyMap(f.dim(), std::move(terms));
}

// ---------------------------------------------------------------------------
// MobiusMap: linear-fractional T(z) = (l_1(z)/l_0(z), ..., l_n(z)/l_0(z))
// with l_i(z) = a_{i0} + sum_j a_{ij} z_j and det(a) != 0.
// ---------------------------------------------------------------------------

class MobiusMap {
 public:
  MobiusMap() = default;
  explicit MobiusMap(const CMatrix& a) : a_(a), n_(a.dim() - 1) {
    if (n_ < 1) throw DimensionMismatch("linear-fractional coefficient matrix must be (n+1)x(n+1), n >= 1");
    (void)inverse(a_);  // throws SingularMatrix when det(a) = 0 within tolerance
  }

  static MobiusMap identity(int n) { return MobiusMap(CMatrix::identity(n + 1)); }

  int dim() const { return n_; }
  const CMatrix& coefficients() const { return a_; }

  // l_i(z), i = 0..n
  Complex line(int i, const CVector& z) const {
    Complex s = a_(i, 0);
    for (int j = 0; j < n_; ++j) s += a_(i, j + 1) * z[j];
    return s;
  }

 private:
  CMatrix a_;
  int n_ = 0;
};

using HoloMap = std::variant<PolyMap, MobiusMap>;

inline int dim(const HoloMap& f) {
  return std::visit([](const auto& m) { return m.dim(); }, f);
}

inline HoloMap left_mul(const CMatrix& m, const HoloMap& f) {
  if (std::holds_alternative<PolyMap>(f)) return left_mul(m, std::get<PolyMap>(f));
  // B*T keeps the denominator, mixes the numerator rows.
  const MobiusMap& t = std::get<MobiusMap>(f);
  const int n = t.dim();
  CMatrix a = t.coefficients();
  CMatrix out = a;
  for (int i = 0; i < n; ++i)
    for (int col = 0; col <= n; ++col) {
      Complex s = 0.0;
      for (int j = 0; j < n; ++j) s += m(i, j) * a(j + 1, col);
      out(i + 1, col) = s;
    }
  return MobiusMap(out);
}

// ---------------------------------------------------------------------------
// Jet2: value, first and second derivative of a map at a point.
// ---------------------------------------------------------------------------

struct Jet2 {
  CVector point;
  CVector value;
  CMatrix d1;
  BilinearOp d2;
};

inline Jet2 identity_jet(const CVector& z) {
  return Jet2{z, z, CMatrix::identity(z.dim()), BilinearOp::zero(z.dim())};
}

// jets combine linearly; used for frozen maps h - conj(omega0) g and affine
// transports at jet level
inline Jet2 left_mul(const CMatrix& m, const Jet2& j) {
  return Jet2{j.point, m * j.value, m * j.d1, left_apply(m, j.d2)};
}

inline Jet2 jet_add(const Jet2& a, const Jet2& b) {
  return Jet2{a.point, a.value + b.value, a.d1 + b.d1, a.d2 + b.d2};
}

inline Jet2 jet_sub(const Jet2& a, const Jet2& b) {
  return Jet2{a.point, a.value - b.value, a.d1 - b.d1, a.d2 - b.d2};
}

// Exact jet of a polynomial map by term-wise differentiation of monomials.
inline Jet2 jet(const PolyMap& f, const CVector& z) {
  const int n = f.dim();
  require_same_dim(n, z.dim(), "polynomial jet");
  CVector value(n);
  CMatrix d1(n);
  BilinearOp d2 = BilinearOp::zero(n);

  // power table: pw[j][k] = z_j^k
  const int deg = f.degree();
  std::vector<std::vector<Complex>> pw(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    pw[static_cast<std::size_t>(j)].assign(static_cast<std::size_t>(deg) + 1, Complex(1.0));
    for (int k = 1; k <= deg; ++k)
      pw[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
          pw[static_cast<std::size_t>(j)][static_cast<std::size_t>(k - 1)] * z[j];
  }
  auto monomial = [&](const std::vector<int>& alpha, int drop_a, int drop_b) -> Complex {
    // z^alpha with slots drop_a / drop_b each lowered by one (-1 = none);
    // returns 0 when an exponent would go negative
    Complex prod = 1.0;
    for (int j = 0; j < n; ++j) {
      int e = alpha[static_cast<std::size_t>(j)];
      if (j == drop_a) --e;
      if (j == drop_b) --e;
      if (e < 0) return 0.0;
      prod *= pw[static_cast<std::size_t>(j)][static_cast<std::size_t>(e)];
    }
    return prod;
  };

  for (const auto& term : f.terms()) {
    const Complex base = monomial(term.alpha, -1, -1);
    for (int i = 0; i < n; ++i) value[i] += term.coeff[i] * base;
    for (int j = 0; j < n; ++j) {
      const int aj = term.alpha[static_cast<std::size_t>(j)];
      if (aj == 0) continue;
      const Complex dj = static_cast<double>(aj) * monomial(term.alpha, j, -1);
      for (int i = 0; i < n; ++i) d1(i, j) += term.coeff[i] * dj;
      // second derivatives: compute for k <= j and mirror, so symmetry is exact
      for (int k = 0; k <= j; ++k) {
        const int ak = term.alpha[static_cast<std::size_t>(k)];
        const double factor = (k == j) ? static_cast<double>(aj) * (aj - 1)
                                       : static_cast<double>(aj) * ak;
        if (factor == 0.0) continue;
        const Complex djk = factor * monomial(term.alpha, j, k);
        for (int i = 0; i < n; ++i) {
          d2.at(i, j, k) += term.coeff[i] * djk;
          if (k != j) d2.at(i, k, j) += term.coeff[i] * djk;
        }
      }
    }
  }
  return Jet2{z, value, d1, BilinearOp::symmetric_from_raw(n, d2.coeffs())};
}

// Jet of a linear-fractional map by the closed quotient-rule formulas
// (avoids cancellation that jet division would incur near small l_0):
//   d_j f_i   = a_ij / l0 - l_i a_0j / l0^2
//   d_jk f_i  = -(a_ij a_0k + a_ik a_0j) / l0^2 + 2 l_i a_0j a_0k / l0^3
inline Jet2 jet(const MobiusMap& t, const CVector& z) {
  const int n = t.dim();
  require_same_dim(n, z.dim(), "linear-fractional jet");
  const Complex l0 = t.line(0, z);
  double scale = max_abs(t.coefficients()) * std::max(1.0, max_abs(z));
  if (std::abs(l0) <= 1e-13 * scale)
    throw PoleAtPoint("point lies on the polar hyperplane l0 = 0");
  const CMatrix& a = t.coefficients();
  CVector value(n);
  CMatrix d1(n);
  BilinearOp d2 = BilinearOp::zero(n);
  const Complex inv0 = 1.0 / l0;
  const Complex inv0_2 = inv0 * inv0;
  const Complex inv0_3 = inv0_2 * inv0;
  for (int i = 0; i < n; ++i) {
    const Complex li = t.line(i + 1, z);
    value[i] = li * inv0;
    for (int j = 0; j < n; ++j)
      d1(i, j) = a(i + 1, j + 1) * inv0 - li * a(0, j + 1) * inv0_2;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k <= j; ++k) {
        const Complex v = -(a(i + 1, j + 1) * a(0, k + 1) + a(i + 1, k + 1) * a(0, j + 1)) * inv0_2 +
                          2.0 * li * a(0, j + 1) * a(0, k + 1) * inv0_3;
        d2.at(i, j, k) = v;
        d2.at(i, k, j) = v;
      }
  }
  return Jet2{z, value, d1, BilinearOp::symmetric_from_raw(n, d2.coeffs())};
}

inline Jet2 jet(const HoloMap& f, const CVector& z) {
  return std::visit([&](const auto& m) { return jet(m, z); }, f);
}

// Second-order chain rule: for F = outer o inner,
//   DF  = Douter Dinner
//   D2F<u,v> = D2outer<Dinner u, Dinner v> + Douter D2inner<u,v>.
inline Jet2 compose(const Jet2& outer, const Jet2& inner) {
  require_same_dim(outer.point.dim(), inner.value.dim(), "jet composition");
  const double gap = max_abs(inner.value - outer.point);
  if (gap > 1e-12 * std::max(1.0, max_abs(outer.point)))
    throw JetPointMismatch("outer jet not taken at the inner jet's value");
  Jet2 out;
  out.point = inner.point;
  out.value = outer.value;
  out.d1 = outer.d1 * inner.d1;
  const BilinearOp first = sandwich(outer.d2, inner.d1);
  const BilinearOp second = left_apply(outer.d1, inner.d2);
  out.d2 = BilinearOp::symmetric_from_raw(out.d1.dim(), (first + second).coeffs());
  return out;
}

// ---------------------------------------------------------------------------
// Differential operators for locally biholomorphic maps.
// ---------------------------------------------------------------------------

// Pf<.,.> = Df^{-1} D2f<.,.>
inline BilinearOp pre_schwarzian(const Jet2& j) {
  CMatrix d1_inv;
  try {
    d1_inv = inverse(j.d1);
  } catch (const SingularMatrix&) {
    throw SingularDerivative("derivative singular: map not locally biholomorphic at the point");
  }
  return BilinearOp::symmetric_from_raw(j.d1.dim(), left_apply(d1_inv, j.d2).coeffs());
}

// Gradient of log det Df without forming the log: component k is
// Tr(Df^{-1} D2f<e_k, .>), the directional determinant derivative.
inline CVector grad_log_jacobian(const Jet2& j) {
  const int n = j.d1.dim();
  CMatrix d1_inv;
  try {
    d1_inv = inverse(j.d1);
  } catch (const SingularMatrix&) {
    throw SingularDerivative("derivative singular: log-Jacobian gradient undefined");
  }
  CVector out(n);
  for (int k = 0; k < n; ++k) {
    // Tr(d1_inv * M) with M_{ij} = d2[i][k][j]
    Complex tr = 0.0;
    for (int r = 0; r < n; ++r)
      for (int l = 0; l < n; ++l) tr += d1_inv(r, l) * j.d2.at(l, k, r);
    out[k] = tr;
  }
  return out;
}

namespace detail {

// Subtracts the rank-one gradient correction shared by the holomorphic and
// pluriharmonic Schwarzians:
//   S<u,v> = P<u,v> - (1/(n+1)) ((tau . u) v + (tau . v) u)
// with the unconjugated pairing tau . u = sum_k tau_k u_k.
inline BilinearOp schwarzian_correction(const BilinearOp& p, const CVector& tau) {
  const int n = p.dim();
  BilinearOp out = p;
  const double w = 1.0 / (n + 1.0);
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Complex corr = 0.0;
        if (m == j) corr += tau[i];
        if (m == i) corr += tau[j];
        out.at(m, i, j) -= w * corr;
      }
  return BilinearOp::symmetric_from_raw(n, out.coeffs());
}

}  // namespace detail

// Sf<u,v> = Pf<u,v> - (1/(n+1)) ((grad log J_f . u) v + (grad log J_f . v) u).
// Vanishes exactly on linear-fractional maps.
inline BilinearOp schwarzian(const Jet2& j) {
  return detail::schwarzian_correction(pre_schwarzian(j), grad_log_jacobian(j));
}

inline BilinearOp pre_schwarzian(const HoloMap& f, const CVector& z) {
  return pre_schwarzian(jet(f, z));
}

inline CVector grad_log_jacobian(const HoloMap& f, const CVector& z) {
  return grad_log_jacobian(jet(f, z));
}

inline BilinearOp schwarzian(const HoloMap& f, const CVector& z) {
  return schwarzian(jet(f, z));
}

// Component Schwarzians S^k_{ij}, assembled with their own contractions so
// they can serve as an independent route against schwarzian():
//   S^k_{ij} = sum_l (d2 f_l / dz_i dz_j) (Df^{-1})_{kl}
//              - (1/(n+1)) (delta_ik d_j + delta_jk d_i) log J_f.
// Returned as coefficients c[k][i][j]; rows satisfy S^k_{ij} = S^k_{ji}
// exactly and sum_j S^j_{ij} = 0 up to rounding.
inline BilinearOp oda_components(const Jet2& jt) {
  const int n = jt.d1.dim();
  CMatrix d1_inv;
  try {
    d1_inv = inverse(jt.d1);
  } catch (const SingularMatrix&) {
    throw SingularDerivative("derivative singular: component Schwarzians undefined");
  }
  // d log J_f by the determinant derivative, independent contraction loop
  CVector dlog(n);
  for (int k = 0; k < n; ++k) {
    Complex tr = 0.0;
    for (int r = 0; r < n; ++r)
      for (int l = 0; l < n; ++l) tr += d1_inv(r, l) * jt.d2.at(l, k, r);
    dlog[k] = tr;
  }
  BilinearOp out = BilinearOp::zero(n);
  const double w = 1.0 / (n + 1.0);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) {
        Complex s = 0.0;
        for (int l = 0; l < n; ++l) s += jt.d2.at(l, i, j) * d1_inv(k, l);
        if (i == k) s -= w * dlog[j];
        if (j == k) s -= w * dlog[i];
        out.at(k, i, j) = s;
        out.at(k, j, i) = s;
      }
  return BilinearOp::from_raw(n, out.coeffs());
}

inline BilinearOp oda_components(const HoloMap& f, const CVector& z) {
  return oda_components(jet(f, z));
}

}  // namespace plurischwarz
