#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "plurischwarz/errors.hpp"

namespace plurischwarz {

using Complex = std::complex<double>;

inline constexpr double kSingularPivotRel = 1e-13;

// ---------------------------------------------------------------------------
// CVector: dense complex vector in C^n.
// ---------------------------------------------------------------------------

class CVector {
 public:
  CVector() = default;
  explicit CVector(int n) : e_(static_cast<std::size_t>(check_dim(n))) {}
  CVector(std::initializer_list<Complex> init) : e_(init) {
    check_dim(static_cast<int>(e_.size()));
  }
  explicit CVector(std::vector<Complex> entries) : e_(std::move(entries)) {
    check_dim(static_cast<int>(e_.size()));
  }

  static CVector zero(int n) { return CVector(n); }
  static CVector basis(int n, int k) {
    CVector v(n);
    v[k] = 1.0;
    return v;
  }

  int dim() const { return static_cast<int>(e_.size()); }
  Complex& operator[](int i) { return e_[static_cast<std::size_t>(i)]; }
  const Complex& operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
  const std::vector<Complex>& entries() const { return e_; }

 private:
  static int check_dim(int n) {
    if (n < 1) throw DimensionMismatch("vector dimension must be >= 1");
    return n;
  }
  std::vector<Complex> e_;
};

inline void require_same_dim(int a, int b, const char* what) {
  if (a != b) throw DimensionMismatch(std::string(what) + ": dimension mismatch");
}

inline CVector operator+(const CVector& a, const CVector& b) {
  require_same_dim(a.dim(), b.dim(), "vector add");
  CVector r(a.dim());
  for (int i = 0; i < a.dim(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline CVector operator-(const CVector& a, const CVector& b) {
  require_same_dim(a.dim(), b.dim(), "vector sub");
  CVector r(a.dim());
  for (int i = 0; i < a.dim(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline CVector operator*(Complex s, const CVector& a) {
  CVector r(a.dim());
  for (int i = 0; i < a.dim(); ++i) r[i] = s * a[i];
  return r;
}

inline CVector conj(const CVector& a) {
  CVector r(a.dim());
  for (int i = 0; i < a.dim(); ++i) r[i] = std::conj(a[i]);
  return r;
}

// Euclidean norm |z| = sqrt(sum |z_i|^2).
inline double euclid_norm(const CVector& a) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += std::norm(a[i]);
  return std::sqrt(s);
}

inline double max_abs(const CVector& a) {
  double m = 0.0;
  for (int i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i]));
  return m;
}

// Hermitian pairing a . b = sum a_i conj(b_i) (conjugates the second slot).
inline Complex hermitian_dot(const CVector& a, const CVector& b) {
  require_same_dim(a.dim(), b.dim(), "hermitian_dot");
  Complex s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * std::conj(b[i]);
  return s;
}

// Bilinear pairing sum a_i b_i, no conjugation. This is the pairing the
// gradient terms of the Schwarzian use; see schwarzian() in holomap.hpp.
inline Complex bilinear_dot(const CVector& a, const CVector& b) {
  require_same_dim(a.dim(), b.dim(), "bilinear_dot");
  Complex s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

// ---------------------------------------------------------------------------
// CMatrix: dense n x n complex matrix, row-major.
// ---------------------------------------------------------------------------

class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(int n) : n_(check(n)), e_(static_cast<std::size_t>(n) * n) {}
  CMatrix(int n, std::vector<Complex> entries) : n_(check(n)), e_(std::move(entries)) {
    if (e_.size() != static_cast<std::size_t>(n_) * n_)
      throw DimensionMismatch("matrix entries do not fill an n x n square");
  }
  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    n_ = check(static_cast<int>(rows.size()));
    e_.reserve(static_cast<std::size_t>(n_) * n_);
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != n_)
        throw DimensionMismatch("matrix initializer is not square");
      e_.insert(e_.end(), row.begin(), row.end());
    }
  }

  static CMatrix zero(int n) { return CMatrix(n); }
  static CMatrix identity(int n) {
    CMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int dim() const { return n_; }
  Complex& operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * n_ + j]; }
  const Complex& operator()(int i, int j) const {
    return e_[static_cast<std::size_t>(i) * n_ + j];
  }

 private:
  static int check(int n) {
    if (n < 1) throw DimensionMismatch("matrix dimension must be >= 1");
    return n;
  }
  int n_ = 0;
  std::vector<Complex> e_;
};

inline CMatrix operator+(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "matrix add");
  CMatrix r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

inline CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "matrix sub");
  CMatrix r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

inline CMatrix operator*(Complex s, const CMatrix& a) {
  CMatrix r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) r(i, j) = s * a(i, j);
  return r;
}

inline CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "matrix product");
  const int n = a.dim();
  CMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0)) continue;
      for (int j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

inline CVector operator*(const CMatrix& a, const CVector& v) {
  require_same_dim(a.dim(), v.dim(), "matrix-vector product");
  const int n = a.dim();
  CVector r(n);
  for (int i = 0; i < n; ++i) {
    Complex s = 0.0;
    for (int j = 0; j < n; ++j) s += a(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

inline CMatrix conj(const CMatrix& a) {
  CMatrix r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) r(i, j) = std::conj(a(i, j));
  return r;
}

inline CMatrix transpose(const CMatrix& a) {
  CMatrix r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) r(i, j) = a(j, i);
  return r;
}

inline CMatrix adjoint(const CMatrix& a) { return conj(transpose(a)); }

inline double max_abs(const CMatrix& a) {
  double m = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

// Gauss-Jordan with partial pivoting. A pivot below
// kSingularPivotRel * max|entry| of the input signals det = 0 within
// tolerance.
inline CMatrix inverse(const CMatrix& a) {
  const int n = a.dim();
  const double threshold = kSingularPivotRel * max_abs(a);
  CMatrix work = a;
  CMatrix inv = CMatrix::identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(work(r, col)) > std::abs(work(pivot, col))) pivot = r;
    if (std::abs(work(pivot, col)) <= threshold)
      throw SingularMatrix("matrix is singular within tolerance");
    if (pivot != col)
      for (int j = 0; j < n; ++j) {
        std::swap(work(pivot, j), work(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    const Complex p = work(col, col);
    for (int j = 0; j < n; ++j) {
      work(col, j) /= p;
      inv(col, j) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const Complex factor = work(r, col);
      if (factor == Complex(0.0)) continue;
      for (int j = 0; j < n; ++j) {
        work(r, j) -= factor * work(col, j);
        inv(r, j) -= factor * inv(col, j);
      }
    }
  }
  return inv;
}

// Determinant by LU with partial pivoting; never throws, returns 0-ish for
// singular input.
inline Complex determinant(const CMatrix& a) {
  const int n = a.dim();
  CMatrix work = a;
  Complex det = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(work(r, col)) > std::abs(work(pivot, col))) pivot = r;
    if (work(pivot, col) == Complex(0.0)) return 0.0;
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(work(pivot, j), work(col, j));
      det = -det;
    }
    det *= work(col, col);
    for (int r = col + 1; r < n; ++r) {
      const Complex factor = work(r, col) / work(col, col);
      if (factor == Complex(0.0)) continue;
      for (int j = col; j < n; ++j) work(r, j) -= factor * work(col, j);
    }
  }
  return det;
}

namespace detail {

// Cyclic Jacobi for a Hermitian matrix. Each (p, q) pair is phase-rotated to
// a real symmetric 2x2 block and annihilated with a classic Givens rotation.
// Converges to machine precision in a handful of sweeps at the sizes used
// here.
inline void hermitian_eigen(const CMatrix& h_in, std::vector<double>& eigenvalues,
                            CMatrix& eigenvectors) {
  const int n = h_in.dim();
  CMatrix h(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) = 0.5 * (h_in(i, j) + std::conj(h_in(j, i)));
  eigenvectors = CMatrix::identity(n);
  const double scale = std::max(max_abs(h), 1e-300);
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(h(p, q)));
    if (off <= 1e-16 * scale) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex hpq = h(p, q);
        const double apq = std::abs(hpq);
        if (apq <= 1e-18 * scale) continue;
        const Complex phase = hpq / apq;
        const double app = h(p, p).real();
        const double aqq = h(q, q).real();
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Column rotation J: J_pp = c, J_pq = s*phase, J_qp = -s*conj(phase)... applied
        // as H <- J^H H J with J acting on columns (p, q).
        const Complex jpq = s * phase;
        for (int i = 0; i < n; ++i) {
          const Complex hip = h(i, p);
          const Complex hiq = h(i, q);
          h(i, p) = c * hip - std::conj(jpq) * hiq;
          h(i, q) = jpq * hip + c * hiq;
        }
        for (int j = 0; j < n; ++j) {
          const Complex hpj = h(p, j);
          const Complex hqj = h(q, j);
          h(p, j) = c * hpj - jpq * hqj;
          h(q, j) = std::conj(jpq) * hpj + c * hqj;
        }
        for (int i = 0; i < n; ++i) {
          const Complex vip = eigenvectors(i, p);
          const Complex viq = eigenvectors(i, q);
          eigenvectors(i, p) = c * vip - std::conj(jpq) * viq;
          eigenvectors(i, q) = jpq * vip + c * viq;
        }
      }
    }
  }
  eigenvalues.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) eigenvalues[static_cast<std::size_t>(i)] = h(i, i).real();
}

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline double uniform01(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

}  // namespace detail

struct SingularPair {
  double sigma = 0.0;
  CVector right;  // unit right singular vector
};

// Largest singular value and its right singular vector, from the top
// eigenpair of A^H A.
inline SingularPair top_singular(const CMatrix& a) {
  const int n = a.dim();
  const CMatrix gram = adjoint(a) * a;
  std::vector<double> eigenvalues;
  CMatrix vectors;
  detail::hermitian_eigen(gram, eigenvalues, vectors);
  int best = 0;
  for (int i = 1; i < n; ++i)
    if (eigenvalues[static_cast<std::size_t>(i)] > eigenvalues[static_cast<std::size_t>(best)])
      best = i;
  SingularPair out;
  out.sigma = std::sqrt(std::max(eigenvalues[static_cast<std::size_t>(best)], 0.0));
  out.right = CVector(n);
  for (int i = 0; i < n; ++i) out.right[i] = vectors(i, best);
  const double len = euclid_norm(out.right);
  if (len > 0.0) out.right = Complex(1.0 / len) * out.right;
  return out;
}

// Standard operator norm: largest singular value.
inline double operator_norm(const CMatrix& a) { return top_singular(a).sigma; }

// sigma_max / sigma_min; infinity when numerically rank deficient.
inline double condition_number(const CMatrix& a) {
  const CMatrix gram = adjoint(a) * a;
  std::vector<double> eigenvalues;
  CMatrix vectors;
  detail::hermitian_eigen(gram, eigenvalues, vectors);
  double lo = eigenvalues[0], hi = eigenvalues[0];
  for (double ev : eigenvalues) {
    lo = std::min(lo, ev);
    hi = std::max(hi, ev);
  }
  if (lo <= 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(hi / lo);
}

// ---------------------------------------------------------------------------
// BilinearOp: T<u,v>_k = sum_{i,j} c[k][i][j] u_i v_j.
//
// Operators arising as second derivatives are symmetric in (i, j); the
// symmetric_from_raw constructor enforces that by averaging and checking the
// discarded asymmetry. Derivatives of matrix-valued maps (first slot =
// direction, second slot = matrix argument) are genuinely asymmetric and are
// built with from_raw, which measures and records the flag.
// ---------------------------------------------------------------------------

class BilinearOp {
 public:
  BilinearOp() = default;

  static BilinearOp zero(int n) {
    BilinearOp t;
    t.n_ = n;
    t.c_.assign(static_cast<std::size_t>(n) * n * n, Complex(0.0));
    t.symmetric_ = true;
    return t;
  }

  static BilinearOp from_raw(int n, std::vector<Complex> coeffs) {
    BilinearOp t;
    t.n_ = n;
    t.c_ = std::move(coeffs);
    if (t.c_.size() != static_cast<std::size_t>(n) * n * n)
      throw DimensionMismatch("bilinear coefficients do not fill n^3");
    t.symmetric_ = t.measured_asymmetry() <= 1e-12 * std::max(1.0, t.max_abs_coeff());
    return t;
  }

  // For derivative-valued operators: symmetrize (c_kij + c_kji)/2 and insist
  // the discarded asymmetry was numerically negligible.
  static BilinearOp symmetric_from_raw(int n, std::vector<Complex> coeffs) {
    BilinearOp t = from_raw(n, std::move(coeffs));
    const double asym = t.measured_asymmetry();
    if (asym > 1e-12 * std::max(1.0, t.max_abs_coeff()))
      throw NumericError("bilinear operator expected symmetric, asymmetry " + std::to_string(asym));
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          const Complex avg = 0.5 * (t.at(k, i, j) + t.at(k, j, i));
          t.at(k, i, j) = avg;
          t.at(k, j, i) = avg;
        }
    t.symmetric_ = true;
    return t;
  }

  int dim() const { return n_; }
  bool symmetric() const { return symmetric_; }

  Complex& at(int k, int i, int j) {
    return c_[(static_cast<std::size_t>(k) * n_ + i) * n_ + j];
  }
  const Complex& at(int k, int i, int j) const {
    return c_[(static_cast<std::size_t>(k) * n_ + i) * n_ + j];
  }
  const std::vector<Complex>& coeffs() const { return c_; }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const Complex& c : c_) m = std::max(m, std::abs(c));
    return m;
  }

  double measured_asymmetry() const {
    double m = 0.0;
    for (int k = 0; k < n_; ++k)
      for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
          m = std::max(m, std::abs(at(k, i, j) - at(k, j, i)));
    return m;
  }

 private:
  int n_ = 0;
  std::vector<Complex> c_;
  bool symmetric_ = false;
};

inline CVector apply(const BilinearOp& t, const CVector& u, const CVector& v) {
  require_same_dim(t.dim(), u.dim(), "bilinear apply (first slot)");
  require_same_dim(t.dim(), v.dim(), "bilinear apply (second slot)");
  const int n = t.dim();
  CVector out(n);
  for (int k = 0; k < n; ++k) {
    Complex s = 0.0;
    for (int i = 0; i < n; ++i) {
      if (u[i] == Complex(0.0)) continue;
      Complex row = 0.0;
      for (int j = 0; j < n; ++j) row += t.at(k, i, j) * v[j];
      s += u[i] * row;
    }
    out[k] = s;
  }
  return out;
}

namespace detail {

inline std::size_t tensor_index(int n, int k, int i, int j) {
  return (static_cast<std::size_t>(k) * n + i) * n + j;
}

}  // namespace detail

// result<u,v> = m * (t<u,v>)
inline BilinearOp left_apply(const CMatrix& m, const BilinearOp& t) {
  require_same_dim(m.dim(), t.dim(), "left_apply");
  const int n = t.dim();
  std::vector<Complex> c(static_cast<std::size_t>(n) * n * n, Complex(0.0));
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      const Complex mkl = m(k, l);
      if (mkl == Complex(0.0)) continue;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          c[detail::tensor_index(n, k, i, j)] += mkl * t.at(l, i, j);
    }
  return BilinearOp::from_raw(n, std::move(c));
}

// result<u,v> = t<u, m v>
inline BilinearOp right_compose(const BilinearOp& t, const CMatrix& m) {
  require_same_dim(t.dim(), m.dim(), "right_compose");
  const int n = t.dim();
  std::vector<Complex> c(static_cast<std::size_t>(n) * n * n, Complex(0.0));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Complex s = 0.0;
        for (int l = 0; l < n; ++l) s += t.at(k, i, l) * m(l, j);
        c[detail::tensor_index(n, k, i, j)] = s;
      }
  return BilinearOp::from_raw(n, std::move(c));
}

// result<u,v> = t<m u, m v>
inline BilinearOp sandwich(const BilinearOp& t, const CMatrix& m) {
  require_same_dim(t.dim(), m.dim(), "sandwich");
  const int n = t.dim();
  std::vector<Complex> c(static_cast<std::size_t>(n) * n * n, Complex(0.0));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Complex s = 0.0;
        for (int l = 0; l < n; ++l) s += m(l, i) * t.at(k, l, j);
        c[detail::tensor_index(n, k, i, j)] = s;
      }
  return right_compose(BilinearOp::from_raw(n, std::move(c)), m);
}

// Trace of the linear map v -> t<e_k, v>, i.e. sum_i c[i][k][i].
inline Complex trace_slot(const BilinearOp& t, int k) {
  if (k < 0 || k >= t.dim()) throw DimensionMismatch("trace_slot: index out of range");
  Complex s = 0.0;
  for (int i = 0; i < t.dim(); ++i) s += t.at(i, k, i);
  return s;
}

inline BilinearOp operator+(const BilinearOp& a, const BilinearOp& b) {
  require_same_dim(a.dim(), b.dim(), "bilinear add");
  const int n = a.dim();
  std::vector<Complex> c(a.coeffs());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coeffs()[i];
  return BilinearOp::from_raw(n, std::move(c));
}

inline BilinearOp operator-(const BilinearOp& a, const BilinearOp& b) {
  require_same_dim(a.dim(), b.dim(), "bilinear sub");
  const int n = a.dim();
  std::vector<Complex> c(a.coeffs());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.coeffs()[i];
  return BilinearOp::from_raw(n, std::move(c));
}

inline BilinearOp operator*(Complex s, const BilinearOp& a) {
  std::vector<Complex> c(a.coeffs());
  for (Complex& x : c) x *= s;
  return BilinearOp::from_raw(a.dim(), std::move(c));
}

inline double max_coeff_difference(const BilinearOp& a, const BilinearOp& b) {
  require_same_dim(a.dim(), b.dim(), "coefficient difference");
  double m = 0.0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    m = std::max(m, std::abs(a.coeffs()[i] - b.coeffs()[i]));
  return m;
}

// Matrix slice M_u with (M_u)_{kj} = sum_i c[k][i][j] u_i, i.e. t<u, .>.
inline CMatrix first_slot_matrix(const BilinearOp& t, const CVector& u) {
  require_same_dim(t.dim(), u.dim(), "first_slot_matrix");
  const int n = t.dim();
  CMatrix m(n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (int i = 0; i < n; ++i) s += t.at(k, i, j) * u[i];
      m(k, j) = s;
    }
  return m;
}

// Matrix slice N_v with (N_v)_{ki} = sum_j c[k][i][j] v_j, i.e. t<., v>.
inline CMatrix second_slot_matrix(const BilinearOp& t, const CVector& v) {
  require_same_dim(t.dim(), v.dim(), "second_slot_matrix");
  const int n = t.dim();
  CMatrix m(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      Complex s = 0.0;
      for (int j = 0; j < n; ++j) s += t.at(k, i, j) * v[j];
      m(k, i) = s;
    }
  return m;
}

namespace detail {

inline CVector random_unit_vector(int n, std::uint64_t& state) {
  CVector v(n);
  for (int i = 0; i < n; ++i) {
    const double re = 2.0 * uniform01(state) - 1.0;
    const double im = 2.0 * uniform01(state) - 1.0;
    v[i] = Complex(re, im);
  }
  const double len = euclid_norm(v);
  if (len == 0.0) return CVector::basis(n, 0);
  return Complex(1.0 / len) * v;
}

}  // namespace detail

// Norm of a bilinear operator by alternating maximization: with u fixed, the
// best unit v is the top right singular vector of t<u, .>; swap and iterate
// to stagnation, keep the best over restarts. This is a high-confidence lower
// bound estimate, not a certificate; the true norm is a maximum over two
// spheres and alternating ascent can in principle stall at a local maximum.
inline double operator_norm_estimate(const BilinearOp& t, int restarts = 16) {
  if (restarts < 1) throw DimensionMismatch("operator_norm_estimate: restarts must be >= 1");
  const int n = t.dim();
  if (t.max_abs_coeff() == 0.0) return 0.0;
  std::uint64_t state = 0x9e3779b97f4a7c15ULL;  // fixed seed, deterministic
  double best = 0.0;
  for (int r = 0; r < restarts; ++r) {
    CVector u(n);
    if (r == 0) {
      for (int i = 0; i < n; ++i) u[i] = 1.0;
      u = Complex(1.0 / euclid_norm(u)) * u;
    } else {
      u = detail::random_unit_vector(n, state);
    }
    double sigma = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
      const SingularPair sv = top_singular(first_slot_matrix(t, u));
      const SingularPair su = top_singular(second_slot_matrix(t, sv.right));
      const double next = su.sigma;
      u = su.right;
      if (std::abs(next - sigma) <= 1e-10 * std::max(1.0, next)) {
        sigma = next;
        break;
      }
      sigma = next;
    }
    best = std::max(best, sigma);
  }
  return best;
}

}  // namespace plurischwarz
