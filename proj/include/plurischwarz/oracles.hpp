#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <string>

#include "plurischwarz/affine.hpp"

namespace plurischwarz {

// ---------------------------------------------------------------------------
// Finite differences in real coordinates (Wirtinger calculus).
// ---------------------------------------------------------------------------

struct FiniteDiffConfig {
  double step = 1e-5;       // first-derivative stencils
  double dbar_step = 1e-4;  // anti-holomorphic probe stencils
};

enum class WirtingerKind { Holomorphic, AntiHolomorphic };

// d/dz_k    = (d/dx_k - i d/dy_k)/2
// d/dzbar_k = (d/dx_k + i d/dy_k)/2
// by central differences on the 4-point real stencil. The evaluator may
// return any type with subtraction and Complex scaling (CVector, CMatrix,
// BilinearOp, Complex).
template <typename Eval>
auto wirtinger_derivative(Eval&& eval, const CVector& z, int k, WirtingerKind kind,
                          double step = 1e-5) {
  CVector xp = z, xm = z, yp = z, ym = z;
  xp[k] += step;
  xm[k] -= step;
  yp[k] += Complex(0.0, step);
  ym[k] -= Complex(0.0, step);
  const Complex half_inv = Complex(1.0 / (2.0 * step));
  auto dx = half_inv * (eval(xp) - eval(xm));
  auto dy = half_inv * (eval(yp) - eval(ym));
  const Complex i_unit(0.0, 1.0);
  if (kind == WirtingerKind::Holomorphic) return Complex(0.5) * (dx - i_unit * dy);
  return Complex(0.5) * (dx + i_unit * dy);
}

// ---------------------------------------------------------------------------
// Deterministic random generation. The raw 64-bit stream is hand-derived so
// identical seeds reproduce identical bytes on every platform, which the
// serialization determinism contract depends on.
// ---------------------------------------------------------------------------

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) { (void)next_u64(); }

  // independent deterministic stream per trial index
  static Rng split(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed;
    (void)detail::splitmix64(s);
    s ^= 0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL;
    return Rng(s);
  }

  std::uint64_t next_u64() { return detail::splitmix64(state_); }
  double uniform01() { return detail::uniform01(state_); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  Complex unit_disk(double radius = 1.0) {
    const double r = radius * std::sqrt(uniform01());
    const double theta = 2.0 * std::numbers::pi * uniform01();
    return Complex(r * std::cos(theta), r * std::sin(theta));
  }

  Complex on_circle() {
    const double theta = 2.0 * std::numbers::pi * uniform01();
    return Complex(std::cos(theta), std::sin(theta));
  }

  CVector vector_in_polydisk(int n, double radius) {
    CVector v(n);
    for (int i = 0; i < n; ++i) v[i] = unit_disk(radius);
    return v;
  }

  CMatrix matrix_in_disk(int n, double radius) {
    CMatrix m(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = unit_disk(radius);
    return m;
  }

  CVector unit_vector(int n) {
    CVector v = vector_in_polydisk(n, 1.0);
    double len = euclid_norm(v);
    while (len < 1e-6) {
      v = vector_in_polydisk(n, 1.0);
      len = euclid_norm(v);
    }
    return Complex(1.0 / len) * v;
  }

  // random matrix rescaled to a prescribed operator norm
  CMatrix matrix_with_norm(int n, double target_norm) {
    CMatrix m = matrix_in_disk(n, 1.0);
    double nn = operator_norm(m);
    while (nn < 1e-8) {
      m = matrix_in_disk(n, 1.0);
      nn = operator_norm(m);
    }
    return Complex(target_norm / nn) * m;
  }

  CMatrix contraction(int n, double max_norm = 0.95) {
    return matrix_with_norm(n, uniform(0.05, max_norm));
  }

  CMatrix invertible(int n) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      CMatrix m = CMatrix::identity(n) + matrix_in_disk(n, 0.5);
      if (std::abs(determinant(m)) > 0.05) return m;
    }
    throw RejectionExhausted("could not draw a well-conditioned invertible matrix");
  }

  CMatrix unitary_diagonal(int n) {
    CMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = on_circle();
    return m;
  }

 private:
  std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// Random pluriharmonic instances.
// ---------------------------------------------------------------------------

struct RandomInstanceConfig {
  std::uint64_t seed = 1;
  int n = 2;
  int degree = 3;
  double coeff_bound = 0.25;  // coefficient disk radius, damped by 1/(1+|alpha|)
  double rho = 0.9;           // required ||omega(probe)|| bound
  double max_condition = 100.0;
};

struct RandomInstance {
  PluriMap map;
  CVector probe;
};

namespace detail {

inline void enumerate_multi_indices(int n, int max_total, int min_total,
                                    std::vector<std::vector<int>>& out) {
  std::vector<int> alpha(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int pos, int used) {
    if (pos == n) {
      if (used >= min_total) out.push_back(alpha);
      return;
    }
    for (int a = 0; a + used <= max_total; ++a) {
      alpha[static_cast<std::size_t>(pos)] = a;
      rec(pos + 1, used + a);
    }
    alpha[static_cast<std::size_t>(pos)] = 0;
  };
  rec(0, 0);
}

inline PolyMap random_poly(Rng& rng, int n, int degree, double bound, int min_degree) {
  std::vector<std::vector<int>> alphas;
  enumerate_multi_indices(n, degree, min_degree, alphas);
  std::vector<PolyTerm> terms;
  for (const auto& alpha : alphas) {
    int total = 0;
    for (int a : alpha) total += a;
    CVector coeff(n);
    for (int i = 0; i < n; ++i) coeff[i] = rng.unit_disk(bound / (1.0 + total));
    terms.push_back(PolyTerm{alpha, coeff});
  }
  return PolyMap(n, std::move(terms));
}

}  // namespace detail

// Locally biholomorphic random polynomial map: identity linear part plus a
// damped random perturbation. Used both for analytic parts and for the inner
// map of chain-rule checks.
inline PolyMap random_biholo_polymap(Rng& rng, int n, int degree, double nonlinear_bound = 0.15) {
  const CMatrix linear = CMatrix::identity(n) + rng.matrix_in_disk(n, 0.4);
  PolyMap base = PolyMap::affine(linear, rng.vector_in_polydisk(n, 0.2));
  if (degree >= 2) base = base + detail::random_poly(rng, n, degree, nonlinear_bound, 2);
  return base;
}

inline MobiusMap random_mobius(Rng& rng, int n) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    CMatrix a = CMatrix::identity(n + 1) + rng.matrix_in_disk(n + 1, 0.3);
    if (std::abs(determinant(a)) > 0.05) return MobiusMap(a);
  }
  throw RejectionExhausted("could not draw an invertible linear-fractional map");
}

// Draws (h, g) with Dh(probe) well conditioned and ||omega(probe)|| < rho,
// by rejection. The co-analytic part is rescaled to a randomly drawn
// dilatation norm (omega is linear in g), so instances spread across the
// admissible range instead of clustering near zero. Deterministic in the
// seed.
inline RandomInstance gen_plurimap(const RandomInstanceConfig& cfg) {
  Rng rng = Rng::split(cfg.seed, 0x706c757269ULL);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const PolyMap h = random_biholo_polymap(rng, cfg.n, cfg.degree, cfg.coeff_bound);
    PolyMap g = detail::random_poly(rng, cfg.n, cfg.degree, cfg.coeff_bound, 0);
    const double target = rng.uniform(0.05, 0.85 * cfg.rho);
    const CVector probe = rng.vector_in_polydisk(cfg.n, 0.25);
    const Jet2 h_jet = jet(h, probe);
    if (std::abs(determinant(h_jet.d1)) < 1e-6) continue;
    if (condition_number(h_jet.d1) >= cfg.max_condition) continue;
    const CMatrix omega = jet(g, probe).d1 * inverse(h_jet.d1);
    const double norm = operator_norm(omega);
    if (norm > 1e-8) g = Complex(target / norm) * g;
    const CMatrix rescaled = jet(g, probe).d1 * inverse(h_jet.d1);
    if (!(operator_norm(rescaled) < cfg.rho)) continue;
    return RandomInstance{PluriMap(h, g), probe};
  }
  throw RejectionExhausted("gen_plurimap: rejection sampling exhausted");
}

// Variant with omega(0) = 0: the co-analytic part has no constant or linear
// terms, probe pinned to the origin.
inline RandomInstance gen_plurimap_omega_zero(const RandomInstanceConfig& cfg) {
  Rng rng = Rng::split(cfg.seed, 0x6f6d6567615aULL);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const PolyMap h = random_biholo_polymap(rng, cfg.n, cfg.degree, cfg.coeff_bound);
    const PolyMap g = detail::random_poly(rng, cfg.n, std::max(cfg.degree, 2), cfg.coeff_bound, 2);
    const CVector probe = CVector::zero(cfg.n);
    const Jet2 h_jet = jet(h, probe);
    if (std::abs(determinant(h_jet.d1)) < 1e-6) continue;
    if (condition_number(h_jet.d1) >= cfg.max_condition) continue;
    return RandomInstance{PluriMap(h, g), probe};
  }
  throw RejectionExhausted("gen_plurimap_omega_zero: rejection sampling exhausted");
}

// ---------------------------------------------------------------------------
// Independent numerical routes used to cross-check the closed formulas.
// ---------------------------------------------------------------------------

// Real Jacobian as the determinant of the 2n x 2n block matrix
// [[Dh, conj(Dg)], [Dg, conj(Dh)]]; independent of the factored formula.
inline double block_jacobian_determinant(const PluriJet& pj) {
  const int n = pj.omega.dim();
  CMatrix block(2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      block(i, j) = pj.h_jet.d1(i, j);
      block(i, j + n) = std::conj(pj.g_jet.d1(i, j));
      block(i + n, j) = pj.g_jet.d1(i, j);
      block(i + n, j + n) = std::conj(pj.h_jet.d1(i, j));
    }
  const Complex d = determinant(block);
  if (std::abs(d.imag()) > 1e-8 * std::max(1.0, std::abs(d)))
    throw NumericError("block Jacobian determinant has unexpected imaginary part");
  return d.real();
}

// P_f via its defining form U^{-1} DU, with DU estimated by Wirtinger central
// differences of z -> U(z). Asymmetric up to stencil noise; compare
// coefficientwise.
inline BilinearOp pre_schwarzian_fd(const PluriMap& f, const CVector& z, double step = 1e-5) {
  const int n = f.dim();
  const CMatrix u_inv = inverse(u_operator(f, z));
  auto eval = [&](const CVector& p) { return u_operator(f, p); };
  BilinearOp out = BilinearOp::zero(n);
  for (int k = 0; k < n; ++k) {
    const CMatrix du_k = wirtinger_derivative(eval, z, k, WirtingerKind::Holomorphic, step);
    const CMatrix slice = u_inv * du_k;
    for (int m = 0; m < n; ++m)
      for (int j = 0; j < n; ++j) out.at(m, k, j) = slice(m, j);
  }
  return BilinearOp::from_raw(n, out.coeffs());
}

// S_f through its gradient-of-log-determinant form: the dilatation term is
// assembled exactly, while grad log det(I - omega conj(omega)) comes from
// finite differences of the real-analytic determinant. Cross-check only; the
// production path is the trace form in schwarzian().
inline BilinearOp schwarzian_logdet_fd(const PluriMap& f, const CVector& z, double step = 1e-5) {
  const PluriJet pj = pluri_jet(f, z);
  const int n = pj.omega.dim();
  const BilinearOp sh = schwarzian(pj.h_jet);
  const CMatrix prefactor = detail::dilatation_prefactor(pj);
  const BilinearOp dil = left_apply(prefactor, right_compose(pj.domega, pj.h_jet.d1));

  auto log_det_legs = [&](const CVector& p) -> Complex {
    const PluriJet local = pluri_jet(f, p);
    const CMatrix legs = CMatrix::identity(n) - local.omega * conj(local.omega);
    const Complex d = determinant(legs);
    if (!(d.real() > 0.0))
      throw DegenerateDilatation("det(I - omega conj(omega)) not positive on the stencil");
    return Complex(std::log(d.real()));
  };
  CVector tau(n);
  for (int k = 0; k < n; ++k)
    tau[k] = wirtinger_derivative(log_det_legs, z, k, WirtingerKind::Holomorphic, step);

  BilinearOp out = sh - dil;
  const double w = 1.0 / (n + 1.0);
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Complex corr = 0.0;
        if (m == j) corr += tau[i];
        if (m == i) corr += tau[j];
        out.at(m, i, j) -= w * corr;
      }
  return BilinearOp::from_raw(n, out.coeffs());
}

// max ||omega(p) conj(omega(p))|| over sample points: the exact holomorphy
// certificate for P_f, checked pointwise.
inline double max_omega_conj_omega(const PluriMap& f, const std::vector<CVector>& points) {
  double worst = 0.0;
  for (const CVector& p : points) {
    const PluriJet pj = pluri_jet(f, p);
    worst = std::max(worst, operator_norm(pj.omega * conj(pj.omega)));
  }
  return worst;
}

// Brute-force lower bound on a bilinear operator norm by random unit pairs.
inline double sampled_operator_norm(const BilinearOp& t, int samples, std::uint64_t seed) {
  Rng rng(seed);
  const int n = t.dim();
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    const CVector u = rng.unit_vector(n);
    const CVector v = rng.unit_vector(n);
    best = std::max(best, euclid_norm(apply(t, u, v)));
  }
  return best;
}

inline double sampled_operator_norm(const CMatrix& a, int samples, std::uint64_t seed) {
  Rng rng(seed);
  const int n = a.dim();
  double best = 0.0;
  for (int s = 0; s < samples; ++s) best = std::max(best, euclid_norm(a * rng.unit_vector(n)));
  return best;
}

// ---------------------------------------------------------------------------
// Named fixtures: exact coefficient instantiations of the worked examples.
// ---------------------------------------------------------------------------

namespace fixtures {

// f(z, w) = (z, w + conj(phi(z))): h = id, g = (0, phi(z)), omega = phi'(z) E21.
// omega conj(omega) = 0, so P_f vanishes identically while omega is
// non-constant for non-linear phi.
inline PluriMap vanishing_pre_schwarzian(const std::vector<Complex>& phi_coeffs) {
  const int n = 2;
  std::vector<PolyTerm> g_terms;
  for (std::size_t k = 0; k < phi_coeffs.size(); ++k) {
    if (phi_coeffs[k] == Complex(0.0)) continue;
    CVector coeff(n);
    coeff[1] = phi_coeffs[k];
    g_terms.push_back(PolyTerm{{static_cast<int>(k), 0}, coeff});
  }
  return PluriMap(PolyMap::identity(n), PolyMap(n, std::move(g_terms)));
}

// Sense-preserving map whose dilatation [[0, t], [-1, 0]] has norm t >= 1:
// J_f = |det Dh|^2 (1+t)^2 > 0 with arbitrarily large ||omega||.
// h is a fixed non-linear biholomorphic map and g = (t h_2, -h_1).
inline PluriMap large_dilatation(double t) {
  const int n = 2;
  std::vector<PolyTerm> h_terms = {
      PolyTerm{{1, 0}, {Complex(1.0), Complex(0.0)}},
      PolyTerm{{0, 1}, {Complex(0.0), Complex(1.0)}},
      PolyTerm{{0, 2}, {Complex(0.25), Complex(0.0)}},
      PolyTerm{{2, 0}, {Complex(0.0), Complex(0.25)}},
  };
  const PolyMap h(n, h_terms);
  std::vector<PolyTerm> g_terms = {
      PolyTerm{{0, 1}, {Complex(t), Complex(0.0)}},
      PolyTerm{{2, 0}, {Complex(t * 0.25), Complex(0.0)}},
      PolyTerm{{1, 0}, {Complex(0.0), Complex(-1.0)}},
      PolyTerm{{0, 2}, {Complex(0.0), Complex(-0.25)}},
  };
  return PluriMap(h, PolyMap(n, g_terms));
}

// f(z, w) = (z + conj(w)/t^2, w - conj(z)): dilatation [[0, 1/t^2], [-1, 0]]
// satisfies det(I - omega conj(omega)) > 0, yet with A = diag(t, -t) the
// matrix I + A omega is singular and the twisted dilatation is undefined.
inline PluriMap twist_degenerate(double t) {
  const int n = 2;
  std::vector<PolyTerm> g_terms = {
      PolyTerm{{0, 1}, {Complex(1.0 / (t * t)), Complex(0.0)}},
      PolyTerm{{1, 0}, {Complex(0.0), Complex(-1.0)}},
  };
  return PluriMap(PolyMap::identity(n), PolyMap(n, g_terms));
}

inline CMatrix twist_degenerate_matrix(double t) {
  CMatrix a(2);
  a(0, 0) = t;
  a(1, 1) = -t;
  return a;
}

// h = id, g = z_i^2/2 e_j (0-based indices): omega = z_i E_ji with
// omega conj(omega) = 0. The off-diagonal stability counterexample.
inline PluriMap stable_offdiag(int n, int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= n || j >= n)
    throw DimensionMismatch("stable_offdiag: indices must be distinct and in range");
  std::vector<int> alpha(static_cast<std::size_t>(n), 0);
  alpha[static_cast<std::size_t>(i)] = 2;
  CVector coeff(n);
  coeff[j] = 0.5;
  return PluriMap(PolyMap::identity(n), PolyMap(n, {PolyTerm{alpha, coeff}}));
}

// h = id, g = (z_i^2 e_j + z_j^2 e_i)/2: the diagonal stability
// counterexample, with omega = z_j E_ij + z_i E_ji.
inline PluriMap stable_diag(int n, int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= n || j >= n)
    throw DimensionMismatch("stable_diag: indices must be distinct and in range");
  std::vector<int> alpha_i(static_cast<std::size_t>(n), 0);
  alpha_i[static_cast<std::size_t>(i)] = 2;
  CVector coeff_j(n);
  coeff_j[j] = 0.5;
  std::vector<int> alpha_j(static_cast<std::size_t>(n), 0);
  alpha_j[static_cast<std::size_t>(j)] = 2;
  CVector coeff_i(n);
  coeff_i[i] = 0.5;
  return PluriMap(PolyMap::identity(n),
                  PolyMap(n, {PolyTerm{alpha_i, coeff_j}, PolyTerm{alpha_j, coeff_i}}));
}

// Closed-form entries of the stability defect for stable_diag under a
// diagonal unitary twist: at positions (i,i) and (j,j) of the slot-evaluated
// matrix defect<u, .>,
//   (lam_i conj(lam_j) - 1) u_i conj(z_j) / (1 - z_i conj(z_j))   at (i, i)
//   (conj(lam_i) lam_j - 1) u_j conj(z_i) / (1 - conj(z_i) z_j)   at (j, j).
inline CMatrix stable_diag_defect_closed_form(int n, int i, int j, Complex lam_i, Complex lam_j,
                                              const CVector& z, const CVector& u) {
  CMatrix m(n);
  m(i, i) = (lam_i * std::conj(lam_j) - 1.0) * u[i] * std::conj(z[j]) /
            (1.0 - z[i] * std::conj(z[j]));
  m(j, j) = (std::conj(lam_i) * lam_j - 1.0) * u[j] * std::conj(z[i]) /
            (1.0 - std::conj(z[i]) * z[j]);
  return m;
}

// The dilatation scenario with ||omega|| < 1 everywhere whose affine
// transport exceeds norm 1: omega(z) = phi(z)/sqrt(n) B with phi a disk
// automorphism and B the first-row-ones matrix. Not the dilatation of any
// polynomial pair, so it is carried as matrix data.
struct ContractionBlowupScenario {
  int n = 2;
  double alpha = 0.5;

  Complex phi(Complex z) const { return (alpha + z) / (1.0 + alpha * z); }

  CMatrix b_pattern() const {
    CMatrix b(n);
    for (int j = 0; j < n; ++j) b(0, j) = 1.0;
    return b;
  }

  CMatrix omega_at(Complex z) const {
    return Complex(phi(z) / std::sqrt(static_cast<double>(n))) * b_pattern();
  }

  // A = -conj(omega(0)), normalizing omega_F(0) = 0
  CMatrix twist() const {
    return Complex(-alpha / std::sqrt(static_cast<double>(n))) * b_pattern();
  }

  // ||omega_F(z)|| = n (1 - alpha^2) |z| / |(n - alpha^2) + (n-1) alpha z|
  double transported_norm_closed_form(Complex z) const {
    const double num = n * (1.0 - alpha * alpha) * std::abs(z);
    const Complex den = Complex(n - alpha * alpha) + (n - 1.0) * alpha * z;
    return num / std::abs(den);
  }

  // transported dilatation norm through the matrix route
  double transported_norm(Complex z) const {
    return operator_norm(dilatation_affine(omega_at(z), twist()));
  }

  // sup over the disk: n (alpha + 1) / (alpha + n)
  double sup_norm_closed_form() const { return n * (alpha + 1.0) / (alpha + n); }

  // Supremum of the transported norm over the disk, all through the matrix
  // route: a polar grid (the sup is attained on the boundary circle, where
  // the formulas extend continuously) followed by golden-section refinement
  // of the boundary angle around the best grid cell.
  double sup_norm_grid(int radial = 100, int angular = 100) const {
    double best = 0.0;
    double best_theta = 0.0;
    for (int r = 1; r <= radial; ++r) {
      const double radius = static_cast<double>(r) / radial;
      for (int a = 0; a < angular; ++a) {
        const double theta = 2.0 * std::numbers::pi * a / angular;
        const double value = transported_norm(std::polar(radius, theta));
        if (value > best) {
          best = value;
          best_theta = theta;
        }
      }
    }
    const double span = 2.0 * std::numbers::pi / angular;
    double lo = best_theta - span, hi = best_theta + span;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = transported_norm(std::polar(1.0, x1));
    double f2 = transported_norm(std::polar(1.0, x2));
    for (int it = 0; it < 80; ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = transported_norm(std::polar(1.0, x2));
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = transported_norm(std::polar(1.0, x1));
      }
    }
    return std::max({best, f1, f2});
  }
};

}  // namespace fixtures

// String-keyed access for the CLI: fixtures that are actual mappings.
// Parameters: "t" (large-dilatation / twist-degenerate), "phi_degree"
// (vanishing pre-Schwarzian), "i"/"j"/"n" (stability pairs, 1-based).
inline PluriMap fixture(const std::string& name, const std::map<std::string, double>& params = {}) {
  auto get = [&](const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  if (name == "example-2.5") {
    const int deg = static_cast<int>(get("phi_degree", 2));
    if (deg < 2) throw UnknownFixture("example-2.5: phi must be non-linear (degree >= 2)");
    std::vector<Complex> phi(static_cast<std::size_t>(deg) + 1, Complex(0.0));
    phi[static_cast<std::size_t>(deg)] = 1.0;
    return fixtures::vanishing_pre_schwarzian(phi);
  }
  if (name == "example-4.1") return fixtures::large_dilatation(get("t", 2.0));
  if (name == "counter-det") return fixtures::twist_degenerate(get("t", 0.5));
  if (name == "stable-offdiag") {
    const int n = static_cast<int>(get("n", 2));
    return fixtures::stable_offdiag(n, static_cast<int>(get("i", 1)) - 1,
                                    static_cast<int>(get("j", 2)) - 1);
  }
  if (name == "stable-diag") {
    const int n = static_cast<int>(get("n", 2));
    return fixtures::stable_diag(n, static_cast<int>(get("i", 1)) - 1,
                                 static_cast<int>(get("j", 2)) - 1);
  }
  if (name == "counter-omega" || name == "shear")
    throw UnknownFixture("fixture '" + name + "' is a scenario, not a map; use the reproduce command");
  throw UnknownFixture("unknown fixture '" + name + "'");
}

// ---------------------------------------------------------------------------
// Shear-construction demo: q(x1, y1, x2, y2) = (e^{x1} cos x2, y1,
// e^{x1} sin x2, y2) on a convex domain is locally univalent with
// J_q = e^{2 x1} > 0, yet collides at (0, 0, -pi, 0) and (0, 0, pi, 0).
// ---------------------------------------------------------------------------

struct ShearDemo {
  using R4 = std::array<double, 4>;

  R4 q(const R4& w) const {
    return R4{std::exp(w[0]) * std::cos(w[2]), w[1], std::exp(w[0]) * std::sin(w[2]), w[3]};
  }

  double jacobian_analytic(const R4& w) const { return std::exp(2.0 * w[0]); }

  // 4x4 central-difference Jacobian determinant
  double jacobian_fd(const R4& w, double step = 1e-5) const {
    CMatrix jac(4);
    for (int j = 0; j < 4; ++j) {
      R4 wp = w, wm = w;
      wp[static_cast<std::size_t>(j)] += step;
      wm[static_cast<std::size_t>(j)] -= step;
      const R4 fp = q(wp), fm = q(wm);
      for (int i = 0; i < 4; ++i)
        jac(i, j) = (fp[static_cast<std::size_t>(i)] - fm[static_cast<std::size_t>(i)]) / (2.0 * step);
    }
    return determinant(jac).real();
  }

  R4 collision_a() const { return R4{0.0, 0.0, -std::numbers::pi, 0.0}; }
  R4 collision_b() const { return R4{0.0, 0.0, std::numbers::pi, 0.0}; }
  R4 collision_value() const { return R4{-1.0, 0.0, 0.0, 0.0}; }
};

}  // namespace plurischwarz
