#pragma once

#include <cmath>

#include "plurischwarz/holomap.hpp"

namespace plurischwarz {

// ---------------------------------------------------------------------------
// PluriMap: f = h + conj(g) with h, g holomorphic. Membership in the locally
// univalent class (J_h != 0 and J_f != 0) is a pointwise numerical check at
// evaluation time, not a global property of the object.
// ---------------------------------------------------------------------------

struct PluriMap {
  HoloMap h;
  HoloMap g;

  PluriMap(HoloMap h_in, HoloMap g_in) : h(std::move(h_in)), g(std::move(g_in)) {
    require_same_dim(plurischwarz::dim(h), plurischwarz::dim(g), "pluriharmonic pair");
  }

  int dim() const { return plurischwarz::dim(h); }
};

// Everything the pointwise operators need: jets of both parts, the
// dilatation omega = Dg Dh^{-1} and its derivative with the second slot free,
//   Domega<u,v> = D2g<u, Dh^{-1} v> - omega D2h<u, Dh^{-1} v>,
// obtained from the product rule applied to omega Dh = Dg.
struct PluriJet {
  CVector point;
  Jet2 h_jet;
  Jet2 g_jet;
  CMatrix dh_inv;
  CMatrix omega;
  BilinearOp domega;  // asymmetric: first slot is the derivative direction
};

inline PluriJet pluri_jet_from_parts(const Jet2& h_jet, const Jet2& g_jet) {
  PluriJet out;
  out.point = h_jet.point;
  out.h_jet = h_jet;
  out.g_jet = g_jet;
  try {
    out.dh_inv = inverse(h_jet.d1);
  } catch (const SingularMatrix&) {
    throw SingularDerivative("J_h = 0 at the point: dilatation undefined");
  }
  out.omega = g_jet.d1 * out.dh_inv;
  const BilinearOp g_term = right_compose(g_jet.d2, out.dh_inv);
  const BilinearOp h_term = left_apply(out.omega, right_compose(h_jet.d2, out.dh_inv));
  out.domega = g_term - h_term;
  return out;
}

inline PluriJet pluri_jet(const PluriMap& f, const CVector& z) {
  return pluri_jet_from_parts(jet(f.h, z), jet(f.g, z));
}

namespace detail {

// det threshold scaled like (entry scale)^n, matching how determinants grow.
inline double det_scale(const CMatrix& m) {
  return std::pow(std::max(1.0, max_abs(m)), m.dim());
}

inline Complex checked_real_determinant(const CMatrix& m, const char* what) {
  const Complex d = determinant(m);
  if (std::abs(d.imag()) > 1e-10 * std::max(1.0, std::abs(d)))
    throw NumericError(std::string(what) + ": determinant has unexpected imaginary part");
  return d;
}

}  // namespace detail

// J_f = |det Dh|^2 det(I - omega conj(omega)); the determinant factor is
// provably real, and its imaginary rounding residue is asserted small.
inline double jacobian(const PluriJet& pj) {
  const int n = pj.omega.dim();
  const CMatrix factor = CMatrix::identity(n) - pj.omega * conj(pj.omega);
  const Complex det_factor = detail::checked_real_determinant(factor, "jacobian");
  const Complex det_dh = determinant(pj.h_jet.d1);
  return std::norm(det_dh) * det_factor.real();
}

struct SenseReport {
  double norm = 0.0;      // ||omega(z)||
  double jacobian = 0.0;  // J_f(z)
  bool certified = false; // norm < 1, which forces J_f > 0
};

// ||omega|| < 1 certifies a positive Jacobian; the converse fails, so when
// not certified the Jacobian sign is reported without claim.
inline SenseReport sense_preserving_bound(const PluriJet& pj) {
  SenseReport r;
  r.norm = operator_norm(pj.omega);
  r.jacobian = jacobian(pj);
  r.certified = r.norm < 1.0;
  if (r.certified && !(r.jacobian > 0.0))
    throw NumericError("sense-preserving bound violated: ||omega|| < 1 but J_f <= 0");
  return r;
}

// U(z) = (I - conj(omega) omega) Dh(z)
inline CMatrix u_operator(const PluriJet& pj) {
  const int n = pj.omega.dim();
  return (CMatrix::identity(n) - conj(pj.omega) * pj.omega) * pj.h_jet.d1;
}

namespace detail {

// Dh^{-1} (I - conj(omega) omega)^{-1} conj(omega), the matrix prefactor of
// the dilatation term in the pre-Schwarzian.
inline CMatrix dilatation_prefactor(const PluriJet& pj) {
  const int n = pj.omega.dim();
  const CMatrix legs = CMatrix::identity(n) - conj(pj.omega) * pj.omega;
  if (std::abs(determinant(legs)) <= 1e-10 * det_scale(legs))
    throw DegenerateDilatation("det(I - conj(omega) omega) below threshold: outside the admissible class");
  CMatrix legs_inv;
  try {
    legs_inv = inverse(legs);
  } catch (const SingularMatrix&) {
    throw DegenerateDilatation("I - conj(omega) omega singular: outside the admissible class");
  }
  return pj.dh_inv * legs_inv * conj(pj.omega);
}

}  // namespace detail

// P_f<.,.> = Ph<.,.> - Dh^{-1} (I - conj(omega) omega)^{-1} conj(omega) Domega<., Dh .>
inline BilinearOp pre_schwarzian(const PluriJet& pj) {
  const BilinearOp ph = pre_schwarzian(pj.h_jet);
  const CMatrix prefactor = detail::dilatation_prefactor(pj);
  const BilinearOp dil = left_apply(prefactor, right_compose(pj.domega, pj.h_jet.d1));
  return BilinearOp::symmetric_from_raw(pj.omega.dim(), (ph - dil).coeffs());
}

// P_f(z0) equals the holomorphic pre-Schwarzian of the frozen map
// h - conj(omega(z0)) g at z0; assembled at jet level so linear-fractional
// parts are supported.
inline BilinearOp pre_schwarzian_frozen(const PluriJet& pj) {
  (void)detail::dilatation_prefactor(pj);  // same admissibility contract
  const Jet2 frozen = jet_sub(pj.h_jet, left_mul(conj(pj.omega), pj.g_jet));
  return pre_schwarzian(frozen);
}

// S_f<u,v> = P_f<u,v> - (1/(n+1)) ((tau . u) v + (tau . v) u), where
// tau_k = Tr(P_f<e_k, .>). Derivative-free beyond P_f.
inline BilinearOp schwarzian(const PluriJet& pj) {
  const BilinearOp p = pre_schwarzian(pj);
  const int n = p.dim();
  CVector tau(n);
  for (int k = 0; k < n; ++k) tau[k] = trace_slot(p, k);
  return detail::schwarzian_correction(p, tau);
}

inline double jacobian(const PluriMap& f, const CVector& z) { return jacobian(pluri_jet(f, z)); }
inline SenseReport sense_preserving_bound(const PluriMap& f, const CVector& z) {
  return sense_preserving_bound(pluri_jet(f, z));
}
inline CMatrix u_operator(const PluriMap& f, const CVector& z) { return u_operator(pluri_jet(f, z)); }
inline BilinearOp pre_schwarzian(const PluriMap& f, const CVector& z) {
  return pre_schwarzian(pluri_jet(f, z));
}
inline BilinearOp pre_schwarzian_frozen(const PluriMap& f, const CVector& z0) {
  return pre_schwarzian_frozen(pluri_jet(f, z0));
}
inline BilinearOp schwarzian(const PluriMap& f, const CVector& z) {
  return schwarzian(pluri_jet(f, z));
}

// Central-difference estimate of dbar P_f at z: for each of the n conjugate
// coordinate directions, d/dzbar_k = (d/dx_k + i d/dy_k)/2 on the 4-point
// real stencil. Returns the max coefficient magnitude over all directions;
// a value near zero certifies holomorphy of P_f at z numerically.
inline double dbar_pre_schwarzian_norm(const PluriMap& f, const CVector& z, double step = 1e-4) {
  if (!(step > 0.0)) throw DimensionMismatch("dbar probe: step must be positive");
  const int n = f.dim();
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    CVector zp = z, zm = z, wp = z, wm = z;
    zp[k] += step;
    zm[k] -= step;
    wp[k] += Complex(0.0, step);
    wm[k] -= Complex(0.0, step);
    const BilinearOp px = Complex(1.0 / (2.0 * step)) * (pre_schwarzian(f, zp) - pre_schwarzian(f, zm));
    const BilinearOp py = Complex(1.0 / (2.0 * step)) * (pre_schwarzian(f, wp) - pre_schwarzian(f, wm));
    const BilinearOp dbar = Complex(0.5) * (px + Complex(0.0, 1.0) * py);
    worst = std::max(worst, dbar.max_abs_coeff());
  }
  return worst;
}

struct ChainRuleCheck {
  BilinearOp p_lhs, p_rhs;
  BilinearOp s_lhs, s_rhs;
  double p_defect = 0.0;
  double s_defect = 0.0;
};

// Both sides of the chain rules
//   P_{f o phi}(z) = Dphi^{-1} P_f(phi(z))<Dphi ., Dphi .> + Pphi(z)
//   S_{f o phi}(z) = Dphi^{-1} S_f(phi(z))<Dphi ., Dphi .> + Sphi(z)
// computed independently: the left side from jets of the composed parts, the
// right side from the operators of f at phi(z) transported through Dphi.
inline ChainRuleCheck chain_rule_check(const PluriMap& f, const HoloMap& phi, const CVector& z) {
  const Jet2 phi_jet = jet(phi, z);
  const Jet2 h_comp = compose(jet(f.h, phi_jet.value), phi_jet);
  const Jet2 g_comp = compose(jet(f.g, phi_jet.value), phi_jet);
  const PluriJet composed = pluri_jet_from_parts(h_comp, g_comp);

  const PluriJet at_image = pluri_jet(f, phi_jet.value);
  CMatrix dphi_inv;
  try {
    dphi_inv = inverse(phi_jet.d1);
  } catch (const SingularMatrix&) {
    throw SingularDerivative("phi not locally biholomorphic at the point");
  }

  ChainRuleCheck out;
  out.p_lhs = pre_schwarzian(composed);
  out.s_lhs = schwarzian(composed);
  const BilinearOp p_transport = left_apply(dphi_inv, sandwich(pre_schwarzian(at_image), phi_jet.d1));
  const BilinearOp s_transport = left_apply(dphi_inv, sandwich(schwarzian(at_image), phi_jet.d1));
  out.p_rhs = p_transport + pre_schwarzian(phi_jet);
  out.s_rhs = s_transport + schwarzian(phi_jet);
  out.p_defect = max_coeff_difference(out.p_lhs, out.p_rhs);
  out.s_defect = max_coeff_difference(out.s_lhs, out.s_rhs);
  return out;
}

}  // namespace plurischwarz
