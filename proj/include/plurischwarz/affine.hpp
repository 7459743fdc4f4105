#pragma once

#include "plurischwarz/plurimap.hpp"

namespace plurischwarz {

// ---------------------------------------------------------------------------
// Affine transformations F = f + A conj(f). The invariance theorems require
// ||A|| < 1; the relaxed constructor exists to reproduce the counterexample
// configurations and records whether the contract holds instead of refusing.
// ---------------------------------------------------------------------------

class AffineTwist {
 public:
  static AffineTwist contractive(const CMatrix& a) {
    AffineTwist t;
    t.a_ = a;
    t.norm_ = operator_norm(a);
    t.contract_ok_ = t.norm_ < 1.0 - 1e-12;
    if (!t.contract_ok_)
      throw ContractViolation("affine twist requires ||A|| < 1");
    return t;
  }

  static AffineTwist relaxed(const CMatrix& a) {
    AffineTwist t;
    t.a_ = a;
    t.norm_ = operator_norm(a);
    t.contract_ok_ = t.norm_ < 1.0 - 1e-12;
    return t;
  }

  const CMatrix& matrix() const { return a_; }
  double norm() const { return norm_; }
  bool contract_ok() const { return contract_ok_; }

 private:
  AffineTwist() = default;
  CMatrix a_;
  double norm_ = 0.0;
  bool contract_ok_ = false;
};

namespace detail {

inline void require_twist_invertible(const CMatrix& i_plus_a_omega) {
  if (std::abs(determinant(i_plus_a_omega)) <= 1e-10 * det_scale(i_plus_a_omega))
    throw SingularTwistedDerivative(
        "det(I + A omega) = 0: twisted holomorphic part singular, transformed dilatation undefined");
}

}  // namespace detail

// omega_F = (omega + conj(A)) (I + A omega)^{-1}
inline CMatrix dilatation_affine(const CMatrix& omega, const CMatrix& a) {
  require_same_dim(omega.dim(), a.dim(), "dilatation transport");
  const int n = omega.dim();
  const CMatrix denom = CMatrix::identity(n) + a * omega;
  detail::require_twist_invertible(denom);
  return (omega + conj(a)) * inverse(denom);
}

// omega = (I - omega_F A)^{-1} (omega_F - conj(A)); inverts dilatation_affine.
// I - omega_F A = (I - conj(A) A)(I + omega A)^{-1} is invertible whenever
// ||A|| < 1 and ||omega|| < 1.
inline CMatrix dilatation_recover(const CMatrix& omega_f, const CMatrix& a) {
  require_same_dim(omega_f.dim(), a.dim(), "dilatation recovery");
  const int n = omega_f.dim();
  return inverse(CMatrix::identity(n) - omega_f * a) * (omega_f - conj(a));
}

// Jets of H = h + A g and G = g + conj(A) h. The twisted derivative
// DH = (I + A omega) Dh must be invertible; when det(I + A omega) = 0 the
// transformed dilatation does not exist anywhere.
inline PluriJet affine_transform(const PluriJet& pj, const AffineTwist& twist) {
  const CMatrix& a = twist.matrix();
  require_same_dim(pj.omega.dim(), a.dim(), "affine transform");
  const int n = pj.omega.dim();
  detail::require_twist_invertible(CMatrix::identity(n) + a * pj.omega);
  const Jet2 h_new = jet_add(pj.h_jet, left_mul(a, pj.g_jet));
  const Jet2 g_new = jet_add(pj.g_jet, left_mul(conj(a), pj.h_jet));
  return pluri_jet_from_parts(h_new, g_new);
}

struct FactorizationCheck {
  CMatrix lhs;            // I - omega_F conj(omega_F)
  CMatrix rhs;            // (I - conj(A)A)(I + omega A)^{-1}(I - omega conj(omega))(I + conj(A)conj(omega))^{-1}
  double det = 0.0;       // det(lhs), provably positive under the contract
  double residual = 0.0;  // max entry |lhs - rhs|
};

// Verifies the factorization of I - omega_F conj(omega_F) for contractive
// pairs and the positivity of its determinant.
inline FactorizationCheck factorization_check(const CMatrix& omega, const CMatrix& a) {
  require_same_dim(omega.dim(), a.dim(), "factorization check");
  if (!(operator_norm(a) < 1.0) || !(operator_norm(omega) < 1.0))
    throw ContractViolation("factorization requires ||A|| < 1 and ||omega|| < 1");
  const int n = omega.dim();
  const CMatrix id = CMatrix::identity(n);
  const CMatrix omega_f = dilatation_affine(omega, a);
  FactorizationCheck out;
  out.lhs = id - omega_f * conj(omega_f);
  out.rhs = (id - conj(a) * a) * inverse(id + omega * a) * (id - omega * conj(omega)) *
            inverse(id + conj(a) * conj(omega));
  out.residual = max_abs(out.lhs - out.rhs);
  out.det = detail::checked_real_determinant(out.lhs, "factorization").real();
  if (out.residual > 1e-11 * std::max(1.0, max_abs(out.lhs)))
    throw NumericError("factorization identity residual unexpectedly large");
  if (!(out.det > 0.0))
    throw NumericError("det(I - omega_F conj(omega_F)) not positive under contractive contract");
  return out;
}

struct AffineInvarianceCheck {
  CMatrix omega_f;       // transported dilatation at the point
  double p_defect = 0.0; // max |P_F - P_f| coefficient
  double s_defect = 0.0; // max |S_F - S_f| coefficient
};

inline AffineInvarianceCheck affine_invariance_check(const PluriMap& f, const AffineTwist& twist,
                                                     const CVector& z) {
  const PluriJet base = pluri_jet(f, z);
  const PluriJet twisted = affine_transform(base, twist);
  AffineInvarianceCheck out;
  out.omega_f = twisted.omega;
  out.p_defect = max_coeff_difference(pre_schwarzian(twisted), pre_schwarzian(base));
  out.s_defect = max_coeff_difference(schwarzian(twisted), schwarzian(base));
  return out;
}

struct BestAffineDeviation {
  Jet2 h_a_jet;       // jet at 0 of the analytic part of the affine deviation
  BilinearOp p_check; // D2 H_a(0); equals P_f(a)
};

// Analytic part of the affine deviation of f at a:
//   H_a(z) = Dh(a)^{-1} (I - conj(omega(a)) omega(a))^{-1} (h(z+a) - conj(omega(a)) g(z+a)),
// assembled at jet level around 0, so DH_a(0) = I and P_f(a) = D2 H_a(0).
inline BestAffineDeviation best_affine_deviation(const PluriMap& f, const CVector& a) {
  const PluriJet pj = pluri_jet(f, a);
  const int n = pj.omega.dim();
  const CMatrix legs = CMatrix::identity(n) - conj(pj.omega) * pj.omega;
  if (std::abs(determinant(legs)) <= 1e-10 * detail::det_scale(legs))
    throw DegenerateDilatation("det(I - conj(omega) omega) below threshold at the base point");
  const CMatrix prefactor = pj.dh_inv * inverse(legs);
  Jet2 combined = jet_sub(pj.h_jet, left_mul(conj(pj.omega), pj.g_jet));
  Jet2 out = left_mul(prefactor, combined);
  out.point = CVector::zero(n);
  return BestAffineDeviation{out, out.d2};
}

// The stability-defect operator
//   (A conj(omega) conj(A) - conj(omega)) (I - omega conj(omega))^{-1} Domega<.,.>,
// identically zero exactly when the pre-Schwarzian is unchanged by
// g -> conj(A) g for the unitary matrix A.
inline BilinearOp stability_defect(const CMatrix& omega, const BilinearOp& domega, const CMatrix& a) {
  require_same_dim(omega.dim(), a.dim(), "stability defect");
  require_same_dim(omega.dim(), domega.dim(), "stability defect");
  const int n = omega.dim();
  const CMatrix id = CMatrix::identity(n);
  if (max_abs(a * adjoint(a) - id) > 1e-10)
    throw NotUnitary("stability defect requires a unitary matrix");
  const CMatrix legs = id - omega * conj(omega);
  const CMatrix m = (a * conj(omega) * conj(a) - conj(omega)) * inverse(legs);
  return left_apply(m, domega);
}

inline BilinearOp stability_defect(const PluriJet& pj, const CMatrix& a) {
  return stability_defect(pj.omega, pj.domega, a);
}

}  // namespace plurischwarz
