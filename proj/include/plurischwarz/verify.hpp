#pragma once

#include <chrono>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "plurischwarz/oracles.hpp"
#include "plurischwarz/serialization.hpp"

namespace plurischwarz {

struct SuiteConfig {
  int trials = 20;
  std::uint64_t seed = 1;
  std::vector<int> dims = {1, 2, 3};
};

namespace detail {

inline CheckRecord timed_check(const std::string& name, const std::string& anchor,
                               double tolerance, const std::function<double()>& worst_defect,
                               bool expect_nonzero = false) {
  CheckRecord rec;
  rec.name = name;
  rec.anchor = anchor;
  rec.tolerance = tolerance;
  const auto start = std::chrono::steady_clock::now();
  try {
    rec.defect = worst_defect();
    rec.pass = expect_nonzero ? rec.defect > tolerance : rec.defect <= tolerance;
  } catch (const std::exception&) {
    rec.defect = std::numeric_limits<double>::infinity();
    rec.pass = false;
  }
  rec.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

inline std::uint64_t check_seed(std::uint64_t base, std::uint64_t salt, int dim, int trial) {
  return base ^ (salt * 0x9e3779b97f4a7c15ULL) ^
         (static_cast<std::uint64_t>(dim) << 32) ^ static_cast<std::uint64_t>(trial);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Suite: pre (pre-Schwarzian identities)
// ---------------------------------------------------------------------------

inline std::vector<CheckRecord> suite_pre(const SuiteConfig& cfg) {
  std::vector<CheckRecord> out;
  using detail::check_seed;
  using detail::timed_check;

  out.push_back(timed_check(
      "multiplicative invariance of P", "pre-schwarzian-multiplicative-invariance", 1e-10, [&] {
        double worst = 0.0;
        for (int n : cfg.dims)
          for (int t = 0; t < cfg.trials; ++t) {
            const RandomInstance inst = gen_plurimap({.seed = check_seed(cfg.seed, 1, n, t), .n = n});
            const PluriJet pj = pluri_jet(inst.map, inst.probe);
            Rng rng(check_seed(cfg.seed, 2, n, t));
            const CMatrix a = rng.invertible(n);
            const PluriJet scaled =
                pluri_jet_from_parts(left_mul(a, pj.h_jet), left_mul(conj(a), pj.g_jet));
            worst = std::max(worst,
                             max_coeff_difference(pre_schwarzian(scaled), pre_schwarzian(pj)));
          }
        return worst;
      }));

  out.push_back(timed_check(
      "affine invariance of P", "pre-schwarzian-affine-invariance", 1e-10, [&] {
        double worst = 0.0;
        for (int n : cfg.dims)
          for (int t = 0; t < cfg.trials; ++t) {
            const RandomInstance inst = gen_plurimap({.seed = check_seed(cfg.seed, 3, n, t), .n = n});
            Rng rng(check_seed(cfg.seed, 4, n, t));
            const AffineTwist a = AffineTwist::contractive(rng.contraction(n, 0.9));
            worst = std::max(worst, affine_invariance_check(inst.map, a, inst.probe).p_defect);
          }
        return worst;
      }));

  out.push_back(timed_check(
      "rotation stability of P", "pre-schwarzian-rotation-stability", 1e-11, [&] {
        const Complex rotations[] = {Complex(1.0), Complex(0.0, 1.0),
                                     std::polar(1.0, std::numbers::pi / 5.0)};
        double worst = 0.0;
        for (int n : cfg.dims)
          for (int t = 0; t < cfg.trials; ++t) {
            const RandomInstance inst = gen_plurimap({.seed = check_seed(cfg.seed, 5, n, t), .n = n});
            const BilinearOp p = pre_schwarzian(inst.map, inst.probe);
            for (Complex lambda : rotations) {
              const PluriMap twisted(inst.map.h,
                                     left_mul(std::conj(lambda) * CMatrix::identity(n), inst.map.g));
              worst = std::max(worst,
                               max_coeff_difference(pre_schwarzian(twisted, inst.probe), p));
            }
          }
        return worst;
      }));

  out.push_back(timed_check(
      "frozen-map reduction of P", "pre-schwarzian-frozen-reduction", 1e-11, [&] {
        double worst = 0.0;
        for (int n : cfg.dims)
          for (int t = 0; t < cfg.trials; ++t) {
            const RandomInstance inst = gen_plurimap({.seed = check_seed(cfg.seed, 6, n, t), .n = n});
            worst = std::max(worst, max_coeff_difference(pre_schwarzian(inst.map, inst.probe),
                                                         pre_schwarzian_frozen(inst.map, inst.probe)));
          }
        return worst;
      }));

  out.push_back(timed_check("chain rule for P", "pre-schwarzian-chain-rule", 1e-9, [&] {
    double worst = 0.0;
    for (int n : cfg.dims)
      for (int t = 0; t < cfg.trials; ++t) {
        const RandomInstance inst = gen_plurimap({.seed = check_seed(cfg.seed, 7, n, t), .n = n});
        Rng rng(check_seed(cfg.seed, 8, n, t));
        const PolyMap phi = random_biholo_polymap(rng, n, 2, 0.1);
        worst = std::max(
            worst, chain_rule_check(inst.map, HoloMap(phi), rng.vector_in_polydisk(n, 0.15)).p_defect);
      }
    return worst;
  }));

  out.push_back(timed_check(
      "P against the finite-difference U-derivative", "pre-schwarzian-u-derivative-agreement",
      1e-6, [&] {
        double worst = 0.0;
        for (int n : cfg.dims)
          for (int t = 0; t < cfg.trials; ++t) {
            const RandomInstance inst = gen_plurimap({.seed = check_seed(cfg.seed, 9, n, t), .n = n});
            const BilinearOp exact = pre_schwarzian(inst.map, inst.probe);
            const BilinearOp fd = pre_schwarzian_fd(inst.map, inst.probe);
            worst = std::max(worst, max_coeff_difference(exact, fd) /
                                        std::max(1.0, exact.max_abs_coeff()));
          }
        return worst;
      }));

  out.push_back(timed_check(
      "Jacobian factored form against block determinant", "jacobian-factorization-agreement", 1e-9,
      [&] {
        double worst = 0.0;
        for (int n : cfg.dims)
          for (int t = 0; t < cfg.trials; ++t) {
            const RandomInstance inst = gen_plurimap({.seed = check_seed(cfg.seed, 10, n, t), .n = n});
            const PluriJet pj = pluri_jet(inst.map, inst.probe);
            const double lhs = jacobian(pj);
            const double rhs = block_jacobian_determinant(pj);
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
          }
        return worst;
      }));

  out.push_back(timed_check("planar reduction of P and U", "planar-reduction", 1e-12, [&] {
    double worst = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
      const RandomInstance inst = gen_plurimap({.seed = check_seed(cfg.seed, 11, 1, t), .n = 1});
      const PluriJet pj = pluri_jet(inst.map, inst.probe);
      const Complex hp = pj.h_jet.d1(0, 0);
      const Complex omega = pj.omega(0, 0);
      const Complex planar = pj.h_jet.d2.at(0, 0, 0) / hp -
                             std::conj(omega) * pj.domega.at(0, 0, 0) / (1.0 - std::norm(omega));
      worst = std::max(worst, std::abs(pre_schwarzian(pj).at(0, 0, 0) - planar));
      const Complex u_planar = (1.0 - std::norm(omega)) * hp;
      worst = std::max(worst, std::abs(u_operator(pj)(0, 0) - u_planar));
    }
    return worst;
  }));

  out.push_back(timed_check(
      "best affine approximation recovers P", "best-affine-approximation", 1e-10, [&] {
        double worst = 0.0;
        for (int n : cfg.dims)
          for (int t = 0; t < cfg.trials; ++t) {
            const RandomInstance inst = gen_plurimap({.seed = check_seed(cfg.seed, 12, n, t), .n = n});
            const BestAffineDeviation dev = best_affine_deviation(inst.map, inst.probe);
            worst = std::max(worst, max_coeff_difference(dev.p_check,
                                                         pre_schwarzian(inst.map, inst.probe)));
          }
        return worst;
      }));

  return out;
}

// ---------------------------------------------------------------------------
// Suite: schwarzian (pluriharmonic S_f)
// ---------------------------------------------------------------------------

inline std::vector<CheckRecord> suite_schwarzian(const SuiteConfig& cfg) {
  std::vector<CheckRecord> out;
  using detail::check_seed;
  using detail::timed_check;

  out.push_back(timed_check("affine invariance of S", "schwarzian-affine-invariance", 1e-10, [&] {
    double worst = 0.0;
    for (int n : cfg.dims)
      for (int t = 0; t < cfg.trials; ++t) {
        const RandomInstance inst = gen_plurimap({.seed = check_seed(cfg.seed, 21, n, t), .n = n});
        Rng rng(check_seed(cfg.seed, 22, n, t));
        const AffineTwist a = AffineTwist::contractive(rng.contraction(n, 0.9));
        worst = std::max(worst, affine_invariance_check(inst.map, a, inst.probe).s_defect);
      }
    return worst;
  }));

  out.push_back(timed_check(
      "multiplicative invariance of S", "schwarzian-multiplicative-invariance", 1e-10, [&] {
        double worst = 0.0;
        for (int n : cfg.dims)
          for (int t = 0; t < cfg.trials; ++t) {
            const RandomInstance inst = gen_plurimap({.seed = check_seed(cfg.seed, 23, n, t), .n = n});
            const PluriJet pj = pluri_jet(inst.map, inst.probe);
            Rng rng(check_seed(cfg.seed, 24, n, t));
            const CMatrix b = rng.invertible(n);
            const PluriJet scaled =
                pluri_jet_from_parts(left_mul(b, pj.h_jet), left_mul(conj(b), pj.g_jet));
            worst = std::max(worst, max_coeff_difference(schwarzian(scaled), schwarzian(pj)));
          }
        return worst;
      }));

  out.push_back(timed_check("rotation stability of S", "schwarzian-rotation-stability", 1e-10, [&] {
    const Complex rotations[] = {Complex(0.0, 1.0), std::polar(1.0, std::numbers::pi / 5.0)};
    double worst = 0.0;
    for (int n : cfg.dims)
      for (int t = 0; t < cfg.trials; ++t) {
        const RandomInstance inst = gen_plurimap({.seed = check_seed(cfg.seed, 25, n, t), .n = n});
        const BilinearOp s = schwarzian(inst.map, inst.probe);
        for (Complex lambda : rotations) {
          const PluriMap twisted(inst.map.h,
                                 left_mul(std::conj(lambda) * CMatrix::identity(n), inst.map.g));
          worst = std::max(worst, max_coeff_difference(schwarzian(twisted, inst.probe), s));
        }
      }
    return worst;
  }));

  out.push_back(timed_check("frozen-map reduction of S", "schwarzian-frozen-reduction", 1e-10, [&] {
    double worst = 0.0;
    for (int n : cfg.dims)
      for (int t = 0; t < cfg.trials; ++t) {
        const RandomInstance inst = gen_plurimap({.seed = check_seed(cfg.seed, 26, n, t), .n = n});
        const PluriJet pj = pluri_jet(inst.map, inst.probe);
        const Jet2 frozen = jet_sub(pj.h_jet, left_mul(conj(pj.omega), pj.g_jet));
        worst = std::max(worst, max_coeff_difference(schwarzian(pj), schwarzian(frozen)));
      }
    return worst;
  }));

  out.push_back(timed_check("chain rule for S", "schwarzian-chain-rule", 1e-9, [&] {
    double worst = 0.0;
    for (int n : cfg.dims)
      for (int t = 0; t < cfg.trials; ++t) {
        const RandomInstance inst = gen_plurimap({.seed = check_seed(cfg.seed, 27, n, t), .n = n});
        Rng rng(check_seed(cfg.seed, 28, n, t));
        const PolyMap phi = random_biholo_polymap(rng, n, 2, 0.1);
        worst = std::max(
            worst, chain_rule_check(inst.map, HoloMap(phi), rng.vector_in_polydisk(n, 0.15)).s_defect);
      }
    return worst;
  }));

  out.push_back(timed_check(
      "S vanishes for linear-fractional analytic parts", "schwarzian-mobius-vanishing", 1e-10, [&] {
        double worst = 0.0;
        for (int t = 0; t < cfg.trials; ++t) {
          Rng rng(check_seed(cfg.seed, 29, 2, t));
          const MobiusMap mob = random_mobius(rng, 2);
          const PluriMap f{HoloMap(mob), HoloMap(PolyMap::zero(2))};
          worst = std::max(worst, schwarzian(f, rng.vector_in_polydisk(2, 0.2)).max_abs_coeff());
        }
        return worst;
      }));

  out.push_back(timed_check(
      "trace form of S against the log-determinant gradient form",
      "schwarzian-trace-vs-logdet-form", 1e-6, [&] {
        double worst = 0.0;
        for (int n : cfg.dims)
          for (int t = 0; t < cfg.trials; ++t) {
            const RandomInstance inst = gen_plurimap({.seed = check_seed(cfg.seed, 30, n, t), .n = n});
            const BilinearOp s = schwarzian(inst.map, inst.probe);
            const BilinearOp fd = schwarzian_logdet_fd(inst.map, inst.probe);
            worst = std::max(worst,
                             max_coeff_difference(s, fd) / std::max(1.0, s.max_abs_coeff()));
          }
        return worst;
      }));

  out.push_back(timed_check(
      "constant dilatation gives S_f = Sh", "schwarzian-constant-dilatation", 1e-12, [&] {
        double worst = 0.0;
        for (double t : {1.0, 2.0, 10.0}) {
          const PluriMap f = fixtures::large_dilatation(t);
          const CVector z{Complex(0.15, 0.1), Complex(-0.2, 0.1)};
          worst = std::max(worst, max_coeff_difference(schwarzian(f, z), schwarzian(jet(f.h, z))));
        }
        return worst;
      }));

  return out;
}

// ---------------------------------------------------------------------------
// Suite: affine (dilatation transport and factorization)
// ---------------------------------------------------------------------------

inline std::vector<CheckRecord> suite_affine(const SuiteConfig& cfg) {
  std::vector<CheckRecord> out;
  using detail::check_seed;
  using detail::timed_check;

  out.push_back(timed_check("factorization identity residual", "factorization-identity", 1e-12, [&] {
    double worst = 0.0;
    for (int n : {2, 3, 4})
      for (int t = 0; t < cfg.trials; ++t) {
        Rng rng(check_seed(cfg.seed, 41, n, t));
        worst = std::max(worst, factorization_check(rng.contraction(n), rng.contraction(n)).residual);
      }
    return worst;
  }));

  out.push_back(timed_check(
      "factorization determinant positivity", "factorization-determinant-positive", 0.0, [&] {
        for (int n : {2, 3, 4})
          for (int t = 0; t < cfg.trials; ++t) {
            Rng rng(check_seed(cfg.seed, 42, n, t));
            if (!(factorization_check(rng.contraction(n), rng.contraction(n)).det > 0.0))
              return std::numeric_limits<double>::infinity();
          }
        return 0.0;
      }));

  out.push_back(timed_check("dilatation transport round trip", "dilatation-transport-roundtrip",
                            1e-12, [&] {
                              double worst = 0.0;
                              for (int n : cfg.dims)
                                for (int t = 0; t < cfg.trials; ++t) {
                                  Rng rng(check_seed(cfg.seed, 43, n, t));
                                  const CMatrix omega = rng.contraction(n);
                                  const CMatrix a = rng.contraction(n);
                                  worst = std::max(
                                      worst, max_abs(dilatation_recover(dilatation_affine(omega, a), a) -
                                                     omega));
                                }
                              return worst;
                            }));

  out.push_back(timed_check(
      "transported norm against closed form", "transported-norm-closed-form", 1e-11, [&] {
        fixtures::ContractionBlowupScenario scenario;
        scenario.alpha = 0.5;
        Rng rng(check_seed(cfg.seed, 44, 2, 0));
        double worst = 0.0;
        for (int t = 0; t < cfg.trials; ++t) {
          const Complex z = rng.unit_disk(0.999);
          worst = std::max(worst, std::abs(scenario.transported_norm(z) -
                                           scenario.transported_norm_closed_form(z)));
        }
        return worst;
      }));

  out.push_back(timed_check(
      "transported norm supremum exceeds one", "transported-norm-supremum", 1e-3, [&] {
        double worst = 0.0;
        for (double alpha : {0.25, 0.5, 0.9}) {
          fixtures::ContractionBlowupScenario scenario;
          scenario.alpha = alpha;
          worst = std::max(worst,
                           std::abs(scenario.sup_norm_grid() - scenario.sup_norm_closed_form()));
        }
        return worst;
      }));

  out.push_back(timed_check(
      "degenerate twist raises the dedicated error", "degenerate-twist-detected", 0.0, [&] {
        for (double t : {0.1, 0.5, 0.9}) {
          const PluriMap f = fixtures::twist_degenerate(t);
          const PluriJet pj = pluri_jet(f, CVector{Complex(0.1), Complex(0.1)});
          try {
            (void)dilatation_affine(pj.omega, fixtures::twist_degenerate_matrix(t));
            return std::numeric_limits<double>::infinity();
          } catch (const SingularTwistedDerivative&) {
          }
        }
        return 0.0;
      }));

  out.push_back(timed_check(
      "normalizing twist kills the dilatation", "twist-normalization-kills-dilatation", 1e-12, [&] {
        double worst = 0.0;
        for (int n : cfg.dims)
          for (int t = 0; t < cfg.trials; ++t) {
            const RandomInstance inst = gen_plurimap({.seed = check_seed(cfg.seed, 45, n, t), .n = n});
            const PluriJet pj = pluri_jet(inst.map, inst.probe);
            const AffineTwist a = AffineTwist::contractive(Complex(-1.0) * conj(pj.omega));
            const AffineInvarianceCheck check = affine_invariance_check(inst.map, a, inst.probe);
            worst = std::max({worst, max_abs(check.omega_f), check.p_defect});
          }
        return worst;
      }));

  return out;
}

// ---------------------------------------------------------------------------
// Suite: stability (rotations vs genuine counterexamples, dbar probe)
// ---------------------------------------------------------------------------

inline std::vector<CheckRecord> suite_stability(const SuiteConfig& cfg) {
  std::vector<CheckRecord> out;
  using detail::check_seed;
  using detail::timed_check;

  out.push_back(timed_check(
      "rotations of the identity leave P unchanged", "stability-rotations-invariant", 1e-12, [&] {
        double worst = 0.0;
        for (int n : cfg.dims)
          for (int t = 0; t < cfg.trials; ++t) {
            const RandomInstance inst = gen_plurimap({.seed = check_seed(cfg.seed, 51, n, t), .n = n});
            const PluriJet pj = pluri_jet(inst.map, inst.probe);
            Rng rng(check_seed(cfg.seed, 52, n, t));
            const Complex lambda = rng.on_circle();
            worst = std::max(
                worst, stability_defect(pj, lambda * CMatrix::identity(n)).max_abs_coeff());
          }
        return worst;
      }));

  out.push_back(timed_check("off-diagonal unitary entries break stability",
                            "stability-offdiagonal-counterexample-nonzero", 1e-6,
                            [&] {
                              const PluriMap f = fixtures::stable_offdiag(2, 0, 1);
                              CMatrix rot(2);
                              rot(0, 0) = std::cos(0.6);
                              rot(0, 1) = -std::sin(0.6);
                              rot(1, 0) = std::sin(0.6);
                              rot(1, 1) = std::cos(0.6);
                              const CVector z{Complex(0.4, 0.1), Complex(0.3, -0.2)};
                              return stability_defect(pluri_jet(f, z), rot).max_abs_coeff();
                            },
                            /*expect_nonzero=*/true));

  out.push_back(timed_check("distinct diagonal phases break stability",
                            "stability-diagonal-counterexample-nonzero", 1e-6,
                            [&] {
                              const PluriMap f = fixtures::stable_diag(2, 0, 1);
                              CMatrix a(2);
                              a(0, 0) = 1.0;
                              a(1, 1) = Complex(0.0, 1.0);
                              const CVector z{Complex(0.4, 0.1), Complex(0.3, -0.2)};
                              return stability_defect(pluri_jet(f, z), a).max_abs_coeff();
                            },
                            /*expect_nonzero=*/true));

  out.push_back(timed_check(
      "diagonal counterexample matches its closed form", "stability-diagonal-closed-form", 1e-12,
      [&] {
        const int i = 0, j = 1;
        const PluriMap f = fixtures::stable_diag(2, i, j);
        const Complex lam_i(1.0);
        const Complex lam_j = std::polar(1.0, 1.1);
        CMatrix a(2);
        a(i, i) = lam_i;
        a(j, j) = lam_j;
        Rng rng(check_seed(cfg.seed, 53, 2, 0));
        double worst = 0.0;
        for (int t = 0; t < 20; ++t) {
          const CVector z = rng.vector_in_polydisk(2, 0.6);
          const CVector u = rng.vector_in_polydisk(2, 1.0);
          const CMatrix slot = first_slot_matrix(stability_defect(pluri_jet(f, z), a), u);
          worst = std::max(worst, max_abs(slot - fixtures::stable_diag_defect_closed_form(
                                                     2, i, j, lam_i, lam_j, z, u)));
        }
        return worst;
      }));

  out.push_back(timed_check(
      "dbar probe certifies holomorphic P families", "dbar-probe-holomorphic-families", 1e-6, [&] {
        double worst = 0.0;
        for (int deg : {2, 3, 4}) {
          std::vector<Complex> phi(static_cast<std::size_t>(deg) + 1, Complex(0.0));
          phi[static_cast<std::size_t>(deg)] = 1.0;
          const PluriMap f = fixtures::vanishing_pre_schwarzian(phi);
          worst = std::max(worst,
                           dbar_pre_schwarzian_norm(f, CVector{Complex(0.3, 0.1), Complex(0.2)}));
        }
        worst = std::max(worst, dbar_pre_schwarzian_norm(fixtures::stable_offdiag(2, 0, 1),
                                                         CVector{Complex(0.3, 0.1), Complex(0.2)}));
        return worst;
      }));

  out.push_back(timed_check("dbar probe flags the twisted counterexample",
                            "dbar-probe-twisted-counterexample-nonzero", 1e-3,
                            [&] {
                              const PluriMap diag = fixtures::stable_diag(2, 0, 1);
                              CMatrix a(2);
                              a(0, 0) = 1.0;
                              a(1, 1) = Complex(0.0, 1.0);
                              const PluriMap twisted(diag.h, left_mul(conj(a), diag.g));
                              return dbar_pre_schwarzian_norm(
                                  twisted, CVector{Complex(0.35, 0.1), Complex(0.25, -0.15)});
                            },
                            /*expect_nonzero=*/true));

  return out;
}

// ---------------------------------------------------------------------------
// Suite: holo (holomorphic jets and operators)
// ---------------------------------------------------------------------------

inline std::vector<CheckRecord> suite_holo(const SuiteConfig& cfg) {
  std::vector<CheckRecord> out;
  using detail::check_seed;
  using detail::timed_check;

  out.push_back(timed_check("jets against finite differences", "jet-finite-difference-agreement",
                            1e-6, [&] {
                              double worst = 0.0;
                              for (int n : cfg.dims)
                                for (int t = 0; t < std::min(cfg.trials, 5); ++t) {
                                  Rng rng(check_seed(cfg.seed, 61, n, t));
                                  const PolyMap f = random_biholo_polymap(rng, n, 3, 0.2);
                                  const CVector z = rng.vector_in_polydisk(n, 0.2);
                                  const Jet2 j = jet(f, z);
                                  auto value_at = [&](const CVector& p) { return jet(f, p).value; };
                                  for (int k = 0; k < n; ++k) {
                                    const CVector col = wirtinger_derivative(
                                        value_at, z, k, WirtingerKind::Holomorphic, 1e-5);
                                    for (int i = 0; i < n; ++i)
                                      worst = std::max(worst, std::abs(col[i] - j.d1(i, k)) /
                                                                  std::max(1.0, max_abs(j.d1)));
                                  }
                                }
                              return worst;
                            }));

  out.push_back(timed_check(
      "left matrix multiplication leaves P unchanged", "pre-schwarzian-left-multiplication", 1e-12,
      [&] {
        double worst = 0.0;
        for (int n : cfg.dims)
          for (int t = 0; t < cfg.trials; ++t) {
            Rng rng(check_seed(cfg.seed, 62, n, t));
            const PolyMap f = random_biholo_polymap(rng, n, 3, 0.2);
            const CMatrix a = rng.invertible(n);
            const CVector z = rng.vector_in_polydisk(n, 0.2);
            worst = std::max(worst, max_coeff_difference(pre_schwarzian(jet(left_mul(a, f), z)),
                                                         pre_schwarzian(jet(f, z))));
          }
        return worst;
      }));

  out.push_back(timed_check("holomorphic chain rule for P", "holomorphic-pre-schwarzian-chain-rule",
                            1e-10, [&] {
                              double worst = 0.0;
                              for (int n : cfg.dims)
                                for (int t = 0; t < cfg.trials; ++t) {
                                  Rng rng(check_seed(cfg.seed, 63, n, t));
                                  const PolyMap g = random_biholo_polymap(rng, n, 2, 0.2);
                                  const PolyMap f = random_biholo_polymap(rng, n, 2, 0.2);
                                  const CVector z = rng.vector_in_polydisk(n, 0.2);
                                  const Jet2 f_jet = jet(f, z);
                                  const Jet2 composed = compose(jet(g, f_jet.value), f_jet);
                                  const BilinearOp rhs =
                                      left_apply(inverse(f_jet.d1),
                                                 sandwich(pre_schwarzian(jet(g, f_jet.value)),
                                                          f_jet.d1)) +
                                      pre_schwarzian(f_jet);
                                  worst = std::max(
                                      worst, max_coeff_difference(pre_schwarzian(composed), rhs));
                                }
                              return worst;
                            }));

  out.push_back(timed_check(
      "linear-fractional postcomposition leaves S unchanged", "mobius-postcomposition-schwarzian",
      1e-9, [&] {
        double worst = 0.0;
        for (int t = 0; t < cfg.trials; ++t) {
          Rng rng(check_seed(cfg.seed, 64, 2, t));
          const MobiusMap mob = random_mobius(rng, 2);
          const PolyMap f = random_biholo_polymap(rng, 2, 2, 0.15);
          const CVector z = rng.vector_in_polydisk(2, 0.2);
          const Jet2 f_jet = jet(f, z);
          const Jet2 composed = compose(jet(mob, f_jet.value), f_jet);
          worst = std::max(worst, max_coeff_difference(schwarzian(composed), schwarzian(f_jet)));
        }
        return worst;
      }));

  out.push_back(timed_check(
      "component Schwarzians vanish on linear-fractional maps", "component-schwarzian-mobius-vanishing",
      1e-10, [&] {
        double worst = 0.0;
        for (int t = 0; t < cfg.trials; ++t) {
          Rng rng(check_seed(cfg.seed, 65, 3, t));
          const MobiusMap mob = random_mobius(rng, 3);
          worst = std::max(worst,
                           oda_components(HoloMap(mob), rng.vector_in_polydisk(3, 0.3)).max_abs_coeff());
        }
        return worst;
      }));

  out.push_back(timed_check(
      "component Schwarzian index symmetry", "component-schwarzian-symmetry", 0.0, [&] {
        double worst = 0.0;
        for (int n : {2, 3})
          for (int t = 0; t < cfg.trials; ++t) {
            Rng rng(check_seed(cfg.seed, 66, n, t));
            const PolyMap f = random_biholo_polymap(rng, n, 3, 0.2);
            const BilinearOp oda = oda_components(jet(f, rng.vector_in_polydisk(n, 0.2)));
            for (int k = 0; k < n; ++k)
              for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                  worst = std::max(worst, std::abs(oda.at(k, i, j) - oda.at(k, j, i)));
          }
        return worst;
      }));

  out.push_back(timed_check(
      "component Schwarzian trace identity", "component-schwarzian-trace-zero", 1e-11, [&] {
        double worst = 0.0;
        for (int n : {2, 3})
          for (int t = 0; t < cfg.trials; ++t) {
            Rng rng(check_seed(cfg.seed, 67, n, t));
            const PolyMap f = random_biholo_polymap(rng, n, 3, 0.2);
            const BilinearOp oda = oda_components(jet(f, rng.vector_in_polydisk(n, 0.2)));
            for (int i = 0; i < n; ++i) {
              Complex sum = 0.0;
              for (int j = 0; j < n; ++j) sum += oda.at(j, i, j);
              worst = std::max(worst, std::abs(sum));
            }
          }
        return worst;
      }));

  out.push_back(timed_check(
      "vector Schwarzian assembles the components", "component-schwarzian-basis-agreement", 1e-11,
      [&] {
        double worst = 0.0;
        for (int n : {2, 3})
          for (int t = 0; t < cfg.trials; ++t) {
            Rng rng(check_seed(cfg.seed, 68, n, t));
            const PolyMap f = random_biholo_polymap(rng, n, 3, 0.2);
            const Jet2 j = jet(f, rng.vector_in_polydisk(n, 0.2));
            worst = std::max(worst, max_coeff_difference(schwarzian(j), oda_components(j)));
          }
        return worst;
      }));

  return out;
}

inline std::vector<CheckRecord> run_suite(const std::string& name, const SuiteConfig& cfg) {
  if (name == "pre") return suite_pre(cfg);
  if (name == "schwarzian") return suite_schwarzian(cfg);
  if (name == "affine") return suite_affine(cfg);
  if (name == "stability") return suite_stability(cfg);
  if (name == "holo") return suite_holo(cfg);
  if (name == "all") {
    std::vector<CheckRecord> out;
    for (const char* suite : {"pre", "schwarzian", "affine", "stability", "holo"}) {
      auto part = run_suite(suite, cfg);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  throw InputError("unknown verification suite '" + name + "'");
}

}  // namespace plurischwarz
