#include <catch2/catch_amalgamated.hpp>

#include "plurischwarz/holomap.hpp"
#include "plurischwarz/oracles.hpp"
#include "test_support.hpp"

using namespace plurischwarz;

namespace {

// jets against plain Wirtinger stencils
void check_jet_against_fd(const HoloMap& f, const CVector& z) {
  const int n = dim(f);
  const Jet2 j = jet(f, z);
  auto value_at = [&](const CVector& p) { return jet(f, p).value; };
  for (int k = 0; k < n; ++k) {
    const CVector d1_col = wirtinger_derivative(value_at, z, k, WirtingerKind::Holomorphic, 1e-5);
    for (int i = 0; i < n; ++i)
      CHECK(std::abs(d1_col[i] - j.d1(i, k)) < 1e-6 * std::max(1.0, max_abs(j.d1)));
  }
  auto d1_at = [&](const CVector& p) { return jet(f, p).d1; };
  for (int k = 0; k < n; ++k) {
    const CMatrix d2_slice = wirtinger_derivative(d1_at, z, k, WirtingerKind::Holomorphic, 1e-3);
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l)
        CHECK(std::abs(d2_slice(i, l) - j.d2.at(i, k, l)) <
              1e-4 * std::max(1.0, j.d2.max_abs_coeff()));
  }
}

}  // namespace

TEST_CASE("polynomial jets") {
  const PolyMap id = PolyMap::identity(2);
  const CVector z{Complex(0.3, 0.1), Complex(-0.2, 0.4)};
  const Jet2 j = jet(id, z);
  CHECK(max_abs(j.value - z) == 0.0);
  CHECK(max_abs(j.d1 - CMatrix::identity(2)) == 0.0);
  CHECK(j.d2.max_abs_coeff() == 0.0);

  CHECK(max_abs(jet(id, CVector::zero(2)).d1 - CMatrix::identity(2)) == 0.0);

  Rng rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const PolyMap f = random_biholo_polymap(rng, 3, 3, 0.3);
    check_jet_against_fd(f, rng.vector_in_polydisk(3, 0.3));
  }
}

TEST_CASE("linear-fractional jets") {
  const MobiusMap id = MobiusMap::identity(3);
  const CVector z{Complex(0.2), Complex(0.4, -0.1), Complex(0.0, 0.3)};
  const Jet2 j = jet(id, z);
  CHECK(max_abs(j.value - z) < 1e-15);
  CHECK(max_abs(j.d1 - CMatrix::identity(3)) < 1e-15);
  CHECK(j.d2.max_abs_coeff() < 1e-15);

  // T(z) = 1/z in one variable: value 1/2, derivative -1/4, second derivative 1/4 at z = 2
  CMatrix recip(2);
  recip(0, 1) = 1.0;  // l0(z) = z
  recip(1, 0) = 1.0;  // l1(z) = 1
  const MobiusMap t(recip);
  const Jet2 jt = jet(t, CVector{Complex(2.0)});
  CHECK(std::abs(jt.value[0] - 0.25 * 2.0) < 1e-15);
  CHECK(std::abs(jt.d1(0, 0) - Complex(-0.25)) < 1e-15);
  CHECK(std::abs(jt.d2.at(0, 0, 0) - Complex(0.25)) < 1e-15);

  // pole detection on l0 = 0
  CHECK_THROWS_AS(jet(t, CVector{Complex(0.0)}), PoleAtPoint);

  // determinant requirement at construction
  CMatrix degenerate(2);
  degenerate(0, 0) = 1.0;
  degenerate(0, 1) = 1.0;
  degenerate(1, 0) = 1.0;
  degenerate(1, 1) = 1.0;
  CHECK_THROWS_AS(MobiusMap(degenerate), SingularMatrix);

  Rng rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const MobiusMap m = random_mobius(rng, 2);
    check_jet_against_fd(m, rng.vector_in_polydisk(2, 0.3));
  }
}

TEST_CASE("jet composition") {
  Rng rng(13);
  const PolyMap f = random_biholo_polymap(rng, 2, 2, 0.2);
  const CVector z = rng.vector_in_polydisk(2, 0.2);
  const Jet2 inner = jet(f, z);

  const Jet2 with_id_inner = compose(jet(f, z), identity_jet(z));
  CHECK(max_abs(with_id_inner.value - inner.value) == 0.0);
  CHECK(max_abs(with_id_inner.d1 - inner.d1) == 0.0);
  CHECK(max_coeff_difference(with_id_inner.d2, inner.d2) == 0.0);

  const Jet2 with_id_outer = compose(identity_jet(inner.value), inner);
  CHECK(max_abs(with_id_outer.d1 - inner.d1) == 0.0);
  CHECK(max_coeff_difference(with_id_outer.d2, inner.d2) == 0.0);

  // against the explicit polynomial composition oracle
  for (int trial = 0; trial < 5; ++trial) {
    const PolyMap outer = random_biholo_polymap(rng, 2, 2, 0.3);
    const PolyMap inner_map = random_biholo_polymap(rng, 2, 2, 0.3);
    const PolyMap composed = test_support::poly_compose(outer, inner_map);
    const CVector p = rng.vector_in_polydisk(2, 0.3);
    const Jet2 inner_jet = jet(inner_map, p);
    const Jet2 via_jets = compose(jet(outer, inner_jet.value), inner_jet);
    const Jet2 direct = jet(composed, p);
    CHECK(max_abs(via_jets.value - direct.value) < 1e-12);
    CHECK(max_abs(via_jets.d1 - direct.d1) < 1e-12);
    CHECK(max_coeff_difference(via_jets.d2, direct.d2) < 1e-12);
  }

  CHECK_THROWS_AS(compose(jet(f, CVector{Complex(0.5), Complex(0.5)}), inner), JetPointMismatch);
}

TEST_CASE("jet composition is associative") {
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const PolyMap a = random_biholo_polymap(rng, 2, 2, 0.15);
    const PolyMap b = random_biholo_polymap(rng, 2, 2, 0.15);
    const PolyMap c = random_biholo_polymap(rng, 2, 2, 0.15);
    const CVector z = rng.vector_in_polydisk(2, 0.2);
    const Jet2 jc = jet(c, z);
    const Jet2 jb = jet(b, jc.value);
    const Jet2 ja = jet(a, jb.value);
    const Jet2 left = compose(compose(ja, jb), jc);
    const Jet2 right = compose(ja, compose(jb, jc));
    CHECK(max_abs(left.value - right.value) < 1e-13);
    CHECK(max_abs(left.d1 - right.d1) < 1e-13);
    CHECK(max_coeff_difference(left.d2, right.d2) < 1e-13);
  }
}

TEST_CASE("holomorphic pre-Schwarzian") {
  Rng rng(19);
  // linear maps have vanishing pre-Schwarzian
  const PolyMap lin = PolyMap::affine(rng.invertible(3), rng.vector_in_polydisk(3, 1.0));
  CHECK(pre_schwarzian(HoloMap(lin), rng.vector_in_polydisk(3, 0.3)).max_abs_coeff() == 0.0);

  // one variable: P f = f''/f'
  const PolyMap cubic(1, {PolyTerm{{1}, {Complex(1.0)}},
                          PolyTerm{{2}, {Complex(0.3)}},
                          PolyTerm{{3}, {Complex(-0.1)}}});
  const CVector z0{Complex(0.2, 0.1)};
  const Jet2 j = jet(cubic, z0);
  const Complex expected = j.d2.at(0, 0, 0) / j.d1(0, 0);
  CHECK(std::abs(pre_schwarzian(j).at(0, 0, 0) - expected) < 1e-14);

  // multiplicative invariance P(Af) = P(f)
  for (int trial = 0; trial < 20; ++trial) {
    const PolyMap f = random_biholo_polymap(rng, 2, 3, 0.2);
    const CMatrix a = rng.invertible(2);
    const CVector z = rng.vector_in_polydisk(2, 0.2);
    const BilinearOp lhs = pre_schwarzian(jet(left_mul(a, f), z));
    const BilinearOp rhs = pre_schwarzian(jet(f, z));
    CHECK(max_coeff_difference(lhs, rhs) < 1e-12);
  }

  CHECK_THROWS_AS(pre_schwarzian(jet(HoloMap(PolyMap(2, {PolyTerm{{2, 0}, {Complex(1.0), Complex(0.0)}}})),
                                     CVector::zero(2))),
                  SingularDerivative);
}

TEST_CASE("gradient of the log Jacobian") {
  Rng rng(29);
  const PolyMap lin = PolyMap::affine(rng.invertible(2), CVector::zero(2));
  CHECK(max_abs(grad_log_jacobian(HoloMap(lin), rng.vector_in_polydisk(2, 0.5))) == 0.0);

  // exp(a z) truncated at degree 8: (log f')' == a up to truncation
  for (Complex a : {Complex(1.0), Complex(0.5, -0.5), Complex(0.0, 1.0)}) {
    std::vector<PolyTerm> terms;
    Complex factorial = 1.0;
    Complex power = 1.0;
    for (int k = 0; k <= 8; ++k) {
      if (k > 0) {
        factorial *= static_cast<double>(k);
        power *= a;
      }
      terms.push_back(PolyTerm{{k}, CVector{power / factorial}});
    }
    const PolyMap truncated_exp(1, terms);
    CHECK(std::abs(grad_log_jacobian(jet(truncated_exp, CVector{Complex(0.0)}))[0] - a) < 1e-12);
    CHECK(std::abs(grad_log_jacobian(jet(truncated_exp, CVector{Complex(0.1)}))[0] - a) < 1e-10);
  }

  // against a consistent-branch finite difference of log det Df
  for (int trial = 0; trial < 5; ++trial) {
    const PolyMap f = random_biholo_polymap(rng, 3, 3, 0.2);
    const CVector z = rng.vector_in_polydisk(3, 0.2);
    const Complex det0 = determinant(jet(f, z).d1);
    auto log_det = [&](const CVector& p) {
      // ratio form keeps the branch consistent across the stencil
      return std::log(determinant(jet(f, p).d1) / det0);
    };
    const CVector exact = grad_log_jacobian(jet(f, z));
    for (int k = 0; k < 3; ++k) {
      const Complex fd = wirtinger_derivative(log_det, z, k, WirtingerKind::Holomorphic, 1e-5);
      CHECK(std::abs(fd - exact[k]) < 1e-6 * std::max(1.0, std::abs(exact[k])));
    }
  }
}

TEST_CASE("holomorphic Schwarzian vanishes exactly on the linear-fractional group") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const MobiusMap t = random_mobius(rng, 2);
    const CVector z = rng.vector_in_polydisk(2, 0.3);
    CHECK(schwarzian(HoloMap(t), z).max_abs_coeff() < 1e-10);
  }
  const PolyMap lin = PolyMap::affine(rng.invertible(2), rng.vector_in_polydisk(2, 0.5));
  CHECK(schwarzian(HoloMap(lin), rng.vector_in_polydisk(2, 0.3)).max_abs_coeff() < 1e-14);
}

TEST_CASE("component Schwarzians") {
  // identity map: all components vanish
  CHECK(oda_components(HoloMap(PolyMap::identity(3)), CVector::zero(3)).max_abs_coeff() == 0.0);

  Rng rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    const MobiusMap t = random_mobius(rng, 3);
    const CVector z = rng.vector_in_polydisk(3, 0.3);
    CHECK(oda_components(HoloMap(t), z).max_abs_coeff() < 1e-10);
  }

  for (int n : {2, 3}) {
    for (int trial = 0; trial < 10; ++trial) {
      const PolyMap f = random_biholo_polymap(rng, n, 3, 0.2);
      const CVector z = rng.vector_in_polydisk(n, 0.2);
      const BilinearOp oda = oda_components(jet(f, z));
      // exact index symmetry
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) CHECK(oda.at(k, i, j) == oda.at(k, j, i));
      // trace identity sum_j S^j_{ij} = 0
      for (int i = 0; i < n; ++i) {
        Complex sum = 0.0;
        for (int j = 0; j < n; ++j) sum += oda.at(j, i, j);
        CHECK(std::abs(sum) < 1e-11);
      }
      // agreement with the vector-form Schwarzian on all basis pairs
      const BilinearOp s = schwarzian(jet(f, z));
      CHECK(max_coeff_difference(s, oda) < 1e-11);
    }
  }
}

TEST_CASE("holomorphic chain rules") {
  Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const PolyMap g = random_biholo_polymap(rng, 2, 2, 0.2);
    const PolyMap f = random_biholo_polymap(rng, 2, 2, 0.2);
    const CVector z = rng.vector_in_polydisk(2, 0.2);
    const Jet2 f_jet = jet(f, z);
    const Jet2 composed = compose(jet(g, f_jet.value), f_jet);

    // P(g o f) = Df^{-1} Pg(f)<Df ., Df .> + Pf
    const BilinearOp lhs = pre_schwarzian(composed);
    const BilinearOp transported =
        left_apply(inverse(f_jet.d1), sandwich(pre_schwarzian(jet(g, f_jet.value)), f_jet.d1));
    CHECK(max_coeff_difference(lhs, transported + pre_schwarzian(f_jet)) < 1e-10);
  }

  // S(T o f) = S f for linear-fractional T
  for (int trial = 0; trial < 10; ++trial) {
    const MobiusMap t = random_mobius(rng, 2);
    const PolyMap f = random_biholo_polymap(rng, 2, 2, 0.15);
    const CVector z = rng.vector_in_polydisk(2, 0.2);
    const Jet2 f_jet = jet(f, z);
    const Jet2 composed = compose(jet(t, f_jet.value), f_jet);
    CHECK(max_coeff_difference(schwarzian(composed), schwarzian(f_jet)) < 1e-9);
  }
}
