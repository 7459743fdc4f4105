#include <catch2/catch_amalgamated.hpp>

#include "plurischwarz/oracles.hpp"
#include "test_support.hpp"

using namespace plurischwarz;

TEST_CASE("Wirtinger stencils") {
  // f(z) = z^2: holomorphic derivative 2z, conjugate derivative 0
  const PolyMap square(1, {PolyTerm{{2}, {Complex(1.0)}}});
  auto eval = [&](const CVector& p) { return jet(square, p).value; };
  const CVector one{Complex(1.0)};
  const CVector holo = wirtinger_derivative(eval, one, 0, WirtingerKind::Holomorphic, 1e-5);
  CHECK(std::abs(holo[0] - 2.0) < 1e-8);
  const CVector anti = wirtinger_derivative(eval, one, 0, WirtingerKind::AntiHolomorphic, 1e-5);
  CHECK(std::abs(anti[0]) < 1e-8);

  // f(z) = conj(z): conjugate derivative 1
  auto conj_eval = [](const CVector& p) {
    CVector out(1);
    out[0] = std::conj(p[0]);
    return out;
  };
  const CVector anti_conj =
      wirtinger_derivative(conj_eval, one, 0, WirtingerKind::AntiHolomorphic, 1e-5);
  CHECK(std::abs(anti_conj[0] - 1.0) < 1e-8);

  // holomorphy detector calibration: polynomial maps have conjugate
  // derivatives at the stencil noise floor
  Rng rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const PolyMap f = random_biholo_polymap(rng, 2, 3, 0.3);
    const CVector z = rng.vector_in_polydisk(2, 0.3);
    auto value_at = [&](const CVector& p) { return jet(f, p).value; };
    for (int k = 0; k < 2; ++k) {
      const CVector d =
          wirtinger_derivative(value_at, z, k, WirtingerKind::AntiHolomorphic, 1e-5);
      CHECK(max_abs(d) < 1e-7);
    }
  }
}

TEST_CASE("random instance generation") {
  // degree 1: both parts linear, so the analytic pre-Schwarzian vanishes and
  // the dilatation is constant, killing P_f entirely
  const RandomInstance linear = gen_plurimap({.seed = 8, .n = 2, .degree = 1});
  CHECK(pre_schwarzian(jet(linear.map.h, linear.probe)).max_abs_coeff() == 0.0);
  CHECK(pre_schwarzian(linear.map, linear.probe).max_abs_coeff() < 1e-14);

  // identical seeds reproduce identical instances
  const RandomInstanceConfig cfg{.seed = 42, .n = 2, .degree = 3};
  const RandomInstance a = gen_plurimap(cfg);
  const RandomInstance b = gen_plurimap(cfg);
  REQUIRE(max_abs(a.probe - b.probe) == 0.0);
  const auto& ta = std::get<PolyMap>(a.map.h).terms();
  const auto& tb = std::get<PolyMap>(b.map.h).terms();
  REQUIRE(ta.size() == tb.size());
  for (std::size_t i = 0; i < ta.size(); ++i) {
    CHECK(ta[i].alpha == tb[i].alpha);
    CHECK(max_abs(ta[i].coeff - tb[i].coeff) == 0.0);
  }

  // class membership at the probe point in 100 out of 100 draws
  for (int trial = 0; trial < 100; ++trial) {
    const RandomInstance inst =
        gen_plurimap({.seed = 1000 + static_cast<std::uint64_t>(trial), .n = 2});
    const PluriJet pj = pluri_jet(inst.map, inst.probe);
    CHECK(operator_norm(pj.omega) < 0.9);
    CHECK(condition_number(pj.h_jet.d1) < 100.0);
    CHECK(jacobian(pj) > 0.0);
  }

  // an unsatisfiable conditioning bound exhausts the rejection budget
  CHECK_THROWS_AS(gen_plurimap({.seed = 1, .n = 2, .degree = 3, .coeff_bound = 0.25,
                                .rho = 0.9, .max_condition = 1.0 + 1e-12}),
                  RejectionExhausted);
}

TEST_CASE("fixture dispatch") {
  // phi(z) = z^2 gives g = (0, z^2) and omega = 2 z1 E21
  const PluriMap f = fixture("example-2.5");
  const CVector z{Complex(0.3), Complex(0.7)};
  const PluriJet pj = pluri_jet(f, z);
  CHECK(std::abs(pj.omega(1, 0) - 0.6) < 1e-15);

  // t = 1/2 gives omega [[0, 4], [-1, 0]] and twist diag(1/2, -1/2)
  const PluriMap cd = fixture("counter-det", {{"t", 0.5}});
  const PluriJet pjc = pluri_jet(cd, CVector::zero(2));
  CHECK(pjc.omega(0, 1) == Complex(4.0));
  CHECK(pjc.omega(1, 0) == Complex(-1.0));
  const CMatrix a = fixtures::twist_degenerate_matrix(0.5);
  CHECK(a(0, 0) == Complex(0.5));
  CHECK(a(1, 1) == Complex(-0.5));

  CHECK_THROWS_AS(fixture("no-such-example"), UnknownFixture);
  CHECK_THROWS_AS(fixture("counter-omega"), UnknownFixture);  // scenario, not a map
}

TEST_CASE("shear demo") {
  const ShearDemo demo;
  CHECK(demo.jacobian_analytic({0.0, 0.0, 0.0, 0.0}) == 1.0);

  const auto qa = demo.q(demo.collision_a());
  const auto qb = demo.q(demo.collision_b());
  const auto target = demo.collision_value();
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(qa[static_cast<std::size_t>(i)] - target[static_cast<std::size_t>(i)]) < 1e-15);
    CHECK(std::abs(qb[static_cast<std::size_t>(i)] - target[static_cast<std::size_t>(i)]) < 1e-15);
  }

  // positive Jacobian across the domain grid, finite differences agreeing
  Rng rng(5);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const ShearDemo::R4 w{rng.uniform(-0.99, 0.99), rng.uniform(-1.0, 1.0),
                          rng.uniform(-std::numbers::pi - 0.1, std::numbers::pi + 0.1),
                          rng.uniform(-1.0, 1.0)};
    const double analytic = demo.jacobian_analytic(w);
    CHECK(analytic > 0.0);
    if (trial % 50 == 0)
      worst = std::max(worst,
                       std::abs(analytic - demo.jacobian_fd(w)) / std::max(1.0, analytic));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("scenario norms agree between matrix route and closed form") {
  fixtures::ContractionBlowupScenario scenario;
  scenario.alpha = 0.5;
  CHECK(operator_norm(scenario.omega_at(Complex(0.3, 0.2))) ==
        Catch::Approx(std::abs(scenario.phi(Complex(0.3, 0.2)))).margin(1e-12));
  // ||omega|| < 1 on the open disk
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial)
    CHECK(operator_norm(scenario.omega_at(rng.unit_disk(0.999))) < 1.0);
}
