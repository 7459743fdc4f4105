// Command-line front end: evaluate the operators at points, run the
// verification suites, reproduce the worked examples, and emit
// machine-readable JSON reports.
//
// Exit codes: 0 success, 2 malformed input, 3 numerical contract violation,
// 4 verification failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "plurischwarz/oracles.hpp"
#include "plurischwarz/serialization.hpp"
#include "plurischwarz/verify.hpp"

using namespace plurischwarz;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitVerifyFailed = 4;

std::map<std::string, double> parse_params(const std::vector<std::string>& raw) {
  std::map<std::string, double> out;
  for (const std::string& kv : raw) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos)
      throw ParseError("--param expects key=value, got \"" + kv + "\"");
    try {
      out[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    } catch (const std::exception&) {
      throw ParseError("--param " + kv + ": value is not a number");
    }
  }
  return out;
}

// Tractability caps for command-line work; the library types themselves are
// unbounded.
constexpr int kMaxDimension = 6;
constexpr int kMaxDegree = 10;

void check_caps(const PluriMap& map) {
  if (map.dim() > kMaxDimension)
    throw ParseError("maps above dimension " + std::to_string(kMaxDimension) +
                     " are not accepted on the command line");
  for (const HoloMap* part : {&map.h, &map.g})
    if (std::holds_alternative<PolyMap>(*part) &&
        std::get<PolyMap>(*part).degree() > kMaxDegree)
      throw ParseError("polynomial degree above " + std::to_string(kMaxDegree) +
                       " is not accepted on the command line");
}

PluriMap load_map(const std::string& map_path, const std::string& fixture_name,
                  const std::map<std::string, double>& params) {
  if (!map_path.empty()) {
    std::ifstream in(map_path);
    if (!in) throw ParseError("could not open map file '" + map_path + "'");
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw ParseError("map file '" + map_path + "': " + e.what());
    }
    PluriMap map = map_from_json(j);
    check_caps(map);
    return map;
  }
  if (!fixture_name.empty()) {
    PluriMap map = fixture(fixture_name, params);
    check_caps(map);
    return map;
  }
  throw ParseError("eval needs either --map FILE or --fixture NAME");
}

std::uint64_t effective_seed(std::uint64_t cli_seed) {
  if (const char* env = std::getenv("PLURISCHWARZ_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ParseError("PLURISCHWARZ_SEED is not an unsigned integer");
    }
  }
  return cli_seed;
}

std::string echo_command(int argc, char** argv) {
  std::ostringstream out;
  for (int i = 0; i < argc; ++i) {
    if (i) out << ' ';
    out << argv[i];
  }
  return out.str();
}

int run_eval(const std::string& command, const PluriMap& map, const std::string& point_text,
             const std::string& what) {
  const CVector z = parse_point(point_text, map.dim());
  Report report;
  report.command = command;
  report.values = json::object();
  if (what == "omega") {
    report.values["omega"] = to_json(pluri_jet(map, z).omega);
  } else if (what == "jacobian") {
    report.values["jacobian"] = jacobian(map, z);
  } else if (what == "preschwarzian") {
    report.values["preschwarzian"] = to_json(pre_schwarzian(map, z));
  } else if (what == "schwarzian") {
    report.values["schwarzian"] = to_json(schwarzian(map, z));
  } else if (what == "oda") {
    report.values["oda"] = to_json(oda_components(map.h, z));
  } else if (what == "norm-ball") {
    const double radius2 = 1.0 - euclid_norm(z) * euclid_norm(z);
    const double p_norm = operator_norm_estimate(pre_schwarzian(map, z));
    report.values["pre_schwarzian_norm"] = p_norm;
    report.values["norm_ball"] = radius2 * p_norm;
  } else {
    throw ParseError("--what must be one of omega|jacobian|preschwarzian|schwarzian|oda|norm-ball");
  }
  std::cout << to_json(report).dump(2) << '\n';
  return kExitOk;
}

int run_verify(const std::string& command, const std::string& suite, int trials,
               std::uint64_t seed, const std::vector<int>& dims) {
  SuiteConfig cfg;
  cfg.trials = trials;
  cfg.seed = seed;
  if (!dims.empty()) cfg.dims = dims;
  Report report;
  report.command = command;
  report.seed = seed;
  report.checks = run_suite(suite, cfg);
  std::cout << to_json(report).dump(2) << '\n';
  return report.all_pass() ? kExitOk : kExitVerifyFailed;
}

void print_claim_row(const std::string& label, double claim, double computed, double tolerance) {
  std::printf("%-58s  claim %14.9g  computed %14.9g  |diff| %9.3g  %s\n", label.c_str(), claim,
              computed, std::abs(claim - computed),
              std::abs(claim - computed) <= tolerance ? "ok" : "MISMATCH");
}

CheckRecord claim_record(const std::string& name, const std::string& anchor, double claim,
                         double computed, double tolerance) {
  CheckRecord rec;
  rec.name = name;
  rec.anchor = anchor;
  rec.defect = std::abs(claim - computed);
  rec.tolerance = tolerance;
  rec.pass = rec.defect <= tolerance;
  print_claim_row(name, claim, computed, tolerance);
  return rec;
}

int run_reproduce(const std::string& command, const std::string& example,
                  const std::map<std::string, double>& params) {
  auto get = [&](const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  Report report;
  report.command = command;

  if (example == "2.5") {
    for (int deg : {2, 3, 4}) {
      const PluriMap f = fixture("example-2.5", {{"phi_degree", static_cast<double>(deg)}});
      const CVector z{Complex(0.3, 0.1), Complex(0.2, -0.1)};
      report.checks.push_back(claim_record(
          "vanishing pre-Schwarzian, phi degree " + std::to_string(deg),
          "vanishing-pre-schwarzian", 0.0, pre_schwarzian(f, z).max_abs_coeff(), 1e-13));
      report.checks.push_back(claim_record("holomorphy probe, phi degree " + std::to_string(deg),
                                           "pre-schwarzian-holomorphy", 0.0,
                                           dbar_pre_schwarzian_norm(f, z), 1e-6));
    }
  } else if (example == "4.1") {
    const double t = get("t", 2.0);
    const PluriMap f = fixtures::large_dilatation(t);
    const CVector z{Complex(0.2, 0.1), Complex(-0.3, 0.05)};
    const PluriJet pj = pluri_jet(f, z);
    report.checks.push_back(claim_record("dilatation norm equals t", "large-dilatation-norm", t,
                                         operator_norm(pj.omega), 1e-9));
    const CMatrix legs = CMatrix::identity(2) - pj.omega * conj(pj.omega);
    report.checks.push_back(claim_record("determinant factor equals (1+t)^2",
                                         "large-dilatation-jacobian-factor", (1.0 + t) * (1.0 + t),
                                         determinant(legs).real(), 1e-9));
    report.checks.push_back(claim_record(
        "Jacobian equals |det Dh|^2 (1+t)^2", "large-dilatation-jacobian",
        std::norm(determinant(pj.h_jet.d1)) * (1.0 + t) * (1.0 + t), jacobian(pj), 1e-9));
  } else if (example == "counter-omega") {
    const double alpha = get("alpha", 0.5);
    for (int n : {2, 3}) {
      fixtures::ContractionBlowupScenario scenario;
      scenario.n = n;
      scenario.alpha = alpha;
      report.checks.push_back(claim_record(
          "transported dilatation sup norm, n = " + std::to_string(n),
          "transported-norm-supremum", scenario.sup_norm_closed_form(), scenario.sup_norm_grid(),
          1e-3));
    }
  } else if (example == "counter-det") {
    const double t = get("t", 0.5);
    const PluriMap f = fixtures::twist_degenerate(t);
    const PluriJet pj = pluri_jet(f, CVector{Complex(0.1), Complex(0.1)});
    const CMatrix legs = CMatrix::identity(2) - pj.omega * conj(pj.omega);
    report.checks.push_back(claim_record("det(I - omega conj(omega)) equals (1 + 1/t^2)^2",
                                         "degenerate-twist-determinant",
                                         std::pow(1.0 + 1.0 / (t * t), 2.0),
                                         determinant(legs).real(), 1e-9));
    CheckRecord rec;
    rec.name = "transported dilatation undefined (error raised)";
    rec.anchor = "degenerate-twist-detected";
    rec.tolerance = 0.0;
    try {
      (void)dilatation_affine(pj.omega, fixtures::twist_degenerate_matrix(t));
      rec.pass = false;
      rec.defect = std::numeric_limits<double>::infinity();
      std::printf("%-58s  expected the dedicated error, none raised  MISMATCH\n", rec.name.c_str());
    } catch (const SingularTwistedDerivative&) {
      rec.pass = true;
      rec.defect = 0.0;
      std::printf("%-58s  error raised as claimed  ok\n", rec.name.c_str());
    }
    report.checks.push_back(rec);
  } else if (example == "stable") {
    SuiteConfig cfg;
    cfg.trials = 10;
    cfg.seed = effective_seed(1);
    report.checks = suite_stability(cfg);
    for (const CheckRecord& rec : report.checks)
      std::printf("%-58s  defect %9.3g  tolerance %9.3g  %s\n", rec.name.c_str(), rec.defect,
                  rec.tolerance, rec.pass ? "ok" : "MISMATCH");
  } else if (example == "shear") {
    const ShearDemo demo;
    const auto a = demo.collision_a();
    const auto b = demo.collision_b();
    const auto qa = demo.q(a);
    const auto qb = demo.q(b);
    const auto target = demo.collision_value();
    double collision_defect = 0.0;
    for (int i = 0; i < 4; ++i) {
      collision_defect = std::max(collision_defect, std::abs(qa[static_cast<std::size_t>(i)] -
                                                             target[static_cast<std::size_t>(i)]));
      collision_defect = std::max(collision_defect, std::abs(qb[static_cast<std::size_t>(i)] -
                                                             target[static_cast<std::size_t>(i)]));
    }
    report.checks.push_back(claim_record("collision pair maps to (-1, 0, 0, 0)", "shear-collision",
                                         0.0, collision_defect, 1e-12));
    double fd_defect = 0.0;
    double min_jacobian = std::numeric_limits<double>::infinity();
    const double eps = 0.1;
    for (int i = 0; i < 10; ++i)
      for (int jy = 0; jy < 10; ++jy)
        for (int k = 0; k < 10; ++k) {
          const ShearDemo::R4 w{-0.9 + 0.2 * i, -1.0 + 0.2 * jy,
                                (-std::numbers::pi - eps) + (2.0 * std::numbers::pi + 2 * eps) * k / 9.0,
                                0.3};
          const double analytic = demo.jacobian_analytic(w);
          fd_defect = std::max(fd_defect, std::abs(analytic - demo.jacobian_fd(w)) /
                                              std::max(1.0, analytic));
          min_jacobian = std::min(min_jacobian, analytic);
        }
    report.checks.push_back(claim_record("Jacobian e^{2 x1} against finite differences",
                                         "shear-jacobian", 0.0, fd_defect, 1e-6));
    report.checks.push_back(claim_record("Jacobian positive across the 1000-point grid",
                                         "shear-jacobian-positive", 1.0,
                                         min_jacobian > 0.0 ? 1.0 : 0.0, 0.0));
  } else {
    throw ParseError("--example must be one of 2.5|4.1|counter-omega|counter-det|stable|shear");
  }

  std::cout << to_json(report).dump(2) << '\n';
  return report.all_pass() ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pre-Schwarzian and Schwarzian operators for pluriharmonic mappings"};
  app.require_subcommand(1);

  std::string map_path, fixture_name, point_text, what = "jacobian";
  std::vector<std::string> raw_params;
  CLI::App* eval = app.add_subcommand("eval", "evaluate an operator at a point");
  eval->add_option("--map", map_path, "map file (JSON)");
  eval->add_option("--fixture", fixture_name, "named fixture instead of a map file");
  eval->add_option("--point", point_text, "point as re,im;re,im;...")->required();
  eval->add_option("--what", what, "omega|jacobian|preschwarzian|schwarzian|oda|norm-ball");
  eval->add_option("--param", raw_params, "fixture parameter key=value");

  std::string suite = "all";
  int trials = 20;
  std::uint64_t seed = 1;
  std::string dims_text = "1,2,3";
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite, "pre|schwarzian|affine|stability|holo|all");
  verify->add_option("--trials", trials, "trials per check and dimension")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "base seed (PLURISCHWARZ_SEED overrides)");
  verify->add_option("--n", dims_text, "comma-separated dimensions, default 1,2,3");

  std::string example;
  std::vector<std::string> reproduce_params;
  CLI::App* reproduce = app.add_subcommand("reproduce", "reproduce a worked example");
  reproduce->add_option("--example", example, "2.5|4.1|counter-omega|counter-det|stable|shear")
      ->required();
  reproduce->add_option("--param", reproduce_params, "example parameter key=value");

  std::string emit_name;
  std::vector<std::string> emit_params;
  CLI::App* emit = app.add_subcommand("fixture", "emit a named fixture as a map file");
  emit->add_option("--name", emit_name, "fixture name")->required();
  emit->add_option("--param", emit_params, "fixture parameter key=value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  const std::string command = echo_command(argc, argv);
  try {
    if (eval->parsed())
      return run_eval(command, load_map(map_path, fixture_name, parse_params(raw_params)),
                      point_text, what);
    if (verify->parsed()) {
      std::vector<int> dims;
      std::stringstream ss(dims_text);
      std::string part;
      while (std::getline(ss, part, ',')) {
        int n = 0;
        try {
          n = std::stoi(part);
        } catch (const std::exception&) {
          throw ParseError("--n: could not parse dimension \"" + part + "\"");
        }
        if (n < 1 || n > kMaxDimension)
          throw ParseError("--n entries must be between 1 and " + std::to_string(kMaxDimension));
        dims.push_back(n);
      }
      return run_verify(command, suite, trials, effective_seed(seed), dims);
    }
    if (reproduce->parsed()) return run_reproduce(command, example, parse_params(reproduce_params));
    if (emit->parsed()) {
      const PluriMap map = fixture(emit_name, parse_params(emit_params));
      check_caps(map);
      std::cout << to_json(map).dump(2) << '\n';
      return kExitOk;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitParse;
}
