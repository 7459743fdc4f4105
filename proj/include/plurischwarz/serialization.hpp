#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "plurischwarz/plurimap.hpp"

namespace plurischwarz {

using nlohmann::json;

// Complex numbers travel as [re, im] pairs; doubles print in shortest
// round-trip decimal form, so serialize -> parse is bit-exact.

inline json to_json(Complex c) { return json::array({c.real(), c.imag()}); }

inline Complex complex_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError(where + ": expected a [re, im] pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

inline json to_json(const CVector& v) {
  json out = json::array();
  for (int i = 0; i < v.dim(); ++i) out.push_back(to_json(v[i]));
  return out;
}

inline CVector cvector_from_json(const json& j, int n, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw ParseError(where + ": expected " + std::to_string(n) + " complex entries");
  CVector v(n);
  for (int i = 0; i < n; ++i) v[i] = complex_from_json(j[static_cast<std::size_t>(i)],
                                                       where + "[" + std::to_string(i) + "]");
  return v;
}

inline json to_json(const CMatrix& m) {
  json out = json::array();
  for (int i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.dim(); ++j) row.push_back(to_json(m(i, j)));
    out.push_back(row);
  }
  return out;
}

inline CMatrix cmatrix_from_json(const json& j, int n, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw ParseError(where + ": expected " + std::to_string(n) + " rows");
  CMatrix m(n);
  for (int i = 0; i < n; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ParseError(where + ".row[" + std::to_string(i) + "]: expected " + std::to_string(n) +
                       " entries");
    for (int k = 0; k < n; ++k)
      m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)],
                                  where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
  }
  return m;
}

// n x n x n coefficient block plus the symmetry flag
inline json to_json(const BilinearOp& t) {
  const int n = t.dim();
  json coeffs = json::array();
  for (int k = 0; k < n; ++k) {
    json slab = json::array();
    for (int i = 0; i < n; ++i) {
      json row = json::array();
      for (int j = 0; j < n; ++j) row.push_back(to_json(t.at(k, i, j)));
      slab.push_back(row);
    }
    coeffs.push_back(slab);
  }
  return json{{"coefficients", coeffs}, {"symmetric", t.symmetric()}};
}

inline json to_json(const PolyMap& f) {
  json terms = json::array();
  for (const auto& term : f.terms()) {
    json alpha = json::array();
    for (int a : term.alpha) alpha.push_back(a);
    terms.push_back(json{{"alpha", alpha}, {"coeff", to_json(term.coeff)}});
  }
  return json{{"kind", "poly"}, {"terms", terms}};
}

inline json to_json(const MobiusMap& t) {
  return json{{"kind", "mobius"}, {"a", to_json(t.coefficients())}};
}

inline json to_json(const HoloMap& f) {
  return std::visit([](const auto& m) { return to_json(m); }, f);
}

inline json to_json(const PluriMap& f) {
  return json{{"dimension", f.dim()}, {"h", to_json(f.h)}, {"g", to_json(f.g)}};
}

inline HoloMap holomap_from_json(const json& j, int n, const std::string& where) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ParseError(where + ": expected an object with a \"kind\" field");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "poly") {
    if (!j.contains("terms") || !j["terms"].is_array())
      throw ParseError(where + ": poly map needs a \"terms\" array");
    std::vector<PolyTerm> terms;
    int index = 0;
    for (const json& jt : j["terms"]) {
      const std::string term_where = where + ".terms[" + std::to_string(index) + "]";
      if (!jt.is_object() || !jt.contains("alpha") || !jt.contains("coeff"))
        throw ParseError(term_where + ": expected {alpha, coeff}");
      const json& ja = jt["alpha"];
      if (!ja.is_array() || static_cast<int>(ja.size()) != n)
        throw ParseError(term_where + ".alpha: expected " + std::to_string(n) + " exponents");
      std::vector<int> alpha;
      for (const json& e : ja) {
        if (!e.is_number_integer() || e.get<int>() < 0)
          throw ParseError(term_where + ".alpha: exponents must be integers >= 0");
        alpha.push_back(e.get<int>());
      }
      terms.push_back(PolyTerm{alpha, cvector_from_json(jt["coeff"], n, term_where + ".coeff")});
      ++index;
    }
    return PolyMap(n, std::move(terms));
  }
  if (kind == "mobius") {
    if (!j.contains("a")) throw ParseError(where + ": mobius map needs an \"a\" matrix");
    try {
      return MobiusMap(cmatrix_from_json(j["a"], n + 1, where + ".a"));
    } catch (const SingularMatrix&) {
      throw ParseError(where + ".a: coefficient matrix must be invertible");
    }
  }
  throw ParseError(where + ".kind: expected \"poly\" or \"mobius\", got \"" + kind + "\"");
}

inline PluriMap map_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("map file: expected a JSON object");
  if (!j.contains("dimension") || !j["dimension"].is_number_integer())
    throw ParseError("map file: missing integer \"dimension\"");
  const int n = j["dimension"].get<int>();
  if (n < 1) throw ParseError("map file: dimension must be >= 1");
  if (!j.contains("h")) throw ParseError("map file: missing \"h\"");
  if (!j.contains("g")) throw ParseError("map file: missing \"g\"");
  return PluriMap(holomap_from_json(j["h"], n, "h"), holomap_from_json(j["g"], n, "g"));
}

// Points on the command line: "re,im;re,im;..." with one re,im pair per
// coordinate.
inline CVector parse_point(const std::string& text, int n) {
  std::vector<Complex> coords;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(';', pos);
    if (next == std::string::npos) next = text.size();
    const std::string part = text.substr(pos, next - pos);
    const std::size_t comma = part.find(',');
    try {
      if (comma == std::string::npos) {
        coords.push_back(Complex(std::stod(part), 0.0));
      } else {
        coords.push_back(Complex(std::stod(part.substr(0, comma)),
                                 std::stod(part.substr(comma + 1))));
      }
    } catch (const std::exception&) {
      throw ParseError("point: could not parse coordinate \"" + part + "\"");
    }
    pos = next + 1;
    if (next == text.size()) break;
  }
  if (static_cast<int>(coords.size()) != n)
    throw ParseError("point: expected " + std::to_string(n) + " coordinates, got " +
                     std::to_string(coords.size()));
  return CVector(coords);
}

// ---------------------------------------------------------------------------
// Machine-readable reports.
// ---------------------------------------------------------------------------

struct CheckRecord {
  std::string name;
  std::string anchor;  // stable slug of the theorem/statement being checked
  bool pass = false;
  double defect = 0.0;
  double tolerance = 0.0;
  double runtime_ms = 0.0;
};

struct Report {
  std::string command;
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;
  json values;  // eval results; empty otherwise

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

inline json to_json(const CheckRecord& c) {
  return json{{"name", c.name},       {"anchor", c.anchor},
              {"status", c.pass ? "pass" : "fail"},
              {"defect", c.defect},   {"tolerance", c.tolerance},
              {"runtime_ms", c.runtime_ms}};
}

inline json to_json(const Report& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  json out{{"command", r.command}, {"seed", r.seed}, {"checks", checks}};
  if (!r.values.is_null()) out["values"] = r.values;
  return out;
}

}  // namespace plurischwarz
