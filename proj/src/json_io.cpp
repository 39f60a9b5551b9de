#include "milnorkit/json_io.hpp"

#include <set>
#include <sstream>

#include "milnorkit/errors.hpp"

namespace milnorkit {

namespace {

using nlohmann::json;

void expect_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ShapeError(where + ": expected a JSON object");
}

void expect_keys(const json& j, const std::string& where,
                 const std::set<std::string>& allowed) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) {
      throw ShapeError(where + ": unknown field \"" + key + "\"");
    }
  }
}

long long get_int(const json& j, const std::string& where,
                  const std::string& key) {
  if (!j.contains(key)) throw ShapeError(where + ": missing field \"" + key + "\"");
  const json& v = j.at(key);
  if (!v.is_number_integer()) {
    throw ShapeError(where + ": field \"" + key + "\" must be an integer");
  }
  return v.get<long long>();
}

}  // namespace

BaseRing ring_from_json(const json& j) {
  expect_object(j, "base");
  expect_keys(j, "base", {"model", "p", "precision"});
  if (!j.contains("model") || !j.at("model").is_string()) {
    throw ShapeError("base: missing or non-string field \"model\"");
  }
  std::string model = j.at("model").get<std::string>();
  RingModel rm;
  if (model == "eqchar") {
    rm = RingModel::EqChar;
  } else if (model == "mixedchar") {
    rm = RingModel::MixedChar;
  } else {
    throw ShapeError("base: model must be \"eqchar\" or \"mixedchar\"");
  }
  long long p = get_int(j, "base", "p");
  long long prec = get_int(j, "base", "precision");
  if (p < 2) throw ShapeError("base: p must be a prime");
  if (prec < 1) throw ShapeError("base: precision must be positive");
  return BaseRing(rm, static_cast<uint64_t>(p), static_cast<int>(prec));
}

json ring_to_json(const BaseRing& ring) {
  json j;
  j["model"] = ring.model() == RingModel::EqChar ? "eqchar" : "mixedchar";
  j["p"] = ring.p();
  j["precision"] = ring.precision();
  return j;
}

TruncatedSeries series_from_json(const BaseRing& ring, int num_vars,
                                 int degree_bound, const json& j) {
  expect_object(j, "series");
  expect_keys(j, "series", {"terms"});
  if (!j.contains("terms") || !j.at("terms").is_array()) {
    throw ShapeError("series: missing \"terms\" array");
  }
  TruncatedSeries s(ring, num_vars, degree_bound);
  int index = 0;
  for (const json& t : j.at("terms")) {
    std::ostringstream os;
    os << "series term " << index;
    std::string where = os.str();
    expect_object(t, where);
    expect_keys(t, where, {"c", "pi", "exp"});
    long long c = get_int(t, where, "c");
    if (!t.contains("exp") || !t.at("exp").is_array()) {
      throw ShapeError(where + ": missing \"exp\" array");
    }
    Monomial m;
    for (const json& e : t.at("exp")) {
      if (!e.is_number_integer() || e.get<long long>() < 0) {
        throw ShapeError(where + ": exponents must be nonnegative integers");
      }
      m.push_back(e.get<int>());
    }
    if (static_cast<int>(m.size()) != num_vars) {
      throw ShapeError(where + ": exponent arity does not match the germ");
    }
    uint64_t coeff;
    if (ring.model() == RingModel::EqChar) {
      long long pi = t.contains("pi") ? get_int(t, where, "pi") : 0;
      if (c < 0 || c >= static_cast<long long>(ring.p())) {
        throw ShapeError(where + ": eqchar coefficients are residues in [0,p)");
      }
      if (pi < 0 || pi >= ring.precision()) {
        throw ShapeError(where + ": pi exponent outside the precision window");
      }
      coeff = ring.from_digit(static_cast<uint64_t>(c), static_cast<int>(pi));
    } else {
      if (t.contains("pi")) {
        throw ShapeError(where + ": \"pi\" is an eqchar-only field");
      }
      if (c < 0 || static_cast<uint64_t>(c) >= ring.modulus()) {
        throw ShapeError(where + ": mixedchar coefficients are residues in [0,p^N)");
      }
      coeff = static_cast<uint64_t>(c);
    }
    s.add_term(m, coeff);
    ++index;
  }
  return s;
}

json series_to_json(const BaseRing& ring, const TruncatedSeries& s) {
  json terms = json::array();
  for (const auto& [m, c] : s.terms()) {
    json exp = json::array();
    for (int e : m) exp.push_back(e);
    if (ring.model() == RingModel::EqChar) {
      for (int jd = 0; jd < ring.precision(); ++jd) {
        uint64_t d = ring.digit(c, jd);
        if (d == 0) continue;
        json t;
        t["c"] = d;
        t["pi"] = jd;
        t["exp"] = exp;
        terms.push_back(t);
      }
    } else {
      json t;
      t["c"] = c;
      t["exp"] = exp;
      terms.push_back(t);
    }
  }
  json j;
  j["terms"] = terms;
  return j;
}

Germ germ_from_json(const json& j) {
  expect_object(j, "germ");
  expect_keys(j, "germ",
              {"base", "n", "r", "degree_bound", "variables", "f"});
  if (!j.contains("base")) throw ShapeError("germ: missing field \"base\"");
  BaseRing ring = ring_from_json(j.at("base"));
  long long n = get_int(j, "germ", "n");
  long long r = get_int(j, "germ", "r");
  long long bound = get_int(j, "germ", "degree_bound");
  if (n < 0 || r < 1) throw ShapeError("germ: needs n >= 0 and r >= 1");
  if (bound < 1) throw ShapeError("germ: degree_bound must be positive");

  Germ g{ring, static_cast<int>(n), static_cast<int>(r),
         static_cast<int>(bound), {}, {}};
  if (j.contains("variables")) {
    if (!j.at("variables").is_array()) {
      throw ShapeError("germ: \"variables\" must be an array of names");
    }
    for (const json& v : j.at("variables")) {
      if (!v.is_string()) throw ShapeError("germ: variable names are strings");
      g.variables.push_back(v.get<std::string>());
    }
    if (static_cast<int>(g.variables.size()) != g.num_vars()) {
      throw ShapeError("germ: expected n + r variable names");
    }
  }
  if (!j.contains("f") || !j.at("f").is_array()) {
    throw ShapeError("germ: missing \"f\" array");
  }
  for (const json& comp : j.at("f")) {
    g.f.push_back(series_from_json(ring, g.num_vars(), g.degree_bound, comp));
  }
  check_shape(g);
  return g;
}

json germ_to_json(const Germ& g) {
  json j;
  j["base"] = ring_to_json(g.base);
  j["n"] = g.n;
  j["r"] = g.r;
  j["degree_bound"] = g.degree_bound;
  json vars = json::array();
  for (const std::string& v : g.names()) vars.push_back(v);
  j["variables"] = vars;
  json f = json::array();
  for (const TruncatedSeries& comp : g.f) {
    f.push_back(series_to_json(g.base, comp));
  }
  j["f"] = f;
  return j;
}

Germ reembed(const Germ& g, int degree_bound, int pi_precision) {
  int D = degree_bound > 0 ? degree_bound : g.degree_bound;
  int N = pi_precision > 0 ? pi_precision : g.base.precision();
  BaseRing ring(g.base.model(), g.base.p(), N);
  Germ out{ring, g.n, g.r, D, g.variables, {}};
  for (const TruncatedSeries& comp : g.f) {
    TruncatedSeries s(ring, g.num_vars(), D);
    for (const auto& [m, c] : comp.terms()) {
      s.add_term(m, c % ring.modulus());
    }
    out.f.push_back(std::move(s));
  }
  check_shape(out);
  return out;
}

}  // namespace milnorkit
