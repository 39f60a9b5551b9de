#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "milnorkit/bruteforce.hpp"
#include "milnorkit/compactify.hpp"
#include "milnorkit/determinacy.hpp"
#include "milnorkit/errors.hpp"
#include "milnorkit/gf.hpp"
#include "milnorkit/json_io.hpp"
#include "milnorkit/koszul.hpp"
#include "milnorkit/local_algebra.hpp"
#include "milnorkit/milnor.hpp"
#include "milnorkit/newton_polygon.hpp"
#include "milnorkit/rng.hpp"
#include "milnorkit/series.hpp"
#include "milnorkit/version.hpp"

using json = nlohmann::json;
using namespace milnorkit;

namespace {

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ShapeError("cannot open input file: " + path);
  return json::parse(in);
}

void emit(const json& report, const std::string& out_path) {
  std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw ShapeError("cannot open output file: " + out_path);
    out << text;
  }
}

json envelope(const std::string& command, const json& config) {
  json j;
  j["command"] = command;
  j["version"] = kVersion;
  j["config"] = config;
  return j;
}

json precision_of(const Germ& g) {
  json j;
  j["degree_bound"] = g.degree_bound;
  j["pi_precision"] = g.base.precision();
  return j;
}

json int_or_null(long long v) { return v < 0 ? json(nullptr) : json(v); }

// ---------------------------------------------------------------- milnor --

int cmd_milnor(const std::string& input, const std::string& output,
               int degree_bound, int pi_precision) {
  json config{{"input", input},
              {"degree_bound", degree_bound},
              {"pi_precision", pi_precision}};
  Germ g = reembed(germ_from_json(load_json(input)), degree_bound,
                   pi_precision);
  MilnorReport rep = milnor_report(g);
  long long t1 = t1_length(g);

  bool agree = rep.agreement && rep.mu == t1;
  json out = envelope("milnor", config);
  out["precision"] = precision_of(g);
  out["provenance"] = {
      {"mu", "certified colength of the jacobian-extended ideal"},
      {"t1", "certified colength of the normal-module cokernel"},
      {"mu_via_koszul",
       "euler characteristic of the top derived exterior power"}};
  out["mu"] = rep.mu;
  out["t1"] = t1;
  out["mu_via_koszul"] =
      rep.mu_via_koszul ? json(*rep.mu_via_koszul) : json(nullptr);
  out["agreement"] = agree;
  out["certificate_order"] = rep.certificate;
  emit(out, output);
  std::cerr << "mu = " << rep.mu << (agree ? " (verified)" : " (DISAGREEMENT)")
            << "\n";
  return agree ? 0 : 2;
}

// ---------------------------------------------------------- koszul-check --

bool same_matrices(const FreeComplex& A, const FreeComplex& B) {
  if (A.lo != B.lo || A.ranks != B.ranks) return false;
  for (size_t i = 0; i < A.diffs.size(); ++i) {
    if (A.diffs[i].size() != B.diffs[i].size()) return false;
    for (size_t r = 0; r < A.diffs[i].size(); ++r) {
      if (A.diffs[i][r].size() != B.diffs[i][r].size()) return false;
      for (size_t c = 0; c < A.diffs[i][r].size(); ++c) {
        if (!(A.diffs[i][r][c] == B.diffs[i][r][c])) return false;
      }
    }
  }
  return true;
}

int cmd_koszul_check(const std::string& input, const std::string& output,
                     int degree_bound, int pi_precision) {
  json config{{"input", input},
              {"degree_bound", degree_bound},
              {"pi_precision", pi_precision}};
  Germ g = reembed(germ_from_json(load_json(input)), degree_bound,
                   pi_precision);
  QuotientRing Q(g.base, g.num_vars(), g.degree_bound);
  FreeComplex C = koszul_contraction(Q, g.f);
  bool d2 = d2_check(C);
  bool duality = same_matrices(dualize(C), koszul_wedge(Q, g.f));
  std::map<int, long long> H = homology_lengths(C);
  long long chi = 0;
  json table;
  for (const auto& [deg, len] : H) {
    table[std::to_string(deg)] = len;
    chi += (deg % 2 == 0 ? 1 : -1) * len;
  }
  bool acyclic = true;
  for (const auto& [deg, len] : H) {
    if (deg < 0 && len != 0) acyclic = false;
  }

  bool ok = d2 && duality;
  json out = envelope("koszul-check", config);
  out["precision"] = precision_of(g);
  out["provenance"] = {
      {"homology", "certified homology lengths of the contraction complex"},
      {"duality_exact", "degreewise dual against the wedge complex"}};
  out["homology"] = table;
  out["euler_characteristic"] = chi;
  out["d2_zero"] = d2;
  out["duality_exact"] = duality;
  out["acyclic_in_negative_degrees"] = acyclic;
  emit(out, output);
  std::cerr << "koszul check " << (ok ? "passed" : "FAILED") << "\n";
  return ok ? 0 : 2;
}

// ------------------------------------------------------------ determinacy --

int cmd_determinacy(const std::string& base_path, const std::string& pert_path,
                    const std::string& output, int degree_bound,
                    int pi_precision, int target_order, bool force) {
  json config{{"base", base_path},        {"perturbed", pert_path},
              {"degree_bound", degree_bound}, {"pi_precision", pi_precision},
              {"target_order", target_order}, {"force", force}};
  Germ f = reembed(germ_from_json(load_json(base_path)), degree_bound,
                   pi_precision);
  Germ g = reembed(germ_from_json(load_json(pert_path)), degree_bound,
                   pi_precision);
  if (!(f.base == g.base) || f.n != g.n || f.r != g.r ||
      f.degree_bound != g.degree_bound) {
    throw ShapeError("base and perturbed germs must share ring and shape");
  }

  DeterminacyRun run = newton_coordinate_change(f, g.f, target_order, force);
  EquisingularCheck eq = verify_equisingular(f, g.f, run);

  json steps = json::array();
  for (const DeterminacyStep& s : run.steps) {
    steps.push_back(
        {{"i", s.index}, {"ord_alpha", s.ord_alpha}, {"ord_eps", s.ord_eps}});
  }
  json out = envelope("determinacy", config);
  out["precision"] = precision_of(f);
  out["provenance"] = {
      {"steps", "newton coordinate-change iteration"},
      {"equisingular", "residual, mu, and tangency checks on the change"}};
  out["mu"] = run.mu;
  out["bound"] = run.bound;
  out["steps"] = steps;
  out["verified_to"] = run.verified_to;
  out["equisingular"] = eq.verified();
  out["checks"] = {{"residual_ok", eq.residual_ok},
                   {"mu_match", eq.mu_match},
                   {"tangent_ok", eq.tangent_ok}};
  out["unsupported"] = run.unsupported;
  emit(out, output);
  std::cerr << "determinacy bound " << run.bound
            << (eq.verified() ? " (equisingular)" : " (NOT verified)") << "\n";
  return eq.verified() ? 0 : 2;
}

// -------------------------------------------------------------------- dm0 --

json polygon_to_json(const NewtonPolygon& poly) {
  json segs = json::array();
  for (const PolygonSegment& s : poly.segments) {
    std::ostringstream slope;
    slope << s.slope_num << "/" << s.slope_den;
    segs.push_back({{"slope", slope.str()}, {"length", s.length}});
  }
  return {{"t_factor", poly.t_factor}, {"segments", segs}};
}

int cmd_dm0(const std::string& input, const std::string& output,
            int degree_bound, int pi_precision) {
  json config{{"input", input},
              {"degree_bound", degree_bound},
              {"pi_precision", pi_precision}};
  Germ g = reembed(germ_from_json(load_json(input)), degree_bound,
                   pi_precision);
  VanishingReport rep = verify_vanishing_n0(g);

  json out = envelope("dm0", config);
  out["precision"] = precision_of(g);
  out["provenance"] = {
      {"dim_phi0", "newton polygon of the one-variable germ"},
      {"tame", "slope-denominator and residual-separability certificate"},
      {"mu", "certified colength of the jacobian-extended ideal"}};
  out["mu"] = int_or_null(rep.mu);
  out["dim_phi0"] = rep.dim_phi0;
  out["swan"] = rep.swan ? json(*rep.swan) : json(nullptr);
  out["tame"] = rep.tame;
  out["verified"] = rep.skipped ? json(nullptr) : json(rep.verified);
  out["skipped"] = rep.skipped;
  out["reason"] = rep.reason;
  out["polygon"] = polygon_to_json(rep.polygon);
  emit(out, output);
  std::cerr << "dim_phi0 = " << rep.dim_phi0
            << (rep.skipped ? " (verification skipped)"
                            : (rep.verified ? " (verified)" : " (MISMATCH)"))
            << "\n";
  if (rep.skipped) return 0;
  return rep.verified ? 0 : 2;
}

// -------------------------------------------------------------- compactify --

int cmd_compactify(const std::string& input, const std::string& output,
                   uint64_t q, const std::string& lambda_flag,
                   long long samples, uint64_t seed, int ext_degree) {
  json config{{"input", input},   {"q", q},
              {"lambda", lambda_flag}, {"samples", samples},
              {"seed", seed},     {"ext_degree", ext_degree}};
  Germ g = germ_from_json(load_json(input));

  SamplerConfig cfg;
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.ext_degree_max = ext_degree;
  if (q != 0) {
    uint64_t p = g.base.p();
    uint64_t x = 1;
    int d = 0;
    while (x < q) {
      x *= p;
      ++d;
    }
    if (x != q || d < 1) {
      throw DomainError("q must be a positive power of the germ's residue "
                        "characteristic");
    }
    cfg.field_degree = d;
  }
  if (lambda_flag != "auto") {
    size_t pos = 0;
    int lam = std::stoi(lambda_flag, &pos);
    if (pos != lambda_flag.size() || lam < 0) {
      throw ShapeError("--lambda takes \"auto\" or a nonnegative integer");
    }
    cfg.lambda = lam;
  }

  SampleReport rep = sample_good(g, cfg);

  json bad = json::array();
  for (const BadPoint& b : rep.bad_points) {
    json coords = json::array();
    for (uint64_t c : b.coords) coords.push_back(c);
    bad.push_back({{"ext_degree", b.ext_degree},
                   {"coords", coords},
                   {"jacobian_rank", b.jacobian_rank}});
  }
  json out = envelope("compactify", config);
  out["precision"] = precision_of(g);
  out["provenance"] = {
      {"good_found", "point-by-point smoothness scan away from the marked "
                     "point"},
      {"mu_preserved", "milnor number of the dehomogenized good member"}};
  out["good_found"] = rep.good_found;
  out["first_good_sample"] = int_or_null(rep.first_good_sample);
  out["failures"] = rep.failures;
  out["samples"] = rep.samples;
  out["lambda"] = rep.lambda;
  out["fiber_mu"] = rep.fiber_mu;
  out["bad_points"] = bad;
  out["mu_preserved"] =
      rep.mu_preserved ? json(*rep.mu_preserved) : json(nullptr);
  out["notes"] = rep.notes;
  emit(out, output);
  std::cerr << (rep.good_found ? "good member found" : "NO good member")
            << " (" << rep.failures << "/" << rep.samples << " failures)\n";
  bool ok = rep.good_found && rep.mu_preserved.value_or(true);
  return ok ? 0 : 2;
}

// --------------------------------------------------------------- selfcheck --

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

TruncatedSeries poly_of(const BaseRing& R, int vars, int bound,
                        const std::vector<std::pair<Monomial, long long>>& t) {
  TruncatedSeries s(R, vars, bound);
  for (const auto& [m, c] : t) s.add_term(m, R.from_int(c));
  return s;
}

Germ node_of(const BaseRing& R, int a, int D) {
  TruncatedSeries f = poly_of(R, 1, D, {{{a}, 1}});
  f.add_term({0}, R.neg(R.uniformizer()));
  return Germ{R, 0, 1, D, {"t"}, {f}};
}

long long diagonal_oracle(const Germ& g, int D) {
  LocalIdeal ideal = jacobian_ideal(g.widened_components(D + 1));
  return oracle::diagonal_quotient_length(
      g.base, oracle::macaulay_rows(ideal),
      MonomialBasis(g.num_vars(), D).size());
}

std::vector<CheckResult> run_selfcheck() {
  std::vector<CheckResult> results;
  auto check = [&](const std::string& name,
                   const std::function<std::pair<bool, std::string>()>& body) {
    CheckResult r;
    r.name = name;
    try {
      auto [ok, detail] = body();
      r.pass = ok;
      r.detail = detail;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    results.push_back(std::move(r));
  };

  check("splitmix64 reference stream", [] {
    SplitMix64 s{0};
    bool ok = s.next() == 0xE220A8397B1DCDAFULL &&
              s.next() == 0x6E789E6AA1B965F4ULL &&
              s.next() == 0x06C45D188009454FULL;
    return std::pair{ok, std::string("three draws from seed 0")};
  });

  check("galois field tables (F4, F9)", [] {
    GaloisField F4(2, 2), F9(3, 2);
    bool ok = F4.irreducible() == std::vector<uint64_t>{1, 1, 1} &&
              F4.mul(2, 2) == 3 && F4.mul(2, 3) == 1 && F9.mul(3, 3) == 2;
    return std::pair{ok, std::string("canonical moduli and products")};
  });

  check("node family t^a - pi, a = 2..8", [] {
    std::ostringstream os;
    bool ok = true;
    for (int a = 2; a <= 8; ++a) {
      BaseRing R(RingModel::EqChar, 11, 6);
      Germ g = node_of(R, a, a + 6);
      long long mu = milnor_number(g).mu;
      long long dim = verify_vanishing_n0(g).dim_phi0;
      if (mu != a - 1 || dim != a - 1) ok = false;
      os << "(" << a << "," << mu << "," << dim << ") ";
    }
    return std::pair{ok, os.str() + "expected mu = dim = a - 1"};
  });

  check("cusp pipeline agreement", [] {
    BaseRing R(RingModel::EqChar, 5, 6);
    TruncatedSeries f = poly_of(R, 2, 10, {{{0, 2}, 1}, {{3, 0}, -1}});
    f.add_term({0, 0}, R.neg(R.uniformizer()));
    Germ g{R, 1, 1, 10, {"x", "y"}, {f}};
    MilnorReport rep = milnor_report(g);
    long long t1 = t1_length(g);
    bool ok = rep.mu == 2 && t1 == 2 && rep.mu_via_koszul &&
              *rep.mu_via_koszul == 2 && rep.agreement;
    std::ostringstream os;
    os << "mu=" << rep.mu << " t1=" << t1 << " koszul="
       << (rep.mu_via_koszul ? std::to_string(*rep.mu_via_koszul) : "-");
    return std::pair{ok, os.str() + " expected 2 throughout"};
  });

  check("truncated cubic quotient has length 3", [] {
    BaseRing R(RingModel::EqChar, 5, 1);
    QuotientRing Q(R, 1, 9, {poly_of(R, 1, 9, {{{3}, 1}})});
    FreeComplex C{Q, 0, {1}, {}};
    auto H = homology_lengths(C);
    return std::pair{H.size() == 1 && H[0] == 3,
                     std::string("H^0 of [R], R = F_5[[t]]/(t^3)")};
  });

  check("double cover multiplication complex", [] {
    BaseRing R(RingModel::EqChar, 5, 4);
    TruncatedSeries rel = poly_of(R, 1, 8, {{{2}, 1}});
    rel.add_term({0}, R.neg(R.uniformizer()));
    QuotientRing Q(R, 1, 8, {rel});
    FreeComplex C{Q, 0, {1, 1}, {{{poly_of(R, 1, 8, {{{1}, 2}})}}}};
    auto H = homology_lengths(C);
    return std::pair{H[0] == 0 && H[1] == 1,
                     std::string("[R ->(2t) R] over R = A[t]/(t^2 - pi)")};
  });

  check("regular pair resolves the point", [] {
    BaseRing R(RingModel::EqChar, 5, 1);
    QuotientRing Q(R, 2, 8);
    TruncatedSeries t1 = TruncatedSeries::variable(R, 2, 8, 0);
    TruncatedSeries t2 = TruncatedSeries::variable(R, 2, 8, 1);
    auto H = homology_lengths(koszul_contraction(Q, {t1, t2}));
    return std::pair{H[0] == 1 && H[-1] == 0 && H[-2] == 0,
                     std::string("contraction complex of (t1, t2)")};
  });

  check("non-regular pair has torsion homology", [] {
    BaseRing R(RingModel::EqChar, 5, 1);
    QuotientRing Q(R, 1, 9);
    auto H = homology_lengths(koszul_contraction(
        Q, {poly_of(R, 1, 9, {{{2}, 1}}), poly_of(R, 1, 9, {{{3}, 1}})}));
    return std::pair{H[0] == 2 && H[-1] == 2,
                     std::string("contraction complex of (t^2, t^3)")};
  });

  check("koszul duality is bit-exact on random entries", [] {
    BaseRing R(RingModel::EqChar, 5, 2);
    QuotientRing Q(R, 2, 6);
    std::mt19937_64 rng(20260822);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<TruncatedSeries> u;
      for (int i = 0; i < 2; ++i) {
        TruncatedSeries s(R, 2, 6);
        for (int k = 0; k < 3; ++k) {
          Monomial m(2, 0);
          int deg = (int)(rng() % 4);
          for (int d = 0; d < deg; ++d) ++m[rng() % 2];
          s.add_term(m, R.from_digit(rng() % 5, (int)(rng() % 2)));
        }
        u.push_back(std::move(s));
      }
      if (!same_matrices(dualize(koszul_contraction(Q, u)),
                         koszul_wedge(Q, u))) {
        return std::pair{false, std::string("mismatch at trial ") +
                                    std::to_string(trial)};
      }
    }
    return std::pair{true, std::string("50 random pairs over F_25-free ring")};
  });

  check("derived power euler characteristic equals mu", [] {
    BaseRing R(RingModel::EqChar, 5, 4);
    Germ g = node_of(R, 2, 8);
    long long chi = milnor_via_koszul(g);
    long long mu = milnor_number(g).mu;
    std::ostringstream os;
    os << "chi=" << chi << " mu=" << mu;
    return std::pair{chi == 1 && mu == 1, os.str()};
  });

  check("determinacy newton ledger on the node", [] {
    BaseRing R(RingModel::EqChar, 5, 4);
    Germ f = node_of(R, 2, 8);
    std::vector<TruncatedSeries> g = f.f;
    g[0].add_term({4}, R.from_int(1));
    DeterminacyRun run = newton_coordinate_change(f, g);
    EquisingularCheck eq = verify_equisingular(f, g, run);
    bool ledger = true;
    for (const DeterminacyStep& s : run.steps) {
      if (s.ord_eps < (1 << s.index) * run.mu + run.mu) ledger = false;
    }
    return std::pair{run.bound == 3 && eq.verified() && ledger,
                     std::string("t^2 - pi under a t^4 perturbation")};
  });

  check("tame quartic matches its vanishing-cycle count", [] {
    BaseRing R(RingModel::EqChar, 5, 6);
    VanishingReport rep = verify_vanishing_n0(node_of(R, 4, 10));
    std::ostringstream os;
    os << "mu=" << rep.mu << " dim=" << rep.dim_phi0;
    return std::pair{rep.verified && rep.mu == 3 && rep.dim_phi0 == 3 &&
                         rep.tame && rep.swan && *rep.swan == 0,
                     os.str()};
  });

  check("wild quintic is skipped with an infinite relative mu", [] {
    BaseRing R(RingModel::EqChar, 5, 6);
    VanishingReport rep = verify_vanishing_n0(node_of(R, 5, 11));
    return std::pair{rep.skipped && !rep.tame && rep.dim_phi0 == 4 &&
                         rep.mu == -1,
                     std::string("t^5 - pi at p = 5")};
  });

  check("irregular product diverges from the cycle count", [] {
    BaseRing R(RingModel::EqChar, 5, 6);
    TruncatedSeries f(R, 1, 12);
    f.add_term({3}, R.one());
    f.add_term({2}, R.neg(R.uniformizer()));
    f.add_term({1}, R.neg(R.uniformizer()));
    f.add_term({0}, R.from_digit(1, 2));
    Germ g{R, 0, 1, 12, {"t"}, {f}};
    VanishingReport rep = verify_vanishing_n0(g);
    long long mu = milnor_number(g).mu;
    long long oracle = diagonal_oracle(g, 12);
    std::ostringstream os;
    os << "mu=" << mu << " oracle=" << oracle << " dim=" << rep.dim_phi0;
    return std::pair{rep.skipped && mu == 3 && oracle == 3 &&
                         rep.dim_phi0 == 2,
                     os.str() + " (irregular germ: comparison withheld)"};
  });

  check("determinantal censuses match the product formula", [] {
    GaloisField F3(3, 1), F2(2, 1);
    DeterminantalCount a = determinantal_codim_count(F3, 0, 2);
    DeterminantalCount b = determinantal_codim_count(F2, 1, 2);
    std::ostringstream os;
    os << "2x2/F3: " << a.deficient << "/81, 3x2/F2: " << b.deficient
       << "/64";
    return std::pair{a.deficient == 33 && b.deficient == 22, os.str()};
  });

  check("incidence fibre count over a coordinate point", [] {
    auto field = std::make_shared<const GaloisField>(3, 1);
    PerturbationFamily fam;
    fam.field = field;
    fam.n = 0;
    fam.r = 1;
    fam.lambda = 1;
    FieldPoly t{1, {}};
    t.add_term(*field, {1}, 1);
    fam.fbar.push_back(t);
    fam.coeffs.assign(1, {});
    IncidenceCheck out = incidence_fiber_dim_check(fam, {0, 1});
    std::ostringstream os;
    os << "matching=" << out.matching << " expected=" << out.expected;
    return std::pair{out.pass && out.matching == 1, os.str()};
  });

  check("sampler finds a good compactification of the node", [] {
    BaseRing R(RingModel::MixedChar, 7, 4);
    SamplerConfig cfg;
    cfg.samples = 30;
    cfg.seed = 42;
    cfg.ext_degree_max = 2;
    SampleReport rep = sample_good(node_of(R, 2, 8), cfg);
    std::ostringstream os;
    os << "first_good=" << rep.first_good_sample << " failures="
       << rep.failures << "/30";
    return std::pair{rep.good_found && rep.mu_preserved.value_or(false),
                     os.str()};
  });

  return results;
}

int cmd_selfcheck(const std::string& output) {
  std::vector<CheckResult> results = run_selfcheck();
  size_t width = 0;
  for (const CheckResult& r : results) width = std::max(width, r.name.size());
  int failures = 0;
  for (const CheckResult& r : results) {
    if (!r.pass) ++failures;
    std::cout << r.name << std::string(width + 2 - r.name.size(), ' ')
              << (r.pass ? "pass" : "FAIL") << "  " << r.detail << "\n";
  }
  std::cout << results.size() - failures << "/" << results.size()
            << " checks passed\n";
  if (!output.empty()) {
    json rows = json::array();
    for (const CheckResult& r : results) {
      rows.push_back(
          {{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    }
    json out = envelope("selfcheck", json::object());
    out["checks"] = rows;
    out["failures"] = failures;
    emit(out, output);
  }
  return failures == 0 ? 0 : 2;
}

// ------------------------------------------------------------------- main --

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const json::parse_error& e) {
    json err{{"error", "ParseError"}, {"detail", e.what()}};
    std::cout << err.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const JetBoundError& e) {
    json err{{"error", "JetBoundViolated"}, {"detail", e.what()}};
    std::cout << err.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const PrecisionError& e) {
    json err{{"error", "PrecisionExceeded"}, {"detail", e.what()}};
    std::cout << err.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NotFiniteLengthError& e) {
    json err{{"error", "NotFiniteLength"}, {"detail", e.what()}};
    std::cout << err.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const LinearSolveError& e) {
    json err{{"error", "LinearSolveFailed"}, {"detail", e.what()}};
    std::cout << err.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ShapeError& e) {
    json err{{"error", "ShapeError"}, {"detail", e.what()}};
    std::cout << err.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    json err{{"error", "DomainError"}, {"detail", e.what()}};
    std::cout << err.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    json err{{"error", "InternalError"}, {"detail", e.what()}};
    std::cout << err.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact milnor numbers, koszul homology, jet determinacy, and "
               "compactification sampling over discrete valuation rings"};
  app.require_subcommand(1);

  std::string input, output, base_path, pert_path;
  int degree_bound = -1, pi_precision = -1;
  int target_order = -1, ext_degree = 3;
  bool force = false;
  uint64_t q = 0, seed = 42;
  long long samples = 100;
  std::string lambda_flag = "auto";

  CLI::App* milnor = app.add_subcommand(
      "milnor", "milnor number with the koszul cross-check");
  milnor->add_option("--input,-i", input, "germ JSON file")->required();
  milnor->add_option("--output,-o", output, "report path (default stdout)");
  milnor->add_option("--degree-bound", degree_bound, "override D");
  milnor->add_option("--pi-precision", pi_precision, "override N");

  CLI::App* koszul = app.add_subcommand(
      "koszul-check", "homology table, duality, and d^2 = 0 audit");
  koszul->add_option("--input,-i", input, "germ JSON file")->required();
  koszul->add_option("--output,-o", output, "report path (default stdout)");
  koszul->add_option("--degree-bound", degree_bound, "override D");
  koszul->add_option("--pi-precision", pi_precision, "override N");

  CLI::App* determinacy = app.add_subcommand(
      "determinacy", "newton coordinate change between two germ files");
  determinacy->add_option("base", base_path, "base germ JSON")->required();
  determinacy->add_option("perturbed", pert_path, "perturbed germ JSON")
      ->required();
  determinacy->add_option("--output,-o", output, "report path (default stdout)");
  determinacy->add_option("--degree-bound", degree_bound, "override D");
  determinacy->add_option("--pi-precision", pi_precision, "override N");
  determinacy->add_option("--target-order", target_order,
                          "verification order (default 4 * 3mu)");
  determinacy->add_flag("--force", force,
                        "run despite a jet-bound violation (UNSUPPORTED)");

  CLI::App* dm0 = app.add_subcommand(
      "dm0", "vanishing-cycle comparison for one-variable germs");
  dm0->add_option("--input,-i", input, "germ JSON file")->required();
  dm0->add_option("--output,-o", output, "report path (default stdout)");
  dm0->add_option("--degree-bound", degree_bound, "override D");
  dm0->add_option("--pi-precision", pi_precision, "override N");

  CLI::App* compactify = app.add_subcommand(
      "compactify", "sample smooth projective compactifications");
  compactify->add_option("--input,-i", input, "germ JSON file")->required();
  compactify->add_option("--output,-o", output,
                         "report path (default stdout)");
  compactify->add_option("--q", q, "coefficient field size (power of p)");
  compactify->add_option("--lambda", lambda_flag,
                         "\"auto\" or a degree at least 3 mu");
  compactify->add_option("--samples", samples, "families to draw");
  compactify->add_option("--seed", seed, "substream seed");
  compactify->add_option("--ext-degree", ext_degree,
                         "largest scanned extension degree");

  CLI::App* selfcheck = app.add_subcommand(
      "selfcheck", "run the built-in example corpus against its oracles");
  selfcheck->add_option("--output,-o", output, "JSON report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 1;
  }

  if (milnor->parsed()) {
    return guarded(
        [&] { return cmd_milnor(input, output, degree_bound, pi_precision); });
  }
  if (koszul->parsed()) {
    return guarded([&] {
      return cmd_koszul_check(input, output, degree_bound, pi_precision);
    });
  }
  if (determinacy->parsed()) {
    return guarded([&] {
      return cmd_determinacy(base_path, pert_path, output, degree_bound,
                             pi_precision, target_order, force);
    });
  }
  if (dm0->parsed()) {
    return guarded(
        [&] { return cmd_dm0(input, output, degree_bound, pi_precision); });
  }
  if (compactify->parsed()) {
    return guarded([&] {
      return cmd_compactify(input, output, q, lambda_flag, samples, seed,
                            ext_degree);
    });
  }
  return guarded([&] { return cmd_selfcheck(output); });
}
