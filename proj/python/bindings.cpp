// Python bindings for the core operations.  Reports carry the same field
// names as the command-line JSON output, as plain dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>

#include <json.hpp>

#include "milnorkit/base_ring.hpp"
#include "milnorkit/compactify.hpp"
#include "milnorkit/determinacy.hpp"
#include "milnorkit/errors.hpp"
#include "milnorkit/gf.hpp"
#include "milnorkit/json_io.hpp"
#include "milnorkit/koszul.hpp"
#include "milnorkit/milnor.hpp"
#include "milnorkit/newton_polygon.hpp"
#include "milnorkit/series.hpp"
#include "milnorkit/version.hpp"

namespace py = pybind11;
using json = nlohmann::json;
using namespace milnorkit;

namespace {

Germ load_germ(const std::string& text, int degree_bound, int pi_precision) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ShapeError(std::string("germ JSON does not parse: ") + e.what());
  }
  return reembed(germ_from_json(j), degree_bound, pi_precision);
}

py::dict milnor_dict(const Germ& g) {
  MilnorReport rep = milnor_report(g);
  long long t1 = t1_length(g);
  py::dict out;
  out["mu"] = rep.mu;
  out["t1"] = t1;
  if (rep.mu_via_koszul)
    out["mu_via_koszul"] = *rep.mu_via_koszul;
  else
    out["mu_via_koszul"] = py::none();
  out["agreement"] = rep.agreement && rep.mu == t1;
  out["certificate_order"] = rep.certificate;
  out["precision_degree"] = rep.precision_degree;
  out["precision_pi"] = rep.precision_pi;
  return out;
}

py::dict koszul_check_dict(const Germ& g) {
  QuotientRing Q(g.base, g.num_vars(), g.degree_bound);
  FreeComplex C = koszul_contraction(Q, g.f);
  bool d2 = d2_check(C);
  FreeComplex W = koszul_wedge(Q, g.f);
  FreeComplex D = dualize(C);
  bool duality = D.lo == W.lo && D.ranks == W.ranks;
  if (duality) {
    for (size_t i = 0; duality && i < D.diffs.size(); ++i)
      for (size_t r = 0; duality && r < D.diffs[i].size(); ++r)
        for (size_t c = 0; duality && c < D.diffs[i][r].size(); ++c)
          duality = D.diffs[i][r][c] == W.diffs[i][r][c];
  }
  auto H = homology_lengths(C);
  py::dict table;
  bool acyclic = true;
  for (const auto& [deg, len] : H) {
    table[py::int_(deg)] = len;
    if (deg < 0 && len != 0) acyclic = false;
  }
  py::dict out;
  out["homology"] = table;
  out["euler_characteristic"] = euler_characteristic(H);
  out["d2_zero"] = d2;
  out["duality_exact"] = duality;
  out["acyclic_in_negative_degrees"] = acyclic;
  return out;
}

py::dict determinacy_dict(const Germ& f, const Germ& g, int target_order,
                          bool force) {
  if (!(f.base == g.base) || f.n != g.n || f.r != g.r ||
      f.degree_bound != g.degree_bound)
    throw ShapeError("base and perturbed germs must share ring and shape");
  DeterminacyRun run = newton_coordinate_change(f, g.f, target_order, force);
  EquisingularCheck eq = verify_equisingular(f, g.f, run);
  py::list steps;
  for (const DeterminacyStep& s : run.steps) {
    py::dict step;
    step["i"] = s.index;
    step["ord_alpha"] = s.ord_alpha;
    step["ord_eps"] = s.ord_eps;
    steps.append(step);
  }
  py::dict checks;
  checks["residual_ok"] = eq.residual_ok;
  checks["mu_match"] = eq.mu_match;
  checks["tangent_ok"] = eq.tangent_ok;
  py::dict out;
  out["mu"] = run.mu;
  out["bound"] = run.bound;
  out["steps"] = steps;
  out["verified_to"] = run.verified_to;
  out["equisingular"] = eq.verified();
  out["checks"] = checks;
  out["unsupported"] = run.unsupported;
  return out;
}

py::dict dm0_dict(const Germ& g) {
  VanishingReport rep = verify_vanishing_n0(g);
  py::list segs;
  for (const PolygonSegment& s : rep.polygon.segments) {
    std::ostringstream slope;
    slope << s.slope_num << "/" << s.slope_den;
    py::dict seg;
    seg["slope"] = slope.str();
    seg["length"] = s.length;
    segs.append(seg);
  }
  py::dict polygon;
  polygon["t_factor"] = rep.polygon.t_factor;
  polygon["segments"] = segs;
  py::dict out;
  if (rep.mu >= 0)
    out["mu"] = rep.mu;
  else
    out["mu"] = py::none();
  out["dim_phi0"] = rep.dim_phi0;
  if (rep.swan)
    out["swan"] = *rep.swan;
  else
    out["swan"] = py::none();
  out["tame"] = rep.tame;
  if (rep.skipped)
    out["verified"] = py::none();
  else
    out["verified"] = rep.verified;
  out["skipped"] = rep.skipped;
  out["reason"] = rep.reason;
  out["polygon"] = polygon;
  return out;
}

py::dict sample_dict(const Germ& g, long long samples, uint64_t seed, int lam,
                     int ext_degree, int field_degree, int threads) {
  SamplerConfig cfg;
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.lambda = lam;
  cfg.ext_degree_max = ext_degree;
  cfg.field_degree = field_degree;
  cfg.threads = threads;
  SampleReport rep = sample_good(g, cfg);
  py::list bad;
  for (const BadPoint& b : rep.bad_points) {
    py::dict pt;
    pt["ext_degree"] = b.ext_degree;
    pt["coords"] = b.coords;
    pt["jacobian_rank"] = b.jacobian_rank;
    bad.append(pt);
  }
  py::dict out;
  out["good_found"] = rep.good_found;
  if (rep.first_good_sample >= 0)
    out["first_good_sample"] = rep.first_good_sample;
  else
    out["first_good_sample"] = py::none();
  out["failures"] = rep.failures;
  out["samples"] = rep.samples;
  out["lambda"] = rep.lambda;
  out["fiber_mu"] = rep.fiber_mu;
  out["bad_points"] = bad;
  if (rep.mu_preserved)
    out["mu_preserved"] = *rep.mu_preserved;
  else
    out["mu_preserved"] = py::none();
  out["notes"] = rep.notes;
  return out;
}

py::dict determinantal_dict(uint64_t p, int degree, int n, int r,
                            long long cap) {
  GaloisField F(p, degree);
  DeterminantalCount cnt = determinantal_codim_count(F, n, r, cap);
  py::dict out;
  out["rows"] = cnt.rows;
  out["cols"] = cnt.cols;
  out["q"] = cnt.q;
  out["exact"] = cnt.exact;
  out["total"] = cnt.total;
  out["deficient"] = cnt.deficient;
  out["observed_codim"] = cnt.observed_codim;
  out["theoretical_codim"] = cnt.theoretical_codim;
  out["ci_halfwidth"] = cnt.ci_halfwidth;
  return out;
}

std::string describe_germ(const Germ& g) {
  std::ostringstream os;
  os << "Germ(" << g.base.describe() << ", n=" << g.n << ", r=" << g.r
     << ", degree_bound=" << g.degree_bound << ")";
  return os.str();
}

}  // namespace

PYBIND11_MODULE(milnorkit, m) {
  m.doc() =
      "Exact Milnor numbers, Koszul homology, jet determinacy, and "
      "finite-field compactification sampling for isolated singularities "
      "over a discrete valuation ring.";

  py::register_exception<NotFiniteLengthError>(m, "NotFiniteLengthError");
  py::register_exception<PrecisionError>(m, "PrecisionError");
  py::register_exception<JetBoundError>(m, "JetBoundError");
  py::register_exception<LinearSolveError>(m, "LinearSolveError");

  py::class_<Germ>(m, "Germ")
      .def_property_readonly("n", [](const Germ& g) { return g.n; })
      .def_property_readonly("r", [](const Germ& g) { return g.r; })
      .def_property_readonly("degree_bound",
                             [](const Germ& g) { return g.degree_bound; })
      .def_property_readonly("pi_precision",
                             [](const Germ& g) { return g.base.precision(); })
      .def_property_readonly("p", [](const Germ& g) { return g.base.p(); })
      .def_property_readonly(
          "model",
          [](const Germ& g) {
            return g.base.model() == RingModel::EqChar
                       ? std::string("eqchar")
                       : std::string("mixedchar");
          })
      .def_property_readonly("variables",
                             [](const Germ& g) { return g.names(); })
      .def("__repr__", &describe_germ);

  m.def("version", [] { return std::string(kVersion); });
  m.def("load_germ", &load_germ, py::arg("text"),
        py::arg("degree_bound") = -1, py::arg("pi_precision") = -1,
        "Parse a germ from its JSON wire format, optionally re-embedded at "
        "a different degree bound or pi precision.");
  m.def(
      "dump_germ",
      [](const Germ& g) { return germ_to_json(g).dump(2); },
      py::arg("germ"), "Serialize a germ back to its JSON wire format.");
  m.def("milnor", &milnor_dict, py::arg("germ"),
        "Milnor number, T^1 length, and the Koszul-side Euler "
        "characteristic, with their agreement flag.");
  m.def("koszul_check", &koszul_check_dict, py::arg("germ"),
        "Homology table, duality, and d^2 == 0 audit of the contraction "
        "complex on the germ's components.");
  m.def("determinacy", &determinacy_dict, py::arg("base"),
        py::arg("perturbed"), py::arg("target_order") = -1,
        py::arg("force") = false,
        "Newton coordinate-change ledger carrying the perturbed germ into "
        "the ideal of the base germ, with the equisingularity checks.");
  m.def("dm0", &dm0_dict, py::arg("germ"),
        "Newton-polygon vanishing-cycle comparison for a one-variable germ "
        "(n = 0): mu against dim Phi^0 under a tameness certificate.");
  m.def("sample", &sample_dict, py::arg("germ"), py::arg("samples") = 100,
        py::arg("seed") = 42, py::arg("lambda_") = -1,
        py::arg("ext_degree") = 3, py::arg("field_degree") = 1,
        py::arg("threads") = 0,
        "Seeded search for a smooth projective compactification of a "
        "perturbed germ over the residue field.");
  m.def("determinantal_count", &determinantal_dict, py::arg("p"),
        py::arg("degree"), py::arg("n"), py::arg("r"),
        py::arg("cap") = 30000000,
        "Census of rank-deficient (n+r) x r matrices over F_(p^degree).");
}
