#include "milnorkit/milnor.hpp"

#include <algorithm>
#include <sstream>

#include "milnorkit/errors.hpp"
#include "milnorkit/koszul.hpp"

namespace milnorkit {

namespace {

// Reduction of a component to the residue field, as a series over the exact
// field F_p (equal-characteristic model at precision 1, so pi = 0).
TruncatedSeries residue_series(const BaseRing& fiber, const BaseRing& base,
                               const TruncatedSeries& s) {
  TruncatedSeries out(fiber, s.num_vars(), s.degree_bound());
  for (const auto& [m, c] : s.terms()) out.add_term(m, base.digit(c, 0));
  return out;
}

bool constant_along_base(const BaseRing& base,
                         const std::vector<TruncatedSeries>& f) {
  for (const auto& s : f)
    for (const auto& [m, c] : s.terms())
      if (c >= base.p()) return false;
  return true;
}

int working_bound(const Germ& g) {
  return std::max({2 * g.total_degree(), 8, g.degree_bound});
}

std::string precision_tag(int D, int N) {
  std::ostringstream os;
  os << "(D=" << D << ", N=" << N << ")";
  return os.str();
}

// Whether a certification failure can be cured by a larger degree bound.
bool degree_bound_blame(const NotFiniteLengthError& e) {
  return std::string(e.what()).find("degree bound") != std::string::npos;
}

}  // namespace

int Germ::total_degree() const {
  int d = 0;
  for (const auto& s : f)
    for (const auto& [m, c] : s.terms()) d = std::max(d, milnorkit::total_degree(m));
  return d;
}

std::vector<TruncatedSeries> Germ::widened_components(int bound) const {
  std::vector<TruncatedSeries> out;
  out.reserve(f.size());
  for (const auto& s : f) out.push_back(s.widened(bound));
  return out;
}

std::vector<std::string> Germ::names() const {
  if ((int)variables.size() == num_vars()) return variables;
  std::vector<std::string> out;
  for (int i = 1; i <= num_vars(); ++i) out.push_back("t" + std::to_string(i));
  return out;
}

void check_shape(const Germ& g) {
  if (g.n < 0) throw ShapeError("relative dimension must be nonnegative");
  if (g.r < 1) throw ShapeError("codimension must be at least one");
  if ((int)g.f.size() != g.r)
    throw ShapeError("germ needs exactly r component series");
  if (g.degree_bound < 2)
    throw ShapeError("germ degree bound must be at least two");
  for (const auto& s : g.f) {
    if (s.num_vars() != g.num_vars())
      throw ShapeError("germ components must use n + r variables");
    if (s.degree_bound() != g.degree_bound)
      throw ShapeError("germ components must share the germ's degree bound");
    if (s.ring().model() != g.base.model() || s.ring().p() != g.base.p() ||
        s.ring().precision() != g.base.precision())
      throw ShapeError("germ components must live over the germ's base ring");
  }
  if (!g.variables.empty() && (int)g.variables.size() != g.num_vars())
    throw ShapeError("variable name list must have n + r entries");
}

GermDiagnostics validate(const Germ& g) {
  check_shape(g);
  GermDiagnostics d;

  Monomial origin(g.num_vars(), 0);
  for (int i = 0; i < g.r; ++i) {
    if (g.base.valuation(g.f[i].coeff(origin)) == 0) {
      d.on_fiber = false;
      d.notes.push_back("component " + std::to_string(i + 1) +
                        " has a unit constant term; the origin is not on the germ");
    }
  }
  if (!d.on_fiber) return d;

  // Special fibre: reduce mod pi and ask for an isolated singularity there.
  // Smoothness of the germ along the fibre is equivalent to the reduced
  // Jacobian criterion being the unit ideal, so both flags come from the
  // same exact-field colength.
  BaseRing fiber(RingModel::EqChar, g.base.p(), 1);
  int D = working_bound(g);
  std::vector<TruncatedSeries> fbar;
  bool fiber_zero = false;
  for (int i = 0; i < g.r; ++i) {
    TruncatedSeries red = residue_series(fiber, g.base, g.f[i].widened(D));
    if (red.is_zero()) {
      fiber_zero = true;
      d.notes.push_back("component " + std::to_string(i + 1) +
                        " vanishes identically on the special fibre");
    }
    fbar.push_back(std::move(red));
  }
  if (fiber_zero) {
    d.special_fiber_finite = false;
    return d;
  }

  long long fiber_tjurina = -1;
  try {
    fiber_tjurina = MacaulayTable(jacobian_ideal(fbar)).colength().length;
  } catch (const NotFiniteLengthError&) {
    d.special_fiber_finite = false;
    d.notes.push_back(
        "the reduced equations do not cut an isolated special-fibre "
        "singularity at " + precision_tag(D, 1));
    return d;
  }

  if (fiber_tjurina == 0) {
    d.smooth = true;
    d.notes.push_back("the Jacobian criterion is the unit ideal; mu = 0");
  } else if (constant_along_base(g.base, g.f)) {
    d.fiber_degeneracy_risk = true;
    d.notes.push_back(
        "the equations are constant along the base but the fibre is "
        "singular; the singular locus cannot be isolated over the base");
  }
  return d;
}

namespace {

GermDiagnostics usable_diagnostics(const Germ& g) {
  GermDiagnostics d = validate(g);
  if (!d.on_fiber)
    throw DomainError("germ does not pass through the special-fibre origin");
  if (!d.special_fiber_finite)
    throw DomainError(
        "special fibre is not a finite complete intersection: " +
        (d.notes.empty() ? std::string("no diagnostic") : d.notes.back()));
  return d;
}

// Certified colength with the degree-doubling retry shared by the mu and
// normal-module paths.  `run` computes a certificate at a given bound.
template <typename F>
ColengthCertificate certified_at_scale(const Germ& g, int max_doublings,
                                       F&& run) {
  int D = working_bound(g);
  std::string last;
  for (int attempt = 0; attempt <= max_doublings; ++attempt) {
    try {
      return run(D);
    } catch (const NotFiniteLengthError& e) {
      last = e.what();
      if (!degree_bound_blame(e)) break;
      D *= 2;
    }
  }
  throw NotFiniteLengthError("non-isolated singularity at precision " +
                             precision_tag(D, g.base.precision()) + ": " + last);
}

long long koszul_chi(const Germ& g, long long mu) {
  int B = std::max({(long long)g.total_degree(), (long long)g.degree_bound,
                    mu + 6});
  TruncatedSeries f = g.f[0].widened(B + 1);
  QuotientRing Q(g.base, g.num_vars(), B, {f.truncated(B)});
  std::vector<TruncatedSeries> partials;
  for (int j = 0; j < g.num_vars(); ++j) partials.push_back(f.derivative(j));
  FreeComplex L = derived_exterior_power(two_term_complex(Q, partials), g.n + 1);
  return euler_characteristic(homology_lengths(L));
}

}  // namespace

MilnorReport milnor_number(const Germ& g, int max_doublings) {
  GermDiagnostics d = usable_diagnostics(g);
  MilnorReport rep;
  rep.precision_pi = g.base.precision();
  if (d.smooth) {
    rep.mu = 0;
    rep.certificate = 0;
    rep.precision_degree = g.degree_bound;
    return rep;
  }
  ColengthCertificate cert = certified_at_scale(
      g, max_doublings, [&](int D) -> ColengthCertificate {
        rep.precision_degree = D;
        return MacaulayTable(jacobian_ideal(g.widened_components(D))).colength();
      });
  rep.mu = cert.length;
  rep.certificate = cert.stable_order;
  return rep;
}

long long t1_length(const Germ& g, int max_doublings) {
  GermDiagnostics d = usable_diagnostics(g);
  if (d.smooth) return 0;
  ColengthCertificate cert = certified_at_scale(
      g, max_doublings, [&](int D) -> ColengthCertificate {
        int B = D - 1;
        std::vector<TruncatedSeries> comps = g.widened_components(D);
        std::vector<std::vector<TruncatedSeries>> jac = jacobian_matrix(comps);
        std::vector<TruncatedSeries> relations;
        for (const auto& s : comps) relations.push_back(s.truncated(B));
        ModuleTable table(g.base, g.num_vars(), B, g.r, relations);
        for (int j = 0; j < g.num_vars(); ++j) {
          std::vector<TruncatedSeries> column;
          for (int i = 0; i < g.r; ++i) column.push_back(jac[i][j]);
          table.add_column_lattice(column);
        }
        return table.colength();
      });
  return cert.length;
}

MilnorReport milnor_report(const Germ& g) {
  MilnorReport rep = milnor_number(g);
  if (g.r == 1) {
    rep.mu_via_koszul = rep.mu == 0 ? 0 : koszul_chi(g, rep.mu);
    rep.agreement = (*rep.mu_via_koszul == rep.mu);
  }
  return rep;
}

long long milnor_via_koszul(const Germ& g) {
  if (g.r != 1)
    throw ShapeError(
        "the derived cross-check supports only hypersurface germs (r = 1)");
  return *milnor_report(g).mu_via_koszul;
}

}  // namespace milnorkit
