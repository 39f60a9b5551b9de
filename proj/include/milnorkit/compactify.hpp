#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "milnorkit/gf.hpp"
#include "milnorkit/milnor.hpp"
#include "milnorkit/series.hpp"

namespace milnorkit {

// Sparse polynomial over a finite field, exponents over a fixed variable
// block.  Coefficients are packed field elements.
struct FieldPoly {
  int num_vars = 0;
  std::map<Monomial, uint64_t, GradedLexLess> terms;

  void add_term(const GaloisField& F, const Monomial& m, uint64_t c);
  uint64_t eval(const GaloisField& F, const std::vector<uint64_t>& pt) const;
  FieldPoly partial(const GaloisField& F, int j) const;
  FieldPoly mapped(const std::vector<uint64_t>& table) const;
  int degree() const;
};

// Monomials of the given exact total degree, graded-lex ascending.  This is
// the canonical coefficient order shared by the sampler and the incidence
// enumeration.
std::vector<Monomial> monomials_of_degree(int vars, int degree);

// A projective deformation family: the reduced equations fbar (affine in
// t_1..t_{n+r}, degree at most lambda) plus free coefficients on monomials of
// degree lambda+1 and lambda+2.  Truncating any member below lambda+1
// recovers fbar, so the germ it deforms is pinned.
struct PerturbationFamily {
  std::shared_ptr<const GaloisField> field;
  int n = 0;
  int r = 1;
  int lambda = 0;
  std::vector<FieldPoly> fbar;
  std::vector<std::map<Monomial, uint64_t, GradedLexLess>> coeffs;
};

// Degree-(lambda+2) homogeneous forms in t_0..t_{n+r}: each fbar term t^a
// becomes t_0^(lambda+2-|a|) t^a, and each perturbation monomial likewise.
struct HomogenizedSystem {
  std::shared_ptr<const GaloisField> field;
  int n = 0;
  int r = 1;
  int lambda = 0;
  std::vector<FieldPoly> forms;
};

HomogenizedSystem homogenize(const PerturbationFamily& fam);

// Inverse at the chart t_0 = 1 around the marked point, with coefficients
// re-read into a base ring of matching characteristic (prime field only).
std::vector<TruncatedSeries> dehomogenize_at_y(const HomogenizedSystem& H,
                                               const BaseRing& ring,
                                               int degree_bound);

struct BadPoint {
  int ext_degree = 1;
  std::vector<uint64_t> coords;  // normalized: first nonzero coordinate is 1
  int jacobian_rank = 0;
};

// Point-by-point Jacobian audit of V(forms) over F_{q^e} for e up to
// ext_degree_max, skipping the marked point y = (1:0:...:0).  Each geometric
// point is visited once, in its minimal field of definition.  An empty bad
// list certifies smoothness away from y over the scanned extensions only.
struct ScanReport {
  int ext_degree_max = 0;
  long long points_scanned = 0;
  long long points_on_variety = 0;
  std::vector<BadPoint> bad_points;

  bool smooth_away_from_y() const { return bad_points.empty(); }
};

ScanReport smoothness_scan(const HomogenizedSystem& H, int ext_degree_max);

struct SamplerConfig {
  int field_degree = 1;   // coefficients drawn from F_{p^field_degree}
  int lambda = -1;        // raised to 3*mu of the reduced germ in any case
  long long samples = 100;
  uint64_t seed = 42;
  int ext_degree_max = 3;
  int threads = 0;        // 0: MILNORKIT_THREADS, then hardware concurrency
};

struct SampleReport {
  bool good_found = false;
  long long first_good_sample = -1;
  long long failures = 0;
  long long samples = 0;
  int lambda = 0;
  long long fiber_mu = -1;
  std::vector<BadPoint> bad_points;  // from the lowest-index failing sample
  std::optional<bool> mu_preserved;  // prime coefficient fields only
  std::optional<PerturbationFamily> good_family;
  std::vector<std::string> notes;
};

// Draws coefficient tuples from per-sample splitmix64 substreams, scans each
// family, and reports the lowest-index smooth one together with the failure
// count.  Samples are independent and may run on several threads; the report
// does not depend on the schedule.
SampleReport sample_good(const Germ& g, const SamplerConfig& cfg);

struct DeterminantalCount {
  int rows = 0;
  int cols = 0;
  uint64_t q = 0;
  bool exact = true;
  unsigned long long total = 0;      // matrices enumerated or sampled
  unsigned long long deficient = 0;  // rank strictly below cols
  double observed_codim = 0.0;       // log_q(total/deficient)
  int theoretical_codim = 0;         // rows - cols + 1
  double ci_halfwidth = 0.0;         // sampling mode only
};

// Census of (n+r) x r matrices over F_q of deficient rank: exact enumeration
// up to the cap, a fixed-seed sample beyond it.
DeterminantalCount determinantal_codim_count(const GaloisField& F, int n,
                                             int r,
                                             long long cap = 30000000);

struct IncidenceCheck {
  bool pass = false;
  bool chi_all_zero = false;
  long long dim_T = 0;
  unsigned long long enumerated = 0;  // families inspected
  unsigned long long matching = 0;    // z on Y(a) and Y(a) singular at z
  unsigned long long expected = 0;    // q^(dim_T - r(1+n+r)) * deficient count
};

// Exhausts the family space over a coordinate point z on the hyperplane at
// infinity and compares the singular-incidence count with the product of a
// full-rank linear system and the determinantal census.  The template's own
// coefficient values are ignored.
IncidenceCheck incidence_fiber_dim_check(const PerturbationFamily& tpl,
                                         const std::vector<uint64_t>& z,
                                         long long cap = 30000000);

}  // namespace milnorkit
