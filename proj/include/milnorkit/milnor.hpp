#pragma once

#include <optional>
#include <string>
#include <vector>

#include "milnorkit/base_ring.hpp"
#include "milnorkit/local_algebra.hpp"
#include "milnorkit/series.hpp"

namespace milnorkit {

// Complete-intersection germ over the base: r equations in n + r variables,
// passing through the origin of the special fibre.  The components are
// polynomial germs carried exactly below degree_bound, which is what lets
// the length routines widen the working precision when certification needs
// more room.
struct Germ {
  BaseRing base;
  int n = 0;  // relative dimension
  int r = 1;  // codimension
  int degree_bound = 0;
  std::vector<std::string> variables;  // display names; defaults to t1..t_m
  std::vector<TruncatedSeries> f;

  int num_vars() const { return n + r; }
  // Largest total degree over all stored terms of all components.
  int total_degree() const;
  // Component list re-embedded at a larger degree bound.
  std::vector<TruncatedSeries> widened_components(int bound) const;
  std::vector<std::string> names() const;
};

// Throws ShapeError when the germ is internally inconsistent (wrong arity,
// mixed rings, more equations than variables).
void check_shape(const Germ& g);

// Structural diagnostics.  Flags describe the germ; none of them throws.
struct GermDiagnostics {
  bool on_fiber = true;              // components vanish at the special-fibre origin
  bool special_fiber_finite = true;  // reductions cut an isolated fibre singularity
  bool smooth = false;               // jacobian ideal is the unit ideal
  bool fiber_degeneracy_risk = false;  // singular fibre, equations constant along the base
  std::vector<std::string> notes;

  // Whether the length computations are worth attempting.
  bool usable() const { return on_fiber && special_fiber_finite; }
};

GermDiagnostics validate(const Germ& g);

struct MilnorReport {
  long long mu = -1;
  int certificate = 0;  // stable order of the certified colength
  std::optional<long long> mu_via_koszul;
  bool agreement = true;  // mu == mu_via_koszul when both are defined
  int precision_degree = 0;
  int precision_pi = 0;
};

// mu as the certified colength of (f) + maximal minors of the Jacobian.
// Works at D = max(2 deg f, 8, germ bound), doubling on certification
// failure up to max_doublings times before giving up.
MilnorReport milnor_number(const Germ& g, int max_doublings = 4);

// Length of the normal-module cokernel R^r / ((f) R^r + Jacobian columns),
// computed through the module elimination rather than the scalar one.
long long t1_length(const Germ& g, int max_doublings = 4);

// Euler characteristic of the top derived exterior power of the two-term
// presentation of the differentials, over the hypersurface ring itself.
// Restricted to r = 1.
long long milnor_via_koszul(const Germ& g);

// Full report: mu side, then the Koszul side when r = 1.
MilnorReport milnor_report(const Germ& g);

}  // namespace milnorkit
