#pragma once

#include <vector>

#include "milnorkit/milnor.hpp"
#include "milnorkit/series.hpp"

namespace milnorkit {

// Jet order beyond which perturbations cannot change the germ, namely three
// times the Milnor number.  DomainError for a smooth germ (mu = 0).
int determinacy_bound(long long mu);

// Whether every monomial generator of m-hat^(mu + c), placed in each
// coordinate slot of R^r, lies in the image of the Jacobian applied to
// vectors with m-hat^c coefficients, modulo (f) at working precision.
// Pass mu explicitly to probe germs whose own mu is not finite; by default
// it is computed from the germ.
bool check_star_inclusion(const Germ& g, int c, long long mu = -1);

struct DeterminacyStep {
  int index = 0;
  int ord_alpha = 0;  // order of the residual entering the step
  int ord_eps = 0;    // order of the correction the step produced
};

// Ledger of one Newton coordinate-change run: a substitution t -> t + eps
// under which g lands in (f), to the verified order.
struct DeterminacyRun {
  long long mu = 0;
  int bound = 0;  // 3 mu
  std::vector<DeterminacyStep> steps;
  std::vector<TruncatedSeries> epsilon;  // one component per variable
  int verified_to = 0;
  int target_order = 0;
  int working_bound = 0;
  bool unsupported = false;  // jet hypothesis failed but the caller forced the run
};

// Builds the coordinate change by quadratically convergent correction:
// each step solves J(t + eps) * delta = -residual modulo (f), with delta
// constrained to coefficient order ord(residual) - mu.  Requires
// g - f to have order >= 3 mu (JetBoundError otherwise, unless force).
// target_order < 0 selects the default 4 * (3 mu).
DeterminacyRun newton_coordinate_change(const Germ& f,
                                        const std::vector<TruncatedSeries>& g,
                                        int target_order = -1,
                                        bool force = false);

struct EquisingularCheck {
  bool residual_ok = false;  // g(t + eps) lies in (f) to the verified order
  bool mu_match = false;     // mu(g) equals mu(f)
  bool tangent_ok = false;   // eps lies in m-hat^2
  std::vector<std::string> notes;

  bool verified() const { return residual_ok && mu_match && tangent_ok; }
};

EquisingularCheck verify_equisingular(const Germ& f,
                                      const std::vector<TruncatedSeries>& g,
                                      const DeterminacyRun& run);

}  // namespace milnorkit
