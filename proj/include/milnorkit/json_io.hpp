#pragma once

#include <string>

#include <json.hpp>

#include "milnorkit/base_ring.hpp"
#include "milnorkit/milnor.hpp"
#include "milnorkit/series.hpp"

namespace milnorkit {

// Wire forms.  Rings: {"model":"eqchar"|"mixedchar","p":5,"precision":6}.
// Series: {"terms":[{"c":2,"pi":1,"exp":[0,3]}, ...]} with "pi" present only
// for eqchar, where coefficients are residues in [0,p); mixedchar packs the
// whole representative in [0,p^N) into "c".  Germs carry base, n, r,
// degree_bound, variables, and the component list.  Unknown keys are
// rejected so that typos fail loudly instead of defaulting.

BaseRing ring_from_json(const nlohmann::json& j);
nlohmann::json ring_to_json(const BaseRing& ring);

TruncatedSeries series_from_json(const BaseRing& ring, int num_vars,
                                 int degree_bound, const nlohmann::json& j);
nlohmann::json series_to_json(const BaseRing& ring, const TruncatedSeries& s);

Germ germ_from_json(const nlohmann::json& j);
nlohmann::json germ_to_json(const Germ& g);

// The same germ re-modelled at a different degree bound or pi precision
// (either may be -1 to keep the stored value).  Digit strings survive a
// precision change exactly; lowering the precision truncates them.
Germ reembed(const Germ& g, int degree_bound, int pi_precision);

}  // namespace milnorkit
