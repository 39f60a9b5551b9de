#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "milnorkit/milnor.hpp"
#include "milnorkit/series.hpp"

namespace milnorkit {

// One lower-hull edge: valuation drops by slope_num for every slope_den
// increase in degree (lowest terms), across `length` degrees.
struct PolygonSegment {
  long long slope_num = 0;
  long long slope_den = 1;
  int length = 0;
};

// Lower convex hull of {(degree, coefficient valuation)} for a one-variable
// series, after splitting off the t^t_factor root at the origin.  Segments
// run left to right, slopes strictly decreasing.
struct NewtonPolygon {
  int t_factor = 0;
  std::vector<PolygonSegment> segments;
  std::vector<std::pair<int, int>> support;  // (degree, valuation) points used
};

// Requires a nonzero one-variable series over the equal-characteristic
// model.  PrecisionError when a coefficient invisible at precision N could
// still support the hull.
NewtonPolygon newton_polygon(const TruncatedSeries& f);

// Number of generic-fibre roots specializing to the origin, minus one:
// the t-factor plus the total horizontal length of positive slopes.
long long dim_phi0(const TruncatedSeries& f);

struct SegmentTameness {
  PolygonSegment segment;
  bool denominator_coprime = false;  // p does not divide the slope denominator
  bool residual_separable = false;
  std::vector<long long> residual;  // residual polynomial, low to high, mod p
};

// Ramification certificate over the positive-slope segments.  A segment
// whose slope denominator is divisible by p is wild; a separability failure
// only withdraws the certificate (wildness is not implied).
struct TamenessCertificate {
  std::vector<SegmentTameness> segments;
  bool tame = false;
  bool undetermined = false;
};

TamenessCertificate tameness(const TruncatedSeries& f);

// Comparison of the Milnor number against the vanishing-cycle count for a
// one-variable germ over the base (n = 0, r = 1).  Verification runs only
// for germs regular at the origin with a tame certificate; otherwise the
// report carries the skip reason.
struct VanishingReport {
  long long mu = -1;
  long long dim_phi0 = -1;
  std::optional<long long> swan;  // 0 exactly when the tame certificate holds
  bool tame = false;
  bool verified = false;
  bool skipped = false;
  std::string reason;
  NewtonPolygon polygon;
  TamenessCertificate certificate;
};

VanishingReport verify_vanishing_n0(const Germ& g);

}  // namespace milnorkit
