#include "milnorkit/newton_polygon.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "milnorkit/errors.hpp"

namespace milnorkit {

namespace {

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

uint64_t pow_mod(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t acc = 1 % p;
  while (e) {
    if (e & 1) acc = mul_mod(acc, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return acc;
}

void trim(std::vector<uint64_t>* a) {
  while (!a->empty() && a->back() == 0) a->pop_back();
}

// gcd(r, r') over F_p is a unit exactly when r is separable.
bool separable_mod_p(std::vector<uint64_t> r, uint64_t p) {
  std::vector<uint64_t> d;
  for (size_t i = 1; i < r.size(); ++i)
    d.push_back(mul_mod(i % p, r[i] % p, p));
  trim(&r);
  trim(&d);
  while (!d.empty()) {
    uint64_t lead_inv = pow_mod(d.back(), p - 2, p);
    while (r.size() >= d.size()) {
      uint64_t c = mul_mod(r.back(), lead_inv, p);
      size_t off = r.size() - d.size();
      for (size_t i = 0; i < d.size(); ++i) {
        uint64_t s = mul_mod(c, d[i], p);
        r[off + i] = (r[off + i] + p - s) % p;
      }
      trim(&r);
      if (r.size() < d.size()) break;
    }
    std::swap(r, d);
  }
  return r.size() == 1;
}

struct HullData {
  int t_factor = 0;
  std::vector<uint64_t> coeffs;              // dense, by degree
  std::vector<std::pair<int, int>> support;  // (degree, valuation)
  std::vector<std::pair<int, int>> vertices;
};

long long cross(std::pair<int, int> o, std::pair<int, int> a,
                std::pair<int, int> b) {
  return static_cast<long long>(a.first - o.first) * (b.second - o.second) -
         static_cast<long long>(a.second - o.second) * (b.first - o.first);
}

HullData lower_hull(const TruncatedSeries& f) {
  if (f.num_vars() != 1)
    throw ShapeError("the newton polygon is defined for one-variable series");
  if (f.ring().model() != RingModel::EqChar)
    throw DomainError(
        "the newton polygon requires the equal-characteristic base model");
  if (f.is_zero()) throw DomainError("the newton polygon of zero is empty");

  HullData h;
  int top = 0;
  for (const auto& [m, c] : f.terms()) top = std::max(top, m[0]);
  h.coeffs.assign(top + 1, 0);
  for (const auto& [m, c] : f.terms()) h.coeffs[m[0]] = c;

  while (h.coeffs[h.t_factor] == 0) ++h.t_factor;

  const BaseRing& ring = f.ring();
  bool closes = false;
  for (int j = h.t_factor; j <= top; ++j) {
    if (h.coeffs[j] == 0) continue;
    int v = ring.valuation(h.coeffs[j]);
    if (v == 0) closes = true;
    h.support.emplace_back(j, v);
  }
  if (!closes)
    throw PrecisionError(
        "every coefficient is divisible by pi, so the newton polygon cannot "
        "close below the degree bound; raise the degree bound");

  for (const auto& pt : h.support) {
    auto& hull = h.vertices;
    while (hull.size() >= 2 &&
           cross(hull[hull.size() - 2], hull.back(), pt) <= 0)
      hull.pop_back();
    hull.push_back(pt);
  }
  return h;
}

}  // namespace

NewtonPolygon newton_polygon(const TruncatedSeries& f) {
  HullData h = lower_hull(f);
  NewtonPolygon poly;
  poly.t_factor = h.t_factor;
  poly.support = h.support;
  for (size_t i = 0; i + 1 < h.vertices.size(); ++i) {
    auto [j0, v0] = h.vertices[i];
    auto [j1, v1] = h.vertices[i + 1];
    PolygonSegment seg;
    seg.length = j1 - j0;
    long long drop = v0 - v1;
    long long g = std::gcd(drop < 0 ? -drop : drop,
                           static_cast<long long>(seg.length));
    if (g == 0) g = 1;
    seg.slope_num = drop / g;
    seg.slope_den = seg.length / g;
    poly.segments.push_back(seg);
  }
  return poly;
}

long long dim_phi0(const TruncatedSeries& f) {
  NewtonPolygon poly = newton_polygon(f);
  long long count = poly.t_factor;
  for (const auto& seg : poly.segments)
    if (seg.slope_num > 0) count += seg.length;
  return count - 1;
}

TamenessCertificate tameness(const TruncatedSeries& f) {
  HullData h = lower_hull(f);
  const BaseRing& ring = f.ring();
  uint64_t p = ring.p();

  TamenessCertificate cert;
  bool wild_certain = false;
  for (size_t i = 0; i + 1 < h.vertices.size(); ++i) {
    auto [j0, v0] = h.vertices[i];
    auto [j1, v1] = h.vertices[i + 1];
    long long drop = v0 - v1;
    if (drop <= 0) continue;
    long long run = j1 - j0;
    long long g = std::gcd(drop, run);

    SegmentTameness st;
    st.segment.slope_num = drop / g;
    st.segment.slope_den = run / g;
    st.segment.length = static_cast<int>(run);
    st.denominator_coprime =
        static_cast<uint64_t>(st.segment.slope_den) % p != 0;

    std::vector<uint64_t> residual(g + 1, 0);
    for (long long k = 0; k <= g; ++k) {
      int j = j0 + static_cast<int>(k * st.segment.slope_den);
      int v = static_cast<int>(v0 - k * st.segment.slope_num);
      residual[k] = ring.digit(h.coeffs[j], v);
    }
    st.residual_separable = separable_mod_p(residual, p);
    for (uint64_t c : residual) st.residual.push_back(c);

    if (!st.denominator_coprime) wild_certain = true;
    cert.segments.push_back(std::move(st));
  }

  cert.tame = true;
  for (const auto& st : cert.segments)
    cert.tame = cert.tame && st.denominator_coprime && st.residual_separable;
  cert.undetermined = !cert.tame && !wild_certain;
  return cert;
}

VanishingReport verify_vanishing_n0(const Germ& g) {
  check_shape(g);
  if (g.n != 0 || g.r != 1)
    throw ShapeError(
        "the vanishing-cycle comparison supports only one-variable germs over "
        "the base (n = 0, r = 1)");
  if (g.base.is_exact_field())
    throw DomainError(
        "the vanishing-cycle comparison needs positive pi precision; over the "
        "exact residue field the special fibre is the whole germ");

  const TruncatedSeries& f = g.f[0];
  VanishingReport report;
  report.polygon = newton_polygon(f);
  report.dim_phi0 = report.polygon.t_factor;
  for (const auto& seg : report.polygon.segments)
    if (seg.slope_num > 0) report.dim_phi0 += seg.length;
  report.dim_phi0 -= 1;

  report.certificate = tameness(f);
  report.tame = report.certificate.tame;

  if (f.t_order() != 1) {
    report.skipped = true;
    std::ostringstream os;
    os << "the germ is not regular at the origin (order " << f.t_order()
       << " in the maximal ideal); verification skipped";
    report.reason = os.str();
  } else if (!report.tame) {
    report.skipped = true;
    report.reason =
        report.certificate.undetermined
            ? "a residual polynomial is inseparable, so tameness is "
              "undetermined; verification skipped"
            : "wild ramification: p divides a slope denominator; verification "
              "skipped";
  }

  if (report.skipped) {
    // Best-effort mu for the report; a wild germ can honestly lack a finite
    // relative Milnor number, which is not a further error here.
    try {
      report.mu = milnor_number(g).mu;
    } catch (const NotFiniteLengthError&) {
      report.mu = -1;
      report.reason += "; the relative Milnor number is not finite";
    }
    return report;
  }

  report.mu = milnor_number(g).mu;
  report.swan = 0;
  report.verified = report.mu == report.dim_phi0;
  if (!report.verified) {
    std::ostringstream os;
    os << "mu = " << report.mu << " does not match the vanishing-cycle "
       << "dimension " << report.dim_phi0;
    report.reason = os.str();
  }
  return report;
}

}  // namespace milnorkit
