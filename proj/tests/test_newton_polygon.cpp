#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>

#include "milnorkit/bruteforce.hpp"
#include "milnorkit/errors.hpp"
#include "milnorkit/newton_polygon.hpp"

using namespace milnorkit;

namespace {

TruncatedSeries make_poly(
    const BaseRing& R, int vars, int bound,
    const std::vector<std::pair<Monomial, long long>>& terms) {
  TruncatedSeries s(R, vars, bound);
  for (const auto& [m, c] : terms) s.add_term(m, R.from_int(c));
  return s;
}

// t^a - pi in one variable.
Germ node_germ(const BaseRing& R, int a, int D) {
  auto f = make_poly(R, 1, D, {{{a}, 1}});
  f.add_term({0}, R.neg(R.uniformizer()));
  return Germ{R, 0, 1, D, {"t"}, {f}};
}

// (t^2 - pi)(t - pi), expanded.
Germ mixed_hull_germ(const BaseRing& R, int D) {
  auto f = make_poly(R, 1, D, {{{3}, 1}});
  f.add_term({2}, R.neg(R.from_digit(1, 1)));
  f.add_term({1}, R.neg(R.from_digit(1, 1)));
  f.add_term({0}, R.from_digit(1, 2));
  return Germ{R, 0, 1, D, {"t"}, {f}};
}

long long diagonal_oracle(const Germ& g, int D) {
  LocalIdeal ideal = jacobian_ideal(g.widened_components(D + 1));
  return oracle::diagonal_quotient_length(g.base, oracle::macaulay_rows(ideal),
                                          MonomialBasis(g.num_vars(), D).size());
}

bool has_segment(const NewtonPolygon& poly, long long num, long long den,
                 int length) {
  for (const auto& seg : poly.segments)
    if (seg.slope_num == num && seg.slope_den == den && seg.length == length)
      return true;
  return false;
}

}  // namespace

TEST_CASE("polygon input contracts") {
  BaseRing R(RingModel::EqChar, 5, 3);

  CHECK_THROWS_AS(newton_polygon(make_poly(R, 2, 6, {{{1, 0}, 1}})),
                  ShapeError);
  CHECK_THROWS_AS(newton_polygon(TruncatedSeries(R, 1, 6)), DomainError);

  BaseRing M(RingModel::MixedChar, 5, 3);
  CHECK_THROWS_AS(newton_polygon(make_poly(M, 1, 6, {{{2}, 1}})), DomainError);

  // Every coefficient divisible by pi: the hull never reaches height zero,
  // and terms beyond the degree bound could still extend it.
  auto open_f = make_poly(R, 1, 6, {});
  open_f.add_term({0}, R.from_digit(1, 1));
  open_f.add_term({2}, R.from_digit(1, 1));
  try {
    newton_polygon(open_f);
    FAIL("expected a precision refusal");
  } catch (const PrecisionError& e) {
    CHECK(std::string(e.what()).find("cannot close") != std::string::npos);
  }

  // Over the exact residue field the polygon degenerates to the t-factor.
  BaseRing F(RingModel::EqChar, 5, 1);
  NewtonPolygon poly = newton_polygon(make_poly(F, 1, 6, {{{3}, 1}}));
  CHECK(poly.t_factor == 3);
  CHECK(poly.segments.empty());
}

TEST_CASE("node polygons have a single segment of slope 1/a") {
  BaseRing R(RingModel::EqChar, 5, 3);
  for (int a = 2; a <= 8; ++a) {
    Germ g = node_germ(R, a, a + 4);
    NewtonPolygon poly = newton_polygon(g.f[0]);
    CHECK(poly.t_factor == 0);
    REQUIRE(poly.segments.size() == 1);
    CHECK(poly.segments[0].slope_num == 1);
    CHECK(poly.segments[0].slope_den == a);
    CHECK(poly.segments[0].length == a);
    CHECK(dim_phi0(g.f[0]) == a - 1);

    // Length conservation: t-factor plus horizontal lengths exhausts the
    // degree of the stored polynomial.
    int total = poly.t_factor;
    for (const auto& seg : poly.segments) total += seg.length;
    CHECK(total == a);
  }
}

TEST_CASE("the root at the origin splits off as a t-factor") {
  BaseRing R(RingModel::EqChar, 5, 3);

  // t^3 - pi t = t (t^2 - pi): one root at the origin, two of valuation 1/2.
  auto f = make_poly(R, 1, 8, {{{3}, 1}});
  f.add_term({1}, R.neg(R.from_digit(1, 1)));
  NewtonPolygon poly = newton_polygon(f);
  CHECK(poly.t_factor == 1);
  REQUIRE(poly.segments.size() == 1);
  CHECK(has_segment(poly, 1, 2, 2));
  CHECK(dim_phi0(f) == 2);

  Germ line = node_germ(R, 1, 8);
  NewtonPolygon lp = newton_polygon(line.f[0]);
  CHECK(lp.t_factor == 0);
  CHECK(has_segment(lp, 1, 1, 1));
  CHECK(dim_phi0(line.f[0]) == 0);
}

TEST_CASE("hull of a product germ keeps strictly decreasing slopes") {
  BaseRing R(RingModel::EqChar, 5, 4);
  Germ g = mixed_hull_germ(R, 10);
  NewtonPolygon poly = newton_polygon(g.f[0]);

  CHECK(poly.support ==
        std::vector<std::pair<int, int>>{{0, 2}, {1, 1}, {2, 1}, {3, 0}});
  REQUIRE(poly.segments.size() == 2);
  CHECK(has_segment(poly, 1, 1, 1));
  CHECK(has_segment(poly, 1, 2, 2));
  for (size_t i = 0; i + 1 < poly.segments.size(); ++i) {
    const auto& a = poly.segments[i];
    const auto& b = poly.segments[i + 1];
    CHECK(a.slope_num * b.slope_den > b.slope_num * a.slope_den);
  }
  CHECK(dim_phi0(g.f[0]) == 2);
}

TEST_CASE("a slope-zero tail holds no specializing roots") {
  BaseRing R(RingModel::EqChar, 7, 3);
  auto f = make_poly(R, 1, 8, {{{2}, 1}, {{5}, 1}});
  f.add_term({0}, R.neg(R.from_digit(1, 1)));
  NewtonPolygon poly = newton_polygon(f);
  REQUIRE(poly.segments.size() == 2);
  CHECK(has_segment(poly, 1, 2, 2));
  CHECK(has_segment(poly, 0, 1, 3));
  CHECK(dim_phi0(f) == 1);
}

TEST_CASE("tameness certificates") {
  BaseRing R(RingModel::EqChar, 5, 4);

  // t^4 - pi at p = 5: denominator 4 is coprime to p and the residual is
  // linear, so the segment is tame.
  Germ quartic = node_germ(R, 4, 10);
  TamenessCertificate cert = tameness(quartic.f[0]);
  REQUIRE(cert.segments.size() == 1);
  CHECK(cert.segments[0].denominator_coprime);
  CHECK(cert.segments[0].residual_separable);
  CHECK(cert.segments[0].residual == std::vector<long long>{4, 1});
  CHECK(cert.tame);
  CHECK(!cert.undetermined);

  // t^5 - pi at p = 5: p divides the slope denominator, which is wild
  // outright, not merely undetermined.
  Germ quintic = node_germ(R, 5, 12);
  TamenessCertificate wild = tameness(quintic.f[0]);
  REQUIRE(wild.segments.size() == 1);
  CHECK(!wild.segments[0].denominator_coprime);
  CHECK(!wild.tame);
  CHECK(!wild.undetermined);

  // (t^2 - pi)^2: the residual (X - 1)^2 is inseparable, so the certificate
  // is withdrawn without claiming wildness.
  auto square = make_poly(R, 1, 10, {{{4}, 1}});
  square.add_term({2}, R.neg(R.from_digit(2, 1)));
  square.add_term({0}, R.from_digit(1, 2));
  TamenessCertificate insep = tameness(square);
  REQUIRE(insep.segments.size() == 1);
  CHECK(insep.segments[0].denominator_coprime);
  CHECK(!insep.segments[0].residual_separable);
  CHECK(insep.segments[0].residual == std::vector<long long>{1, 3, 1});
  CHECK(!insep.tame);
  CHECK(insep.undetermined);

  Germ line = node_germ(BaseRing(RingModel::EqChar, 7, 3), 1, 8);
  CHECK(tameness(line.f[0]).tame);
}

TEST_CASE("a tame node verifies mu against the vanishing-cycle count") {
  BaseRing R(RingModel::EqChar, 5, 6);
  VanishingReport rep = verify_vanishing_n0(node_germ(R, 4, 10));
  CHECK(rep.mu == 3);
  CHECK(rep.dim_phi0 == 3);
  CHECK(rep.tame);
  REQUIRE(rep.swan.has_value());
  CHECK(*rep.swan == 0);
  CHECK(rep.verified);
  CHECK(!rep.skipped);
  CHECK(rep.reason.empty());

  // Same germ where p does not divide the exponent either way.
  VanishingReport quintic =
      verify_vanishing_n0(node_germ(BaseRing(RingModel::EqChar, 7, 6), 5, 12));
  CHECK(quintic.mu == 4);
  CHECK(quintic.dim_phi0 == 4);
  CHECK(quintic.verified);
}

TEST_CASE("a smooth germ verifies at zero") {
  BaseRing R(RingModel::EqChar, 7, 4);
  VanishingReport rep = verify_vanishing_n0(node_germ(R, 1, 8));
  CHECK(rep.mu == 0);
  CHECK(rep.dim_phi0 == 0);
  CHECK(rep.tame);
  CHECK(rep.verified);
}

TEST_CASE("a wild germ is skipped and its relative mu refused") {
  BaseRing R(RingModel::EqChar, 5, 6);
  VanishingReport rep = verify_vanishing_n0(node_germ(R, 5, 12));
  CHECK(rep.skipped);
  CHECK(!rep.verified);
  CHECK(!rep.tame);
  CHECK(!rep.swan.has_value());
  CHECK(rep.reason.find("wild") != std::string::npos);
  // d pi pulls back to p t^(p-1) d t = 0, so the relative Jacobian ideal
  // cannot have finite colength.
  CHECK(rep.mu == -1);
  CHECK(rep.reason.find("not finite") != std::string::npos);
  CHECK(rep.dim_phi0 == 4);
}

TEST_CASE("an irregular germ is skipped even though both sides compute") {
  BaseRing R(RingModel::EqChar, 5, 6);
  Germ g = mixed_hull_germ(R, 10);
  VanishingReport rep = verify_vanishing_n0(g);

  CHECK(rep.skipped);
  CHECK(rep.reason.find("not regular") != std::string::npos);
  CHECK(rep.tame);
  CHECK(!rep.verified);

  // Both invariants are still reported, and they genuinely diverge here:
  // three roots specialize to the origin, but the Jacobian colength is 3,
  // not 2.  The regularity gate is what keeps the comparison sound.
  CHECK(rep.dim_phi0 == 2);
  CHECK(rep.mu == 3);
  CHECK(diagonal_oracle(g, 10) == 3);
}

TEST_CASE("an inseparable residual on an irregular germ stays undetermined") {
  BaseRing R(RingModel::EqChar, 5, 8);
  // (t^2 - pi)(t^2 - pi - pi^2): squarefree, but the two branch pairs
  // collide modulo pi, so the residual is (X + 4)^2.
  auto f = make_poly(R, 1, 12, {{{4}, 1}});
  f.add_term({2}, R.neg(R.add(R.from_digit(2, 1), R.from_digit(1, 2))));
  f.add_term({0}, R.add(R.from_digit(1, 2), R.from_digit(1, 3)));
  Germ g{R, 0, 1, 12, {"t"}, {f}};

  TamenessCertificate cert = tameness(f);
  REQUIRE(cert.segments.size() == 1);
  CHECK(cert.segments[0].denominator_coprime);
  CHECK(!cert.segments[0].residual_separable);
  CHECK(cert.undetermined);

  VanishingReport rep = verify_vanishing_n0(g);
  CHECK(rep.skipped);
  CHECK(!rep.verified);
  CHECK(rep.dim_phi0 == 3);
  CHECK(rep.mu == diagonal_oracle(g, 12));
  CHECK(rep.mu > rep.dim_phi0);
}

TEST_CASE("verification shape and base gates") {
  BaseRing R(RingModel::EqChar, 5, 4);
  auto f = make_poly(R, 2, 8, {{{0, 2}, 1}, {{3, 0}, -1}});
  f.add_term({0, 0}, R.neg(R.uniformizer()));
  Germ cusp{R, 1, 1, 8, {"x", "y"}, {f}};
  CHECK_THROWS_AS(verify_vanishing_n0(cusp), ShapeError);

  BaseRing F(RingModel::EqChar, 5, 1);
  CHECK_THROWS_AS(verify_vanishing_n0(node_germ(F, 3, 8)), DomainError);
}

TEST_CASE("random tame deformations of a node keep mu equal to dim phi0") {
  std::mt19937 rng(20260822);
  const int exponents[] = {2, 3, 4, 6};
  const uint64_t primes[] = {5, 7, 11};

  for (int trial = 0; trial < 30; ++trial) {
    int a = exponents[rng() % 4];
    BaseRing R(RingModel::EqChar, primes[rng() % 3], 6);
    int D = a + 6;

    // t^a - pi * unit plus terms strictly above the hull.
    auto f = make_poly(R, 1, D, {{{a}, 1}});
    f.add_term({0}, R.neg(R.from_digit(1 + rng() % (R.p() - 1), 1)));
    for (int j = 1; j < a; ++j) {
      if (rng() % 2 == 0) continue;
      f.add_term({j}, R.from_digit(1 + rng() % (R.p() - 1), 1 + rng() % 2));
    }
    if (rng() % 3 == 0) f.add_term({a + 1}, R.one());
    Germ g{R, 0, 1, D, {"t"}, {f}};

    VanishingReport rep = verify_vanishing_n0(g);
    CHECK(rep.tame);
    CHECK(rep.verified);
    CHECK(rep.mu == a - 1);
    CHECK(rep.dim_phi0 == a - 1);
    CHECK(rep.mu == diagonal_oracle(g, D));
  }
}
