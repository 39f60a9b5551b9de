#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "milnorkit/errors.hpp"
#include "milnorkit/koszul.hpp"

using namespace milnorkit;

namespace {

TruncatedSeries make_poly(
    const BaseRing& R, int vars, int bound,
    const std::vector<std::pair<Monomial, long long>>& terms) {
  TruncatedSeries s(R, vars, bound);
  for (const auto& [m, c] : terms) s.add_term(m, R.from_int(c));
  return s;
}

uint64_t random_coeff(const BaseRing& R, std::mt19937_64& rng) {
  uint64_t x = R.zero();
  for (int k = 0; k < R.precision(); ++k)
    x = R.add(x, R.from_digit((uint64_t)(rng() % R.p()), k));
  return x;
}

TruncatedSeries random_series(const BaseRing& R, int vars, int bound,
                              std::mt19937_64& rng) {
  TruncatedSeries s(R, vars, bound);
  int terms = 1 + (int)(rng() % 4);
  for (int i = 0; i < terms; ++i) {
    Monomial m(vars, 0);
    int deg = (int)(rng() % bound);
    for (int d = 0; d < deg; ++d) ++m[rng() % vars];
    s.add_term(m, random_coeff(R, rng));
  }
  return s;
}

bool same_matrices(const FreeComplex& A, const FreeComplex& B) {
  if (A.lo != B.lo || A.ranks != B.ranks) return false;
  for (size_t i = 0; i < A.diffs.size(); ++i) {
    if (A.diffs[i].size() != B.diffs[i].size()) return false;
    for (size_t r = 0; r < A.diffs[i].size(); ++r) {
      if (A.diffs[i][r].size() != B.diffs[i][r].size()) return false;
      for (size_t c = 0; c < A.diffs[i][r].size(); ++c)
        if (!(A.diffs[i][r][c] == B.diffs[i][r][c])) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("koszul complexes have binomial ranks and square to zero") {
  std::mt19937_64 rng(5150);
  BaseRing R(RingModel::EqChar, 5, 1);
  const int D = 7;
  QuotientRing Q(R, 2, D);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<TruncatedSeries> u;
    for (int i = 0; i < 3; ++i) u.push_back(random_series(R, 2, D, rng));
    auto wedge = koszul_wedge(Q, u);
    CHECK(wedge.lo == 0);
    CHECK(wedge.hi() == 3);
    CHECK(wedge.ranks == std::vector<int>{1, 3, 3, 1});
    CHECK(d2_check(wedge));
    auto contraction = koszul_contraction(Q, u);
    CHECK(contraction.lo == -3);
    CHECK(contraction.hi() == 0);
    CHECK(contraction.ranks == std::vector<int>{1, 3, 3, 1});
    CHECK(d2_check(contraction));
  }
}

TEST_CASE("d2 holds modulo relations but can fail without them") {
  BaseRing R(RingModel::EqChar, 5, 2);
  const int D = 7;
  // over A[[t]]/(t^2 - pi) the entries t and pi/t ... pick u where products
  // only cancel modulo the relation
  auto rel = make_poly(R, 1, D, {{{2}, 1}});
  rel.add_term({0}, R.neg(R.uniformizer()));
  QuotientRing Q(R, 1, D, {rel});
  auto t = TruncatedSeries::variable(R, 1, D, 0);
  auto wedge = koszul_wedge(Q, {t, t});
  CHECK(d2_check(wedge));
}

TEST_CASE("dual of the contraction complex is the wedge complex bit for bit") {
  std::mt19937_64 rng(424242);
  std::vector<BaseRing> rings = {BaseRing(RingModel::EqChar, 5, 1),
                                 BaseRing(RingModel::EqChar, 7, 3),
                                 BaseRing(RingModel::MixedChar, 3, 3)};
  for (const BaseRing& R : rings) {
    for (int vars : {1, 2}) {
      const int D = 6;
      QuotientRing Q(R, vars, D);
      for (int r : {1, 2, 3}) {
        for (int trial = 0; trial < 12; ++trial) {
          std::vector<TruncatedSeries> u;
          for (int i = 0; i < r; ++i) u.push_back(random_series(R, vars, D, rng));
          CHECK(same_matrices(dualize(koszul_contraction(Q, u)),
                              koszul_wedge(Q, u)));
        }
      }
    }
  }
}

TEST_CASE("dualize is an involution and shift only regrades") {
  std::mt19937_64 rng(7);
  BaseRing R(RingModel::EqChar, 5, 1);
  QuotientRing Q(R, 2, 6);
  std::vector<TruncatedSeries> u = {random_series(R, 2, 6, rng),
                                    random_series(R, 2, 6, rng)};
  auto C = koszul_contraction(Q, u);
  CHECK(same_matrices(dualize(dualize(C)), C));
  auto S = shift(C, 2);
  CHECK(S.lo == C.lo - 2);
  CHECK(S.ranks == C.ranks);
  CHECK(same_matrices(shift(S, -2), C));
}

TEST_CASE("homology of a plain quotient module") {
  // the one-term complex [R], R = F_5[[t]]/(t^3): length 3 in degree 0
  BaseRing R(RingModel::EqChar, 5, 1);
  const int D = 9;
  auto t3 = make_poly(R, 1, D, {{{3}, 1}});
  QuotientRing Q(R, 1, D, {t3});
  FreeComplex C{Q, 0, {1}, {}};
  auto H = homology_lengths(C);
  REQUIRE(H.size() == 1);
  CHECK(H[0] == 3);
}

TEST_CASE("multiplication by 2t on the double cover is injective") {
  // R = A[t]/(t^2 - pi) is a domain, so [R ->(2t) R] has homology only in
  // the top degree, where it is R/(2t) of length one.
  BaseRing R(RingModel::EqChar, 5, 4);
  const int D = 8;
  auto rel = make_poly(R, 1, D, {{{2}, 1}});
  rel.add_term({0}, R.neg(R.uniformizer()));
  QuotientRing Q(R, 1, D, {rel});
  auto two_t = make_poly(R, 1, D, {{{1}, 2}});
  FreeComplex C{Q, 0, {1, 1}, {{{two_t}}}};
  auto H = homology_lengths(C);
  CHECK(H[0] == 0);
  CHECK(H[1] == 1);
}

TEST_CASE("contraction complex of a regular sequence resolves the point") {
  BaseRing R(RingModel::EqChar, 7, 1);
  const int D = 8;
  QuotientRing Q(R, 2, D);
  auto t1 = TruncatedSeries::variable(R, 2, D, 0);
  auto t2 = TruncatedSeries::variable(R, 2, D, 1);
  auto C = koszul_contraction(Q, {t1, t2});
  auto H = homology_lengths(C);
  CHECK(H[0] == 1);
  CHECK(H[-1] == 0);
  CHECK(H[-2] == 0);
  auto W = koszul_wedge(Q, {t1, t2});
  auto HW = homology_lengths(W);
  CHECK(HW[0] == 0);
  CHECK(HW[1] == 0);
  CHECK(HW[2] == 1);
}

TEST_CASE("contraction complex of a non-regular pair has torsion homology") {
  BaseRing R(RingModel::EqChar, 5, 1);
  const int D = 10;
  QuotientRing Q(R, 1, D);
  auto t2 = make_poly(R, 1, D, {{{2}, 1}});
  auto t3 = make_poly(R, 1, D, {{{3}, 1}});
  auto C = koszul_contraction(Q, {t2, t3});
  auto H = homology_lengths(C);
  CHECK(H[0] == 2);
  CHECK(H[-1] == 2);
  CHECK(H[-2] == 0);
  CHECK(euler_characteristic(H) == 0);
}

TEST_CASE("a unit entry contracts the complex") {
  BaseRing R(RingModel::EqChar, 5, 1);
  const int D = 7;
  QuotientRing Q(R, 1, D);
  auto one = TruncatedSeries::constant(R, 1, D, R.one());
  auto t = TruncatedSeries::variable(R, 1, D, 0);
  auto H = homology_lengths(koszul_wedge(Q, {one, t}));
  CHECK(H[0] == 0);
  CHECK(H[1] == 0);
  CHECK(H[2] == 0);
}

TEST_CASE("derived exterior power shifts the wedge complex") {
  BaseRing R(RingModel::EqChar, 5, 4);
  const int D = 8;
  auto rel = make_poly(R, 1, D, {{{2}, 1}});
  rel.add_term({0}, R.neg(R.uniformizer()));
  QuotientRing Q(R, 1, D, {rel});
  auto two_t = make_poly(R, 1, D, {{{1}, 2}});
  auto two = two_term_complex(Q, {two_t});
  CHECK(two.lo == -1);
  CHECK(two.rank(-1) == 1);
  CHECK(two.rank(0) == 1);
  auto L = derived_exterior_power(two, 1);
  CHECK(L.lo == -1);
  CHECK(L.hi() == 0);
  CHECK_THROWS_AS(derived_exterior_power(two, 2), ShapeError);
  auto H = homology_lengths(L);
  CHECK(H[-1] == 0);
  CHECK(H[0] == 1);
  CHECK(euler_characteristic(H) == 1);  // the milnor number of t^2 - pi
}

TEST_CASE("homology refuses when the horizon is too small") {
  BaseRing R(RingModel::EqChar, 5, 2);  // N = 2: horizon 2 without relations
  QuotientRing Q(R, 1, 8);
  auto t = TruncatedSeries::variable(R, 1, 8, 0);
  FreeComplex C{Q, 0, {1, 1}, {{{t}}}};
  CHECK_THROWS_AS(homology_lengths(C), PrecisionError);
}

TEST_CASE("homology refuses infinite-length modules") {
  BaseRing R(RingModel::EqChar, 5, 1);
  const int D = 10;
  auto xy = make_poly(R, 2, D, {{{1, 1}, 1}});
  QuotientRing Q(R, 2, D, {xy});
  FreeComplex C{Q, 0, {1}, {}};
  try {
    homology_lengths(C);
    FAIL("expected NotFiniteLengthError");
  } catch (const NotFiniteLengthError& e) {
    CHECK(e.degree == 0);
  }
}

TEST_CASE("euler characteristic alternates signs by degree") {
  std::map<int, long long> lengths{{-2, 1}, {-1, 2}, {0, 4}, {1, 8}};
  CHECK(euler_characteristic(lengths) == 1 - 2 + 4 - 8);
}
