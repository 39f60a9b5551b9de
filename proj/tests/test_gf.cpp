#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <set>
#include <vector>

#include "milnorkit/errors.hpp"
#include "milnorkit/gf.hpp"
#include "milnorkit/rng.hpp"

using milnorkit::DomainError;
using milnorkit::GaloisField;
using milnorkit::SplitMix64;
using milnorkit::substream;

TEST_CASE("splitmix64 matches the reference stream") {
  SplitMix64 s{0};
  CHECK(s.next() == 0xE220A8397B1DCDAFULL);
  CHECK(s.next() == 0x6E789E6AA1B965F4ULL);
  CHECK(s.next() == 0x06C45D188009454FULL);

  SplitMix64 t{1234567};
  CHECK(t.next() == 6457827717110365317ULL);
  CHECK(t.next() == 3203168211198807973ULL);
  CHECK(t.next() == 9817491932198370423ULL);
  CHECK(t.next() == 4593380528125082431ULL);
  CHECK(t.next() == 16408922859458223821ULL);
}

TEST_CASE("substreams are deterministic and separated") {
  SplitMix64 a = substream(42, 0);
  SplitMix64 b = substream(42, 0);
  for (int i = 0; i < 8; ++i) CHECK(a.next() == b.next());

  SplitMix64 c = substream(42, 1);
  SplitMix64 d = substream(42, 2);
  int differing = 0;
  SplitMix64 e = substream(42, 0);
  for (int i = 0; i < 8; ++i) {
    uint64_t x = e.next(), y = c.next(), z = d.next();
    if (x != y && y != z && x != z) ++differing;
  }
  CHECK(differing == 8);
}

TEST_CASE("bounded draws are in range and hit every residue") {
  SplitMix64 s{7};
  std::set<uint64_t> seen;
  for (int i = 0; i < 200; ++i) {
    uint64_t x = s.below(5);
    CHECK(x < 5);
    seen.insert(x);
  }
  CHECK(seen.size() == 5);
  CHECK(s.below(1) == 0);
}

TEST_CASE("the field with four elements") {
  GaloisField F(2, 2);
  CHECK(F.p() == 2);
  CHECK(F.degree() == 2);
  CHECK(F.size() == 4);
  CHECK(F.irreducible() == std::vector<uint64_t>{1, 1, 1});

  CHECK(F.add(2, 3) == 1);
  CHECK(F.mul(2, 2) == 3);
  CHECK(F.mul(2, 3) == 1);
  CHECK(F.mul(3, 3) == 2);
  CHECK(F.inverse(2) == 3);
  CHECK(F.inverse(3) == 2);
  CHECK(F.generator() == 2);
  CHECK(F.pow(2, 3) == 1);
  CHECK_THROWS_AS((void)F.inverse(0), DomainError);
}

TEST_CASE("canonical moduli for the small extensions") {
  GaloisField F8(2, 3);
  CHECK(F8.irreducible() == std::vector<uint64_t>{1, 1, 0, 1});
  GaloisField F9(3, 2);
  CHECK(F9.irreducible() == std::vector<uint64_t>{1, 0, 1});
  CHECK(F9.mul(3, 3) == 2);
  GaloisField F7(7, 1);
  CHECK(F7.irreducible() == std::vector<uint64_t>{0, 1});
  CHECK(F7.mul(3, 5) == 1);
  CHECK(F7.generator() == 3);
}

TEST_CASE("field axioms on random elements") {
  for (auto [p, d] : {std::pair<uint64_t, int>{2, 2},
                      {3, 2},
                      {5, 1},
                      {2, 4},
                      {7, 2}}) {
    GaloisField F(p, d);
    SplitMix64 s{p * 100 + static_cast<uint64_t>(d)};
    for (int i = 0; i < 50; ++i) {
      uint64_t a = s.below(F.size());
      uint64_t b = s.below(F.size());
      uint64_t c = s.below(F.size());
      CHECK(F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c));
      CHECK(F.add(a, F.add(b, c)) == F.add(F.add(a, b), c));
      CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      CHECK(F.sub(F.add(a, b), b) == a);
      CHECK(F.add(a, F.neg(a)) == 0);
      if (a != 0) {
        CHECK(F.mul(a, F.inverse(a)) == 1);
        CHECK(F.pow(a, F.size() - 1) == 1);
      }
      CHECK(F.pow(F.add(a, b), p) == F.add(F.pow(a, p), F.pow(b, p)));
    }
  }
}

TEST_CASE("the generator has full multiplicative order") {
  for (auto [p, d] :
       {std::pair<uint64_t, int>{2, 3}, {3, 2}, {5, 2}, {11, 1}}) {
    GaloisField F(p, d);
    std::set<uint64_t> powers;
    uint64_t x = 1;
    for (uint64_t i = 0; i + 1 < F.size(); ++i) {
      powers.insert(x);
      x = F.mul(x, F.generator());
    }
    CHECK(x == 1);
    CHECK(powers.size() == F.size() - 1);
  }
}

TEST_CASE("digits decompose packed elements") {
  GaloisField F(3, 3);
  for (uint64_t a = 0; a < F.size(); ++a) {
    std::vector<uint64_t> d = F.digits(a);
    REQUIRE(d.size() == 3);
    uint64_t packed = 0, w = 1;
    for (uint64_t di : d) {
      packed += di * w;
      w *= 3;
    }
    CHECK(packed == a);
  }
}

TEST_CASE("subfield embeddings are field homomorphisms") {
  GaloisField F4(2, 2);
  GaloisField F16(2, 4);
  std::vector<uint64_t> t = F4.embedding_table(F16);
  REQUIRE(t.size() == 4);
  CHECK(t[0] == 0);
  CHECK(t[1] == 1);
  for (uint64_t a = 0; a < 4; ++a) {
    for (uint64_t b = 0; b < 4; ++b) {
      CHECK(t[F4.add(a, b)] == F16.add(t[a], t[b]));
      CHECK(t[F4.mul(a, b)] == F16.mul(t[a], t[b]));
    }
  }
  std::set<uint64_t> image(t.begin(), t.end());
  CHECK(image.size() == 4);

  GaloisField F3(3, 1);
  GaloisField F27(3, 3);
  std::vector<uint64_t> u = F3.embedding_table(F27);
  for (uint64_t a = 0; a < 3; ++a) {
    for (uint64_t b = 0; b < 3; ++b) {
      CHECK(u[F3.mul(a, b)] == F27.mul(u[a], u[b]));
    }
  }
}

TEST_CASE("construction and embedding guards") {
  CHECK_THROWS_AS(GaloisField(4, 1), DomainError);
  CHECK_THROWS_AS(GaloisField(1, 1), DomainError);
  CHECK_THROWS_AS(GaloisField(2, 0), DomainError);
  CHECK_THROWS_AS(GaloisField(2, 21), DomainError);

  GaloisField F4(2, 2);
  GaloisField F8(2, 3);
  GaloisField F9(3, 2);
  CHECK_THROWS_AS((void)F4.embedding_table(F8), DomainError);
  CHECK_THROWS_AS((void)F4.embedding_table(F9), DomainError);
}
