#pragma once

#include <cstdint>
#include <vector>

namespace milnorkit {

// F_{p^k} with elements packed as base-p digit strings (digit j = coefficient
// of x^j modulo the stored irreducible).  The modulus is the monic degree-k
// irreducible whose coefficient string has the smallest packed value, so a
// given (p, k) names the same field on every platform.  Multiplication runs
// through log/exp tables over a fixed generator, which caps the size at 2^20
// elements.
class GaloisField {
 public:
  GaloisField(uint64_t p, int degree);

  uint64_t p() const { return p_; }
  int degree() const { return degree_; }
  uint64_t size() const { return q_; }

  bool is_zero(uint64_t a) const { return a == 0; }
  uint64_t add(uint64_t a, uint64_t b) const;
  uint64_t sub(uint64_t a, uint64_t b) const;
  uint64_t neg(uint64_t a) const;
  uint64_t mul(uint64_t a, uint64_t b) const;
  uint64_t inverse(uint64_t a) const;
  uint64_t pow(uint64_t a, uint64_t e) const;

  // Constant embedding through the prime subfield.
  uint64_t from_int(long long c) const;

  uint64_t generator() const { return generator_; }
  // Monic modulus, low to high, degree+1 entries over F_p.
  const std::vector<uint64_t>& irreducible() const { return irreducible_; }

  std::vector<uint64_t> digits(uint64_t a) const;

  // Image of every element under the field homomorphism into ext (our degree
  // must divide ext's, same p): the generator's digits are rebuilt on the
  // smallest root of our modulus in ext.
  std::vector<uint64_t> embedding_table(const GaloisField& ext) const;

 private:
  uint64_t mul_slow(uint64_t a, uint64_t b) const;

  uint64_t p_;
  int degree_;
  uint64_t q_;
  std::vector<uint64_t> irreducible_;
  uint64_t generator_ = 0;
  std::vector<uint32_t> log_;
  std::vector<uint32_t> exp_;
};

}  // namespace milnorkit
