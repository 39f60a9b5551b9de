#pragma once

#include <cstdint>
#include <string>

#include "milnorkit/errors.hpp"

namespace milnorkit {

enum class RingModel { EqChar, MixedChar };

// Coefficient ring of a complete discrete valuation ring, truncated to finite
// working precision N in the uniformizer:
//
//   EqChar:    F_p[[pi]] / (pi^N),  elements stored as base-p digit strings
//   MixedChar: Z / p^N,             elements stored as residues
//
// Either way an element packs into one uint64 word as a value < p^N, with
// digit j of the base-p expansion holding the coefficient of pi^j (EqChar) or
// just being part of the residue (MixedChar).  Construction rejects p^N that
// does not fit in 63 bits.  EqChar at N == 1 degenerates to the exact field
// F_p (pi = 0, nothing truncated); every other configuration is a finite-
// precision model and results are certified relative to it.
class BaseRing {
 public:
  BaseRing(RingModel model, uint64_t p, int pi_precision);

  RingModel model() const { return model_; }
  uint64_t p() const { return p_; }
  int precision() const { return precision_; }
  bool is_exact_field() const {
    return model_ == RingModel::EqChar && precision_ == 1;
  }
  uint64_t modulus() const { return pn_; }  // p^N
  bool operator==(const BaseRing&) const = default;

  uint64_t zero() const { return 0; }
  uint64_t one() const { return 1; }
  // pi itself: digit 1 at position 1 (EqChar) or the residue p (MixedChar);
  // both pack to the value p.
  uint64_t uniformizer() const { return precision_ > 1 ? p_ : 0; }

  uint64_t add(uint64_t a, uint64_t b) const;
  uint64_t sub(uint64_t a, uint64_t b) const;
  uint64_t neg(uint64_t a) const;
  uint64_t mul(uint64_t a, uint64_t b) const;

  // Embeds an integer: mod p into digit 0 (EqChar) or mod p^N (MixedChar).
  uint64_t from_int(long long c) const;
  // c * pi^j with c reduced mod p (both models).
  uint64_t from_digit(uint64_t c, int pi_exp) const;

  // pi-adic valuation in {0..N}, N exactly for 0.
  int valuation(uint64_t a) const;
  bool is_zero(uint64_t a) const { return a == 0; }
  bool is_unit(uint64_t a) const { return valuation(a) == 0; }

  // Multiplicative inverse of a unit; DomainError otherwise.
  uint64_t inverse(uint64_t a) const;

  // a = q * pi^v + r with r = a mod pi^v; returns q and stores r.
  uint64_t split(uint64_t a, int v, uint64_t* rem) const;
  // a * pi^k (drops overflow past pi^N).
  uint64_t shift(uint64_t a, int k) const;

  // Base-p digit j of the packed value (serialization helper).
  uint64_t digit(uint64_t a, int j) const;

  std::string to_string(uint64_t a) const;
  std::string describe() const;

 private:
  RingModel model_;
  uint64_t p_;
  int precision_;
  uint64_t pn_;                // p^N
  uint64_t pow_[64];           // p^0 .. p^N
};

}  // namespace milnorkit
