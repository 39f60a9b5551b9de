#include "milnorkit/base_ring.hpp"

#include <sstream>

namespace milnorkit {

namespace {

bool is_prime(uint64_t p) {
  if (p < 2) return false;
  for (uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// x^-1 mod m for gcd(x, m) = 1, via extended Euclid.
uint64_t inv_mod(uint64_t x, uint64_t m) {
  int64_t r0 = (int64_t)m, r1 = (int64_t)(x % m);
  int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    int64_t q = r0 / r1;
    int64_t r2 = r0 - q * r1;
    int64_t s2 = s0 - q * s1;
    r0 = r1; r1 = r2;
    s0 = s1; s1 = s2;
  }
  if (r0 != 1) throw DomainError("not invertible");
  return (uint64_t)(s0 % (int64_t)m + (int64_t)m) % m;
}

}  // namespace

BaseRing::BaseRing(RingModel model, uint64_t p, int pi_precision)
    : model_(model), p_(p), precision_(pi_precision), pn_(0), pow_{} {
  if (!is_prime(p)) throw ShapeError("p must be prime, got " + std::to_string(p));
  if (pi_precision < 1) throw ShapeError("pi precision must be >= 1");
  pow_[0] = 1;
  for (int j = 1; j <= precision_; ++j) {
    if (pow_[j - 1] > (uint64_t(1) << 62) / p)
      throw ShapeError("p^N exceeds 63 bits; lower the pi precision");
    pow_[j] = pow_[j - 1] * p;
  }
  pn_ = pow_[precision_];
}

uint64_t BaseRing::add(uint64_t a, uint64_t b) const {
  if (model_ == RingModel::MixedChar || precision_ == 1) {
    uint64_t s = a + b;
    return s >= pn_ ? s - pn_ : s;
  }
  uint64_t out = 0;
  for (int j = 0; j < precision_; ++j) {
    uint64_t s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    out += s * pow_[j];
    a /= p_; b /= p_;
  }
  return out;
}

uint64_t BaseRing::neg(uint64_t a) const {
  if (model_ == RingModel::MixedChar || precision_ == 1)
    return a == 0 ? 0 : pn_ - a;
  uint64_t out = 0;
  for (int j = 0; j < precision_; ++j) {
    uint64_t d = a % p_;
    if (d) out += (p_ - d) * pow_[j];
    a /= p_;
  }
  return out;
}

uint64_t BaseRing::sub(uint64_t a, uint64_t b) const { return add(a, neg(b)); }

uint64_t BaseRing::mul(uint64_t a, uint64_t b) const {
  if (a == 0 || b == 0) return 0;
  if (model_ == RingModel::MixedChar || precision_ == 1)
    return (uint64_t)(((__uint128_t)a * b) % pn_);
  uint64_t da[64], db[64], acc[64] = {0};
  for (int j = 0; j < precision_; ++j) { da[j] = a % p_; a /= p_; }
  for (int j = 0; j < precision_; ++j) { db[j] = b % p_; b /= p_; }
  for (int i = 0; i < precision_; ++i) {
    if (!da[i]) continue;
    for (int j = 0; j + i < precision_; ++j)
      acc[i + j] += da[i] * db[j];
  }
  uint64_t out = 0;
  for (int j = 0; j < precision_; ++j) out += (acc[j] % p_) * pow_[j];
  return out;
}

uint64_t BaseRing::from_int(long long c) const {
  long long m = (long long)(model_ == RingModel::MixedChar ? pn_ : p_);
  long long r = c % m;
  if (r < 0) r += m;
  return (uint64_t)r;
}

uint64_t BaseRing::from_digit(uint64_t c, int pi_exp) const {
  if (pi_exp < 0) throw ShapeError("negative pi exponent");
  if (pi_exp >= precision_) return 0;
  return shift(c % p_, pi_exp);
}

int BaseRing::valuation(uint64_t a) const {
  if (a == 0) return precision_;
  int v = 0;
  while (a % p_ == 0) { a /= p_; ++v; }
  return v;
}

uint64_t BaseRing::inverse(uint64_t a) const {
  if (!is_unit(a)) throw DomainError("inverse of a non-unit");
  if (model_ == RingModel::MixedChar || precision_ == 1) return inv_mod(a, pn_);
  // Triangular back-substitution on digits: b0 = a0^-1,
  // b_k = -a0^-1 * sum_{i=1..k} a_i b_{k-i}.
  uint64_t da[64], db[64] = {0};
  uint64_t t = a;
  for (int j = 0; j < precision_; ++j) { da[j] = t % p_; t /= p_; }
  uint64_t a0inv = inv_mod(da[0], p_);
  db[0] = a0inv;
  for (int k = 1; k < precision_; ++k) {
    uint64_t s = 0;
    for (int i = 1; i <= k; ++i) s += da[i] * db[k - i] % p_;
    s %= p_;
    db[k] = s ? (p_ - s) * a0inv % p_ : 0;
  }
  uint64_t out = 0;
  for (int j = 0; j < precision_; ++j) out += db[j] * pow_[j];
  return out;
}

uint64_t BaseRing::split(uint64_t a, int v, uint64_t* rem) const {
  if (v <= 0) { if (rem) *rem = 0; return a; }
  if (v >= precision_) { if (rem) *rem = a; return 0; }
  uint64_t lo = a % pow_[v];
  if (rem) *rem = lo;
  return (a - lo) / pow_[v];
}

uint64_t BaseRing::shift(uint64_t a, int k) const {
  if (k <= 0) return a;
  if (k >= precision_) return 0;
  if (model_ == RingModel::MixedChar || precision_ == 1)
    return (uint64_t)(((__uint128_t)a * pow_[k]) % pn_);
  return (a % pow_[precision_ - k]) * pow_[k];
}

uint64_t BaseRing::digit(uint64_t a, int j) const {
  if (j < 0 || j >= precision_) return 0;
  return a / pow_[j] % p_;
}

std::string BaseRing::to_string(uint64_t a) const {
  if (model_ == RingModel::MixedChar) return std::to_string(a);
  std::ostringstream os;
  bool first = true;
  for (int j = 0; j < precision_; ++j) {
    uint64_t d = digit(a, j);
    if (!d) continue;
    if (!first) os << "+";
    first = false;
    if (j == 0) os << d;
    else {
      if (d != 1) os << d << "*";
      os << "pi";
      if (j > 1) os << "^" << j;
    }
  }
  if (first) os << "0";
  return os.str();
}

std::string BaseRing::describe() const {
  std::ostringstream os;
  if (model_ == RingModel::EqChar)
    os << "F_" << p_ << "[[pi]]/(pi^" << precision_ << ")";
  else
    os << "Z/" << p_ << "^" << precision_;
  return os.str();
}

}  // namespace milnorkit
