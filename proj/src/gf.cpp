#include "milnorkit/gf.hpp"

#include "milnorkit/errors.hpp"

namespace milnorkit {

namespace {

constexpr uint64_t kTableCap = 1u << 20;

bool is_prime(uint64_t p) {
  if (p < 2) return false;
  for (uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Remainder test of a monic polynomial against a monic divisor over F_p,
// both low-to-high.
bool divides(const std::vector<uint64_t>& divisor, std::vector<uint64_t> f,
             uint64_t p) {
  int d = static_cast<int>(divisor.size()) - 1;
  for (int lead = static_cast<int>(f.size()) - 1; lead >= d; --lead) {
    uint64_t c = f[lead];
    if (c == 0) continue;
    f[lead] = 0;
    for (int j = 0; j < d; ++j)
      f[lead - d + j] = (f[lead - d + j] + (p - divisor[j]) * c) % p;
  }
  for (int j = 0; j < d; ++j)
    if (f[j] != 0) return false;
  return true;
}

}  // namespace

GaloisField::GaloisField(uint64_t p, int degree) : p_(p), degree_(degree) {
  if (!is_prime(p)) throw DomainError("the field characteristic must be prime");
  if (degree < 1) throw DomainError("the field degree must be positive");
  q_ = 1;
  for (int i = 0; i < degree; ++i) {
    q_ *= p;
    if (q_ > kTableCap)
      throw DomainError("field tables are capped at 2^20 elements");
  }

  if (degree_ == 1) {
    irreducible_ = {0, 1};
  } else {
    // Smallest packed coefficient string whose monic polynomial has no monic
    // divisor of degree at most degree/2.
    uint64_t half_cap = 1;
    for (uint64_t c = 0;; ++c) {
      if (c >= q_)
        throw DomainError("no irreducible polynomial found");  // unreachable
      std::vector<uint64_t> f(degree_ + 1, 0);
      f[degree_] = 1;
      uint64_t v = c;
      for (int j = 0; j < degree_; ++j, v /= p_) f[j] = v % p_;
      if (f[0] == 0) continue;
      bool reducible = false;
      for (int d = 1; !reducible && 2 * d <= degree_; ++d) {
        half_cap = 1;
        for (int i = 0; i < d; ++i) half_cap *= p_;
        for (uint64_t w = 0; w < half_cap && !reducible; ++w) {
          std::vector<uint64_t> g(d + 1, 0);
          g[d] = 1;
          uint64_t u = w;
          for (int j = 0; j < d; ++j, u /= p_) g[j] = u % p_;
          reducible = divides(g, f, p_);
        }
      }
      if (!reducible) {
        irreducible_ = f;
        break;
      }
    }
  }

  for (uint64_t g = 2; g < q_; ++g) {
    uint64_t x = g, order = 1;
    while (x != 1) {
      x = mul_slow(x, g);
      ++order;
    }
    if (order == q_ - 1) {
      generator_ = g;
      break;
    }
  }
  if (generator_ == 0 && q_ == 2) generator_ = 1;
  if (generator_ == 0) throw DomainError("no field generator found");

  exp_.assign(2 * (q_ - 1), 0);
  log_.assign(q_, 0);
  uint64_t x = 1;
  for (uint64_t i = 0; i < q_ - 1; ++i) {
    exp_[i] = static_cast<uint32_t>(x);
    exp_[i + (q_ - 1)] = static_cast<uint32_t>(x);
    log_[x] = static_cast<uint32_t>(i);
    x = mul_slow(x, generator_);
  }
}

std::vector<uint64_t> GaloisField::digits(uint64_t a) const {
  std::vector<uint64_t> d(degree_);
  for (int j = 0; j < degree_; ++j, a /= p_) d[j] = a % p_;
  return d;
}

uint64_t GaloisField::mul_slow(uint64_t a, uint64_t b) const {
  std::vector<uint64_t> prod(2 * degree_ - 1, 0);
  std::vector<uint64_t> da = digits(a), db = digits(b);
  for (int i = 0; i < degree_; ++i) {
    if (da[i] == 0) continue;
    for (int j = 0; j < degree_; ++j)
      prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
  }
  for (int d = 2 * degree_ - 2; d >= degree_; --d) {
    uint64_t c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (int j = 0; j < degree_; ++j)
      prod[d - degree_ + j] =
          (prod[d - degree_ + j] + (p_ - irreducible_[j]) * c) % p_;
  }
  uint64_t packed = 0;
  for (int j = degree_ - 1; j >= 0; --j) packed = packed * p_ + prod[j];
  return packed;
}

uint64_t GaloisField::add(uint64_t a, uint64_t b) const {
  if (degree_ == 1) return (a + b) % p_;
  uint64_t out = 0, scale = 1;
  for (int j = 0; j < degree_; ++j) {
    out += ((a % p_) + (b % p_)) % p_ * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return out;
}

uint64_t GaloisField::neg(uint64_t a) const {
  if (degree_ == 1) return (p_ - a) % p_;
  uint64_t out = 0, scale = 1;
  for (int j = 0; j < degree_; ++j) {
    out += (p_ - (a % p_)) % p_ * scale;
    a /= p_;
    scale *= p_;
  }
  return out;
}

uint64_t GaloisField::sub(uint64_t a, uint64_t b) const {
  return add(a, neg(b));
}

uint64_t GaloisField::mul(uint64_t a, uint64_t b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[log_[a] + log_[b]];
}

uint64_t GaloisField::inverse(uint64_t a) const {
  if (a == 0) throw DomainError("inverse of zero");
  return exp_[(q_ - 1) - log_[a]];
}

uint64_t GaloisField::pow(uint64_t a, uint64_t e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  return exp_[log_[a] * (e % (q_ - 1)) % (q_ - 1)];
}

uint64_t GaloisField::from_int(long long c) const {
  long long m = static_cast<long long>(p_);
  return static_cast<uint64_t>(((c % m) + m) % m);
}

std::vector<uint64_t> GaloisField::embedding_table(
    const GaloisField& ext) const {
  if (ext.p() != p_)
    throw DomainError("field embeddings need equal characteristic");
  if (ext.degree() % degree_ != 0)
    throw DomainError(
        "the target degree must be a multiple of the source degree");

  std::vector<uint64_t> table(q_, 0);
  if (degree_ == 1) {
    for (uint64_t a = 0; a < q_; ++a) table[a] = a;
    return table;
  }

  uint64_t root = 0;
  for (uint64_t rho = 1; rho < ext.size(); ++rho) {
    uint64_t acc = 0;
    for (int j = degree_; j >= 0; --j)
      acc = ext.add(ext.mul(acc, rho), irreducible_[j]);
    if (acc == 0) {
      root = rho;
      break;
    }
  }
  if (root == 0) throw DomainError("no root of the modulus in the target");

  for (uint64_t a = 0; a < q_; ++a) {
    std::vector<uint64_t> da = digits(a);
    uint64_t acc = 0;
    for (int j = degree_ - 1; j >= 0; --j)
      acc = ext.add(ext.mul(acc, root), da[j]);
    table[a] = acc;
  }
  return table;
}

}  // namespace milnorkit
