#pragma once

#include <map>
#include <string>
#include <vector>

#include "milnorkit/base_ring.hpp"

namespace milnorkit {

// Exponent vector over the formal variables t_1..t_m (pi is not a variable;
// it lives in the coefficient).
using Monomial = std::vector<int>;

int total_degree(const Monomial& m);

// Fixed monomial order used everywhere: total degree, then lexicographic on
// the exponent vector.
struct GradedLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// Element of A[[t_1..t_m]] truncated at a fixed total-degree bound D:
// only terms of total degree < D are stored, with coefficients in the
// working BaseRing.  The truncation ideal is (t_1..t_m)^D + (pi^N).
// Canonical form: no stored zero coefficients.
class TruncatedSeries {
 public:
  TruncatedSeries(const BaseRing& ring, int num_vars, int degree_bound);

  static TruncatedSeries constant(const BaseRing& ring, int num_vars,
                                  int degree_bound, uint64_t c);
  static TruncatedSeries variable(const BaseRing& ring, int num_vars,
                                  int degree_bound, int index);

  const BaseRing& ring() const { return ring_; }
  int num_vars() const { return num_vars_; }
  int degree_bound() const { return degree_bound_; }
  const std::map<Monomial, uint64_t, GradedLexLess>& terms() const {
    return terms_;
  }

  bool is_zero() const { return terms_.empty(); }
  uint64_t coeff(const Monomial& m) const;
  // Adds c * t^m (terms at degree >= bound are dropped; zero results pruned).
  void add_term(const Monomial& m, uint64_t c);

  TruncatedSeries operator+(const TruncatedSeries& o) const;
  TruncatedSeries operator-(const TruncatedSeries& o) const;
  TruncatedSeries operator*(const TruncatedSeries& o) const;
  TruncatedSeries operator-() const;
  bool operator==(const TruncatedSeries& o) const;

  TruncatedSeries scaled(uint64_t c) const;
  // Multiplies by t^m (truncating), without changing the bound.
  TruncatedSeries shifted(const Monomial& m) const;
  // Re-truncates to a smaller degree bound.
  TruncatedSeries truncated(int new_bound) const;

  // Re-embeds at a degree bound >= the current one.  Only sound for
  // polynomial data carried exactly below the stated bound — germ inputs —
  // so the caller must opt in by name; truncated() still refuses to raise.
  TruncatedSeries widened(int new_bound) const;

  // Formal partial derivative; the result carries degree bound D - 1.
  // In characteristic p the rule e * t^(e-1) can kill terms.
  TruncatedSeries derivative(int var) const;

  // Substitution t_i -> images[i].  Every image must lie in the maximal ideal
  // (constant term of positive valuation); DomainError otherwise.  The result
  // carries the minimum of the involved degree bounds.
  TruncatedSeries substitute(const std::vector<TruncatedSeries>& images) const;

  // Largest c with the element in (pi, t_1..t_m)^c at working precision,
  // i.e. min over stored terms of |exponent| + valuation(coefficient).
  // Returns order_cap() = D + N for 0.
  int t_order() const;
  int order_cap() const { return degree_bound_ + ring_.precision(); }

  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  void check_compatible(const TruncatedSeries& o) const;

  BaseRing ring_;
  int num_vars_;
  int degree_bound_;
  std::map<Monomial, uint64_t, GradedLexLess> terms_;
};

}  // namespace milnorkit
