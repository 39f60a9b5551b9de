#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "milnorkit/base_ring.hpp"
#include "milnorkit/linalg.hpp"
#include "milnorkit/series.hpp"

namespace milnorkit {

// Finitely generated ideal in A[[t_1..t_m]], presented by truncated series.
struct LocalIdeal {
  BaseRing ring;
  int num_vars;
  int degree_bound;
  std::vector<TruncatedSeries> gens;

  explicit LocalIdeal(std::vector<TruncatedSeries> generators);
  // True when every generator lies in the maximal ideal (t, pi).
  bool gens_in_maximal_ideal() const;
};

struct ColengthCertificate {
  long long length = 0;
  // Least order c with m^c contained in the ideal plus the truncation ideal;
  // the certificate is the direct reduction of the full weight-c layer.
  int stable_order = 0;
  int horizon = 0;  // min(degree bound, pi-absorption order)
  std::vector<std::pair<Monomial, int>> staircase;  // surviving (monomial, multiplicity)
};

// Row space of all monomial multiples of the generators inside the free
// lattice Lambda^(monomial basis), Lambda the coefficient chain ring at
// precision N.  Quotient lengths certified against both truncation ideals:
// t-degrees >= degree_bound via the weight horizon, pi^N via the absorption
// order h = max_s (N - s) + ord(NF(pi^s)).
class MacaulayTable {
 public:
  explicit MacaulayTable(const LocalIdeal& ideal);

  const BaseRing& ring() const { return ring_; }
  const MonomialBasis& basis() const { return basis_; }
  const ChainEchelon& echelon() const { return ech_; }
  int degree_bound() const { return degree_bound_; }
  int horizon() const { return horizon_; }

  std::vector<uint64_t> vectorize(const TruncatedSeries& a) const;
  TruncatedSeries seriesize(const std::vector<uint64_t>& v) const;

  TruncatedSeries normal_form(const TruncatedSeries& a) const;
  bool contains(const TruncatedSeries& a) const;
  // t-adic order of a reduced vector; order_cap when zero.
  int order_of(const std::vector<uint64_t>& v) const;
  int order_cap() const { return degree_bound_ + ring_.precision(); }

  // Throws NotFiniteLengthError when no layer below the horizon vanishes.
  ColengthCertificate colength() const;

 private:
  bool layer_reduces(int c) const;
  int absorption_order() const;

  BaseRing ring_;
  int num_vars_;
  int degree_bound_;
  MonomialBasis basis_;
  ChainEchelon ech_;
  int horizon_;
};

// Same elimination model for a finite free module R^slots over the quotient
// by the relation ideal: columns are (slot, basis monomial) pairs.
class ModuleTable {
 public:
  ModuleTable(const BaseRing& ring, int num_vars, int degree_bound, int slots,
              const std::vector<TruncatedSeries>& relations);

  const BaseRing& ring() const { return ring_; }
  const MonomialBasis& basis() const { return basis_; }
  int slots() const { return slots_; }
  int ncols() const { return slots_ * basis_.size(); }
  int horizon() const { return horizon_; }
  int degree_bound() const { return degree_bound_; }

  // Inserts t^beta * column for every basis monomial beta.
  void add_column_lattice(const std::vector<TruncatedSeries>& column);
  void add_vector(const std::vector<TruncatedSeries>& v);

  std::vector<uint64_t> vectorize(const std::vector<TruncatedSeries>& v) const;
  std::vector<TruncatedSeries> seriesize(const std::vector<uint64_t>& v) const;
  std::vector<TruncatedSeries> normal_form(
      const std::vector<TruncatedSeries>& v) const;
  bool contains(const std::vector<TruncatedSeries>& v) const;
  int order_of(const std::vector<uint64_t>& v) const;
  int order_cap() const { return degree_bound_ + ring_.precision(); }

  // The relation rows alone, for feeding augmented eliminations.
  const std::vector<std::vector<uint64_t>>& relation_rows() const {
    return relation_rows_;
  }

  ColengthCertificate colength() const;

 private:
  bool layer_reduces(int c) const;

  BaseRing ring_;
  int num_vars_;
  int degree_bound_;
  int slots_;
  MonomialBasis basis_;
  ChainEchelon ech_;
  int horizon_;
  std::vector<std::vector<uint64_t>> relation_rows_;
};

ColengthCertificate colength(const LocalIdeal& ideal);
TruncatedSeries normal_form(const TruncatedSeries& a, const LocalIdeal& ideal);

// All k-by-k minors of a matrix of series, rows/column subsets in
// lexicographic order.
std::vector<TruncatedSeries> minors(
    const std::vector<std::vector<TruncatedSeries>>& mat, int k);

// Partial-derivative matrix (rows follow f, columns the variables).
std::vector<std::vector<TruncatedSeries>> jacobian_matrix(
    const std::vector<TruncatedSeries>& f);

// The ideal (f_1..f_r) + (r-by-r minors of the derivative matrix), at degree
// bound one below the input (derivatives lose a degree).
LocalIdeal jacobian_ideal(const std::vector<TruncatedSeries>& f);

}  // namespace milnorkit
