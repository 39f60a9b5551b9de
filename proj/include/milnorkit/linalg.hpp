#pragma once

#include <cstdint>
#include <vector>

#include "milnorkit/base_ring.hpp"
#include "milnorkit/series.hpp"

namespace milnorkit {

// Enumeration of all monomials of total degree < degree_bound in num_vars
// variables, listed in the fixed graded-lexicographic order.
class MonomialBasis {
 public:
  MonomialBasis(int num_vars, int degree_bound);

  int size() const { return (int)monos_.size(); }
  int num_vars() const { return num_vars_; }
  const Monomial& at(int i) const { return monos_[i]; }
  int weight(int i) const { return weights_[i]; }
  // Index of a monomial, or -1 when its degree is >= the bound.
  int index(const Monomial& m) const;
  // First basis index of the given total degree (size() when past the top).
  int degree_start(int d) const;

 private:
  int num_vars_;
  int degree_bound_;
  std::vector<Monomial> monos_;
  std::vector<int> weights_;
  std::vector<int> degree_start_;
};

// Row-echelon basis of a sub-lattice of Lambda^ncols, Lambda the working
// chain ring (F_p[[pi]]/pi^N or Z/p^N).  Pivot entries are exact powers
// pi^v; the stored set is closed under the annihilator rule (pi^(N-v) times
// a pivot row is re-inserted), so membership testing by reduction is exact
// and the span length is the sum of N - v over pivot columns.
class ChainEchelon {
 public:
  ChainEchelon(const BaseRing& ring, int ncols);

  const BaseRing& ring() const { return ring_; }
  int ncols() const { return ncols_; }

  // Reduces v in place against the current rows (columns ascending).
  void reduce(std::vector<uint64_t>& v) const;
  bool contains(std::vector<uint64_t> v) const;
  // Inserts the span of v (plus closure rows).
  void insert(std::vector<uint64_t> v);

  // Valuation of the pivot at a column; N when the column has no pivot.
  int pivot_val(int col) const;
  // Sparse entries of the pivot row at a column (empty when none).
  const std::vector<std::pair<int, uint64_t>>& row_at(int col) const;
  // Length of the span as a module over the coefficient chain ring.
  long long span_length() const { return span_length_; }
  int num_pivots() const { return num_pivots_; }

  ChainEchelon clone() const { return *this; }

 private:
  struct Row {
    int val;                                      // pivot valuation
    std::vector<std::pair<int, uint64_t>> ent;    // sorted by column; [0] is the pivot
  };

  void install(int col, Row row);
  std::vector<uint64_t> densify(const Row& r) const;

  BaseRing ring_;
  int ncols_;
  std::vector<Row> rows_;
  std::vector<int> pivot_row_;   // col -> row index or -1
  long long span_length_ = 0;
  int num_pivots_ = 0;
};

// Augmented elimination helper: rows [image | tag] with image columns first.
// Feeding the generators of a map's column lattice plus the target-side
// relation rows, the rows whose image part vanished have tags generating the
// kernel lattice of the map modulo those relations.
class TaggedEchelon {
 public:
  TaggedEchelon(const BaseRing& ring, int image_cols, int tag_cols);

  void insert(std::vector<uint64_t> image, std::vector<uint64_t> tag);
  void insert_untagged(const std::vector<uint64_t>& image);

  // Tags of rows with zero image part: generators of the kernel lattice.
  std::vector<std::vector<uint64_t>> kernel_tags() const;

  // Reduces [target | 0]; on success stores the negated tag (a preimage of
  // target under the row generators) into *solution and returns true.
  bool solve(const std::vector<uint64_t>& target,
             std::vector<uint64_t>* solution) const;

 private:
  BaseRing ring_;
  int image_cols_, tag_cols_;
  ChainEchelon ech_;
};

}  // namespace milnorkit
