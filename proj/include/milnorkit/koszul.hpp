#pragma once

#include <map>
#include <vector>

#include "milnorkit/base_ring.hpp"
#include "milnorkit/local_algebra.hpp"
#include "milnorkit/series.hpp"

namespace milnorkit {

// Ambient ring for a complex: A[[t_1..t_m]] / (relations), with everything
// modelled at the stated degree bound.
struct QuotientRing {
  BaseRing ring;
  int num_vars;
  int degree_bound;
  std::vector<TruncatedSeries> relations;

  QuotientRing(const BaseRing& ring, int num_vars, int degree_bound,
               std::vector<TruncatedSeries> relations = {});
};

// Bounded complex of finite free modules, degrees lo..hi.  diff(i) is the
// matrix of d_i : C^i -> C^(i+1) with rank(i+1) rows and rank(i) columns;
// the top degree carries no differential.
struct FreeComplex {
  QuotientRing base;
  int lo;
  std::vector<int> ranks;
  std::vector<std::vector<std::vector<TruncatedSeries>>> diffs;

  int hi() const { return lo + (int)ranks.size() - 1; }
  int rank(int degree) const;
  const std::vector<std::vector<TruncatedSeries>>& diff(int degree) const;
};

// Contraction-style Koszul complex on u_1..u_r: degree -k holds the k-th
// exterior power (basis: k-subsets in lexicographic order) and
// d(e_S) = sum_j (-1)^(j-1) u_(i_j) e_(S minus i_j).
FreeComplex koszul_contraction(const QuotientRing& Q,
                               const std::vector<TruncatedSeries>& u);

// Wedge-style Koszul complex in degrees [0, r]:
// d(e_S) = sum_(i not in S) (-1)^|{s in S : s < i}| v_i e_(S union i).
FreeComplex koszul_wedge(const QuotientRing& Q,
                         const std::vector<TruncatedSeries>& v);

// Degreewise dual: degree i of the result holds the dual of degree -i, with
// transposed differentials and no extra sign.
FreeComplex dualize(const FreeComplex& C);

// Shift: degree i of the result holds C^(i+k).
FreeComplex shift(const FreeComplex& C, int k);

// [R ->(v) R^r] in degrees [-1, 0].
FreeComplex two_term_complex(const QuotientRing& Q,
                             const std::vector<TruncatedSeries>& v);

// Top derived exterior power of a two-term complex [R -> R^r]: the wedge
// complex of the column entries placed in degrees [-r, 0].  Only q == r is
// defined here.
FreeComplex derived_exterior_power(const FreeComplex& two_term, int q);

// Checks d o d == 0 modulo the relations at the model precision.
bool d2_check(const FreeComplex& C);

// Certified homology lengths per degree.  Each degree is measured through a
// window scan: the length of (kernel + J_c)/J_c, J_c the boundaries plus
// relations plus the weight->=c sublattice, must plateau over at least three
// consecutive window sizes below the horizon (two guard sizes at the top are
// always discarded).  No plateau raises NotFiniteLengthError carrying the
// degree.
std::map<int, long long> homology_lengths(const FreeComplex& C);

long long euler_characteristic(const std::map<int, long long>& lengths);

}  // namespace milnorkit
