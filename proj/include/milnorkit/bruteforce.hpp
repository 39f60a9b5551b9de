#pragma once

// Reference computations used to cross-check the elimination engine.  These
// deliberately avoid the ChainEchelon code path: plain Gaussian elimination
// over F_p, valuation-pivoted diagonalization with row and column operations,
// and (for tiny instances) the order of the additive closure.

#include <cstdint>
#include <map>
#include <vector>

#include "milnorkit/base_ring.hpp"
#include "milnorkit/local_algebra.hpp"

namespace milnorkit::oracle {

using DensePoly = std::map<std::vector<int>, long long>;

// Colength of the span of all monomial multiples of gens inside the space of
// polynomials of degree < degree_bound over F_p.
long long field_colength(long long p, int num_vars, int degree_bound,
                         const std::vector<DensePoly>& gens);

// Quotient length of Lambda^ncols by the span of the rows, computed by
// diagonalizing with unimodular row and column operations.
long long diagonal_quotient_length(const BaseRing& ring,
                                   std::vector<std::vector<uint64_t>> rows,
                                   int ncols);

// Quotient length via the group order of the additive closure of the rows
// and their pi-shifts.  Exponential; tiny instances only.
long long closure_quotient_length(
    const BaseRing& ring, const std::vector<std::vector<uint64_t>>& rows,
    int ncols);

// The monomial-multiple rows of an ideal at its own degree bound, columns in
// an order private to the oracle.
std::vector<std::vector<uint64_t>> macaulay_rows(const LocalIdeal& ideal);

}  // namespace milnorkit::oracle
