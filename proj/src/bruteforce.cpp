#include "milnorkit/bruteforce.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "milnorkit/errors.hpp"

namespace milnorkit::oracle {

namespace {

void list_monomials(int num_vars, int degree, int pos, int remaining,
                    std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (pos == num_vars - 1) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    cur[pos] = e;
    list_monomials(num_vars, degree, pos + 1, remaining - e, cur, out);
  }
}

std::vector<std::vector<int>> all_monomials(int num_vars, int degree_bound) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(num_vars, 0);
  for (int d = 0; d < degree_bound; ++d)
    list_monomials(num_vars, d, 0, d, cur, out);
  return out;
}

long long mod_inverse(long long a, long long p) {
  long long t = 0, newt = 1, r = p, newr = a % p;
  while (newr != 0) {
    long long q = r / newr;
    t -= q * newt;
    std::swap(t, newt);
    r -= q * newr;
    std::swap(r, newr);
  }
  return ((t % p) + p) % p;
}

}  // namespace

long long field_colength(long long p, int num_vars, int degree_bound,
                         const std::vector<DensePoly>& gens) {
  auto monos = all_monomials(num_vars, degree_bound);
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < (int)monos.size(); ++i) index[monos[i]] = i;
  int ncols = (int)monos.size();

  std::vector<std::vector<long long>> rows;
  for (const auto& u : monos) {
    for (const auto& g : gens) {
      std::vector<long long> row(ncols, 0);
      bool nonzero = false;
      for (const auto& [mono, c] : g) {
        std::vector<int> m(num_vars);
        int deg = 0;
        for (int j = 0; j < num_vars; ++j) {
          m[j] = mono[j] + u[j];
          deg += m[j];
        }
        if (deg >= degree_bound) continue;
        long long cc = ((c % p) + p) % p;
        if (cc == 0) continue;
        row[index[m]] = (row[index[m]] + cc) % p;
        nonzero = true;
      }
      if (nonzero) rows.push_back(std::move(row));
    }
  }

  int rank = 0;
  for (int col = 0; col < ncols && rank < (int)rows.size(); ++col) {
    int pivot = -1;
    for (int i = rank; i < (int)rows.size(); ++i)
      if (rows[i][col] % p != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    long long inv = mod_inverse(rows[rank][col], p);
    for (int j = col; j < ncols; ++j)
      rows[rank][j] = rows[rank][j] * inv % p;
    for (int i = 0; i < (int)rows.size(); ++i) {
      if (i == rank || rows[i][col] % p == 0) continue;
      long long f = rows[i][col] % p;
      for (int j = col; j < ncols; ++j)
        rows[i][j] = ((rows[i][j] - f * rows[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return ncols - rank;
}

long long diagonal_quotient_length(const BaseRing& ring,
                                   std::vector<std::vector<uint64_t>> rows,
                                   int ncols) {
  const int N = ring.precision();
  int nrows = (int)rows.size();
  long long quotient = 0;
  int top = 0;  // rows/cols below this index are already diagonalized
  std::vector<int> live_cols(ncols);
  for (int j = 0; j < ncols; ++j) live_cols[j] = j;
  int ncols_live = ncols;

  while (top < nrows && top < ncols_live) {
    int best_i = -1, best_j = -1, best_v = N;
    for (int i = top; i < nrows; ++i)
      for (int j = top; j < ncols_live; ++j) {
        uint64_t x = rows[i][live_cols[j]];
        if (x == 0) continue;
        int v = ring.valuation(x);
        if (v < best_v) {
          best_v = v;
          best_i = i;
          best_j = j;
        }
      }
    if (best_i < 0) break;
    std::swap(rows[top], rows[best_i]);
    std::swap(live_cols[top], live_cols[best_j]);
    int pc = live_cols[top];
    uint64_t unit = ring.split(rows[top][pc], best_v, nullptr);
    uint64_t scale = ring.inverse(unit);
    for (int j = 0; j < ncols; ++j) rows[top][j] = ring.mul(scale, rows[top][j]);
    for (int i = top + 1; i < nrows; ++i) {
      uint64_t x = rows[i][pc];
      if (x == 0) continue;
      uint64_t q = ring.split(x, best_v, nullptr);
      for (int j = 0; j < ncols; ++j)
        rows[i][j] = ring.sub(rows[i][j], ring.mul(q, rows[top][j]));
    }
    for (int j = top + 1; j < ncols_live; ++j) {
      int cj = live_cols[j];
      uint64_t x = rows[top][cj];
      if (x == 0) continue;
      uint64_t q = ring.split(x, best_v, nullptr);
      for (int i = 0; i < nrows; ++i)
        rows[i][cj] = ring.sub(rows[i][cj], ring.mul(q, rows[i][pc]));
    }
    quotient += best_v;
    ++top;
  }
  quotient += (long long)(ncols - top) * N;
  return quotient;
}

long long closure_quotient_length(
    const BaseRing& ring, const std::vector<std::vector<uint64_t>>& rows,
    int ncols) {
  const int N = ring.precision();
  std::vector<std::vector<uint64_t>> gens;
  for (const auto& r : rows)
    for (int k = 0; k < N; ++k) {
      std::vector<uint64_t> g(ncols, 0);
      bool nonzero = false;
      for (int j = 0; j < ncols; ++j) {
        g[j] = ring.shift(r[j], k);
        if (g[j] != 0) nonzero = true;
      }
      if (nonzero) gens.push_back(std::move(g));
    }

  std::set<std::vector<uint64_t>> seen;
  std::vector<std::vector<uint64_t>> frontier;
  seen.insert(std::vector<uint64_t>(ncols, 0));
  frontier.push_back(std::vector<uint64_t>(ncols, 0));
  while (!frontier.empty()) {
    if (seen.size() > 4000000)
      throw std::runtime_error("closure oracle instance too large");
    std::vector<std::vector<uint64_t>> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        std::vector<uint64_t> y(ncols);
        for (int j = 0; j < ncols; ++j) y[j] = ring.add(x[j], g[j]);
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    frontier = std::move(next);
  }

  long long size_log = 0;
  unsigned long long size = seen.size();
  while (size > 1) {
    if (size % ring.p() != 0)
      throw std::runtime_error("closure order is not a p power");
    size /= ring.p();
    ++size_log;
  }
  return (long long)N * ncols - size_log;
}

std::vector<std::vector<uint64_t>> macaulay_rows(const LocalIdeal& ideal) {
  auto monos = all_monomials(ideal.num_vars, ideal.degree_bound);
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < (int)monos.size(); ++i) index[monos[i]] = i;

  std::vector<std::vector<uint64_t>> rows;
  for (const auto& u : monos) {
    for (const auto& g : ideal.gens) {
      std::vector<uint64_t> row(monos.size(), 0);
      bool nonzero = false;
      TruncatedSeries cut = g.truncated(ideal.degree_bound);
      for (const auto& [mono, c] : cut.terms()) {
        std::vector<int> m(ideal.num_vars);
        int deg = 0;
        for (int j = 0; j < ideal.num_vars; ++j) {
          m[j] = mono[j] + u[j];
          deg += m[j];
        }
        if (deg >= ideal.degree_bound) continue;
        row[index[m]] = ideal.ring.add(row[index[m]], c);
        nonzero = true;
      }
      if (nonzero) rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace milnorkit::oracle
