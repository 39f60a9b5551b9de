#include "milnorkit/koszul.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "milnorkit/errors.hpp"
#include "milnorkit/linalg.hpp"

namespace milnorkit {

namespace {

void k_subsets_rec(int n, int k, int start, std::vector<int>& cur,
                   std::vector<std::vector<int>>& out) {
  if ((int)cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    k_subsets_rec(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> k_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  k_subsets_rec(n, k, 0, cur, out);
  return out;
}

std::vector<TruncatedSeries> checked_entries(
    const QuotientRing& Q, const std::vector<TruncatedSeries>& v) {
  std::vector<TruncatedSeries> out;
  for (const auto& e : v) {
    if (!(e.ring() == Q.ring) || e.num_vars() != Q.num_vars)
      throw ShapeError("complex entries do not match the ambient ring");
    if (e.degree_bound() < Q.degree_bound)
      throw PrecisionError("entry degree bound is below the ambient bound");
    out.push_back(e.truncated(Q.degree_bound));
  }
  return out;
}

int min_term_degree(const TruncatedSeries& s) {
  int best = s.degree_bound();
  for (const auto& [mono, c] : s.terms()) best = std::min(best, total_degree(mono));
  return best;
}

}  // namespace

QuotientRing::QuotientRing(const BaseRing& ring_in, int num_vars_in,
                           int degree_bound_in,
                           std::vector<TruncatedSeries> relations_in)
    : ring(ring_in), num_vars(num_vars_in), degree_bound(degree_bound_in) {
  if (num_vars < 1) throw ShapeError("quotient ring needs a variable");
  if (degree_bound < 1) throw ShapeError("degree bound must be >= 1");
  relations = checked_entries(*this, relations_in);
}

int FreeComplex::rank(int degree) const {
  if (degree < lo || degree > hi()) return 0;
  return ranks[degree - lo];
}

const std::vector<std::vector<TruncatedSeries>>& FreeComplex::diff(
    int degree) const {
  if (degree < lo || degree >= hi())
    throw ShapeError("no differential at this degree");
  return diffs[degree - lo];
}

FreeComplex koszul_wedge(const QuotientRing& Q,
                         const std::vector<TruncatedSeries>& v) {
  int r = (int)v.size();
  if (r < 1) throw ShapeError("koszul complex needs at least one entry");
  auto entries = checked_entries(Q, v);
  FreeComplex C{Q, 0, {}, {}};
  std::vector<std::vector<std::vector<int>>> bases;
  for (int k = 0; k <= r; ++k) {
    bases.push_back(k_subsets(r, k));
    C.ranks.push_back((int)bases.back().size());
  }
  TruncatedSeries zero(Q.ring, Q.num_vars, Q.degree_bound);
  for (int k = 0; k < r; ++k) {
    std::map<std::vector<int>, int> target_index;
    for (int t = 0; t < (int)bases[k + 1].size(); ++t)
      target_index[bases[k + 1][t]] = t;
    std::vector<std::vector<TruncatedSeries>> M(
        bases[k + 1].size(),
        std::vector<TruncatedSeries>(bases[k].size(), zero));
    for (int s = 0; s < (int)bases[k].size(); ++s) {
      const auto& S = bases[k][s];
      for (int i = 0; i < r; ++i) {
        if (std::binary_search(S.begin(), S.end(), i)) continue;
        std::vector<int> T = S;
        T.insert(std::upper_bound(T.begin(), T.end(), i), i);
        int below = (int)(std::lower_bound(S.begin(), S.end(), i) - S.begin());
        int t = target_index[T];
        M[t][s] = (below % 2 == 0) ? M[t][s] + entries[i]
                                   : M[t][s] - entries[i];
      }
    }
    C.diffs.push_back(std::move(M));
  }
  return C;
}

FreeComplex koszul_contraction(const QuotientRing& Q,
                               const std::vector<TruncatedSeries>& u) {
  int r = (int)u.size();
  if (r < 1) throw ShapeError("koszul complex needs at least one entry");
  auto entries = checked_entries(Q, u);
  FreeComplex C{Q, -r, {}, {}};
  std::vector<std::vector<std::vector<int>>> bases;  // index j holds (r-j)-subsets
  for (int j = 0; j <= r; ++j) bases.push_back(k_subsets(r, r - j));
  for (int j = 0; j <= r; ++j) C.ranks.push_back((int)bases[j].size());
  TruncatedSeries zero(Q.ring, Q.num_vars, Q.degree_bound);
  for (int j = 0; j < r; ++j) {
    // degree -r+j: from (r-j)-subsets down to (r-j-1)-subsets
    std::map<std::vector<int>, int> target_index;
    for (int t = 0; t < (int)bases[j + 1].size(); ++t)
      target_index[bases[j + 1][t]] = t;
    std::vector<std::vector<TruncatedSeries>> M(
        bases[j + 1].size(),
        std::vector<TruncatedSeries>(bases[j].size(), zero));
    for (int s = 0; s < (int)bases[j].size(); ++s) {
      const auto& S = bases[j][s];
      for (int pos = 0; pos < (int)S.size(); ++pos) {
        std::vector<int> T = S;
        T.erase(T.begin() + pos);
        int t = target_index[T];
        M[t][s] = (pos % 2 == 0) ? M[t][s] + entries[S[pos]]
                                 : M[t][s] - entries[S[pos]];
      }
    }
    C.diffs.push_back(std::move(M));
  }
  return C;
}

FreeComplex dualize(const FreeComplex& C) {
  FreeComplex D{C.base, -C.hi(), {}, {}};
  int n = (int)C.ranks.size();
  for (int i = n - 1; i >= 0; --i) D.ranks.push_back(C.ranks[i]);
  TruncatedSeries zero(C.base.ring, C.base.num_vars, C.base.degree_bound);
  for (int i = D.lo; i < D.hi(); ++i) {
    const auto& M = C.diff(-i - 1);  // rank(-i) rows, rank(-i-1) cols
    int rows = (int)M.size(), cols = rows ? (int)M[0].size() : 0;
    std::vector<std::vector<TruncatedSeries>> Mt(
        cols, std::vector<TruncatedSeries>(rows, zero));
    for (int a = 0; a < rows; ++a)
      for (int b = 0; b < cols; ++b) Mt[b][a] = M[a][b];
    D.diffs.push_back(std::move(Mt));
  }
  return D;
}

FreeComplex shift(const FreeComplex& C, int k) {
  FreeComplex D = C;
  D.lo -= k;
  return D;
}

FreeComplex two_term_complex(const QuotientRing& Q,
                             const std::vector<TruncatedSeries>& v) {
  int r = (int)v.size();
  if (r < 1) throw ShapeError("two-term complex needs at least one entry");
  auto entries = checked_entries(Q, v);
  FreeComplex C{Q, -1, {1, r}, {}};
  std::vector<std::vector<TruncatedSeries>> M;
  for (int i = 0; i < r; ++i) M.push_back({entries[i]});
  C.diffs.push_back(std::move(M));
  return C;
}

FreeComplex derived_exterior_power(const FreeComplex& two_term, int q) {
  if (two_term.lo != -1 || two_term.hi() != 0 || two_term.rank(-1) != 1)
    throw ShapeError("expected a two-term complex [R -> R^r]");
  int r = two_term.rank(0);
  if (q != r)
    throw ShapeError("only the top derived exterior power is supported");
  std::vector<TruncatedSeries> v;
  for (int i = 0; i < r; ++i) v.push_back(two_term.diff(-1)[i][0]);
  return shift(koszul_wedge(two_term.base, v), q);
}

bool d2_check(const FreeComplex& C) {
  std::optional<MacaulayTable> rel;
  if (!C.base.relations.empty()) rel.emplace(LocalIdeal(C.base.relations));
  for (int i = C.lo; i + 1 < C.hi(); ++i) {
    if (C.rank(i) == 0 || C.rank(i + 1) == 0 || C.rank(i + 2) == 0) continue;
    const auto& A = C.diff(i + 1);
    const auto& B = C.diff(i);
    for (int a = 0; a < C.rank(i + 2); ++a) {
      for (int b = 0; b < C.rank(i); ++b) {
        TruncatedSeries acc(C.base.ring, C.base.num_vars, C.base.degree_bound);
        for (int m = 0; m < C.rank(i + 1); ++m) acc = acc + A[a][m] * B[m][b];
        if (rel ? !rel->contains(acc) : !acc.is_zero()) return false;
      }
    }
  }
  return true;
}

namespace {

// Window-scan homology engine.  All lattices live in Lambda^(slots x basis);
// J_c = boundaries + relations + the weight->=c sublattice, and the degree-i
// length is the plateau of len(J_c + kernel) - len(J_c) as c runs below the
// horizon.
class HomologyEngine {
 public:
  explicit HomologyEngine(const FreeComplex& C)
      : C_(C),
        ring_(C.base.ring),
        D_(C.base.degree_bound),
        B_(C.base.num_vars, C.base.degree_bound) {
    if (!C_.base.relations.empty()) {
      rel_.emplace(LocalIdeal(C_.base.relations));
      W_ = rel_->horizon();
    } else {
      W_ = ring_.is_exact_field() ? D_ : std::min(D_, ring_.precision());
    }
    if (W_ - 3 < 3)
      throw PrecisionError(
          "horizon too small for a homology plateau; raise the degree bound "
          "or pi precision");
    for (int u = 0; u < B_.size(); ++u) {
      for (const auto& g : C_.base.relations) {
        if (B_.weight(u) + min_term_degree(g) >= D_) continue;
        TruncatedSeries prod = g.shifted(B_.at(u));
        if (prod.is_zero()) continue;
        std::vector<uint64_t> row(B_.size(), 0);
        for (const auto& [mono, c] : prod.terms()) row[B_.index(mono)] = c;
        scalar_rel_rows_.push_back(std::move(row));
      }
    }
  }

  std::map<int, long long> run() {
    std::map<int, long long> out;
    for (int i = C_.lo; i <= C_.hi(); ++i) out[i] = degree_length(i);
    return out;
  }

 private:
  TruncatedSeries reduced(const TruncatedSeries& s) const {
    return rel_ ? rel_->normal_form(s) : s;
  }

  // columns of diff(at), entries normal-formed: result[src][dst]
  std::vector<std::vector<TruncatedSeries>> nf_columns(int at) const {
    const auto& M = C_.diff(at);
    int rows = (int)M.size(), cols = rows ? (int)M[0].size() : 0;
    std::vector<std::vector<TruncatedSeries>> out(cols);
    for (int s = 0; s < cols; ++s)
      for (int t = 0; t < rows; ++t) out[s].push_back(reduced(M[t][s]));
    return out;
  }

  std::vector<uint64_t> shifted_column(
      const std::vector<TruncatedSeries>& col, const Monomial& b,
      int slots) const {
    std::vector<uint64_t> row((size_t)slots * B_.size(), 0);
    for (int t = 0; t < slots; ++t) {
      TruncatedSeries prod = col[t].shifted(b);
      for (const auto& [mono, c] : prod.terms()) {
        int idx = B_.index(mono);
        if (idx < 0) continue;
        row[(size_t)t * B_.size() + idx] = c;
      }
    }
    return row;
  }

  void place_relations(int slots,
                       const std::function<void(std::vector<uint64_t>&&)>&
                           sink) const {
    for (const auto& rv : scalar_rel_rows_) {
      for (int s = 0; s < slots; ++s) {
        std::vector<uint64_t> row((size_t)slots * B_.size(), 0);
        std::copy(rv.begin(), rv.end(), row.begin() + (size_t)s * B_.size());
        sink(std::move(row));
      }
    }
  }

  // Generators of the weight->=W sublattice of Lambda^(slots x basis).
  void place_weight_layer(int slots, int floor_weight,
                          const std::function<void(std::vector<uint64_t>&&)>&
                              sink) const {
    const int N = ring_.precision();
    int ncols = slots * B_.size();
    for (int col = 0; col < ncols; ++col) {
      int w = B_.weight(col % B_.size());
      int k = std::max(0, floor_weight - w);
      if (k >= N) continue;
      std::vector<uint64_t> row(ncols, 0);
      row[col] = ring_.from_digit(1, k);
      sink(std::move(row));
    }
  }

  long long degree_length(int i) {
    const int N = ring_.precision();
    int slots = C_.rank(i);
    if (slots == 0) return 0;
    int nY = slots * B_.size();

    ChainEchelon E1(ring_, nY);
    if (i > C_.lo && C_.rank(i - 1) > 0) {
      auto cols = nf_columns(i - 1);
      for (const auto& col : cols) {
        int mindeg = D_;
        for (const auto& e : col) mindeg = std::min(mindeg, min_term_degree(e));
        for (int u = 0; u < B_.size(); ++u) {
          if (B_.weight(u) + mindeg >= D_) continue;
          auto row = shifted_column(col, B_.at(u), slots);
          E1.insert(std::move(row));
        }
      }
    }
    place_relations(slots, [&](std::vector<uint64_t>&& r) { E1.insert(std::move(r)); });
    place_weight_layer(slots, W_, [&](std::vector<uint64_t>&& r) { E1.insert(std::move(r)); });

    std::vector<std::vector<uint64_t>> kernel;
    if (i < C_.hi() && C_.rank(i + 1) > 0) {
      int slots_z = C_.rank(i + 1);
      int nZ = slots_z * B_.size();
      TaggedEchelon T(ring_, nZ, nY);
      place_relations(slots_z,
                      [&](std::vector<uint64_t>&& r) { T.insert_untagged(r); });
      place_weight_layer(slots_z, W_,
                         [&](std::vector<uint64_t>&& r) { T.insert_untagged(r); });
      auto cols = nf_columns(i);
      for (int s = 0; s < slots; ++s) {
        for (int u = 0; u < B_.size(); ++u) {
          auto z = shifted_column(cols[s], B_.at(u), slots_z);
          std::vector<uint64_t> tag(nY, 0);
          tag[(size_t)s * B_.size() + u] = ring_.one();
          T.insert(std::move(z), std::move(tag));
        }
      }
      kernel = T.kernel_tags();
    } else {
      for (int col = 0; col < nY; ++col) {
        std::vector<uint64_t> e(nY, 0);
        e[col] = ring_.one();
        kernel.push_back(std::move(e));
      }
    }

    ChainEchelon E2 = E1.clone();
    for (const auto& k : kernel) E2.insert(k);

    std::map<int, long long> profile;
    for (int c = W_ - 1; c >= 1; --c) {
      for (int col = 0; col < nY; ++col) {
        int w = B_.weight(col % B_.size());
        if (w > c || c - w >= N) continue;
        std::vector<uint64_t> row(nY, 0);
        row[col] = ring_.from_digit(1, c - w);
        E1.insert(row);
        E2.insert(std::move(row));
      }
      profile[c] = E2.span_length() - E1.span_length();
    }
    return plateau_value(profile, i);
  }

  long long plateau_value(const std::map<int, long long>& profile,
                          int degree) const {
    int cmax = W_ - 3;  // two guard sizes at the top are discarded
    int best_len = 0, best_c = 0;
    long long best_val = 0;
    int c = cmax;
    while (c >= 1) {
      long long val = profile.at(c);
      int c2 = c;
      while (c2 - 1 >= 1 && profile.at(c2 - 1) == val) --c2;
      int len = c - c2 + 1;
      if (len > best_len) {
        best_len = len;
        best_c = c;
        best_val = val;
      }
      c = c2 - 1;
    }
    (void)best_c;
    if (best_len < 3)
      throw NotFiniteLengthError(
          "no homology plateau below the horizon; the module may not have "
          "finite length at this precision",
          degree);
    return best_val;
  }

  const FreeComplex& C_;
  BaseRing ring_;
  int D_;
  MonomialBasis B_;
  std::optional<MacaulayTable> rel_;
  int W_ = 0;
  std::vector<std::vector<uint64_t>> scalar_rel_rows_;
};

}  // namespace

std::map<int, long long> homology_lengths(const FreeComplex& C) {
  for (const auto& M : C.diffs)
    for (const auto& row : M)
      for (const auto& e : row) {
        if (!(e.ring() == C.base.ring) || e.num_vars() != C.base.num_vars)
          throw ShapeError("complex entries do not match the ambient ring");
        if (e.degree_bound() < C.base.degree_bound)
          throw PrecisionError("entry degree bound is below the ambient bound");
      }
  return HomologyEngine(C).run();
}

long long euler_characteristic(const std::map<int, long long>& lengths) {
  long long chi = 0;
  for (const auto& [deg, len] : lengths) chi += (deg & 1) ? -len : len;
  return chi;
}

}  // namespace milnorkit
