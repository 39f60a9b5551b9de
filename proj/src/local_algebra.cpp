#include "milnorkit/local_algebra.hpp"

#include <algorithm>
#include <limits>

#include "milnorkit/errors.hpp"

namespace milnorkit {

namespace {

int min_term_degree(const TruncatedSeries& s) {
  int best = std::numeric_limits<int>::max();
  for (const auto& [mono, c] : s.terms()) best = std::min(best, total_degree(mono));
  return best;
}

std::string blame(int horizon, int degree_bound) {
  if (horizon >= degree_bound)
    return "no stable order below the degree bound; raise the degree bound";
  return "no stable order below the pi-adic horizon; raise the pi precision";
}

}  // namespace

LocalIdeal::LocalIdeal(std::vector<TruncatedSeries> generators)
    : ring(BaseRing(RingModel::EqChar, 2, 1)),
      num_vars(0),
      degree_bound(0),
      gens(std::move(generators)) {
  if (gens.empty()) throw ShapeError("ideal needs at least one generator");
  ring = gens[0].ring();
  num_vars = gens[0].num_vars();
  degree_bound = gens[0].degree_bound();
  for (const auto& g : gens) {
    if (!(g.ring() == ring) || g.num_vars() != num_vars)
      throw ShapeError("ideal generators live in different rings");
    degree_bound = std::min(degree_bound, g.degree_bound());
  }
}

bool LocalIdeal::gens_in_maximal_ideal() const {
  for (const auto& g : gens) {
    Monomial one(num_vars, 0);
    if (ring.is_unit(g.coeff(one))) return false;
  }
  return true;
}

MacaulayTable::MacaulayTable(const LocalIdeal& ideal)
    : ring_(ideal.ring),
      num_vars_(ideal.num_vars),
      degree_bound_(ideal.degree_bound),
      basis_(ideal.num_vars, ideal.degree_bound),
      ech_(ideal.ring, basis_.size()),
      horizon_(0) {
  for (int u = 0; u < basis_.size(); ++u) {
    for (const auto& g : ideal.gens) {
      if (basis_.weight(u) + min_term_degree(g) >= degree_bound_) continue;
      TruncatedSeries row = g.truncated(degree_bound_).shifted(basis_.at(u));
      if (row.is_zero()) continue;
      ech_.insert(vectorize(row));
    }
  }
  horizon_ = std::min(degree_bound_, absorption_order());
}

std::vector<uint64_t> MacaulayTable::vectorize(const TruncatedSeries& a) const {
  if (!(a.ring() == ring_) || a.num_vars() != num_vars_)
    throw ShapeError("series does not match the table ring");
  std::vector<uint64_t> v(basis_.size(), 0);
  for (const auto& [mono, c] : a.terms()) {
    int col = basis_.index(mono);
    if (col < 0) continue;  // beyond the table bound
    v[col] = c;
  }
  return v;
}

TruncatedSeries MacaulayTable::seriesize(const std::vector<uint64_t>& v) const {
  TruncatedSeries out(ring_, num_vars_, degree_bound_);
  for (int col = 0; col < (int)v.size(); ++col)
    if (v[col] != 0) out.add_term(basis_.at(col), v[col]);
  return out;
}

TruncatedSeries MacaulayTable::normal_form(const TruncatedSeries& a) const {
  std::vector<uint64_t> v = vectorize(a);
  ech_.reduce(v);
  return seriesize(v);
}

bool MacaulayTable::contains(const TruncatedSeries& a) const {
  return ech_.contains(vectorize(a));
}

int MacaulayTable::order_of(const std::vector<uint64_t>& v) const {
  int best = order_cap();
  for (int col = 0; col < (int)v.size(); ++col)
    if (v[col] != 0)
      best = std::min(best, basis_.weight(col) + ring_.valuation(v[col]));
  return best;
}

int MacaulayTable::absorption_order() const {
  if (ring_.is_exact_field()) return degree_bound_;
  const int N = ring_.precision();
  int h = 0;
  for (int s = 0; s < N; ++s) {
    std::vector<uint64_t> v(basis_.size(), 0);
    v[0] = ring_.from_digit(1, s);
    ech_.reduce(v);
    h = std::max(h, (N - s) + std::min(order_of(v), degree_bound_));
  }
  return h;
}

bool MacaulayTable::layer_reduces(int c) const {
  const int N = ring_.precision();
  int lo = std::max(0, c - (N - 1));
  int hi = std::min(c, degree_bound_ - 1);
  for (int a = lo; a <= hi; ++a) {
    int k = c - a;
    for (int col = basis_.degree_start(a); col < basis_.degree_start(a + 1);
         ++col) {
      std::vector<uint64_t> v(basis_.size(), 0);
      v[col] = ring_.from_digit(1, k);
      if (!ech_.contains(std::move(v))) return false;
    }
  }
  return true;
}

ColengthCertificate MacaulayTable::colength() const {
  ColengthCertificate cert;
  cert.horizon = horizon_;
  int maxw = -1;
  for (int col = 0; col < basis_.size(); ++col) {
    int v = ech_.pivot_val(col);
    cert.length += v;
    if (v > 0) {
      cert.staircase.emplace_back(basis_.at(col), v);
      maxw = std::max(maxw, basis_.weight(col) + v - 1);
    }
  }
  for (int c = maxw + 1; c < horizon_; ++c) {
    if (layer_reduces(c)) {
      cert.stable_order = c;
      return cert;
    }
  }
  throw NotFiniteLengthError(blame(horizon_, degree_bound_));
}

ModuleTable::ModuleTable(const BaseRing& ring, int num_vars, int degree_bound,
                         int slots,
                         const std::vector<TruncatedSeries>& relations)
    : ring_(ring),
      num_vars_(num_vars),
      degree_bound_(degree_bound),
      slots_(slots),
      basis_(num_vars, degree_bound),
      ech_(ring, slots * basis_.size()),
      horizon_(ring.is_exact_field()
                   ? degree_bound
                   : std::min(degree_bound, ring.precision())) {
  if (slots < 1) throw ShapeError("module needs at least one slot");
  if (!relations.empty()) {
    std::vector<TruncatedSeries> rel_cut;
    for (const auto& g : relations)
      rel_cut.push_back(g.truncated(std::min(degree_bound_, g.degree_bound())));
    MacaulayTable scalar{LocalIdeal(rel_cut)};
    horizon_ = std::min(degree_bound_, scalar.horizon());
    for (int u = 0; u < basis_.size(); ++u) {
      for (const auto& g : relations) {
        if (basis_.weight(u) + min_term_degree(g) >= degree_bound_) continue;
        TruncatedSeries prod = g.truncated(degree_bound_).shifted(basis_.at(u));
        if (prod.is_zero()) continue;
        std::vector<uint64_t> scalar_vec(basis_.size(), 0);
        for (const auto& [mono, c] : prod.terms())
          scalar_vec[basis_.index(mono)] = c;
        for (int s = 0; s < slots_; ++s) {
          std::vector<uint64_t> row(ncols(), 0);
          std::copy(scalar_vec.begin(), scalar_vec.end(),
                    row.begin() + (size_t)s * basis_.size());
          relation_rows_.push_back(row);
          ech_.insert(std::move(row));
        }
      }
    }
  }
}

void ModuleTable::add_column_lattice(
    const std::vector<TruncatedSeries>& column) {
  if ((int)column.size() != slots_) throw ShapeError("column has wrong slot count");
  for (int u = 0; u < basis_.size(); ++u) {
    std::vector<uint64_t> row(ncols(), 0);
    bool nonzero = false;
    for (int s = 0; s < slots_; ++s) {
      TruncatedSeries prod = column[s].truncated(degree_bound_).shifted(basis_.at(u));
      for (const auto& [mono, c] : prod.terms()) {
        row[(size_t)s * basis_.size() + basis_.index(mono)] = c;
        nonzero = true;
      }
    }
    if (nonzero) ech_.insert(std::move(row));
  }
}

void ModuleTable::add_vector(const std::vector<TruncatedSeries>& v) {
  ech_.insert(vectorize(v));
}

std::vector<uint64_t> ModuleTable::vectorize(
    const std::vector<TruncatedSeries>& v) const {
  if ((int)v.size() != slots_) throw ShapeError("vector has wrong slot count");
  std::vector<uint64_t> out(ncols(), 0);
  for (int s = 0; s < slots_; ++s) {
    if (!(v[s].ring() == ring_) || v[s].num_vars() != num_vars_)
      throw ShapeError("series does not match the table ring");
    for (const auto& [mono, c] : v[s].terms()) {
      int col = basis_.index(mono);
      if (col < 0) continue;
      out[(size_t)s * basis_.size() + col] = c;
    }
  }
  return out;
}

std::vector<TruncatedSeries> ModuleTable::seriesize(
    const std::vector<uint64_t>& v) const {
  std::vector<TruncatedSeries> out;
  for (int s = 0; s < slots_; ++s) {
    TruncatedSeries comp(ring_, num_vars_, degree_bound_);
    for (int col = 0; col < basis_.size(); ++col) {
      uint64_t c = v[(size_t)s * basis_.size() + col];
      if (c != 0) comp.add_term(basis_.at(col), c);
    }
    out.push_back(std::move(comp));
  }
  return out;
}

std::vector<TruncatedSeries> ModuleTable::normal_form(
    const std::vector<TruncatedSeries>& v) const {
  std::vector<uint64_t> vec = vectorize(v);
  ech_.reduce(vec);
  return seriesize(vec);
}

bool ModuleTable::contains(const std::vector<TruncatedSeries>& v) const {
  return ech_.contains(vectorize(v));
}

int ModuleTable::order_of(const std::vector<uint64_t>& v) const {
  int best = order_cap();
  for (int col = 0; col < (int)v.size(); ++col)
    if (v[col] != 0)
      best = std::min(best, basis_.weight(col % basis_.size()) +
                                ring_.valuation(v[col]));
  return best;
}

bool ModuleTable::layer_reduces(int c) const {
  const int N = ring_.precision();
  int lo = std::max(0, c - (N - 1));
  int hi = std::min(c, degree_bound_ - 1);
  for (int a = lo; a <= hi; ++a) {
    int k = c - a;
    for (int col = basis_.degree_start(a); col < basis_.degree_start(a + 1);
         ++col) {
      for (int s = 0; s < slots_; ++s) {
        std::vector<uint64_t> v(ncols(), 0);
        v[(size_t)s * basis_.size() + col] = ring_.from_digit(1, k);
        if (!ech_.contains(std::move(v))) return false;
      }
    }
  }
  return true;
}

ColengthCertificate ModuleTable::colength() const {
  ColengthCertificate cert;
  cert.horizon = horizon_;
  int maxw = -1;
  for (int col = 0; col < ncols(); ++col) {
    int v = ech_.pivot_val(col);
    cert.length += v;
    if (v > 0) {
      cert.staircase.emplace_back(basis_.at(col % basis_.size()), v);
      maxw = std::max(maxw, basis_.weight(col % basis_.size()) + v - 1);
    }
  }
  for (int c = maxw + 1; c < horizon_; ++c) {
    if (layer_reduces(c)) {
      cert.stable_order = c;
      return cert;
    }
  }
  throw NotFiniteLengthError(blame(horizon_, degree_bound_));
}

ColengthCertificate colength(const LocalIdeal& ideal) {
  return MacaulayTable(ideal).colength();
}

TruncatedSeries normal_form(const TruncatedSeries& a, const LocalIdeal& ideal) {
  return MacaulayTable(ideal).normal_form(a);
}

namespace {

TruncatedSeries det_recursive(
    const std::vector<std::vector<TruncatedSeries>>& mat,
    const std::vector<int>& rows, std::vector<int>& cols) {
  const TruncatedSeries& probe = mat[rows[0]][cols[0]];
  if (rows.size() == 1) return mat[rows[0]][cols[0]];
  TruncatedSeries acc(probe.ring(), probe.num_vars(), probe.degree_bound());
  std::vector<int> sub_rows(rows.begin() + 1, rows.end());
  for (size_t j = 0; j < cols.size(); ++j) {
    int cj = cols[j];
    std::vector<int> sub_cols;
    for (size_t t = 0; t < cols.size(); ++t)
      if (t != j) sub_cols.push_back(cols[t]);
    TruncatedSeries term =
        mat[rows[0]][cj] * det_recursive(mat, sub_rows, sub_cols);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

void subsets(int n, int k, int start, std::vector<int>& cur,
             std::vector<std::vector<int>>& out) {
  if ((int)cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<TruncatedSeries> minors(
    const std::vector<std::vector<TruncatedSeries>>& mat, int k) {
  std::vector<TruncatedSeries> out;
  if (mat.empty()) return out;
  int r = (int)mat.size();
  int m = (int)mat[0].size();
  if (k < 1 || k > r || k > m) return out;
  std::vector<std::vector<int>> row_sets, col_sets;
  std::vector<int> cur;
  subsets(r, k, 0, cur, row_sets);
  subsets(m, k, 0, cur, col_sets);
  for (const auto& rs : row_sets)
    for (auto cs : col_sets) out.push_back(det_recursive(mat, rs, cs));
  return out;
}

std::vector<std::vector<TruncatedSeries>> jacobian_matrix(
    const std::vector<TruncatedSeries>& f) {
  if (f.empty()) throw ShapeError("jacobian of an empty map");
  std::vector<std::vector<TruncatedSeries>> J;
  for (const auto& fi : f) {
    std::vector<TruncatedSeries> row;
    for (int j = 0; j < fi.num_vars(); ++j) row.push_back(fi.derivative(j));
    J.push_back(std::move(row));
  }
  return J;
}

LocalIdeal jacobian_ideal(const std::vector<TruncatedSeries>& f) {
  if (f.empty()) throw ShapeError("jacobian ideal of an empty map");
  int r = (int)f.size();
  auto J = jacobian_matrix(f);
  int bound = f[0].degree_bound() - 1;
  for (const auto& fi : f) bound = std::min(bound, fi.degree_bound() - 1);
  std::vector<TruncatedSeries> gens;
  for (const auto& fi : f) gens.push_back(fi.truncated(bound));
  for (auto& mi : minors(J, r)) gens.push_back(mi.truncated(bound));
  return LocalIdeal(std::move(gens));
}

}  // namespace milnorkit
