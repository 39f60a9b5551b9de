#include "milnorkit/linalg.hpp"

#include <algorithm>

#include "milnorkit/errors.hpp"

namespace milnorkit {

namespace {

void enumerate_degree(int num_vars, int degree, Monomial& scratch, int pos,
                      int remaining, std::vector<Monomial>& out) {
  if (pos == num_vars - 1) {
    scratch[pos] = remaining;
    out.push_back(scratch);
    return;
  }
  // Graded-lex descends on the leading exponent.
  for (int e = remaining; e >= 0; --e) {
    scratch[pos] = e;
    enumerate_degree(num_vars, degree, scratch, pos + 1, remaining - e, out);
  }
}

}  // namespace

MonomialBasis::MonomialBasis(int num_vars, int degree_bound)
    : num_vars_(num_vars), degree_bound_(degree_bound) {
  if (num_vars < 1) throw ShapeError("monomial basis needs at least one variable");
  if (degree_bound < 1) throw ShapeError("monomial basis needs degree bound >= 1");
  Monomial scratch(num_vars, 0);
  for (int d = 0; d < degree_bound; ++d) {
    degree_start_.push_back((int)monos_.size());
    enumerate_degree(num_vars, d, scratch, 0, d, monos_);
    // lex within a degree runs opposite to the first-exponent descent above
    std::sort(monos_.begin() + degree_start_.back(), monos_.end(),
              GradedLexLess{});
  }
  degree_start_.push_back((int)monos_.size());
  weights_.reserve(monos_.size());
  for (const Monomial& m : monos_) weights_.push_back(total_degree(m));
}

int MonomialBasis::index(const Monomial& m) const {
  int d = total_degree(m);
  if (d >= degree_bound_) return -1;
  auto lo = monos_.begin() + degree_start_[d];
  auto hi = monos_.begin() + degree_start_[d + 1];
  auto it = std::lower_bound(lo, hi, m, GradedLexLess{});
  if (it == hi || *it != m) throw ShapeError("monomial arity mismatch");
  return (int)(it - monos_.begin());
}

int MonomialBasis::degree_start(int d) const {
  if (d < 0) return 0;
  if (d >= (int)degree_start_.size()) return (int)monos_.size();
  return degree_start_[d];
}

ChainEchelon::ChainEchelon(const BaseRing& ring, int ncols)
    : ring_(ring), ncols_(ncols), pivot_row_(ncols, -1) {}

void ChainEchelon::reduce(std::vector<uint64_t>& v) const {
  for (int c = 0; c < ncols_; ++c) {
    uint64_t a = v[c];
    if (a == 0) continue;
    int ri = pivot_row_[c];
    if (ri < 0) continue;
    const Row& row = rows_[ri];
    int va = ring_.valuation(a);
    if (va < row.val) continue;  // residue below the pivot survives
    uint64_t rem = 0;
    uint64_t q = ring_.split(a, row.val, &rem);
    for (const auto& [col, x] : row.ent)
      v[col] = ring_.sub(v[col], ring_.mul(q, x));
    v[c] = rem;
  }
}

bool ChainEchelon::contains(std::vector<uint64_t> v) const {
  reduce(v);
  for (uint64_t x : v)
    if (x != 0) return false;
  return true;
}

std::vector<uint64_t> ChainEchelon::densify(const Row& r) const {
  std::vector<uint64_t> v(ncols_, 0);
  for (const auto& [col, x] : r.ent) v[col] = x;
  return v;
}

void ChainEchelon::install(int col, Row row) {
  rows_.push_back(std::move(row));
  pivot_row_[col] = (int)rows_.size() - 1;
  span_length_ += ring_.precision() - rows_.back().val;
  ++num_pivots_;
}

void ChainEchelon::insert(std::vector<uint64_t> v) {
  const int N = ring_.precision();
  std::vector<std::vector<uint64_t>> work;
  work.push_back(std::move(v));
  while (!work.empty()) {
    std::vector<uint64_t> w = std::move(work.back());
    work.pop_back();
    reduce(w);
    int c = 0;
    while (c < ncols_ && w[c] == 0) ++c;
    if (c == ncols_) continue;
    int vv = ring_.valuation(w[c]);
    // normalize the pivot entry to an exact power of pi
    uint64_t unit = ring_.split(w[c], vv, nullptr);
    uint64_t scale = ring_.inverse(unit);
    Row row;
    row.val = vv;
    for (int j = c; j < ncols_; ++j) {
      uint64_t x = ring_.mul(scale, w[j]);
      if (x != 0) row.ent.emplace_back(j, x);
    }
    int old = pivot_row_[c];
    if (old >= 0) {
      // reduction left val(w[c]) below the old pivot valuation, so w wins
      span_length_ -= N - rows_[old].val;
      --num_pivots_;
      work.push_back(densify(rows_[old]));
      rows_[old] = std::move(row);
      span_length_ += N - vv;
      ++num_pivots_;
    } else {
      install(c, std::move(row));
    }
    if (vv > 0) {
      // annihilator closure: pi^(N-v) times the new pivot row
      const Row& r = rows_[pivot_row_[c]];
      std::vector<uint64_t> ann(ncols_, 0);
      bool nonzero = false;
      for (const auto& [col, x] : r.ent) {
        uint64_t y = ring_.shift(x, N - vv);
        if (y != 0) nonzero = true;
        ann[col] = y;
      }
      if (nonzero) work.push_back(std::move(ann));
    }
  }
}

int ChainEchelon::pivot_val(int col) const {
  int ri = pivot_row_[col];
  return ri < 0 ? ring_.precision() : rows_[ri].val;
}

const std::vector<std::pair<int, uint64_t>>& ChainEchelon::row_at(
    int col) const {
  static const std::vector<std::pair<int, uint64_t>> kEmpty;
  int ri = pivot_row_[col];
  return ri < 0 ? kEmpty : rows_[ri].ent;
}

TaggedEchelon::TaggedEchelon(const BaseRing& ring, int image_cols, int tag_cols)
    : ring_(ring),
      image_cols_(image_cols),
      tag_cols_(tag_cols),
      ech_(ring, image_cols + tag_cols) {}

void TaggedEchelon::insert(std::vector<uint64_t> image,
                           std::vector<uint64_t> tag) {
  if ((int)image.size() != image_cols_ || (int)tag.size() != tag_cols_)
    throw ShapeError("tagged row has wrong shape");
  image.insert(image.end(), tag.begin(), tag.end());
  ech_.insert(std::move(image));
}

void TaggedEchelon::insert_untagged(const std::vector<uint64_t>& image) {
  insert(image, std::vector<uint64_t>(tag_cols_, 0));
}

std::vector<std::vector<uint64_t>> TaggedEchelon::kernel_tags() const {
  std::vector<std::vector<uint64_t>> out;
  for (int c = image_cols_; c < image_cols_ + tag_cols_; ++c) {
    if (ech_.pivot_val(c) >= ring_.precision()) continue;
    std::vector<uint64_t> tag(tag_cols_, 0);
    for (const auto& [col, x] : ech_.row_at(c)) tag[col - image_cols_] = x;
    out.push_back(std::move(tag));
  }
  return out;
}

bool TaggedEchelon::solve(const std::vector<uint64_t>& target,
                          std::vector<uint64_t>* solution) const {
  std::vector<uint64_t> v(target);
  if ((int)v.size() != image_cols_) throw ShapeError("solve target has wrong shape");
  v.resize(image_cols_ + tag_cols_, 0);
  ech_.reduce(v);
  for (int c = 0; c < image_cols_; ++c)
    if (v[c] != 0) return false;
  if (solution) {
    solution->assign(tag_cols_, 0);
    for (int c = 0; c < tag_cols_; ++c)
      (*solution)[c] = ring_.neg(v[image_cols_ + c]);
  }
  return true;
}

}  // namespace milnorkit
