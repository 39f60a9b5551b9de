#include "milnorkit/series.hpp"

#include <algorithm>
#include <sstream>

namespace milnorkit {

int total_degree(const Monomial& m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}

bool GradedLexLess::operator()(const Monomial& a, const Monomial& b) const {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

TruncatedSeries::TruncatedSeries(const BaseRing& ring, int num_vars,
                                 int degree_bound)
    : ring_(ring), num_vars_(num_vars), degree_bound_(degree_bound) {
  if (num_vars < 0) throw ShapeError("negative variable count");
  if (degree_bound < 1) throw ShapeError("degree bound must be >= 1");
}

TruncatedSeries TruncatedSeries::constant(const BaseRing& ring, int num_vars,
                                          int degree_bound, uint64_t c) {
  TruncatedSeries s(ring, num_vars, degree_bound);
  s.add_term(Monomial(num_vars, 0), c);
  return s;
}

TruncatedSeries TruncatedSeries::variable(const BaseRing& ring, int num_vars,
                                          int degree_bound, int index) {
  if (index < 0 || index >= num_vars) throw ShapeError("variable index out of range");
  TruncatedSeries s(ring, num_vars, degree_bound);
  Monomial m(num_vars, 0);
  m[index] = 1;
  s.add_term(m, ring.one());
  return s;
}

uint64_t TruncatedSeries::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

void TruncatedSeries::add_term(const Monomial& m, uint64_t c) {
  if ((int)m.size() != num_vars_) throw ShapeError("monomial arity mismatch");
  for (int e : m)
    if (e < 0) throw ShapeError("negative exponent");
  if (total_degree(m) >= degree_bound_) return;
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second = ring_.add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

void TruncatedSeries::check_compatible(const TruncatedSeries& o) const {
  if (!(ring_ == o.ring_)) throw ShapeError("base ring mismatch");
  if (num_vars_ != o.num_vars_) throw ShapeError("variable count mismatch");
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
  check_compatible(o);
  TruncatedSeries out(ring_, num_vars_, std::min(degree_bound_, o.degree_bound_));
  for (auto& [m, c] : terms_) out.add_term(m, c);
  for (auto& [m, c] : o.terms_) out.add_term(m, c);
  return out;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
  check_compatible(o);
  TruncatedSeries out(ring_, num_vars_, std::min(degree_bound_, o.degree_bound_));
  for (auto& [m, c] : terms_) out.add_term(m, c);
  for (auto& [m, c] : o.terms_) out.add_term(m, ring_.neg(c));
  return out;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  check_compatible(o);
  int bound = std::min(degree_bound_, o.degree_bound_);
  TruncatedSeries out(ring_, num_vars_, bound);
  Monomial m(num_vars_, 0);
  for (auto& [ma, ca] : terms_) {
    int da = total_degree(ma);
    for (auto& [mb, cb] : o.terms_) {
      if (da + total_degree(mb) >= bound) continue;
      for (int i = 0; i < num_vars_; ++i) m[i] = ma[i] + mb[i];
      out.add_term(m, ring_.mul(ca, cb));
    }
  }
  return out;
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries out(ring_, num_vars_, degree_bound_);
  for (auto& [m, c] : terms_) out.terms_.emplace(m, ring_.neg(c));
  return out;
}

bool TruncatedSeries::operator==(const TruncatedSeries& o) const {
  return ring_ == o.ring_ && num_vars_ == o.num_vars_ &&
         degree_bound_ == o.degree_bound_ && terms_ == o.terms_;
}

TruncatedSeries TruncatedSeries::scaled(uint64_t c) const {
  TruncatedSeries out(ring_, num_vars_, degree_bound_);
  if (c == 0) return out;
  for (auto& [m, cc] : terms_) {
    uint64_t v = ring_.mul(cc, c);
    if (v) out.terms_.emplace(m, v);
  }
  return out;
}

TruncatedSeries TruncatedSeries::shifted(const Monomial& m) const {
  if ((int)m.size() != num_vars_) throw ShapeError("monomial arity mismatch");
  TruncatedSeries out(ring_, num_vars_, degree_bound_);
  Monomial mm(num_vars_, 0);
  for (auto& [ma, c] : terms_) {
    for (int i = 0; i < num_vars_; ++i) mm[i] = ma[i] + m[i];
    out.add_term(mm, c);
  }
  return out;
}

TruncatedSeries TruncatedSeries::truncated(int new_bound) const {
  if (new_bound > degree_bound_)
    throw ShapeError("cannot raise a degree bound by re-truncation");
  TruncatedSeries out(ring_, num_vars_, new_bound);
  for (auto& [m, c] : terms_) out.add_term(m, c);
  return out;
}

TruncatedSeries TruncatedSeries::widened(int new_bound) const {
  if (new_bound < degree_bound_)
    throw ShapeError("widened() does not truncate; use truncated()");
  TruncatedSeries out(ring_, num_vars_, new_bound);
  for (auto& [m, c] : terms_) out.add_term(m, c);
  return out;
}

TruncatedSeries TruncatedSeries::derivative(int var) const {
  if (var < 0 || var >= num_vars_) throw ShapeError("variable index out of range");
  if (degree_bound_ < 2) throw PrecisionError("degree bound too small to differentiate");
  TruncatedSeries out(ring_, num_vars_, degree_bound_ - 1);
  Monomial mm(num_vars_, 0);
  for (auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    mm = m;
    mm[var] -= 1;
    out.add_term(mm, ring_.mul(c, ring_.from_int(m[var])));
  }
  return out;
}

TruncatedSeries TruncatedSeries::substitute(
    const std::vector<TruncatedSeries>& images) const {
  if ((int)images.size() != num_vars_)
    throw ShapeError("need one image per variable");
  int bound = degree_bound_;
  for (auto& img : images) {
    if (!(img.ring() == ring_)) throw ShapeError("image ring mismatch");
    bound = std::min(bound, img.degree_bound());
    Monomial zero(img.num_vars(), 0);
    if (img.ring().is_unit(img.coeff(zero)))
      throw DomainError("substitution image has unit constant term");
  }
  int tvars = num_vars_ ? images[0].num_vars() : 0;
  for (auto& img : images)
    if (img.num_vars() != tvars) throw ShapeError("image variable count mismatch");

  // Power cache per variable, built lazily up to the largest exponent used.
  std::vector<std::vector<TruncatedSeries>> powers(num_vars_);
  auto power = [&](int i, int e) -> const TruncatedSeries& {
    auto& cache = powers[i];
    if (cache.empty())
      cache.push_back(TruncatedSeries::constant(ring_, tvars, bound, 1));
    while ((int)cache.size() <= e)
      cache.push_back(cache.back() * images[i].truncated(std::min(bound, images[i].degree_bound())));
    return cache[e];
  };

  TruncatedSeries out(ring_, tvars, bound);
  for (auto& [m, c] : terms_) {
    TruncatedSeries prod = TruncatedSeries::constant(ring_, tvars, bound, c);
    for (int i = 0; i < num_vars_; ++i)
      if (m[i]) prod = prod * power(i, m[i]);
    out = out + prod;
  }
  return out;
}

int TruncatedSeries::t_order() const {
  int best = order_cap();
  for (auto& [m, c] : terms_)
    best = std::min(best, total_degree(m) + ring_.valuation(c));
  return best;
}

std::string TruncatedSeries::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << ring_.to_string(c) << ")";
    for (int i = 0; i < num_vars_; ++i) {
      if (!m[i]) continue;
      os << "*";
      if (i < (int)names.size()) os << names[i];
      else os << "t" << i + 1;
      if (m[i] > 1) os << "^" << m[i];
    }
  }
  return os.str();
}

}  // namespace milnorkit
