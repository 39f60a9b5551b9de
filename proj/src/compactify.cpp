#include "milnorkit/compactify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>
#include <utility>

#include "milnorkit/errors.hpp"
#include "milnorkit/rng.hpp"

namespace milnorkit {

void FieldPoly::add_term(const GaloisField& F, const Monomial& m, uint64_t c) {
  if (static_cast<int>(m.size()) != num_vars) {
    throw ShapeError("exponent width does not match the variable block");
  }
  auto it = terms.find(m);
  uint64_t v = F.add(it == terms.end() ? 0 : it->second, c);
  if (v == 0) {
    if (it != terms.end()) terms.erase(it);
    return;
  }
  terms[m] = v;
}

uint64_t FieldPoly::eval(const GaloisField& F,
                         const std::vector<uint64_t>& pt) const {
  if (static_cast<int>(pt.size()) != num_vars) {
    throw ShapeError("point width does not match the variable block");
  }
  uint64_t acc = 0;
  for (const auto& [m, c] : terms) {
    uint64_t t = c;
    for (int j = 0; j < num_vars && t != 0; ++j) {
      if (m[j] != 0) t = F.mul(t, F.pow(pt[j], m[j]));
    }
    acc = F.add(acc, t);
  }
  return acc;
}

FieldPoly FieldPoly::partial(const GaloisField& F, int j) const {
  if (j < 0 || j >= num_vars) throw ShapeError("derivative index out of range");
  FieldPoly out{num_vars, {}};
  for (const auto& [m, c] : terms) {
    if (m[j] == 0) continue;
    Monomial d = m;
    d[j] -= 1;
    out.add_term(F, d, F.mul(c, F.from_int(m[j])));
  }
  return out;
}

FieldPoly FieldPoly::mapped(const std::vector<uint64_t>& table) const {
  FieldPoly out{num_vars, {}};
  for (const auto& [m, c] : terms) out.terms[m] = table.at(c);
  return out;
}

int FieldPoly::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms) d = std::max(d, total_degree(m));
  return d;
}

namespace {

void collect_monomials(int vars, int left, Monomial& cur,
                       std::vector<Monomial>& out) {
  if (static_cast<int>(cur.size()) == vars - 1) {
    cur.push_back(left);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int e = 0; e <= left; ++e) {
    cur.push_back(e);
    collect_monomials(vars, left - e, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Monomial> monomials_of_degree(int vars, int degree) {
  std::vector<Monomial> out;
  if (vars <= 0) {
    if (degree == 0) out.push_back({});
    return out;
  }
  if (degree < 0) return out;
  Monomial cur;
  collect_monomials(vars, degree, cur, out);
  std::sort(out.begin(), out.end(), GradedLexLess());
  return out;
}

namespace {

void check_family(const PerturbationFamily& fam) {
  if (!fam.field) throw ShapeError("the family needs a coefficient field");
  if (fam.n < 0 || fam.r < 1) {
    throw ShapeError("the family needs n >= 0 and r >= 1");
  }
  int m = fam.n + fam.r;
  if (static_cast<int>(fam.fbar.size()) != fam.r) {
    throw ShapeError("expected r reduced equations");
  }
  if (static_cast<int>(fam.coeffs.size()) != fam.r) {
    throw ShapeError("expected r coefficient blocks");
  }
  for (const FieldPoly& f : fam.fbar) {
    if (f.num_vars != m) {
      throw ShapeError("reduced equations live in the n+r affine variables");
    }
    if (f.degree() > fam.lambda) {
      throw DomainError(
          "lambda must be at least the degree of the reduced equations");
    }
  }
  for (const auto& block : fam.coeffs) {
    for (const auto& [mon, c] : block) {
      if (static_cast<int>(mon.size()) != m) {
        throw ShapeError("perturbation monomials live in the n+r variables");
      }
      int d = total_degree(mon);
      if (d != fam.lambda + 1 && d != fam.lambda + 2) {
        throw ShapeError("perturbation degrees are lambda+1 and lambda+2");
      }
      if (c >= fam.field->size()) {
        throw DomainError("coefficient is not a packed field element");
      }
    }
  }
}

// Columns of the chart Jacobian at a pivot-normalized point: every
// homogeneous coordinate except the pivot.
int field_rank(const GaloisField& F, std::vector<std::vector<uint64_t>> M) {
  int rows = static_cast<int>(M.size());
  int cols = rows == 0 ? 0 : static_cast<int>(M[0].size());
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r2 = rank; r2 < rows; ++r2) {
      if (M[r2][c] != 0) {
        piv = r2;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(M[rank], M[piv]);
    uint64_t inv = F.inverse(M[rank][c]);
    for (int r2 = rank + 1; r2 < rows; ++r2) {
      if (M[r2][c] == 0) continue;
      uint64_t f = F.mul(M[r2][c], inv);
      for (int c2 = c; c2 < cols; ++c2) {
        M[r2][c2] = F.sub(M[r2][c2], F.mul(f, M[rank][c2]));
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

HomogenizedSystem homogenize(const PerturbationFamily& fam) {
  check_family(fam);
  const GaloisField& F = *fam.field;
  int m = fam.n + fam.r;
  HomogenizedSystem H{fam.field, fam.n, fam.r, fam.lambda, {}};
  for (int i = 0; i < fam.r; ++i) {
    FieldPoly form{m + 1, {}};
    auto lift = [&](const Monomial& mon, uint64_t c) {
      Monomial e(m + 1, 0);
      e[0] = fam.lambda + 2 - total_degree(mon);
      for (int j = 0; j < m; ++j) e[j + 1] = mon[j];
      form.add_term(F, e, c);
    };
    for (const auto& [mon, c] : fam.fbar[i].terms) lift(mon, c);
    for (const auto& [mon, c] : fam.coeffs[i]) lift(mon, c);
    H.forms.push_back(std::move(form));
  }
  return H;
}

std::vector<TruncatedSeries> dehomogenize_at_y(const HomogenizedSystem& H,
                                               const BaseRing& ring,
                                               int degree_bound) {
  if (!H.field) throw ShapeError("the system needs a coefficient field");
  if (H.field->degree() != 1) {
    throw DomainError(
        "series coefficients live in the prime field; the family was drawn "
        "over a proper extension");
  }
  if (ring.p() != H.field->p()) {
    throw DomainError("the base ring characteristic does not match the field");
  }
  int m = H.n + H.r;
  std::vector<TruncatedSeries> out;
  for (const FieldPoly& form : H.forms) {
    TruncatedSeries s(ring, m, degree_bound);
    for (const auto& [e, c] : form.terms) {
      Monomial mon(e.begin() + 1, e.end());
      s.add_term(mon, ring.from_digit(c, 0));
    }
    out.push_back(std::move(s));
  }
  return out;
}

ScanReport smoothness_scan(const HomogenizedSystem& H, int ext_degree_max) {
  if (!H.field) throw ShapeError("the system needs a coefficient field");
  if (static_cast<int>(H.forms.size()) != H.r) {
    throw ShapeError("expected r forms");
  }
  if (ext_degree_max < 1) {
    throw DomainError("the scan needs at least one extension degree");
  }
  const GaloisField& F = *H.field;
  int m = H.n + H.r;
  for (const FieldPoly& f : H.forms) {
    if (f.num_vars != m + 1) {
      throw ShapeError("forms live in the m+1 homogeneous variables");
    }
  }

  std::vector<std::vector<FieldPoly>> jac(H.r);
  for (int i = 0; i < H.r; ++i) {
    for (int j = 0; j <= m; ++j) jac[i].push_back(H.forms[i].partial(F, j));
  }

  ScanReport rep;
  rep.ext_degree_max = ext_degree_max;
  for (int e = 1; e <= ext_degree_max; ++e) {
    std::optional<GaloisField> ext_store;
    const GaloisField* Fe = &F;
    std::vector<FieldPoly> forms_e;
    std::vector<std::vector<FieldPoly>> jac_e;
    if (e == 1) {
      forms_e = H.forms;
      jac_e = jac;
    } else {
      ext_store.emplace(F.p(), static_cast<int>(F.degree()) * e);
      Fe = &*ext_store;
      std::vector<uint64_t> table = F.embedding_table(*Fe);
      for (const FieldPoly& f : H.forms) forms_e.push_back(f.mapped(table));
      jac_e.assign(H.r, {});
      for (int i = 0; i < H.r; ++i) {
        for (int j = 0; j <= m; ++j) jac_e[i].push_back(jac[i][j].mapped(table));
      }
    }
    uint64_t big = Fe->size();
    uint64_t q = F.size();

    // Frobenius exponents q^d over the proper subextensions F_{q^d}; a point
    // fixed by any of them was already visited at level d.
    std::vector<uint64_t> frob;
    for (int d = 1; d < e; ++d) {
      if (e % d != 0) continue;
      uint64_t qd = 1;
      for (int i = 0; i < d; ++i) qd *= q;
      frob.push_back(qd);
    }

    std::vector<uint64_t> pt(m + 1);
    for (int pv = 0; pv <= m; ++pv) {
      int free_vars = m - pv;
      std::vector<uint64_t> ctr(free_vars, 0);
      bool done = false;
      while (!done) {
        for (int j = 0; j < pv; ++j) pt[j] = 0;
        pt[pv] = 1;
        for (int j = 0; j < free_vars; ++j) pt[pv + 1 + j] = ctr[j];

        bool is_y = pv == 0;
        if (is_y) {
          for (int j = 1; j <= m; ++j) {
            if (pt[j] != 0) {
              is_y = false;
              break;
            }
          }
        }
        bool minimal = true;
        for (uint64_t qd : frob) {
          bool fixed = true;
          for (int j = 0; j <= m && fixed; ++j) {
            fixed = Fe->pow(pt[j], qd) == pt[j];
          }
          if (fixed) {
            minimal = false;
            break;
          }
        }
        if (!is_y && minimal) {
          ++rep.points_scanned;
          bool on = true;
          for (int i = 0; i < H.r && on; ++i) {
            on = forms_e[i].eval(*Fe, pt) == 0;
          }
          if (on) {
            ++rep.points_on_variety;
            std::vector<std::vector<uint64_t>> M(
                H.r, std::vector<uint64_t>(m, 0));
            for (int i = 0; i < H.r; ++i) {
              int c = 0;
              for (int j = 0; j <= m; ++j) {
                if (j == pv) continue;
                M[i][c++] = jac_e[i][j].eval(*Fe, pt);
              }
            }
            int rk = field_rank(*Fe, std::move(M));
            if (rk < H.r) rep.bad_points.push_back(BadPoint{e, pt, rk});
          }
        }

        done = true;
        for (int j = free_vars - 1; j >= 0; --j) {
          if (++ctr[j] < big) {
            done = false;
            break;
          }
          ctr[j] = 0;
        }
      }
    }
  }
  return rep;
}

namespace {

TruncatedSeries residue_series(const BaseRing& fiber, const BaseRing& src,
                               const TruncatedSeries& f) {
  TruncatedSeries out(fiber, f.num_vars(), f.degree_bound());
  for (const auto& [m, c] : f.terms()) out.add_term(m, src.digit(c, 0));
  return out;
}

}  // namespace

SampleReport sample_good(const Germ& g, const SamplerConfig& cfg) {
  check_shape(g);
  if (cfg.samples < 1) throw DomainError("the sampler needs at least one sample");
  if (cfg.field_degree < 1) {
    throw DomainError("the coefficient field degree must be positive");
  }
  if (cfg.ext_degree_max < 1) {
    throw DomainError("the scan needs at least one extension degree");
  }

  BaseRing fiber(RingModel::EqChar, g.base.p(), 1);
  Germ fg{fiber, g.n, g.r, g.degree_bound, g.variables, {}};
  for (const TruncatedSeries& f : g.f) {
    fg.f.push_back(residue_series(fiber, g.base, f));
  }

  SampleReport rep;
  rep.samples = cfg.samples;
  rep.fiber_mu = milnor_number(fg).mu;
  long long lam = 3 * rep.fiber_mu;
  if (cfg.lambda > lam) lam = cfg.lambda;
  rep.lambda = static_cast<int>(lam);

  auto field =
      std::make_shared<const GaloisField>(g.base.p(), cfg.field_degree);
  int m = g.n + g.r;

  PerturbationFamily tpl;
  tpl.field = field;
  tpl.n = g.n;
  tpl.r = g.r;
  tpl.lambda = rep.lambda;
  for (const TruncatedSeries& f : fg.f) {
    FieldPoly fb{m, {}};
    for (const auto& [mon, c] : f.terms()) fb.add_term(*field, mon, c);
    tpl.fbar.push_back(std::move(fb));
  }
  tpl.coeffs.assign(g.r, {});
  check_family(tpl);

  std::vector<Monomial> mons = monomials_of_degree(m, rep.lambda + 1);
  for (Monomial& mo : monomials_of_degree(m, rep.lambda + 2)) {
    mons.push_back(std::move(mo));
  }

  // One substream per sample index, consumed in the canonical coefficient
  // order: equation index ascending, then the degree-(lambda+1) block, then
  // the degree-(lambda+2) block, graded-lex within each.
  auto draw = [&](long long k) {
    PerturbationFamily fam = tpl;
    SplitMix64 s = substream(cfg.seed, static_cast<uint64_t>(k));
    for (int i = 0; i < g.r; ++i) {
      for (const Monomial& mo : mons) {
        uint64_t c = s.below(field->size());
        if (c != 0) fam.coeffs[i][mo] = c;
      }
    }
    return fam;
  };

  int threads = cfg.threads;
  if (threads <= 0) {
    if (const char* env = std::getenv("MILNORKIT_THREADS")) {
      threads = std::atoi(env);
    }
  }
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  if (static_cast<long long>(threads) > cfg.samples) {
    threads = static_cast<int>(cfg.samples);
  }

  std::vector<ScanReport> scans(cfg.samples);
  std::vector<std::exception_ptr> errs(threads);
  auto worker = [&](int w) {
    try {
      for (long long k = w; k < cfg.samples; k += threads) {
        scans[k] = smoothness_scan(homogenize(draw(k)), cfg.ext_degree_max);
      }
    } catch (...) {
      errs[w] = std::current_exception();
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (std::thread& t : pool) t.join();
  }
  for (std::exception_ptr& ep : errs) {
    if (ep) std::rethrow_exception(ep);
  }

  long long first_bad = -1;
  for (long long k = 0; k < cfg.samples; ++k) {
    if (scans[k].smooth_away_from_y()) {
      if (rep.first_good_sample < 0) {
        rep.first_good_sample = k;
        rep.good_found = true;
      }
    } else {
      ++rep.failures;
      if (first_bad < 0) first_bad = k;
    }
  }
  if (first_bad >= 0) rep.bad_points = scans[first_bad].bad_points;

  {
    std::ostringstream os;
    os << "smoothness certified over extensions of degree at most "
       << cfg.ext_degree_max << " only";
    rep.notes.push_back(os.str());
  }

  if (rep.good_found) {
    PerturbationFamily good = draw(rep.first_good_sample);
    if (cfg.field_degree == 1) {
      std::vector<TruncatedSeries> comps =
          dehomogenize_at_y(homogenize(good), fiber, rep.lambda + 3);
      Germ at_y{fiber, g.n, g.r, rep.lambda + 3, g.variables, std::move(comps)};
      rep.mu_preserved = milnor_number(at_y).mu == rep.fiber_mu;
    } else {
      rep.notes.push_back(
          "mu comparison skipped: series coefficients live in the prime field");
    }
    rep.good_family = std::move(good);
  }
  return rep;
}

DeterminantalCount determinantal_codim_count(const GaloisField& F, int n,
                                             int r, long long cap) {
  if (n < 0 || r < 1) throw DomainError("the census needs n >= 0 and r >= 1");
  if (cap < 1) throw DomainError("the enumeration cap must be positive");
  DeterminantalCount out;
  out.rows = n + r;
  out.cols = r;
  out.q = F.size();
  out.theoretical_codim = n + 1;

  int cells = out.rows * out.cols;
  unsigned long long space = 1;
  bool big = false;
  for (int i = 0; i < cells; ++i) {
    if (space > static_cast<unsigned long long>(cap)) {
      big = true;
      break;
    }
    space *= F.size();
  }
  if (space > static_cast<unsigned long long>(cap)) big = true;
  out.exact = !big;

  std::vector<std::vector<uint64_t>> M(out.rows,
                                       std::vector<uint64_t>(out.cols, 0));
  if (out.exact) {
    out.total = space;
    std::vector<uint64_t> digitv(cells, 0);
    for (;;) {
      for (int i = 0; i < cells; ++i) M[i / out.cols][i % out.cols] = digitv[i];
      if (field_rank(F, M) < out.cols) ++out.deficient;
      int j = cells - 1;
      while (j >= 0 && ++digitv[j] == F.size()) digitv[j--] = 0;
      if (j < 0) break;
    }
  } else {
    long long draws = std::min<long long>(cap, 2000000);
    out.total = static_cast<unsigned long long>(draws);
    SplitMix64 s = substream(0x64657463ULL, F.size() * 1000003ULL +
                                                static_cast<uint64_t>(cells));
    for (long long t = 0; t < draws; ++t) {
      for (int i = 0; i < cells; ++i) {
        M[i / out.cols][i % out.cols] = s.below(F.size());
      }
      if (field_rank(F, M) < out.cols) ++out.deficient;
    }
  }

  if (out.deficient == 0) {
    out.observed_codim = std::numeric_limits<double>::infinity();
    out.ci_halfwidth = 0.0;
    return out;
  }
  double phat = static_cast<double>(out.deficient) /
                static_cast<double>(out.total);
  double lq = std::log(static_cast<double>(F.size()));
  out.observed_codim = -std::log(phat) / lq;
  if (!out.exact) {
    double se = std::sqrt(phat * (1.0 - phat) /
                          static_cast<double>(out.total));
    out.ci_halfwidth = 1.96 * se / (phat * lq);
  }
  return out;
}

IncidenceCheck incidence_fiber_dim_check(const PerturbationFamily& tpl,
                                         const std::vector<uint64_t>& z,
                                         long long cap) {
  PerturbationFamily fixed = tpl;
  for (auto& blk : fixed.coeffs) blk.clear();
  check_family(fixed);
  const GaloisField& F = *fixed.field;
  int m = fixed.n + fixed.r;
  int r = fixed.r;

  if (static_cast<int>(z.size()) != m + 1) {
    throw ShapeError("z needs n+r+1 homogeneous coordinates");
  }
  bool is_y = z[0] != 0;
  for (int j = 1; j <= m && is_y; ++j) is_y = z[j] == 0;
  if (is_y) {
    throw DomainError("the incidence fibre is only defined away from the "
                      "marked point");
  }
  if (z[0] != 0) {
    throw DomainError("the fibre comparison is calibrated at coordinate "
                      "points on the hyperplane at infinity");
  }
  int ell = -1;
  for (int j = 1; j <= m; ++j) {
    if (z[j] == 0) continue;
    if (ell >= 0) {
      throw DomainError("the fibre comparison is calibrated at coordinate "
                        "points on the hyperplane at infinity");
    }
    ell = j;
  }
  if (ell < 0) throw DomainError("z must be a projective point");
  for (uint64_t zj : z) {
    if (zj >= F.size()) {
      throw DomainError("coordinate is not a packed field element");
    }
  }
  std::vector<uint64_t> zz(m + 1, 0);
  zz[ell] = 1;

  HomogenizedSystem G = homogenize(fixed);

  IncidenceCheck out;
  out.chi_all_zero = true;
  std::vector<uint64_t> gval(r, 0);
  std::vector<std::vector<uint64_t>> gjac(r, std::vector<uint64_t>(m, 0));
  for (int i = 0; i < r; ++i) {
    gval[i] = G.forms[i].eval(F, zz);
    int c = 0;
    for (int j = 0; j <= m; ++j) {
      if (j == ell) continue;
      gjac[i][c] = G.forms[i].partial(F, j).eval(F, zz);
      if (gjac[i][c] != 0) out.chi_all_zero = false;
      ++c;
    }
  }

  std::vector<Monomial> mons = monomials_of_degree(m, fixed.lambda + 1);
  for (Monomial& mo : monomials_of_degree(m, fixed.lambda + 2)) {
    mons.push_back(std::move(mo));
  }
  long long nm = static_cast<long long>(mons.size());
  out.dim_T = static_cast<long long>(r) * nm;

  unsigned long long space = 1;
  for (long long i = 0; i < out.dim_T; ++i) {
    if (space > static_cast<unsigned long long>(cap) / F.size()) {
      throw DomainError("the family space exceeds the enumeration cap");
    }
    space *= F.size();
  }
  out.enumerated = space;

  // Per-monomial chart data at z: the lifted monomial t_0^(lambda+2-|a|) t^a,
  // its value, and its partials along every coordinate except the pivot.
  std::vector<uint64_t> mval(nm, 0);
  std::vector<std::vector<uint64_t>> mjac(nm, std::vector<uint64_t>(m, 0));
  for (long long k = 0; k < nm; ++k) {
    Monomial e(m + 1, 0);
    e[0] = fixed.lambda + 2 - total_degree(mons[k]);
    for (int j = 0; j < m; ++j) e[j + 1] = mons[k][j];
    FieldPoly mp{m + 1, {}};
    mp.add_term(F, e, 1);
    mval[k] = mp.eval(F, zz);
    int c = 0;
    for (int j = 0; j <= m; ++j) {
      if (j == ell) continue;
      mjac[k][c++] = mp.partial(F, j).eval(F, zz);
    }
  }

  std::vector<uint64_t> digitv(out.dim_T, 0);
  std::vector<std::vector<uint64_t>> M(r, std::vector<uint64_t>(m, 0));
  for (;;) {
    bool on = true;
    for (int i = 0; i < r && on; ++i) {
      uint64_t v = gval[i];
      for (long long k = 0; k < nm; ++k) {
        uint64_t c = digitv[i * nm + k];
        if (c != 0) v = F.add(v, F.mul(c, mval[k]));
      }
      on = v == 0;
    }
    if (on) {
      for (int i = 0; i < r; ++i) {
        for (int col = 0; col < m; ++col) {
          uint64_t v = gjac[i][col];
          for (long long k = 0; k < nm; ++k) {
            uint64_t c = digitv[i * nm + k];
            if (c != 0) v = F.add(v, F.mul(c, mjac[k][col]));
          }
          M[i][col] = v;
        }
      }
      if (field_rank(F, M) < r) ++out.matching;
    }
    long long j = out.dim_T - 1;
    while (j >= 0 && ++digitv[j] == F.size()) digitv[j--] = 0;
    if (j < 0) break;
  }

  DeterminantalCount det = determinantal_codim_count(F, m - r, r, cap);
  long long expo = out.dim_T - static_cast<long long>(r) * (1 + m);
  if (expo < 0) {
    throw DomainError("the family is too small for the fibre comparison");
  }
  unsigned long long scale = 1;
  for (long long i = 0; i < expo; ++i) scale *= F.size();
  out.expected = scale * det.deficient;
  out.pass = out.chi_all_zero && out.matching == out.expected;
  return out;
}

}  // namespace milnorkit
