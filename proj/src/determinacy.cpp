#include "milnorkit/determinacy.hpp"

#include <algorithm>
#include <sstream>

#include "milnorkit/errors.hpp"
#include "milnorkit/linalg.hpp"
#include "milnorkit/local_algebra.hpp"

namespace milnorkit {

namespace {

// Tagged elimination for one graded solve J * delta = target modulo (f),
// with delta restricted to coefficients of order at least `constraint`.
// Tag columns index (variable slot, basis monomial); a tagged row records
// the delta piece pi^k t^beta e_j against the image it produces.
class GradedJacobianSolver {
 public:
  GradedJacobianSolver(const ModuleTable& table,
                       const std::vector<std::vector<TruncatedSeries>>& jac,
                       int constraint)
      : table_(table),
        ring_(table.ring()),
        ech_(table.ring(), table.ncols(),
             (int)jac[0].size() * table.basis().size()) {
    const MonomialBasis& B = table.basis();
    int slots = (int)jac.size();
    int vars = (int)jac[0].size();
    for (const auto& row : table.relation_rows()) ech_.insert_untagged(row);
    for (int j = 0; j < vars; ++j) {
      for (int b = 0; b < B.size(); ++b) {
        int k = std::max(0, constraint - B.weight(b));
        uint64_t u = ring_.shift(ring_.one(), k);
        if (ring_.is_zero(u)) continue;
        std::vector<TruncatedSeries> col;
        col.reserve(slots);
        for (int i = 0; i < slots; ++i)
          col.push_back(jac[i][j].shifted(B.at(b)).scaled(u));
        std::vector<uint64_t> tag((size_t)vars * B.size(), 0);
        tag[(size_t)j * B.size() + b] = u;
        ech_.insert(table_.vectorize(col), std::move(tag));
      }
    }
  }

  // Solves for delta; empty result means the target is not in the image.
  bool solve(const std::vector<uint64_t>& target,
             std::vector<TruncatedSeries>* delta, int vars) const {
    std::vector<uint64_t> sol;
    if (!ech_.solve(target, &sol)) return false;
    if (delta) {
      const MonomialBasis& B = table_.basis();
      delta->assign(vars, TruncatedSeries(ring_, B.num_vars(),
                                          table_.degree_bound()));
      for (int j = 0; j < vars; ++j)
        for (int b = 0; b < B.size(); ++b) {
          uint64_t c = sol[(size_t)j * B.size() + b];
          if (c != 0) (*delta)[j].add_term(B.at(b), c);
        }
    }
    return true;
  }

 private:
  const ModuleTable& table_;
  BaseRing ring_;
  TaggedEchelon ech_;
};

void check_perturbation_shape(const Germ& f,
                              const std::vector<TruncatedSeries>& g) {
  check_shape(f);
  if ((int)g.size() != f.r)
    throw ShapeError("perturbation needs one series per germ component");
  for (const auto& s : g) {
    if (s.num_vars() != f.num_vars())
      throw ShapeError("perturbation must use the germ's variables");
    if (!(s.ring() == f.base))
      throw ShapeError("perturbation must live over the germ's base ring");
  }
}

std::vector<uint64_t> negated(const BaseRing& ring, std::vector<uint64_t> v) {
  for (auto& c : v) c = ring.neg(c);
  return v;
}

int residual_order(const ModuleTable& table,
                   const std::vector<TruncatedSeries>& v) {
  return table.order_of(table.vectorize(v));
}

DeterminacyRun run_at_bound(const Germ& f, const std::vector<TruncatedSeries>& g,
                            long long mu, int target, int W, bool forced) {
  int m = f.num_vars();
  std::vector<TruncatedSeries> comps_f = f.widened_components(W);
  std::vector<TruncatedSeries> comps_g;
  for (const auto& s : g) comps_g.push_back(s.widened(W));
  ModuleTable table(f.base, m, W, f.r, comps_f);

  DeterminacyRun run;
  run.mu = mu;
  run.bound = 3 * (int)mu;
  run.target_order = target;
  run.working_bound = W;
  run.unsupported = forced;
  for (int j = 0; j < m; ++j)
    run.epsilon.push_back(TruncatedSeries(f.base, m, W));

  std::vector<TruncatedSeries> images;
  for (int j = 0; j < m; ++j)
    images.push_back(TruncatedSeries::variable(f.base, m, W, j));

  auto compose = [&]() {
    std::vector<TruncatedSeries> out;
    for (const auto& s : comps_g) out.push_back(s.substitute(images));
    return table.normal_form(out);
  };

  std::vector<TruncatedSeries> residual = compose();
  int ord = residual_order(table, residual);

  int cap = 4;
  for (long long reach = mu; reach < target; reach *= 2) ++cap;

  while (ord < target) {
    if ((int)run.steps.size() >= cap)
      throw LinearSolveError(
          "correction stalled before the target order; mu may be misreported "
          "or the precision too low");
    int c = std::max<long long>(ord - mu, 2);
    std::vector<std::vector<TruncatedSeries>> jac(f.r);
    for (int i = 0; i < f.r; ++i)
      for (int j = 0; j < m; ++j)
        jac[i].push_back(comps_g[i].derivative(j).substitute(images));
    GradedJacobianSolver solver(table, jac, c);
    std::vector<TruncatedSeries> delta;
    if (!solver.solve(negated(f.base, table.vectorize(residual)), &delta, m))
      throw LinearSolveError(
          "residual is not in the constrained Jacobian image; mu may be "
          "misreported or the precision too low");
    int ord_eps = table.order_cap();
    for (int j = 0; j < m; ++j) {
      run.epsilon[j] = run.epsilon[j] + delta[j];
      images[j] = images[j] + delta[j];
      ord_eps = std::min(ord_eps, delta[j].t_order());
    }
    run.steps.push_back({(int)run.steps.size(), ord, ord_eps});
    residual = compose();
    int next = residual_order(table, residual);
    if (next <= ord)
      throw LinearSolveError("correction made no progress; precision too low");
    ord = next;
  }
  run.verified_to = ord;
  return run;
}

}  // namespace

int determinacy_bound(long long mu) {
  if (mu <= 0)
    throw DomainError("determinacy bound undefined for a smooth germ");
  return 3 * (int)mu;
}

bool check_star_inclusion(const Germ& g, int c, long long mu) {
  check_shape(g);
  if (c < 0) throw ShapeError("inclusion order must be nonnegative");
  if (mu < 0) mu = milnor_number(g).mu;
  long long q = mu + c;
  int W = std::max<long long>(
      {2 * g.total_degree(), 8, g.degree_bound, q + 4});
  if (!g.base.is_exact_field() && q >= g.base.precision())
    throw PrecisionError(
        "pi precision too small to witness the inclusion at order mu + c");

  int m = g.num_vars();
  std::vector<TruncatedSeries> comps = g.widened_components(W);
  ModuleTable table(g.base, m, W, g.r, comps);
  std::vector<std::vector<TruncatedSeries>> jac(g.r);
  for (int i = 0; i < g.r; ++i)
    for (int j = 0; j < m; ++j) jac[i].push_back(comps[i].derivative(j));
  GradedJacobianSolver solver(table, jac, c);

  const MonomialBasis& B = table.basis();
  for (int s = 0; s < g.r; ++s) {
    for (int b = 0; b < B.size(); ++b) {
      int k = std::max<long long>(0, q - B.weight(b));
      uint64_t u = g.base.shift(g.base.one(), k);
      if (g.base.is_zero(u)) continue;
      std::vector<TruncatedSeries> gen(
          g.r, TruncatedSeries(g.base, m, W));
      gen[s].add_term(B.at(b), u);
      if (!solver.solve(table.vectorize(gen), nullptr, m)) return false;
    }
  }
  return true;
}

DeterminacyRun newton_coordinate_change(const Germ& f,
                                        const std::vector<TruncatedSeries>& g,
                                        int target_order, bool force) {
  check_perturbation_shape(f, g);
  MilnorReport rep = milnor_number(f);
  if (rep.mu == 0)
    throw DomainError("determinacy bound undefined for a smooth germ");
  int bound = determinacy_bound(rep.mu);

  int probe = std::max(f.degree_bound, g[0].degree_bound());
  int jet = probe + f.base.precision();
  for (int i = 0; i < f.r; ++i)
    jet = std::min(jet,
                   (g[i].widened(probe) - f.f[i].widened(probe)).t_order());
  bool forced = false;
  if (jet < bound) {
    if (!force) {
      std::ostringstream os;
      os << "perturbation differs at order " << jet
         << " but the jet bound requires " << bound;
      throw JetBoundError(os.str());
    }
    forced = true;
  }

  int target = target_order < 0 ? 4 * bound : target_order;
  if (target < 1) throw ShapeError("target order must be positive");
  int W = std::max({f.degree_bound, g[0].degree_bound(), target + 2});
  try {
    return run_at_bound(f, g, rep.mu, target, W, forced);
  } catch (const LinearSolveError&) {
    return run_at_bound(f, g, rep.mu, target, 2 * W, forced);
  }
}

EquisingularCheck verify_equisingular(const Germ& f,
                                      const std::vector<TruncatedSeries>& g,
                                      const DeterminacyRun& run) {
  check_perturbation_shape(f, g);
  EquisingularCheck out;
  int W = std::max(run.working_bound, f.degree_bound);

  ModuleTable table(f.base, f.num_vars(), W, f.r, f.widened_components(W));
  std::vector<TruncatedSeries> images;
  for (int j = 0; j < f.num_vars(); ++j) {
    TruncatedSeries t = TruncatedSeries::variable(f.base, f.num_vars(), W, j);
    images.push_back(j < (int)run.epsilon.size() ? t + run.epsilon[j].widened(W)
                                                 : t);
  }
  std::vector<TruncatedSeries> composed;
  for (const auto& s : g) composed.push_back(s.widened(W).substitute(images));
  int ord = residual_order(table, table.normal_form(composed));
  out.residual_ok = ord >= run.verified_to;
  if (!out.residual_ok)
    out.notes.push_back("substituted perturbation only reaches order " +
                        std::to_string(ord));

  try {
    Germ gg = f;
    gg.degree_bound = g[0].degree_bound();
    gg.f = g;
    long long mu_g = milnor_number(gg).mu;
    out.mu_match = (mu_g == run.mu);
    if (!out.mu_match)
      out.notes.push_back("perturbed germ has mu " + std::to_string(mu_g) +
                          ", expected " + std::to_string(run.mu));
  } catch (const std::exception& e) {
    out.mu_match = false;
    out.notes.push_back(std::string("mu of the perturbed germ failed: ") +
                        e.what());
  }

  out.tangent_ok = true;
  for (const auto& e : run.epsilon)
    if (e.t_order() < 2) out.tangent_ok = false;
  if (!out.tangent_ok)
    out.notes.push_back("coordinate change is not tangent to the identity");
  return out;
}

}  // namespace milnorkit
