#include "wormlab/sparsifier.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "parallel.hpp"
#include "wormlab/diagnostics.hpp"

namespace wormlab {

void SparsifyConfig::validate() const {
  if (!(lambda_l1 >= 0)) throw std::invalid_argument("sparsify: lambda must be >= 0");
  if (!(step_size > 0)) throw std::invalid_argument("sparsify: step size must be > 0");
  if (max_iters < 0) throw std::invalid_argument("sparsify: max_iters must be >= 0");
  if (!(prune_threshold >= 0)) throw std::invalid_argument("sparsify: prune threshold must be >= 0");
  if (!(fd_epsilon > 0)) throw std::invalid_argument("sparsify: fd epsilon must be > 0");
  if (t_grid.empty()) throw std::invalid_argument("sparsify: observable grid is empty");
  if (!(beta >= 0)) throw std::invalid_argument("sparsify: beta must be >= 0");
}

TargetData target_observables(const MajoranaHamiltonian& h, const SparsifyConfig& config) {
  TargetData d;
  d.n_majorana = h.n_majorana();
  d.t = config.t_grid;
  d.values = two_point_average(h, config.beta, config.t_grid, config.norm).values;
  return d;
}

double observable_loss(const MajoranaHamiltonian& candidate, const TargetData& target, const SparsifyConfig& config) {
  if (candidate.n_majorana() != target.n_majorana) throw std::invalid_argument("loss: candidate and target differ in N");
  if (target.t != config.t_grid) throw std::invalid_argument("loss: observable grid mismatch");
  auto v = two_point_average(candidate, config.beta, config.t_grid, config.norm).values;
  double s = 0;
  for (size_t k = 0; k < v.size(); ++k) s += std::norm(v[k] - target.values[k]);
  return s;
}

double loss(const MajoranaHamiltonian& candidate, const TargetData& target, const SparsifyConfig& config) {
  double l = observable_loss(candidate, target, config) + config.lambda_l1 * candidate.l1_norm();
  if (!std::isfinite(l)) throw std::runtime_error("sparsify: non-finite loss (check fd_epsilon)");
  return l;
}

MajoranaHamiltonian CandidateSet::build(const std::vector<double>& coeffs) const {
  if (coeffs.size() != monomials.size()) throw std::invalid_argument("candidate: coefficient count mismatch");
  std::vector<MajoranaTerm> terms;
  for (size_t k = 0; k < coeffs.size(); ++k)
    if (coeffs[k] != 0.0) terms.push_back({monomials[k], coeffs[k]});
  return MajoranaHamiltonian(n_majorana, q, std::move(terms));
}

std::vector<double> CandidateSet::coefficients_of(const MajoranaHamiltonian& h) const {
  std::vector<double> c(monomials.size(), 0.0);
  for (const auto& t : h.terms()) {
    bool found = false;
    for (size_t k = 0; k < monomials.size(); ++k)
      if (monomials[k] == t.monomial) { c[k] = t.coeff; found = true; break; }
    if (!found) throw std::invalid_argument("candidate: term " + t.monomial.to_string() + " not in candidate set");
  }
  return c;
}

CandidateSet all_candidates(int n, int q) {
  CandidateSet s;
  s.n_majorana = n;
  s.q = q;
  MajoranaHamiltonian dense = dense_syk(n, q, 1.0, 0);
  for (const auto& t : dense.terms()) s.monomials.push_back(t.monomial);
  return s;
}

std::vector<double> fd_gradient(const CandidateSet& set, const std::vector<double>& coeffs,
                                const std::vector<bool>& mask, const TargetData& target,
                                const SparsifyConfig& config) {
  std::vector<double> g(coeffs.size(), 0.0);
  double e = config.fd_epsilon;
  detail::parallel_for(coeffs.size(), config.threads, [&](size_t k) {
    if (!mask[k]) return;
    std::vector<double> cp = coeffs, cm = coeffs;
    cp[k] += e;
    cm[k] -= e;
    g[k] = (loss(set.build(cp), target, config) - loss(set.build(cm), target, config)) / (2 * e);
  });
  return g;
}

namespace {

int active(const std::vector<double>& c) {
  int n = 0;
  for (double v : c) n += v != 0.0;
  return n;
}

SparsifyIteration record(int iter, const MajoranaHamiltonian& h, const std::vector<double>& c,
                         const TargetData& target, const SparsifyConfig& config, double step) {
  SparsifyIteration it;
  it.iter = iter;
  it.observable_loss = observable_loss(h, target, config);
  it.l1 = h.l1_norm();
  it.loss = it.observable_loss + config.lambda_l1 * it.l1;
  it.active_terms = active(c);
  it.step = step;
  return it;
}

}  // namespace

SparsifyTrace sparsify(const MajoranaHamiltonian& target, const SparsifyConfig& config,
                       const MajoranaHamiltonian* initial) {
  config.validate();
  if (target.n_majorana() > 10) throw std::invalid_argument("sparsify: target too large (N <= 10)");
  CandidateSet set = all_candidates(target.n_majorana(), target.q());
  TargetData data = target_observables(target, config);

  std::vector<double> c;
  if (initial) {
    if (initial->n_majorana() != target.n_majorana()) throw std::invalid_argument("sparsify: initial model has wrong N");
    c = set.coefficients_of(*initial);
  } else {
    // distinct stream from dense_syk(seed) so a dense target never seeds its own fit
    std::seed_seq seq{static_cast<uint32_t>(config.seed), static_cast<uint32_t>(config.seed >> 32), 0x5a17u};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> gauss(0.0, std::sqrt(syk_variance(target.n_majorana(), target.q(), config.init_scale)));
    c.resize(set.monomials.size());
    for (double& v : c) v = gauss(rng);
  }

  SparsifyTrace trace;
  MajoranaHamiltonian h = set.build(c);
  trace.iterations.push_back(record(0, h, c, data, config, 0.0));
  double current = trace.iterations.back().loss;
  trace.status = "max_iters";

  for (int iter = 1; iter <= config.max_iters; ++iter) {
    std::vector<bool> mask(c.size());
    for (size_t k = 0; k < c.size(); ++k) mask[k] = config.reactivation || c[k] != 0.0;
    auto g = fd_gradient(set, c, mask, data, config);
    double gmax = 0;
    for (double v : g) gmax = std::max(gmax, std::abs(v));
    if (gmax < config.grad_tol) {
      trace.status = "zero_gradient";
      break;
    }
    bool accepted = false;
    double eta = config.step_size;
    for (int halving = 0; halving <= 20; ++halving, eta *= 0.5) {
      std::vector<double> next(c.size());
      for (size_t k = 0; k < c.size(); ++k) {
        double v = c[k] - eta * g[k];
        next[k] = std::abs(v) < config.prune_threshold ? 0.0 : v;
      }
      MajoranaHamiltonian hn = set.build(next);
      double l = loss(hn, data, config);
      if (l < current) {
        c = std::move(next);
        h = std::move(hn);
        current = l;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      trace.status = "line_search_exhausted";
      break;
    }
    trace.iterations.push_back(record(iter, h, c, data, config, eta));
    current = trace.iterations.back().loss;
  }
  trace.final_model = h;
  return trace;
}

}  // namespace wormlab
