// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracle.hpp"
#include "wormlab/diagnostics.hpp"
#include "wormlab/noise.hpp"
#include "wormlab/protocol.hpp"
#include "wormlab/sparsifier.hpp"
#include "wormlab/tfd.hpp"

using namespace wormlab;

namespace {

// pinned tolerances and frozen thresholds
constexpr double kOracleMatrixTol = 1e-12;
constexpr double kCommutatorTol = 1e-12;
constexpr double kNoiseFloor = 1e-9;
constexpr double kAsymmetryMargin = 5 * kNoiseFloor;
constexpr double kProtocolOracleTol = 1e-8;
constexpr double kNullTol = 1e-8;
constexpr double kRevivalRatio = 2.0;
constexpr double kVariantWinding = 0.85;
constexpr double kPerturbationBound = 0.10;
constexpr double kFidelityMin = 0.9;
constexpr double kAffineTol = 1e-9;
constexpr double kTrotterTol = 1e-9;
constexpr double kErasedSignal = 0.01;
constexpr double kTraceTol = 1e-9;
constexpr double kGradientRelTol = 1e-4;
constexpr double kObservableReduction = 0.5;

const int kThreads = std::max(1u, std::thread::hardware_concurrency());

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> g;
  for (int k = 0; lo + k * step <= hi + 1e-9; ++k) g.push_back(lo + k * step);
  return g;
}

double calibrated_beta() {
  auto sys = make_doubled(learned_h0());
  return tfd_fidelity_scan(sys, -12.0, log_grid(0.25, 32.0, 29)).beta_star;
}

ProtocolConfig teleport_config(std::vector<double> t1, double mu, double beta) {
  ProtocolConfig c;
  c.mu = mu;
  c.t0 = 2.8;
  c.beta = beta;
  c.t1_grid = std::move(t1);
  c.threads = kThreads;
  return c;
}

MajoranaHamiltonian random_hamiltonian(std::mt19937_64& rng, int n) {
  int q = (n >= 4 && rng() % 2) ? 4 : 2;
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<MajoranaTerm> terms;
  std::vector<std::vector<int>> seen;
  for (int k = 0; k < 6; ++k) {
    std::vector<int> all;
    for (int j = 1; j <= n; ++j) all.push_back(j);
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<int> idx(all.begin(), all.begin() + q);
    std::sort(idx.begin(), idx.end());
    if (std::find(seen.begin(), seen.end(), idx) != seen.end()) continue;
    seen.push_back(idx);
    terms.push_back({MajoranaMonomial(idx), u(rng)});
  }
  return MajoranaHamiltonian(n, q, terms);
}

void commutativity(Outcome& o) {
  bool h0 = commutativity_report(learned_h0()).fully_commuting;
  bool h6 = commutativity_report(learned_h6()).fully_commuting;
  bool n10 = commutativity_report(learned_n10_8term()).fully_commuting;
  int clashes = 0;
  auto h1 = perturbation_h1();
  auto base = learned_h0();
  for (const auto& a : h1.terms())
    for (const auto& b : base.terms()) clashes += !monomials_commute(a.monomial, b.monomial);
  o.detail << "h0 commuting=" << h0 << " h6=" << h6 << " n10_8term=" << n10 << " h1-vs-h0 anticommuting pairs=" << clashes;
  o.require(h0, "learned_h0 fully commuting");
  o.require(!h6, "learned_h6 not fully commuting");
  o.require(!n10, "learned_n10_8term not fully commuting");
  o.require(clashes >= 1, "h1 anticommutes with a term of h0");
}

void oracle_equivalence(Outcome& o) {
  std::mt19937_64 rng(21);
  double worst = 0;
  for (int rep = 0; rep < 50; ++rep) {
    int n = 2 + static_cast<int>(rng() % 4);
    auto h = random_hamiltonian(rng, n);
    auto layout = RegisterLayout::single_side(n);
    for (auto norm : {MajoranaNorm::kPauli, MajoranaNorm::kSyk}) {
      Mat m = to_matrix(h, layout, norm).matrix();
      Mat ref = oracle::hamiltonian(h, oracle::single_positions(n), (n + 1) / 2, majorana_scale(norm));
      worst = std::max(worst, (m - ref).cwiseAbs().maxCoeff());
    }
  }
  // commutes() against commutator norms on random strings up to 5 qubits
  int disagreements = 0;
  const char ops[] = "IXYZ";
  for (int rep = 0; rep < 500; ++rep) {
    int nq = 1 + static_cast<int>(rng() % 5);
    std::string a, b;
    for (int k = 0; k < nq; ++k) {
      a += ops[rng() % 4];
      b += ops[rng() % 4];
    }
    Mat ma = oracle::string_matrix(a), mb = oracle::string_matrix(b);
    bool matrix_commute = (ma * mb - mb * ma).norm() < kCommutatorTol;
    disagreements += commutes(PauliString::parse(a), PauliString::parse(b)) != matrix_commute;
  }
  o.detail << "max |H - H_oracle| = " << worst << " over 50 models; commutes() disagreements = " << disagreements << "/500";
  o.require(worst < kOracleMatrixTol, "matrix tolerance");
  o.require(disagreements == 0, "commutes agreement");
}

void teleportation_asymmetry(Outcome& o) {
  double beta = calibrated_beta();
  auto g = grid(0.0, 10.0, 0.1);
  auto neg = run_teleportation(learned_h0(), teleport_config(g, -12.0, beta));
  auto pos = run_teleportation(learned_h0(), teleport_config(g, 12.0, beta));
  auto rep = asymmetry(neg, pos);
  oracle::ProtocolInputs in;
  in.beta = beta;
  double ref = oracle::teleport(learned_h0(), in, {rep.negative_t_peak})[0];
  o.detail << "beta*=" << beta << " peak=" << rep.negative_peak << " at t1=" << rep.negative_t_peak
           << " baseline=" << rep.negative_baseline << " mu=+12 max=" << rep.positive_max
           << " |peak-oracle|=" << std::abs(rep.negative_peak - ref);
  o.require(rep.negative_peak - rep.negative_baseline >= kAsymmetryMargin, "peak above own baseline");
  o.require(rep.negative_peak - rep.positive_max >= kAsymmetryMargin, "peak above mu=+12 max");
  o.require(rep.negative_t_peak >= 1.0 && rep.negative_t_peak <= 6.0, "peak location in [1,6]");
  o.require(std::abs(rep.negative_peak - ref) < kProtocolOracleTol, "oracle peak height");
}

void null_coupling(Outcome& o) {
  auto g = grid(0.0, 10.0, 0.1);
  auto c = run_teleportation(learned_h0(), teleport_config(g, 0.0, calibrated_beta()));
  oracle::ProtocolInputs in;
  in.mu = 0.0;
  auto ref = oracle::teleport(learned_h0(), in, {0.0, 2.8, 5.0, 10.0});
  double worst = 0, ref_worst = 0;
  for (double v : c.nats) worst = std::max(worst, std::abs(v));
  for (double v : ref) ref_worst = std::max(ref_worst, std::abs(v));
  o.detail << "max |I_PT| at mu=0: " << worst << " (oracle decoupled baseline " << ref_worst << ")";
  o.require(worst < kNullTol, "null within tolerance");
  o.require(ref_worst < kNullTol, "oracle baseline null");
}

void revivals(Outcome& o) {
  auto g = grid(0.0, 30.0, 0.1);
  double h0 = mean_revival_metric(learned_h0(), 0.0, g);
  double syk = 0;
  for (uint64_t seed = 0; seed < 5; ++seed) syk += mean_revival_metric(dense_syk(10, 4, 1.0, seed), 0.0, g) / 5;
  o.detail << "revival learned_h0=" << h0 << " dense N=10 SYK mean=" << syk << " ratio=" << h0 / syk;
  o.require(h0 >= kRevivalRatio * syk, "ratio >= 2");
}

void winding(Outcome& o) {
  auto sys = make_doubled(learned_h0());
  auto w = [&](const DoubledSystem& s, int j, double t) { return size_distribution(s, j, t, 4.0).winding; };
  double w1 = w(sys, 1, 2.8), w4 = w(sys, 4, 2.8), w4l = w(sys, 4, 4.0), w7 = w(sys, 7, 2.8), w7l = w(sys, 7, 4.0);
  o.detail << "W(1,2.8)=" << w1 << " W(4,2.8)=" << w4 << " W(4,4)=" << w4l << " W(7,2.8)=" << w7 << " W(7,4)=" << w7l
           << " variants:";
  o.require(w1 > w4 && w4l > w4, "psi4 contrast");
  o.require(w1 > w7 && w7l > w7, "psi7 contrast");
  for (uint64_t seed = 0; seed < 5; ++seed) {
    double v = w(make_doubled(random_commuting_variant(learned_h0(), seed)), 1, 2.8);
    o.detail << " " << v;
    o.require(v >= kVariantWinding, "variant seed " + std::to_string(seed));
  }
}

void perturbation(Outcome& o) {
  double beta = calibrated_beta();
  auto g = grid(0.0, 10.0, 0.1);
  auto run = [&](const MajoranaHamiltonian& h) {
    return asymmetry(run_teleportation(h, teleport_config(g, -12.0, beta)),
                     run_teleportation(h, teleport_config(g, 12.0, beta)));
  };
  auto a = run(learned_h0());
  auto b = run(catalog_model("h0_plus_h1"));
  double rel = std::abs(b.negative_peak - a.negative_peak) / a.negative_peak;
  o.detail << "H0 sign=" << a.sign << " peak=" << a.negative_peak << "; H0+H1 sign=" << b.sign
           << " peak=" << b.negative_peak << " relative change=" << rel;
  o.require(a.sign == 1 && b.sign == a.sign, "ordering preserved");
  o.require(rel < kPerturbationBound, "relative change");
}

void tfd_quality(Outcome& o) {
  auto scan = tfd_fidelity_scan(make_doubled(learned_h0()), -12.0, log_grid(0.25, 32.0, 29));
  o.detail << "max fidelity=" << scan.fidelity_max << " at beta=" << scan.beta_star;
  o.require(scan.fidelity_max > kFidelityMin, "fidelity");
}

void size_sector_action(Outcome& o) {
  auto fit = eigenphase_affine_fit(make_doubled(dense_syk(5, 4, 1.0, 0)));
  o.detail << fit.monomials << " monomials, slope=" << fit.slope << " intercept=" << fit.intercept
           << " residual=" << fit.max_residual;
  o.require(fit.all_eigenvectors, "eigenvectors");
  o.require(fit.max_residual < kAffineTol, "affine residual");
}

void trotter(Outcome& o) {
  auto g = grid(0.0, 8.0, 0.5);
  auto cfg = teleport_config(g, -12.0, 0.25);
  auto exact = run_teleportation(learned_h0(), cfg);
  cfg.trotter_steps = 1;
  auto one = run_teleportation(learned_h0(), cfg);
  double d = 0;
  for (size_t k = 0; k < g.size(); ++k) d = std::max(d, std::abs(one.nats[k] - exact.nats[k]));
  o.detail << "h0 trotter(1) vs exact " << d << "; h0+h1 errors:";
  o.require(d < kTrotterTol, "commuting exactness");
  auto h = catalog_model("h0_plus_h1");
  auto g2 = grid(1.0, 5.0, 1.0);
  auto ex = run_teleportation(h, teleport_config(g2, -12.0, 0.25));
  double prev = INFINITY;
  for (int steps : {1, 2, 4, 8}) {
    auto c = teleport_config(g2, -12.0, 0.25);
    c.trotter_steps = steps;
    auto tr = run_teleportation(h, c);
    double err = 0;
    for (size_t k = 0; k < g2.size(); ++k) err = std::max(err, std::abs(tr.nats[k] - ex.nats[k]));
    o.detail << " " << err;
    o.require(err < prev, "monotone at steps=" + std::to_string(steps));
    prev = err;
  }
}

void noise(Outcome& o) {
  auto g = grid(0.0, 8.0, 0.5);
  double prev = INFINITY, trace = 0;
  o.detail << "mu=-12 peaks:";
  for (double p : {0.0, 0.001, 0.01, 0.05, 0.5}) {
    ChannelStats sn, sp;
    auto cn = teleport_config(g, -12.0, 0.25), cp = teleport_config(g, 12.0, 0.25);
    cn.trotter_steps = cp.trotter_steps = 1;
    auto neg = noisy_protocol(learned_h0(), cn, {NoiseKind::kDepolarizing, p}, &sn);
    auto pos = noisy_protocol(learned_h0(), cp, {NoiseKind::kDepolarizing, p}, &sp);
    trace = std::max({trace, sn.max_trace_error, sp.max_trace_error});
    o.detail << " p=" << p << ":" << neg.peak.max;
    o.require(neg.peak.max < prev, "monotone decay at p=" + std::to_string(p));
    prev = neg.peak.max;
    if (p > 0 && p <= 0.01) o.require(asymmetry(neg, pos).sign == 1, "sign at p=" + std::to_string(p));
    if (p == 0.5) {
      double worst = 0;
      for (double v : neg.nats) worst = std::max(worst, std::abs(v));
      for (double v : pos.nats) worst = std::max(worst, std::abs(v));
      o.detail << " (max |I_PT| " << worst << ")";
      o.require(worst < kErasedSignal, "erased at p=0.5");
    }
  }
  o.detail << " trace error=" << trace;
  o.require(trace < kTraceTol, "trace preservation");
}

void sparsifier(Outcome& o) {
  SparsifyConfig q;
  q.t_grid = {0.5, 1.5, 2.5, 3.5};
  q.lambda_l1 = 0.01;
  auto set = all_candidates(6, 4);
  std::mt19937_64 rng(8);
  std::normal_distribution<double> gauss(0, 0.3);
  std::vector<double> x(set.monomials.size());
  for (double& v : x) v = gauss(rng);
  auto data = target_observables(dense_syk(6, 4, 1.0, 1), q);
  auto grad = fd_gradient(set, x, std::vector<bool>(x.size(), true), data, q);
  double h = 1e-3, worst = 0;
  for (size_t k = 0; k < x.size(); ++k) {
    auto at = [&](double d) {
      auto y = x;
      y[k] += d;
      return loss(set.build(y), data, q);
    };
    double ref = (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
    worst = std::max(worst, std::abs(grad[k] - ref) / std::max(std::abs(ref), 1e-3));
  }
  o.require(worst < kGradientRelTol, "fd gradient");

  SparsifyConfig c;
  c.lambda_l1 = 0.005;
  c.threads = kThreads;
  auto tr = sparsify(dense_syk(8, 4, 1.0, 0), c);
  bool monotone = true;
  for (size_t k = 1; k < tr.iterations.size(); ++k) monotone &= tr.iterations[k].loss <= tr.iterations[k - 1].loss;
  const auto& first = tr.iterations.front();
  const auto& last = tr.iterations.back();
  double ratio = last.observable_loss / first.observable_loss;
  o.detail << "fd-gradient rel err=" << worst << "; dense N=8: " << tr.iterations.size() - 1 << " steps ("
           << tr.status << "), terms " << first.active_terms << "->" << last.active_terms
           << ", observable loss ratio=" << ratio;
  o.require(monotone, "loss non-increasing");
  o.require(last.active_terms < first.active_terms, "fewer active terms");
  o.require(ratio <= 1.0 - kObservableReduction, "observable loss halved");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"commutativity", commutativity},
      {"oracle-equivalence", oracle_equivalence},
      {"teleportation-asymmetry", teleportation_asymmetry},
      {"mu0-null", null_coupling},
      {"revival-contrast", revivals},
      {"winding-contrast", winding},
      {"perturbation-robustness", perturbation},
      {"tfd-quality", tfd_quality},
      {"size-sector-action", size_sector_action},
      {"trotter-consistency", trotter},
      {"noise-robustness", noise},
      {"sparsifier", sparsifier},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", name, o.detail.str().c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
