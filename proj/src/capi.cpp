#include "wormlab/wormlab.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <cstring>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "wormlab/diagnostics.hpp"
#include "wormlab/models.hpp"
#include "wormlab/noise.hpp"
#include "wormlab/protocol.hpp"
#include "wormlab/sparsifier.hpp"
#include "wormlab/table.hpp"
#include "wormlab/tfd.hpp"

struct wl_hamiltonian {
  wormlab::MajoranaHamiltonian h;
};

struct wl_table {
  wormlab::Table t;
};

using json = nlohmann::ordered_json;
using namespace wormlab;

namespace {

thread_local std::string g_error;

wl_status fail(wl_status s, const std::string& msg) {
  g_error = msg;
  return s;
}

template <class Fn>
wl_status guarded(Fn fn) {
  try {
    g_error.clear();
    fn();
    return WL_OK;
  } catch (const std::out_of_range& e) {
    return fail(WL_ERR_OUT_OF_RANGE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(WL_ERR_INVALID_ARGUMENT, e.what());
  } catch (const IoError& e) {
    return fail(WL_ERR_IO, e.what());
  } catch (const std::runtime_error& e) {
    return fail(WL_ERR_NUMERIC, e.what());
  } catch (const std::exception& e) {
    return fail(WL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(WL_ERR_INTERNAL, "unknown error");
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class T>
void need(const T* p, const char* what) {
  if (!p) throw std::invalid_argument(std::string(what) + " is null");
}

std::vector<double> vec(const double* p, size_t n, const char* what) {
  if (n > 0) need(p, what);
  return std::vector<double>(p, p + n);
}

MajoranaNorm norm_of(int v) {
  if (v == WL_NORM_PAULI) return MajoranaNorm::kPauli;
  if (v == WL_NORM_SYK) return MajoranaNorm::kSyk;
  throw std::invalid_argument("unknown majorana_norm value");
}

TfdConvention conv_of(int v) {
  if (v == WL_TFD_HALF) return TfdConvention::kHalf;
  if (v == WL_TFD_PAPER_LITERAL) return TfdConvention::kPaperLiteral;
  throw std::invalid_argument("unknown tfd_convention value");
}

NoiseKind kind_of(int v) {
  if (v == WL_NOISE_NONE) return NoiseKind::kNone;
  if (v == WL_NOISE_DEPOLARIZING) return NoiseKind::kDepolarizing;
  if (v == WL_NOISE_COHERENT) return NoiseKind::kCoherent;
  throw std::invalid_argument("unknown noise kind value");
}

ProtocolConfig protocol_of(const wl_protocol_config* c) {
  need(c, "config");
  ProtocolConfig p;
  p.mu = c->mu;
  p.t0 = c->t0;
  p.t1_grid = vec(c->t1, c->n_t1, "t1 grid");
  p.beta = c->beta;
  p.inject = {c->inject_a, c->inject_b};
  p.trotter_steps = c->trotter_steps;
  p.reuse_q_as_t = c->reuse_q_as_t != 0;
  p.norm = norm_of(c->majorana_norm);
  p.convention = conv_of(c->tfd_convention);
  p.seed = c->seed;
  p.threads = std::max(1, c->threads);
  p.validate();
  return p;
}

json config_json(const ProtocolConfig& c) {
  json j;
  j["mu"] = c.mu;
  j["t0"] = c.t0;
  j["beta"] = c.beta;
  j["inject"] = {c.inject.first, c.inject.second};
  j["mode"] = c.mode();
  j["reuse_q_as_t"] = c.reuse_q_as_t;
  j["majorana_norm"] = to_string(c.norm);
  j["tfd_convention"] = to_string(c.convention);
  return j;
}

json peak_json(const PeakSummary& p) {
  return json{{"t_peak", p.t_peak}, {"max", p.max}, {"baseline", p.baseline}};
}

json tally_json(const GateTally& g) {
  return json{{"rotations", g.rotations}, {"swaps", g.swaps}, {"cz", g.two_qubit}, {"single_qubit", g.single_qubit}};
}

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void add_curve_rows(Table& t, const TeleportationCurve& c) {
  for (size_t k = 0; k < c.t1.size(); ++k) t.add_row({c.t1[k], c.config.mu, c.nats[k], c.bits[k]});
}

}  // namespace

extern "C" {

const char* wl_version(void) { return WORMLAB_VERSION; }

const char* wl_last_error(void) { return g_error.c_str(); }

void wl_string_free(char* s) { std::free(s); }

wl_status wl_model_catalog(char** out) {
  return guarded([&] {
    need(out, "output");
    json arr = json::array();
    for (const auto& e : catalog()) {
      MajoranaHamiltonian h = e.make();
      json terms = json::array();
      for (const auto& t : h.terms()) terms.push_back({{"indices", t.monomial.indices()}, {"coeff", t.coeff}});
      arr.push_back({{"name", e.name},
                     {"description", e.description},
                     {"n_majorana", h.n_majorana()},
                     {"q", h.q()},
                     {"fully_commuting", commutativity_report(h).fully_commuting},
                     {"terms", terms}});
    }
    *out = dup(arr.dump(2));
  });
}

wl_status wl_model_named(const char* name, wl_hamiltonian** out) {
  return guarded([&] {
    need(name, "name");
    need(out, "output");
    *out = new wl_hamiltonian{catalog_model(name)};
  });
}

wl_status wl_model_dense_syk(int n, int q, double j, uint64_t seed, wl_hamiltonian** out) {
  return guarded([&] {
    need(out, "output");
    *out = new wl_hamiltonian{dense_syk(n, q, j, seed)};
  });
}

wl_status wl_model_random_commuting_variant(const wl_hamiltonian* h, uint64_t seed, wl_hamiltonian** out) {
  return guarded([&] {
    need(h, "model");
    need(out, "output");
    *out = new wl_hamiltonian{random_commuting_variant(h->h, seed)};
  });
}

wl_status wl_model_add(const wl_hamiltonian* a, const wl_hamiltonian* b, wl_hamiltonian** out) {
  return guarded([&] {
    need(a, "model a");
    need(b, "model b");
    need(out, "output");
    *out = new wl_hamiltonian{add(a->h, b->h)};
  });
}

wl_status wl_model_from_json(const char* text, wl_hamiltonian** out) {
  return guarded([&] {
    need(text, "json");
    need(out, "output");
    *out = new wl_hamiltonian{from_json(text)};
  });
}

wl_status wl_model_to_json(const wl_hamiltonian* h, char** out) {
  return guarded([&] {
    need(h, "model");
    need(out, "output");
    *out = dup(to_json(h->h));
  });
}

wl_status wl_model_info(const wl_hamiltonian* h, int* n, int* q, size_t* terms) {
  return guarded([&] {
    need(h, "model");
    if (n) *n = h->h.n_majorana();
    if (q) *q = h->h.q();
    if (terms) *terms = h->h.size();
  });
}

wl_status wl_model_commutativity(const wl_hamiltonian* h, char** out) {
  return guarded([&] {
    need(h, "model");
    need(out, "output");
    auto r = commutativity_report(h->h);
    json pairs = json::array();
    for (auto [i, j] : r.anticommuting_pairs) pairs.push_back({i, j});
    *out = dup(json{{"fully_commuting", r.fully_commuting}, {"anticommuting_pairs", pairs}}.dump());
  });
}

void wl_model_free(wl_hamiltonian* h) { delete h; }

size_t wl_table_rows(const wl_table* t) { return t ? t->t.n_rows() : 0; }

size_t wl_table_cols(const wl_table* t) { return t ? t->t.n_cols() : 0; }

const char* wl_table_column_name(const wl_table* t, size_t col) {
  if (!t || col >= t->t.n_cols()) return nullptr;
  return t->t.columns()[col].c_str();
}

wl_status wl_table_get_double(const wl_table* t, size_t row, size_t col, double* out) {
  return guarded([&] {
    need(t, "table");
    need(out, "output");
    if (row >= t->t.n_rows() || col >= t->t.n_cols()) throw std::out_of_range("table cell out of range");
    const Cell& c = t->t.rows()[row][col];
    if (auto d = std::get_if<double>(&c)) *out = *d;
    else if (auto i = std::get_if<long long>(&c)) *out = static_cast<double>(*i);
    else throw std::invalid_argument("table cell is text");
  });
}

wl_status wl_table_to_csv(const wl_table* t, char** out) {
  return guarded([&] {
    need(t, "table");
    need(out, "output");
    *out = dup(t->t.to_csv());
  });
}

wl_status wl_table_write_csv(const wl_table* t, const char* path) {
  return guarded([&] {
    need(t, "table");
    need(path, "path");
    t->t.write_csv(path);
  });
}

void wl_table_free(wl_table* t) { delete t; }

void wl_protocol_config_init(wl_protocol_config* c) {
  if (!c) return;
  ProtocolConfig d;
  c->mu = d.mu;
  c->t0 = d.t0;
  c->t1 = nullptr;
  c->n_t1 = 0;
  c->beta = d.beta;
  c->inject_a = d.inject.first;
  c->inject_b = d.inject.second;
  c->trotter_steps = d.trotter_steps;
  c->reuse_q_as_t = d.reuse_q_as_t ? 1 : 0;
  c->majorana_norm = WL_NORM_SYK;
  c->tfd_convention = WL_TFD_HALF;
  c->seed = 0;
  c->threads = 1;
}

wl_status wl_teleport(const wl_hamiltonian* h, const wl_protocol_config* c, const double* mus, size_t n_mu,
                      wl_table** table_out, char** summary_out) {
  return guarded([&] {
    need(h, "model");
    need(table_out, "table output");
    ProtocolConfig cfg = protocol_of(c);
    auto mu_list = vec(mus, n_mu, "mu list");
    auto curves = mu_sweep(h->h, cfg, mu_list);
    auto table = std::make_unique<wl_table>();
    table->t = Table({"t1", "mu", "I_PT_nats", "I_PT_bits"});
    json sum;
    sum["config"] = config_json(cfg);
    sum["curves"] = json::array();
    for (const auto& cv : curves) {
      add_curve_rows(table->t, cv);
      sum["curves"].push_back({{"mu", cv.config.mu}, {"peak", peak_json(cv.peak)}});
    }
    if (cfg.trotter_steps > 0 && !curves.empty()) sum["gates"] = tally_json(curves.front().gates);
    if (curves.size() >= 2) {
      size_t lo = 0, hi = 0;
      for (size_t k = 0; k < curves.size(); ++k) {
        if (curves[k].config.mu < curves[lo].config.mu) lo = k;
        if (curves[k].config.mu > curves[hi].config.mu) hi = k;
      }
      if (curves[lo].config.mu < 0 && curves[hi].config.mu > 0) {
        auto a = asymmetry(curves[lo], curves[hi]);
        sum["asymmetry"] = {{"mu_negative", curves[lo].config.mu},
                            {"mu_positive", curves[hi].config.mu},
                            {"negative_peak", a.negative_peak},
                            {"negative_t_peak", a.negative_t_peak},
                            {"negative_baseline", a.negative_baseline},
                            {"positive_max", a.positive_max},
                            {"delta", a.delta},
                            {"sign", a.sign}};
      }
    }
    if (summary_out) *summary_out = dup(sum.dump(2));
    *table_out = table.release();
  });
}

wl_status wl_tfd_scan(const wl_hamiltonian* h, double mu, const double* betas, size_t n_beta, int norm, int conv,
                      wl_table** table_out, char** summary_out) {
  return guarded([&] {
    need(h, "model");
    need(table_out, "table output");
    auto sys = make_doubled(h->h, norm_of(norm));
    auto scan = tfd_fidelity_scan(sys, mu, vec(betas, n_beta, "beta grid"), conv_of(conv));
    auto table = std::make_unique<wl_table>();
    table->t = Table({"beta", "fidelity"});
    for (size_t k = 0; k < scan.betas.size(); ++k) table->t.add_row({scan.betas[k], scan.fidelity[k]});
    json sum{{"beta_star", scan.beta_star},
             {"fidelity_max", scan.fidelity_max},
             {"convention", to_string(scan.convention)},
             {"mu", mu},
             {"majorana_norm", to_string(norm_of(norm))},
             {"ground_energy", scan.ground_energy}};
    if (summary_out) *summary_out = dup(sum.dump(2));
    *table_out = table.release();
  });
}

wl_status wl_winding(const wl_hamiltonian* h, const int* fermions, size_t n_f, const double* t, size_t n_t,
                     double beta, double mu_prime, int norm, int threads, wl_table** table_out, char** summary_out) {
  return guarded([&] {
    need(h, "model");
    need(table_out, "table output");
    if (n_f > 0) need(fermions, "fermion list");
    std::vector<int> fs(fermions, fermions + n_f);
    auto sys = make_doubled(h->h, norm_of(norm));
    auto reps = winding_sweep(sys, fs, vec(t, n_t, "time grid"), beta, mu_prime, std::max(1, threads));
    auto table = std::make_unique<wl_table>();
    table->t = Table({"fermion", "t", "n", "p_n", "re_q_n", "im_q_n", "W", "alpha"});
    json per = json::array();
    for (const auto& r : reps) {
      for (size_t n = 0; n < r.p.size(); ++n)
        table->t.add_row({static_cast<long long>(r.fermion), r.t, static_cast<long long>(n), r.p[n], r.q[n].real(),
                          r.q[n].imag(), r.winding, r.alpha});
      per.push_back({{"fermion", r.fermion}, {"t", r.t}, {"W", r.winding}, {"alpha", r.alpha}});
    }
    json sum{{"beta", beta}, {"mu_prime", mu_prime}, {"majorana_norm", to_string(norm_of(norm))}, {"reports", per}};
    if (summary_out) *summary_out = dup(sum.dump(2));
    *table_out = table.release();
  });
}

wl_status wl_correlators(const wl_hamiltonian* const* hs, size_t n_h, int fermion, double beta, const double* t,
                         size_t n_t, int norm, wl_table** table_out, char** summary_out) {
  return guarded([&] {
    need(table_out, "table output");
    if (n_h == 0) throw std::invalid_argument("correlators: no models given");
    need(hs, "model list");
    auto grid = vec(t, n_t, "time grid");
    std::vector<cplx> avg(grid.size(), 0.0);
    json per = json::array();
    double rev_sum = 0;
    for (size_t m = 0; m < n_h; ++m) {
      need(hs[m], "model");
      const auto& h = hs[m]->h;
      CorrelatorSeries s = fermion == 0 ? two_point_average(h, beta, grid, norm_of(norm))
                                        : two_point(h, fermion, beta, grid, norm_of(norm));
      double rev = fermion == 0 ? mean_revival_metric(h, beta, grid, norm_of(norm)) : s.revival_metric;
      rev_sum += rev;
      for (size_t k = 0; k < grid.size(); ++k) avg[k] += s.values[k] / static_cast<double>(n_h);
      per.push_back({{"model", m},
                     {"revival_metric", num(rev)},
                     {"averaged_series_revival", num(s.revival_metric)},
                     {"thermalization_time", num(s.thermalization_time)}});
    }
    auto table = std::make_unique<wl_table>();
    table->t = Table({"t", "re", "im"});
    for (size_t k = 0; k < grid.size(); ++k) table->t.add_row({grid[k], avg[k].real(), avg[k].imag()});
    json sum{{"fermion", fermion},
             {"beta", beta},
             {"majorana_norm", to_string(norm_of(norm))},
             {"models", n_h},
             {"revival_metric", num(rev_sum / n_h)},
             {"averaged_series_revival", grid.empty() ? json(nullptr) : num(revival_metric(grid, avg))},
             {"thermalization_time", num(thermalization_time(grid, avg))},
             {"per_model", per}};
    if (summary_out) *summary_out = dup(sum.dump(2));
    *table_out = table.release();
  });
}

wl_status wl_otoc(const wl_hamiltonian* const* hs, size_t n_h, int i, int j, double beta, const double* t, size_t n_t,
                  int norm, wl_table** table_out, char** summary_out) {
  return guarded([&] {
    need(table_out, "table output");
    if (n_h == 0) throw std::invalid_argument("otoc: no models given");
    need(hs, "model list");
    auto grid = vec(t, n_t, "time grid");
    std::vector<double> avg(grid.size(), 0.0);
    json per = json::array();
    for (size_t m = 0; m < n_h; ++m) {
      need(hs[m], "model");
      auto s = otoc(hs[m]->h, i, j, beta, grid, norm_of(norm));
      for (size_t k = 0; k < grid.size(); ++k) avg[k] += s.values[k] / static_cast<double>(n_h);
      per.push_back({{"model", m}, {"scrambling_time", num(s.scrambling_time)}});
    }
    auto table = std::make_unique<wl_table>();
    table->t = Table({"t", "re", "im"});
    for (size_t k = 0; k < grid.size(); ++k) table->t.add_row({grid[k], avg[k], 0.0});
    json sum{{"i", i},
             {"j", j},
             {"beta", beta},
             {"models", n_h},
             {"scrambling_time", num(scrambling_time(grid, avg))},
             {"per_model", per}};
    if (summary_out) *summary_out = dup(sum.dump(2));
    *table_out = table.release();
  });
}

void wl_sparsify_config_init(wl_sparsify_config* c) {
  if (!c) return;
  SparsifyConfig d;
  c->lambda_l1 = d.lambda_l1;
  c->step_size = d.step_size;
  c->max_iters = d.max_iters;
  c->prune_threshold = d.prune_threshold;
  c->fd_epsilon = d.fd_epsilon;
  c->beta = d.beta;
  c->grad_tol = d.grad_tol;
  c->reactivation = d.reactivation ? 1 : 0;
  c->seed = d.seed;
  c->init_scale = d.init_scale;
  c->majorana_norm = WL_NORM_SYK;
  c->threads = 1;
}

wl_status wl_sparsify(const wl_hamiltonian* target, const wl_sparsify_config* c, wl_table** trace_out,
                      wl_hamiltonian** model_out, char** summary_out) {
  return guarded([&] {
    need(target, "target");
    need(c, "config");
    need(trace_out, "trace output");
    SparsifyConfig cfg;
    cfg.lambda_l1 = c->lambda_l1;
    cfg.step_size = c->step_size;
    cfg.max_iters = c->max_iters;
    cfg.prune_threshold = c->prune_threshold;
    cfg.fd_epsilon = c->fd_epsilon;
    cfg.beta = c->beta;
    cfg.grad_tol = c->grad_tol;
    cfg.reactivation = c->reactivation != 0;
    cfg.seed = c->seed;
    cfg.init_scale = c->init_scale;
    cfg.norm = norm_of(c->majorana_norm);
    cfg.threads = std::max(1, c->threads);
    auto tr = sparsify(target->h, cfg);
    auto table = std::make_unique<wl_table>();
    table->t = Table({"iter", "loss", "l1", "active_terms"});
    for (const auto& it : tr.iterations)
      table->t.add_row({static_cast<long long>(it.iter), it.loss, it.l1, static_cast<long long>(it.active_terms)});
    const auto& first = tr.iterations.front();
    const auto& last = tr.iterations.back();
    json sum{{"status", tr.status},
             {"iterations", tr.iterations.size() - 1},
             {"candidate_terms", all_candidates(target->h.n_majorana(), target->h.q()).monomials.size()},
             {"initial_loss", first.loss},
             {"final_loss", last.loss},
             {"initial_observable_loss", first.observable_loss},
             {"final_observable_loss", last.observable_loss},
             {"final_active_terms", last.active_terms},
             {"lambda", cfg.lambda_l1},
             {"seed", cfg.seed},
             {"majorana_norm", to_string(cfg.norm)}};
    if (summary_out) *summary_out = dup(sum.dump(2));
    if (model_out) *model_out = new wl_hamiltonian{tr.final_model};
    *trace_out = table.release();
  });
}

namespace {

void add_noise_rows(Table& t, const TeleportationCurve& c, double strength, NoiseKind kind) {
  for (size_t k = 0; k < c.t1.size(); ++k) t.add_row({c.t1[k], c.config.mu, strength, std::string(to_string(kind)), c.nats[k]});
}

}  // namespace

wl_status wl_noise_run(const wl_hamiltonian* h, const wl_protocol_config* c, int kind, const double* strengths,
                       size_t n_s, const double* mus, size_t n_mu, wl_table** table_out, char** summary_out) {
  return guarded([&] {
    need(h, "model");
    need(table_out, "table output");
    ProtocolConfig cfg = protocol_of(c);
    NoiseKind nk = kind_of(kind);
    auto ss = vec(strengths, n_s, "strength list");
    auto ms = vec(mus, n_mu, "mu list");
    auto table = std::make_unique<wl_table>();
    table->t = Table({"t1", "mu", "p_or_eps", "kind", "I_PT"});
    json runs = json::array();
    double max_trace_error = 0;
    for (double mu : ms)
      for (double s : ss) {
        ProtocolConfig cc = cfg;
        cc.mu = mu;
        ChannelStats st;
        auto cv = noisy_protocol(h->h, cc, {nk, s}, &st);
        max_trace_error = std::max(max_trace_error, st.max_trace_error);
        add_noise_rows(table->t, cv, s, nk);
        runs.push_back({{"mu", mu}, {"strength", s}, {"peak", peak_json(cv.peak)}});
      }
    json sum{{"config", config_json(cfg)}, {"kind", to_string(nk)}, {"runs", runs}, {"max_trace_error", max_trace_error}};
    if (summary_out) *summary_out = dup(sum.dump(2));
    *table_out = table.release();
  });
}

wl_status wl_noise_report(const wl_hamiltonian* h, const wl_protocol_config* c, const double* p_grid, size_t n_p,
                          const double* eps_grid, size_t n_eps, wl_table** table_out, char** summary_out) {
  return guarded([&] {
    need(h, "model");
    need(table_out, "table output");
    ProtocolConfig cfg = protocol_of(c);
    auto rep = coherent_vs_incoherent_report(h->h, cfg, vec(p_grid, n_p, "p grid"), vec(eps_grid, n_eps, "eps grid"));
    auto table = std::make_unique<wl_table>();
    table->t = Table({"t1", "mu", "p_or_eps", "kind", "I_PT"});
    json rows = json::array();
    for (const auto& r : rep.rows) {
      add_noise_rows(table->t, r.negative, r.strength, r.kind);
      add_noise_rows(table->t, r.positive, r.strength, r.kind);
      rows.push_back({{"kind", to_string(r.kind)},
                      {"strength", r.strength},
                      {"negative_peak", peak_json(r.negative.peak)},
                      {"positive_peak", peak_json(r.positive.peak)},
                      {"asymmetry_preserved", r.asymmetry_preserved}});
    }
    json sum{{"config", config_json(cfg)},
             {"rows", rows},
             {"depolarizing_monotone", rep.depolarizing_monotone},
             {"coherent_peak_location_std", rep.coherent_peak_location_std},
             {"depolarizing_peak_location_std", rep.depolarizing_peak_location_std},
             {"coherent_spurious_shift", rep.coherent_spurious_shift},
             {"max_trace_error", rep.stats.max_trace_error}};
    if (summary_out) *summary_out = dup(sum.dump(2));
    *table_out = table.release();
  });
}

}  // extern "C"
