// wormlab command-line driver.  Talks to the library only through wormlab.h.
#include <wormlab/wormlab.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ApiError : std::runtime_error {
  wl_status status;
  ApiError(wl_status s, const std::string& m) : std::runtime_error(m), status(s) {}
};

void check(wl_status s) {
  if (s != WL_OK) {
    std::string msg = wl_last_error();
    if (s == WL_ERR_INVALID_ARGUMENT || s == WL_ERR_OUT_OF_RANGE) throw UsageError(msg);
    throw ApiError(s, msg);
  }
}

struct ModelDel {
  void operator()(wl_hamiltonian* h) const { wl_model_free(h); }
};
struct TableDel {
  void operator()(wl_table* t) const { wl_table_free(t); }
};
using Model = std::unique_ptr<wl_hamiltonian, ModelDel>;
using TablePtr = std::unique_ptr<wl_table, TableDel>;

std::string take(char* s) {
  std::string out = s ? s : "";
  wl_string_free(s);
  return out;
}

// start:stop:step, comma list, or a single number
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  auto num = [&](const std::string& s) {
    size_t pos = 0;
    double v = 0;
    try {
      v = std::stod(s, &pos);
    } catch (const std::exception&) {
      throw UsageError("bad number '" + s + "' in grid '" + text + "'");
    }
    if (pos != s.size() || !std::isfinite(v)) throw UsageError("bad number '" + s + "' in grid '" + text + "'");
    return v;
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string p;
    while (std::getline(ss, p, ':')) parts.push_back(p);
    if (parts.size() != 3) throw UsageError("grid '" + text + "' must be start:stop:step");
    double a = num(parts[0]), b = num(parts[1]), h = num(parts[2]);
    if (!(h > 0)) throw UsageError("grid '" + text + "' needs a positive step");
    if (b < a) throw UsageError("grid '" + text + "' has stop < start");
    for (long k = 0;; ++k) {
      double v = a + static_cast<double>(k) * h;
      if (v < b - 1e-9) {
        out.push_back(v);
      } else {
        if (std::abs(v - b) <= 1e-9) out.push_back(b);
        break;
      }
    }
    return out;
  }
  std::stringstream ss(text);
  std::string p;
  while (std::getline(ss, p, ',')) out.push_back(num(p));
  if (out.empty()) throw UsageError("empty grid");
  return out;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0) || !(hi >= lo) || n < 1) throw UsageError("log grid needs 0 < min <= max and points >= 1");
  std::vector<double> g;
  if (n == 1) return {lo};
  for (int k = 0; k < n; ++k) g.push_back(lo * std::pow(hi / lo, static_cast<double>(k) / (n - 1)));
  g.back() = hi;
  return g;
}

int parse_norm(const std::string& s) {
  if (s == "syk") return WL_NORM_SYK;
  if (s == "pauli") return WL_NORM_PAULI;
  throw UsageError("--majorana-norm must be syk or pauli");
}

int parse_convention(const std::string& s) {
  if (s == "half") return WL_TFD_HALF;
  if (s == "paper_literal") return WL_TFD_PAPER_LITERAL;
  throw UsageError("--convention must be half or paper_literal");
}

int parse_kind(const std::string& s) {
  if (s == "none") return WL_NOISE_NONE;
  if (s == "depolarizing") return WL_NOISE_DEPOLARIZING;
  if (s == "coherent") return WL_NOISE_COHERENT;
  throw UsageError("--kind must be none, depolarizing or coherent");
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string p;
  while (std::getline(ss, p, ',')) {
    size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(p, &pos);
    } catch (const std::exception&) {
      throw UsageError("bad integer '" + p + "'");
    }
    if (pos != p.size()) throw UsageError("bad integer '" + p + "'");
    out.push_back(v);
  }
  return out;
}

std::string utc_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

// Options shared by every subcommand.
struct Common {
  std::string out_dir = ".";
  std::string seed_text;
  int threads = 1;
  std::string config_file;
  uint64_t seed = 0;
};

// Model selector: catalog name, dense_syk, variant:<catalog name>, or a JSON file.
struct ModelArgs {
  std::string name;
  int n = 10;
  int q = 4;
  double j = 1.0;
};

Model load_model(const ModelArgs& m, uint64_t seed) {
  wl_hamiltonian* h = nullptr;
  if (m.name == "dense_syk") {
    check(wl_model_dense_syk(m.n, m.q, m.j, seed, &h));
  } else if (m.name.rfind("variant:", 0) == 0) {
    wl_hamiltonian* base = nullptr;
    check(wl_model_named(m.name.substr(8).c_str(), &base));
    Model b(base);
    check(wl_model_random_commuting_variant(b.get(), seed, &h));
  } else if (m.name.size() > 5 && m.name.substr(m.name.size() - 5) == ".json") {
    std::ifstream in(m.name);
    if (!in) throw UsageError("cannot read model file " + m.name);
    std::stringstream ss;
    ss << in.rdbuf();
    check(wl_model_from_json(ss.str().c_str(), &h));
  } else {
    check(wl_model_named(m.name.c_str(), &h));
  }
  return Model(h);
}

json model_json(const ModelArgs& m) {
  json j{{"model", m.name}};
  if (m.name == "dense_syk") {
    j["n"] = m.n;
    j["q"] = m.q;
    j["j"] = m.j;
  }
  return j;
}

// Collects written files; removes them unless commit() ran.
class Outputs {
 public:
  explicit Outputs(fs::path dir) : dir_(std::move(dir)) {}
  ~Outputs() {
    if (committed_) return;
    std::error_code ec;
    for (const auto& p : written_) fs::remove(p, ec);
  }
  fs::path path(const std::string& name) {
    fs::create_directories(dir_);
    fs::path p = dir_ / name;
    written_.push_back(p);
    return p;
  }
  void table(const std::string& name, const wl_table* t) { check(wl_table_write_csv(t, path(name).c_str())); }
  void text(const std::string& name, const std::string& body) {
    fs::path p = path(name);
    std::ofstream out(p, std::ios::binary);
    out << body;
    if (body.empty() || body.back() != '\n') out << '\n';
    out.close();
    if (!out) throw ApiError(WL_ERR_IO, "cannot write " + p.string());
  }
  std::vector<std::string> names() const {
    std::vector<std::string> v;
    for (const auto& p : written_) v.push_back(p.string());
    return v;
  }
  void manifest(const std::string& command, const std::vector<std::string>& argv, const json& config, uint64_t seed) {
    json m{{"command", command},
           {"argv", argv},
           {"config", config},
           {"seed", seed},
           {"version", wl_version()},
           {"timestamp", utc_now()},
           {"outputs", names()}};
    text("manifest.json", m.dump(2));
    committed_ = true;
  }

 private:
  fs::path dir_;
  std::vector<fs::path> written_;
  bool committed_ = false;
};

uint64_t resolve_seed(const std::string& text) {
  std::string s = text;
  if (s.empty()) {
    const char* env = std::getenv("WORMLAB_SEED");
    if (env && *env) s = env;
  }
  if (s.empty()) return 0;
  size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    throw UsageError("seed '" + s + "' is not a non-negative integer");
  }
  if (pos != s.size() || s[0] == '-') throw UsageError("seed '" + s + "' is not a non-negative integer");
  return v;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out_dir, "output directory");
  sub->add_option("--seed", c.seed_text, "RNG seed (falls back to WORMLAB_SEED, then 0)");
  sub->add_option("--threads", c.threads, "worker cap")->check(CLI::PositiveNumber);
  sub->add_option("--config", c.config_file, "key=value file; flags override it");
}

void add_model(CLI::App* sub, ModelArgs& m, const char* flag = "--model") {
  sub->add_option(flag, m.name, "catalog name, dense_syk, variant:<name>, or a .json file")->required();
  sub->add_option("--n", m.n, "Majorana count for dense_syk");
  sub->add_option("--q", m.q, "interaction order for dense_syk");
  sub->add_option("--j", m.j, "coupling scale for dense_syk");
}

// Splices config-file entries in as flags unless the flag already appears.
std::vector<std::string> apply_config(const std::vector<std::string>& args) {
  std::string file;
  std::set<std::string> given;
  for (size_t k = 0; k < args.size(); ++k) {
    const std::string& a = args[k];
    if (a.rfind("--", 0) != 0) continue;
    std::string key = a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2);
    given.insert(key);
    if (key == "config") {
      if (a.find('=') != std::string::npos) file = a.substr(a.find('=') + 1);
      else if (k + 1 < args.size()) file = args[k + 1];
    }
  }
  if (file.empty()) return args;
  std::ifstream in(file);
  if (!in) throw UsageError("cannot read config file " + file);
  std::vector<std::string> extra;
  std::string line;
  int ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(file + ":" + std::to_string(ln) + ": expected key=value");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (given.count(key)) continue;
    if (value == "true" || value == "false") {
      if (value == "true") extra.push_back("--" + key);
    } else {
      extra.push_back("--" + key + "=" + value);
    }
  }
  std::vector<std::string> out = args;
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

void print_summary(const std::string& s) { std::cout << s << '\n'; }

// ---- commands ----

int cmd_models(const Common& c, bool write, const std::vector<std::string>& argv) {
  std::string cat = take([] {
    char* s = nullptr;
    check(wl_model_catalog(&s));
    return s;
  }());
  print_summary(cat);
  if (write) {
    Outputs out(c.out_dir);
    out.text("models.json", cat);
    out.manifest("models", argv, json::object(), c.seed);
  }
  return 0;
}

struct TeleportArgs {
  ModelArgs model;
  std::vector<double> mus;
  double t0 = 2.8;
  std::string t1 = "0:10:0.1";
  std::string beta = "auto";
  int trotter = 0;
  bool reuse = false;
  std::string inject = "1,2";
  std::string norm = "syk";
  std::string convention = "half";
};

double resolve_beta(const wl_hamiltonian* h, const std::string& text, double mu, int norm, int conv, json& cfg) {
  if (text != "auto") {
    auto v = parse_grid(text);
    if (v.size() != 1) throw UsageError("--beta takes one number or 'auto'");
    return v[0];
  }
  auto grid = log_grid(0.25, 32.0, 29);
  wl_table* t = nullptr;
  char* s = nullptr;
  check(wl_tfd_scan(h, mu, grid.data(), grid.size(), norm, conv, &t, &s));
  TablePtr tp(t);
  json sum = json::parse(take(s));
  cfg["beta_calibration"] = {{"grid", "log 0.25..32, 29 points"}, {"mu", mu}, {"fidelity_max", sum["fidelity_max"]}};
  return sum["beta_star"].get<double>();
}

wl_protocol_config protocol_from(const TeleportArgs& a, const std::vector<double>& t1, const Common& c) {
  wl_protocol_config p;
  wl_protocol_config_init(&p);
  p.t0 = a.t0;
  p.t1 = t1.data();
  p.n_t1 = t1.size();
  auto inj = parse_ints(a.inject);
  if (inj.size() != 2) throw UsageError("--inject takes two fermion indices a,b");
  p.inject_a = inj[0];
  p.inject_b = inj[1];
  p.trotter_steps = a.trotter;
  p.reuse_q_as_t = a.reuse ? 1 : 0;
  p.majorana_norm = parse_norm(a.norm);
  p.tfd_convention = parse_convention(a.convention);
  p.seed = c.seed;
  p.threads = c.threads;
  return p;
}

json protocol_json(const TeleportArgs& a, const wl_protocol_config& p) {
  return json{{"mu", a.mus},
              {"t0", a.t0},
              {"t1", a.t1},
              {"beta", p.beta},
              {"trotter_steps", a.trotter},
              {"reuse_q_as_t", a.reuse},
              {"inject", {p.inject_a, p.inject_b}},
              {"majorana_norm", a.norm},
              {"convention", a.convention}};
}

int cmd_teleport(const Common& c, const TeleportArgs& a, const std::vector<std::string>& argv) {
  Model h = load_model(a.model, c.seed);
  auto t1 = parse_grid(a.t1);
  std::vector<double> mus = a.mus.empty() ? std::vector<double>{-12.0, 12.0} : a.mus;
  wl_protocol_config p = protocol_from(a, t1, c);
  json cfg = model_json(a.model);
  double mu_ref = mus.front();
  for (double m : mus) mu_ref = std::min(mu_ref, m);
  p.beta = resolve_beta(h.get(), a.beta, mu_ref, p.majorana_norm, p.tfd_convention, cfg);
  TeleportArgs echo = a;
  echo.mus = mus;
  cfg.update(protocol_json(echo, p));
  wl_table* t = nullptr;
  char* s = nullptr;
  check(wl_teleport(h.get(), &p, mus.data(), mus.size(), &t, &s));
  TablePtr tp(t);
  std::string sum = take(s);
  Outputs out(c.out_dir);
  out.table("teleport.csv", tp.get());
  out.text("teleport_summary.json", sum);
  out.manifest("teleport", argv, cfg, c.seed);
  print_summary(sum);
  return 0;
}

struct TfdArgs {
  ModelArgs model;
  double mu = -12.0;
  double beta_min = 0.25;
  double beta_max = 32.0;
  int points = 29;
  std::string norm = "syk";
  std::string convention = "half";
};

int cmd_tfd(const Common& c, const TfdArgs& a, const std::vector<std::string>& argv) {
  Model h = load_model(a.model, c.seed);
  auto grid = log_grid(a.beta_min, a.beta_max, a.points);
  wl_table* t = nullptr;
  char* s = nullptr;
  check(wl_tfd_scan(h.get(), a.mu, grid.data(), grid.size(), parse_norm(a.norm), parse_convention(a.convention), &t,
                    &s));
  TablePtr tp(t);
  std::string sum = take(s);
  json cfg = model_json(a.model);
  cfg.update(json{{"mu", a.mu},
                  {"beta_min", a.beta_min},
                  {"beta_max", a.beta_max},
                  {"points", a.points},
                  {"majorana_norm", a.norm},
                  {"convention", a.convention}});
  Outputs out(c.out_dir);
  out.table("tfd.csv", tp.get());
  out.text("tfd_summary.json", sum);
  out.manifest("tfd", argv, cfg, c.seed);
  print_summary(sum);
  return 0;
}

struct WindingArgs {
  ModelArgs model;
  std::string fermions = "1,2,4,7";
  std::string t = "0:6:0.2";
  double beta = 4.0;
  double mu_prime = 0.0;
  std::string norm = "syk";
};

int cmd_winding(const Common& c, const WindingArgs& a, const std::vector<std::string>& argv) {
  Model h = load_model(a.model, c.seed);
  auto fs_ = parse_ints(a.fermions);
  auto grid = parse_grid(a.t);
  wl_table* t = nullptr;
  char* s = nullptr;
  check(wl_winding(h.get(), fs_.data(), fs_.size(), grid.data(), grid.size(), a.beta, a.mu_prime, parse_norm(a.norm),
                   c.threads, &t, &s));
  TablePtr tp(t);
  std::string sum = take(s);
  json cfg = model_json(a.model);
  cfg.update(json{{"fermions", fs_}, {"t", a.t}, {"beta", a.beta}, {"mu_prime", a.mu_prime}, {"majorana_norm", a.norm}});
  Outputs out(c.out_dir);
  out.table("winding.csv", tp.get());
  out.text("winding_summary.json", sum);
  out.manifest("winding", argv, cfg, c.seed);
  print_summary(sum);
  return 0;
}

struct CorrelatorArgs {
  ModelArgs model;
  int seeds = 1;
  int fermion = 0;
  std::string t = "0:30:0.1";
  double beta = 0.0;
  std::string otoc;
  std::string norm = "syk";
};

int cmd_correlators(const Common& c, const CorrelatorArgs& a, const std::vector<std::string>& argv) {
  if (a.seeds < 1) throw UsageError("--seeds must be >= 1");
  bool random = a.model.name == "dense_syk" || a.model.name.rfind("variant:", 0) == 0;
  int count = random ? a.seeds : 1;
  std::vector<Model> models;
  std::vector<const wl_hamiltonian*> raw;
  std::vector<uint64_t> seeds;
  for (int k = 0; k < count; ++k) {
    seeds.push_back(c.seed + static_cast<uint64_t>(k));
    models.push_back(load_model(a.model, seeds.back()));
    raw.push_back(models.back().get());
  }
  auto grid = parse_grid(a.t);
  int norm = parse_norm(a.norm);
  wl_table* t = nullptr;
  char* s = nullptr;
  check(wl_correlators(raw.data(), raw.size(), a.fermion, a.beta, grid.data(), grid.size(), norm, &t, &s));
  TablePtr tp(t);
  std::string sum = take(s);
  json cfg = model_json(a.model);
  cfg.update(json{{"seeds", seeds}, {"fermion", a.fermion}, {"t", a.t}, {"beta", a.beta}, {"majorana_norm", a.norm}});
  Outputs out(c.out_dir);
  out.table("correlators.csv", tp.get());
  out.text("correlators_summary.json", sum);
  print_summary(sum);
  if (!a.otoc.empty()) {
    auto ij = parse_ints(a.otoc);
    if (ij.size() != 2) throw UsageError("--otoc takes two fermion indices i,j");
    wl_table* ot = nullptr;
    char* os = nullptr;
    check(wl_otoc(raw.data(), raw.size(), ij[0], ij[1], a.beta, grid.data(), grid.size(), norm, &ot, &os));
    TablePtr otp(ot);
    std::string osum = take(os);
    out.table("otoc.csv", otp.get());
    out.text("otoc_summary.json", osum);
    cfg["otoc"] = ij;
    print_summary(osum);
  }
  out.manifest("correlators", argv, cfg, c.seed);
  return 0;
}

struct SparsifyArgs {
  ModelArgs target;
  double lambda = 0.05;
  double step = 1.0;
  int max_iters = 60;
  double prune = 0.02;
  double fd_eps = 1e-4;
  double beta = 0.0;
  bool reactivation = false;
  double init_scale = 1.0;
  std::string norm = "syk";
};

int cmd_sparsify(const Common& c, const SparsifyArgs& a, const std::vector<std::string>& argv) {
  Model target = load_model(a.target, c.seed);
  wl_sparsify_config sc;
  wl_sparsify_config_init(&sc);
  sc.lambda_l1 = a.lambda;
  sc.step_size = a.step;
  sc.max_iters = a.max_iters;
  sc.prune_threshold = a.prune;
  sc.fd_epsilon = a.fd_eps;
  sc.beta = a.beta;
  sc.reactivation = a.reactivation ? 1 : 0;
  sc.seed = c.seed;
  sc.init_scale = a.init_scale;
  sc.majorana_norm = parse_norm(a.norm);
  sc.threads = c.threads;
  wl_table* t = nullptr;
  wl_hamiltonian* m = nullptr;
  char* s = nullptr;
  check(wl_sparsify(target.get(), &sc, &t, &m, &s));
  TablePtr tp(t);
  Model learned(m);
  std::string sum = take(s);
  char* mj = nullptr;
  check(wl_model_to_json(learned.get(), &mj));
  std::string model_text = take(mj);
  json cfg = model_json(a.target);
  cfg.update(json{{"lambda", a.lambda},
                  {"step", a.step},
                  {"max_iters", a.max_iters},
                  {"prune", a.prune},
                  {"fd_eps", a.fd_eps},
                  {"beta", a.beta},
                  {"reactivation", a.reactivation},
                  {"init_scale", a.init_scale},
                  {"majorana_norm", a.norm}});
  Outputs out(c.out_dir);
  out.table("sparsify_trace.csv", tp.get());
  out.text("sparsify_model.json", model_text);
  out.text("sparsify_summary.json", sum);
  out.manifest("sparsify", argv, cfg, c.seed);
  print_summary(sum);
  return 0;
}

struct NoiseArgs {
  TeleportArgs proto;
  std::string kind = "depolarizing";
  std::string strengths = "0,0.01,0.05";
  bool report = false;
  std::string p = "0.001,0.01,0.05,0.5";
  std::string eps = "0.01,0.05,0.1";
};

int cmd_noise(const Common& c, NoiseArgs a, const std::vector<std::string>& argv) {
  Model h = load_model(a.proto.model, c.seed);
  auto t1 = parse_grid(a.proto.t1);
  std::vector<double> mus = a.proto.mus.empty() ? std::vector<double>{-12.0, 12.0} : a.proto.mus;
  a.proto.mus = mus;
  wl_protocol_config p = protocol_from(a.proto, t1, c);
  json cfg = model_json(a.proto.model);
  double mu_ref = mus.front();
  for (double m : mus) mu_ref = std::min(mu_ref, m);
  p.beta = resolve_beta(h.get(), a.proto.beta, mu_ref, p.majorana_norm, p.tfd_convention, cfg);
  cfg.update(protocol_json(a.proto, p));
  wl_table* t = nullptr;
  char* s = nullptr;
  if (a.report) {
    auto pg = parse_grid(a.p), eg = parse_grid(a.eps);
    p.mu = mu_ref;
    cfg.update(json{{"report", true}, {"p", a.p}, {"eps", a.eps}});
    check(wl_noise_report(h.get(), &p, pg.data(), pg.size(), eg.data(), eg.size(), &t, &s));
  } else {
    auto st = parse_grid(a.strengths);
    cfg.update(json{{"kind", a.kind}, {"strengths", a.strengths}});
    check(wl_noise_run(h.get(), &p, parse_kind(a.kind), st.data(), st.size(), mus.data(), mus.size(), &t, &s));
  }
  TablePtr tp(t);
  std::string sum = take(s);
  Outputs out(c.out_dir);
  out.table("noise.csv", tp.get());
  out.text("noise_summary.json", sum);
  out.manifest("noise", argv, cfg, c.seed);
  print_summary(sum);
  return 0;
}

void add_protocol(CLI::App* sub, TeleportArgs& a, const std::string& t1_default) {
  a.t1 = t1_default;
  add_model(sub, a.model);
  sub->add_option("--mu", a.mus, "coupling strength (repeatable or comma list)")->delimiter(',');
  sub->add_option("--t0", a.t0, "injection time");
  sub->add_option("--t1", a.t1, "readout grid start:stop:step");
  sub->add_option("--beta", a.beta, "inverse temperature or 'auto' (TFD fidelity scan)");
  sub->add_option("--trotter", a.trotter, "Trotter steps (0 = exact)");
  sub->add_flag("--reuse-q-as-t", a.reuse, "read out on the injection register");
  sub->add_option("--inject", a.inject, "injected pair a,b");
  sub->add_option("--majorana-norm", a.norm, "syk or pauli");
  sub->add_option("--convention", a.convention, "half or paper_literal");
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::vector<std::string> echo(argv, argv + argc);

  CLI::App app{"wormlab: traversable-wormhole teleportation experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", wl_version());

  Common common;
  bool models_write = false;
  auto* models = app.add_subcommand("models", "list catalog Hamiltonians");
  add_common(models, common);
  models->add_flag("--write", models_write, "also write models.json and a manifest to --out");

  TeleportArgs tele;
  auto* teleport = app.add_subcommand("teleport", "teleportation signal I_PT(t1)");
  add_common(teleport, common);
  add_protocol(teleport, tele, "0:10:0.1");

  TfdArgs tfd;
  auto* tfd_cmd = app.add_subcommand("tfd", "TFD fidelity scan over a log beta grid");
  add_common(tfd_cmd, common);
  add_model(tfd_cmd, tfd.model);
  tfd_cmd->add_option("--mu", tfd.mu);
  tfd_cmd->add_option("--beta-min", tfd.beta_min);
  tfd_cmd->add_option("--beta-max", tfd.beta_max);
  tfd_cmd->add_option("--points", tfd.points);
  tfd_cmd->add_option("--majorana-norm", tfd.norm);
  tfd_cmd->add_option("--convention", tfd.convention);

  WindingArgs wind;
  auto* winding = app.add_subcommand("winding", "size distributions and winding quality");
  add_common(winding, common);
  add_model(winding, wind.model);
  winding->add_option("--fermions", wind.fermions, "comma list of fermion indices");
  winding->add_option("--t", wind.t, "time grid");
  winding->add_option("--beta", wind.beta);
  winding->add_option("--mu-prime", wind.mu_prime, "evolve with H_L + H_R + mu' V");
  winding->add_option("--majorana-norm", wind.norm);

  CorrelatorArgs corr;
  auto* correlators = app.add_subcommand("correlators", "two-point functions and OTOCs");
  add_common(correlators, common);
  add_model(correlators, corr.model);
  correlators->add_option("--seeds", corr.seeds, "ensemble size for random models");
  correlators->add_option("--fermion", corr.fermion, "0 = average over fermions");
  correlators->add_option("--t", corr.t, "time grid");
  correlators->add_option("--beta", corr.beta);
  correlators->add_option("--otoc", corr.otoc, "also compute the OTOC for pair i,j");
  correlators->add_option("--majorana-norm", corr.norm);

  SparsifyArgs sp;
  auto* sparsify = app.add_subcommand("sparsify", "L1-regularised sparse fit to a target");
  add_common(sparsify, common);
  add_model(sparsify, sp.target, "--target");
  sparsify->add_option("--lambda", sp.lambda);
  sparsify->add_option("--step", sp.step);
  sparsify->add_option("--max-iters", sp.max_iters);
  sparsify->add_option("--prune", sp.prune);
  sparsify->add_option("--fd-eps", sp.fd_eps);
  sparsify->add_option("--beta", sp.beta);
  sparsify->add_flag("--reactivation", sp.reactivation);
  sparsify->add_option("--init-scale", sp.init_scale);
  sparsify->add_option("--majorana-norm", sp.norm);

  NoiseArgs nz;
  nz.proto.trotter = 1;
  auto* noise = app.add_subcommand("noise", "density-matrix protocol under noise");
  add_common(noise, common);
  add_protocol(noise, nz.proto, "0:8:0.5");
  noise->add_option("--kind", nz.kind, "none, depolarizing or coherent");
  noise->add_option("--strength", nz.strengths, "p or eps values");
  noise->add_flag("--report", nz.report, "coherent vs incoherent robustness report");
  noise->add_option("--p", nz.p, "depolarizing grid for --report");
  noise->add_option("--eps", nz.eps, "coherent grid for --report");

  try {
    args = apply_config(args);
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    common.seed = resolve_seed(common.seed_text);
    if (*models) return cmd_models(common, models_write, echo);
    if (*teleport) return cmd_teleport(common, tele, echo);
    if (*tfd_cmd) return cmd_tfd(common, tfd, echo);
    if (*winding) return cmd_winding(common, wind, echo);
    if (*correlators) return cmd_correlators(common, corr, echo);
    if (*sparsify) return cmd_sparsify(common, sp, echo);
    if (*noise) return cmd_noise(common, nz, echo);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
