#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wormlab/circuit.hpp"
#include "wormlab/models.hpp"
#include "wormlab/tfd.hpp"

namespace wormlab {

struct ProtocolConfig {
  double mu = -12.0;
  double t0 = 2.8;
  std::vector<double> t1_grid;
  double beta = 0.25;
  std::pair<int, int> inject{1, 2};
  int trotter_steps = 0;  // 0 = exact evolution
  bool reuse_q_as_t = false;
  MajoranaNorm norm = MajoranaNorm::kSyk;
  TfdConvention convention = TfdConvention::kHalf;
  uint64_t seed = 0;
  int threads = 1;

  void validate() const;
  std::string mode() const;
};

struct PeakSummary {
  double t_peak = 0.0;
  double max = 0.0;
  double baseline = 0.0;  // mean over the last quartile of the grid
};

PeakSummary summarize_peak(const std::vector<double>& t, const std::vector<double>& values);

struct TeleportationCurve {
  ProtocolConfig config;
  std::vector<double> t1;
  std::vector<double> nats;
  std::vector<double> bits;
  PeakSummary peak;
  GateTally gates;  // per t1 point; zero in exact mode
};

// Exact when trotter_steps == 0, otherwise the Trotterized circuit.
TeleportationCurve run_teleportation(const MajoranaHamiltonian& h, const ProtocolConfig& config);
TeleportationCurve run_trotterized(const MajoranaHamiltonian& h, const ProtocolConfig& config);
std::vector<TeleportationCurve> mu_sweep(const MajoranaHamiltonian& h, const ProtocolConfig& config,
                                         const std::vector<double>& mus);

struct AsymmetryReport {
  double negative_peak = 0.0;  // max over the grid for the negative-mu curve
  double negative_t_peak = 0.0;
  double negative_baseline = 0.0;
  double positive_max = 0.0;
  double delta = 0.0;  // negative_peak - positive_max
  int sign = 0;
};

AsymmetryReport asymmetry(const TeleportationCurve& negative_mu, const TeleportationCurve& positive_mu);

// Full register state right after the readout SWAP for one t1.
QuantumState protocol_output_state(const MajoranaHamiltonian& h, const ProtocolConfig& config, double t1);

// Initial TFD (x) Bell(P,Q) (x) |0>_T on the full register.
Vec protocol_initial_state(const DoubledSystem& system, const ProtocolConfig& config);

// Gate sequence before the t1-dependent part, and the t1-dependent part.
std::vector<Gate> protocol_prefix_gates(const DoubledSystem& system, const ProtocolConfig& config);
std::vector<Gate> protocol_suffix_gates(const DoubledSystem& system, const ProtocolConfig& config, double t1);

}  // namespace wormlab
