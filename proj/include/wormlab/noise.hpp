#pragma once

#include <string>
#include <vector>

#include "wormlab/hilbert.hpp"
#include "wormlab/protocol.hpp"

namespace wormlab {

enum class NoiseKind { kNone = 0, kDepolarizing = 1, kCoherent = 2 };

const char* to_string(NoiseKind k);
NoiseKind parse_noise_kind(const std::string& s);

// Applied to every qubit a gate layer touches, right after the layer.
// depolarizing: strength = p.  coherent: exp(-i eps Z/2), strength = eps.
struct NoiseSpec {
  NoiseKind kind = NoiseKind::kNone;
  double strength = 0.0;
  void validate() const;
};

constexpr int kMaxNoiseQubits = 11;

// rho -> (1-p) rho + p I/2 (x) Tr_q rho, for each listed qubit in turn.
DensityMatrix depolarize(const DensityMatrix& rho, double p, const std::vector<int>& qubits);
void depolarize_in_place(Mat& rho, double p, int qubit);

struct ChannelStats {
  double max_trace_error = 0.0;
  double min_eigenvalue = 0.0;  // only filled when positivity checks are requested
  bool positivity_checked = false;
};

// Density-matrix version of run_trotterized with noise after each gate layer.
TeleportationCurve noisy_protocol(const MajoranaHamiltonian& h, const ProtocolConfig& config, const NoiseSpec& noise,
                                  ChannelStats* stats = nullptr, bool check_positivity = false);

struct RobustnessRow {
  NoiseKind kind = NoiseKind::kNone;
  double strength = 0.0;
  TeleportationCurve negative;  // mu = -|config.mu|
  TeleportationCurve positive;  // mu = +|config.mu|
  bool asymmetry_preserved = false;
};

struct RobustnessReport {
  std::vector<RobustnessRow> rows;  // baseline first, then depolarizing, then coherent
  bool depolarizing_monotone = true;
  double coherent_peak_location_std = 0.0;
  double depolarizing_peak_location_std = 0.0;
  // some coherent point shifts the peak more than the depolarizing point with
  // the closest attenuation
  bool coherent_spurious_shift = false;
  ChannelStats stats;
};

RobustnessReport coherent_vs_incoherent_report(const MajoranaHamiltonian& h, const ProtocolConfig& config,
                                               const std::vector<double>& p_grid,
                                               const std::vector<double>& eps_grid);

}  // namespace wormlab
