#pragma once

#include <span>
#include <vector>

#include "ftn/linalg.hpp"
#include "ftn/pulse.hpp"

namespace ftn {

struct SoftEstimates {
  std::vector<double> soft;  // final soft estimate per symbol
  std::vector<double> hard;  // quantized values used for cancellation
};

struct SssConfig {
  int go_back_k = 1;       // 0 disables the re-estimation pass
  double amplitude = 1.0;  // per-dimension constellation amplitude
};

// Successive symbol-by-symbol estimation with go-back-K re-estimation.
// Forward step k: cancel the trailing ISI of already-decided symbols,
//   soft[k] = y[k] - sum_{l=1}^{min(L-1,k)} g[l] hard[k-l],
// then quantize. Once K more decisions exist, symbol i = k - K is revisited
// with both its trailing ISI and the leading ISI of the K newer decisions
// removed, and its soft/hard values are overwritten. The last K symbols of
// the frame keep their forward-pass values. O(N (L + K)).
// Throws std::invalid_argument unless 0 <= K < L.
SoftEstimates sss_gbk_estimate(std::span<const double> y, const IsiTaps& taps,
                               const SssConfig& cfg);

// Per-frame empirical variance of the soft estimates around their hard
// decisions, mean (soft - hard)^2: an optional replacement for the nominal
// sigma^2 when scaling LLRs (accounts for residual ISI the cancellation
// missed). Off by default in the simulator.
double empirical_noise_variance(const SoftEstimates& est);

struct BcjrConfig {
  int nu_max = -1;          // trellis memory cap; < 0 means full L - 1
  double amplitude = 1.0;   // per-dimension constellation amplitude
  int max_state_bits = 14;  // refuse trellises beyond 2^14 states
};

// Exact log-MAP symbol detection on the whitened observation model.
// The banded Toeplitz Gram G of the taps factors as Lf Lf^T; applying
// Lf^{-1} to y gives z = Lf^T a + white noise, a causal ISI model whose
// reversed-time trellis has memory nu = min(L - 1, nu_max). Edge columns of
// Lf are naturally short, which realizes the zero-padding of symbols outside
// the frame at both ends.
class BcjrDetector {
 public:
  // Throws std::invalid_argument if 2^nu would exceed 2^max_state_bits
  // (reduce nu_max) and std::runtime_error if the Gram cannot be factored.
  BcjrDetector(const IsiTaps& taps, int frame_len, double sigma2,
               const BcjrConfig& cfg = {});

  // Per-symbol posterior LLR log P(a_k = +amp | y) / P(a_k = -amp | y),
  // clamped to +-kLlrMax. Positive favors +amp, i.e. bit 0.
  std::vector<double> detect(std::span<const double> y) const;

  static std::vector<double> hard_symbols(std::span<const double> llr,
                                          double amplitude);

  int trellis_states() const { return 1 << nu_; }
  const BandedCholesky& whitener() const { return chol_; }

 private:
  int n_;
  int nu_;
  double sigma2_;
  double amplitude_;
  BandedCholesky chol_;
  // Reversed-time model columns: step r observes column n-1-r of Lf,
  // truncated to nu+1 entries. Interior columns repeat, so steps index a
  // small set of unique tables.
  std::vector<int> table_of_step_;
  std::vector<std::vector<double>> isi_tables_;  // per table: mean ISI by state
  std::vector<double> h0_;                       // per table: current-symbol gain
};

}  // namespace ftn
