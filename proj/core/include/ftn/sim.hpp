#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ftn/modem.hpp"
#include "ftn/pulse.hpp"

namespace ftn {

enum class DetectorKind { sss, bcjr };
enum class Coding { none, polar };
enum class ChannelPath { discrete, waveform };

struct SimConfig {
  double tau = 1.0;
  double beta = 0.3;
  Modulation modulation = Modulation::bpsk;
  Coding coding = Coding::polar;
  // Coded: codeword length / info bits. Uncoded: code_n is the frame length
  // in symbols and code_m is ignored.
  int code_n = 1024;
  int code_m = 512;
  double epsilon = 0.5;
  DetectorKind detector = DetectorKind::sss;
  int go_back_k = 1;   // SSS go-back depth, must stay below the tap count L
  int nu_max = -1;     // BCJR memory cap; < 0 means full L - 1
  double tap_threshold = 1e-3;
  int span_symbols = 16;
  int oversampling = 8;
  bool exact_tanh = false;
  // Scale SSS LLRs by the per-frame empirical residual variance instead of
  // the nominal channel sigma^2. Off by default.
  bool sss_empirical_llr = false;
  ChannelPath channel = ChannelPath::discrete;
  std::vector<double> ebn0_grid_db;
  std::uint64_t min_bit_errors = 100;
  std::uint64_t max_frames = 1000000;
  std::uint64_t master_seed = 1;
  // Stop the sweep after this many consecutive zero-error points (0 = never).
  int zero_error_abort = 2;
  // 0 = hardware concurrency, capped by the FTN_SIM_THREADS env variable.
  int threads = 0;

  bool operator==(const SimConfig&) const = default;
};

// Throws std::invalid_argument / std::out_of_range describing the first
// violated constraint (also constructs taps/detector once to surface
// detector-parameter errors early).
void validate(const SimConfig& cfg);

double code_rate(const SimConfig& cfg);

struct BerRecord {
  double ebn0_db = 0.0;
  std::uint64_t bits = 0;
  std::uint64_t bit_errors = 0;
  std::uint64_t frames = 0;
  std::uint64_t frame_errors = 0;
  double elapsed_s = 0.0;        // not part of the CSV schema
  double gram_loading = 0.0;     // diagonal loading the Gram needed, if any
  std::uint64_t seed = 0;        // master seed echoed for the CSV

  double ber() const;
  double fer() const;
};

// Runs frames in fixed-size batches until min_bit_errors have accumulated or
// max_frames is reached. Per-frame seeds derive from (master_seed, Eb/N0 bit
// pattern, frame index), and counters merge by integer addition, so results
// are bit-identical for any thread count.
BerRecord run_ber_point(const SimConfig& cfg, double ebn0_db);

// One record per grid point, in grid order; on_point fires after each point
// (incremental CSV). Honors zero_error_abort.
std::vector<BerRecord> sweep(const SimConfig& cfg,
                             const std::function<void(const BerRecord&)>& on_point = {});

// Bits per second per Hz: bits_per_symbol * rate / (tau T) over the RRC
// occupied bandwidth (1 + beta) / (2 T), i.e. 2 rate bps / (tau (1 + beta)).
double spectral_efficiency(double tau, double beta, double rate,
                           int bits_per_symbol = 1);
double spectral_efficiency(const SimConfig& cfg);

// CSV schema (fixed): ebn0_db,tau,beta,detector,K,coding,N,M,bits,
// bit_errors,frame_errors,ber,fer,seed. Uncoded rows carry M = 0. Numbers
// are shortest-round-trip formatted with '.' decimals regardless of locale.
void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const SimConfig& cfg, const BerRecord& r);

// Eb/N0 (dB) where the curve crosses target_ber, by log-linear interpolation
// (linear in dB vs log10 BER) between the first bracketing pair in
// increasing-dB order. Zero-error records cannot bracket. nullopt when the
// curve never resolves the target.
std::optional<double> ebn0_at_ber(std::span<const BerRecord> curve,
                                  double target_ber);

// Horizontal distance test-minus-reference at the target BER; positive means
// `test` needs that much more SNR.
std::optional<double> gap_db(std::span<const BerRecord> reference,
                             std::span<const BerRecord> test,
                             double target_ber);

}  // namespace ftn
