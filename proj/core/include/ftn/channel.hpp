#pragma once

#include <span>
#include <vector>

#include "ftn/linalg.hpp"
#include "ftn/pulse.hpp"
#include "ftn/rng.hpp"

namespace ftn {

// Tap-domain equivalent of the matched-filter front end:
//   y = G a + w,  w = sigma Lf xi,  G = Lf Lf^T
// where G is the symmetric banded Toeplitz Gram built from the ISI taps.
// Colored noise reproduces the covariance sigma^2 G that the matched filter
// imposes on white channel noise.
class DiscreteChannel {
 public:
  DiscreteChannel(const IsiTaps& taps, int frame_len, double sigma2);

  std::vector<double> noiseless(std::span<const double> symbols) const;
  std::vector<double> run(std::span<const double> symbols, Rng& rng) const;

  const BandedCholesky& factor() const { return chol_; }
  double sigma2() const { return sigma2_; }
  int frame_len() const { return n_; }

 private:
  IsiTaps taps_;
  int n_;
  double sigma2_;
  BandedCholesky chol_;
};

// Oversampled waveform path: pulse-train synthesis on a grid of step
// tau T / oversampling, white noise on the grid, matched filtering, and
// tau T-spaced sampling. Ground truth for validating the discrete model.
class WaveformChannel {
 public:
  WaveformChannel(const PulseSpec& spec, int frame_len, double sigma2);

  // s(t) on the grid; pulses sit at t = k tau, padded by span on both ends.
  std::vector<double> modulate(std::span<const double> symbols) const;

  // In-place white noise of variance sigma2 / grid_step per sample, so the
  // matched-filtered and sampled noise sequence has covariance sigma^2 G.
  void add_awgn(std::span<double> waveform, Rng& rng) const;

  // y_k = dt sum_j r_j p(t_j - k tau). Throws on grid-size mismatch.
  std::vector<double> matched_filter_sample(std::span<const double> waveform) const;

  std::vector<double> noiseless(std::span<const double> symbols) const;
  std::vector<double> run(std::span<const double> symbols, Rng& rng) const;

  double grid_step() const { return dt_; }
  int grid_size() const { return grid_size_; }

 private:
  PulseSpec spec_;
  int n_;
  double sigma2_;
  double dt_;
  int q_;
  int pad_;        // grid samples of zero-padding on each side
  int grid_size_;
  std::vector<double> pulse_;  // p on the grid over [-span, span]
};

}  // namespace ftn
