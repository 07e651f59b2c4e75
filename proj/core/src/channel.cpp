#include "ftn/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace ftn {

DiscreteChannel::DiscreteChannel(const IsiTaps& taps, int frame_len,
                                 double sigma2)
    : taps_(taps), n_(frame_len), sigma2_(sigma2) {
  if (frame_len < 1) {
    throw std::invalid_argument("DiscreteChannel: frame_len must be >= 1");
  }
  if (sigma2 < 0.0) {
    throw std::invalid_argument("DiscreteChannel: sigma2 must be >= 0");
  }
  chol_ = banded_toeplitz_cholesky(taps_.g, n_);
}

std::vector<double> DiscreteChannel::noiseless(
    std::span<const double> symbols) const {
  if (static_cast<int>(symbols.size()) != n_) {
    throw std::invalid_argument("DiscreteChannel: frame length mismatch");
  }
  return toeplitz_matvec(taps_.g, symbols);
}

std::vector<double> DiscreteChannel::run(std::span<const double> symbols,
                                         Rng& rng) const {
  std::vector<double> y = noiseless(symbols);
  if (sigma2_ > 0.0) {
    const double sigma = std::sqrt(sigma2_);
    std::vector<double> w(n_);
    for (int i = 0; i < n_; ++i) {
      w[i] = sigma * rng.gaussian();
    }
    chol_.color(w);
    for (int i = 0; i < n_; ++i) {
      y[i] += w[i];
    }
  }
  return y;
}

WaveformChannel::WaveformChannel(const PulseSpec& spec, int frame_len,
                                 double sigma2)
    : spec_(spec), n_(frame_len), sigma2_(sigma2) {
  validate_pulse_spec(spec);
  if (frame_len < 1) {
    throw std::invalid_argument("WaveformChannel: frame_len must be >= 1");
  }
  if (sigma2 < 0.0) {
    throw std::invalid_argument("WaveformChannel: sigma2 must be >= 0");
  }
  q_ = spec.oversampling;
  dt_ = spec.tau / q_;
  pad_ = static_cast<int>(std::ceil(spec.span_symbols / dt_ - 1e-12));
  grid_size_ = 2 * pad_ + (n_ - 1) * q_ + 1;
  pulse_.resize(2 * pad_ + 1);
  for (int o = 0; o <= 2 * pad_; ++o) {
    pulse_[o] = rrc_pulse((o - pad_) * dt_, spec_);
  }
}

std::vector<double> WaveformChannel::modulate(
    std::span<const double> symbols) const {
  if (static_cast<int>(symbols.size()) != n_) {
    throw std::invalid_argument("WaveformChannel: frame length mismatch");
  }
  std::vector<double> s(grid_size_, 0.0);
  for (int k = 0; k < n_; ++k) {
    const double a = symbols[k];
    if (a == 0.0) continue;
    double* dst = s.data() + static_cast<std::size_t>(k) * q_;
    for (int o = 0; o <= 2 * pad_; ++o) {
      dst[o] += a * pulse_[o];
    }
  }
  return s;
}

void WaveformChannel::add_awgn(std::span<double> waveform, Rng& rng) const {
  if (static_cast<int>(waveform.size()) != grid_size_) {
    throw std::invalid_argument("WaveformChannel: grid size mismatch");
  }
  if (sigma2_ == 0.0) {
    return;
  }
  const double scale = std::sqrt(sigma2_ / dt_);
  for (double& v : waveform) {
    v += scale * rng.gaussian();
  }
}

std::vector<double> WaveformChannel::matched_filter_sample(
    std::span<const double> waveform) const {
  if (static_cast<int>(waveform.size()) != grid_size_) {
    throw std::invalid_argument("WaveformChannel: grid size mismatch");
  }
  std::vector<double> y(n_);
  for (int k = 0; k < n_; ++k) {
    const double* src = waveform.data() + static_cast<std::size_t>(k) * q_;
    double s = 0.0;
    for (int o = 0; o <= 2 * pad_; ++o) {
      s += src[o] * pulse_[o];
    }
    y[k] = dt_ * s;
  }
  return y;
}

std::vector<double> WaveformChannel::noiseless(
    std::span<const double> symbols) const {
  return matched_filter_sample(modulate(symbols));
}

std::vector<double> WaveformChannel::run(std::span<const double> symbols,
                                         Rng& rng) const {
  std::vector<double> s = modulate(symbols);
  add_awgn(s, rng);
  return matched_filter_sample(s);
}

}  // namespace ftn
