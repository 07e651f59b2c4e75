#include "ftn/pulse.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ftn {
namespace {

constexpr double kPi = std::numbers::pi;

// Guard band around the removable singularities of the closed forms. Within
// it the denominator has lost ~8 digits, so the limit value is the more
// accurate evaluation.
constexpr double kSingularEps = 1e-8;

double rrc_unnormalized(double t, double beta) {
  const double at = std::fabs(t);
  if (at < kSingularEps) {
    return 1.0 - beta + 4.0 * beta / kPi;
  }
  const double x = 4.0 * beta * at;
  if (std::fabs(x - 1.0) < kSingularEps) {
    // limit at t = 1/(4 beta)
    const double s = std::sin(kPi / (4.0 * beta));
    const double c = std::cos(kPi / (4.0 * beta));
    return beta / std::sqrt(2.0) *
           ((1.0 + 2.0 / kPi) * s + (1.0 - 2.0 / kPi) * c);
  }
  const double num = std::sin(kPi * at * (1.0 - beta)) +
                     x * std::cos(kPi * at * (1.0 + beta));
  return num / (kPi * at * (1.0 - x * x));
}

double truncated_energy(const PulseSpec& spec) {
  // Trapezoidal quadrature of p^2 over [-span, span] at 32 points per symbol.
  // p is even, so integrate [0, span] and double, halving the t = 0 weight.
  const int q = 32;
  const double dt = 1.0 / q;
  const int m = spec.span_symbols * q;
  double acc = 0.0;
  for (int i = 0; i <= m; ++i) {
    const double v = rrc_pulse(i * dt, spec);
    const double w = (i == 0 || i == m) ? 0.5 : 1.0;
    acc += w * v * v;
  }
  return 2.0 * acc * dt;
}

}  // namespace

void validate_pulse_spec(const PulseSpec& spec) {
  if (!(spec.beta > 0.0) || !(spec.beta <= 1.0)) {
    throw std::invalid_argument("pulse: beta must be in (0, 1], got " +
                                std::to_string(spec.beta));
  }
  if (!(spec.tau > 0.0) || !(spec.tau <= 1.0)) {
    throw std::invalid_argument("pulse: tau must be in (0, 1], got " +
                                std::to_string(spec.tau));
  }
  if (spec.span_symbols < 1) {
    throw std::invalid_argument("pulse: span_symbols must be >= 1");
  }
  if (spec.oversampling < 4) {
    throw std::invalid_argument("pulse: oversampling must be >= 4");
  }
  const double energy = truncated_energy(spec);
  if (energy < 1.0 - 1e-5) {
    throw std::invalid_argument(
        "pulse: span_symbols = " + std::to_string(spec.span_symbols) +
        " truncates the pulse to " + std::to_string(energy) +
        " of unit energy (< 99.999%)");
  }
}

double rrc_pulse(double t, const PulseSpec& spec) {
  if (std::fabs(t) > static_cast<double>(spec.span_symbols)) {
    return 0.0;
  }
  return rrc_unnormalized(t, spec.beta);
}

double autocorrelation_g(double t, const PulseSpec& spec) {
  const double beta = spec.beta;
  const double at = std::fabs(t);
  if (at < kSingularEps) {
    return 1.0;
  }
  const double x = 2.0 * beta * at;
  const double sinc = std::sin(kPi * at) / (kPi * at);
  if (std::fabs(x - 1.0) < kSingularEps) {
    // limit at t = 1/(2 beta)
    return sinc * kPi / 4.0;
  }
  return sinc * std::cos(kPi * beta * at) / (1.0 - x * x);
}

IsiTaps isi_taps(const PulseSpec& spec, double tap_threshold) {
  validate_pulse_spec(spec);
  if (!(tap_threshold > 0.0) || tap_threshold >= 1.0) {
    throw std::invalid_argument(
        "isi_taps: tap_threshold must be in (0, 1); got " +
        std::to_string(tap_threshold) + " (the unit main tap must survive)");
  }
  const int max_len = static_cast<int>(spec.span_symbols / spec.tau + 1e-9);
  int len = 1;
  for (int lag = 1; lag < max_len; ++lag) {
    if (std::fabs(autocorrelation_g(lag * spec.tau, spec)) >= tap_threshold) {
      len = lag + 1;
    }
  }
  IsiTaps taps;
  taps.tau = spec.tau;
  taps.beta = spec.beta;
  taps.threshold = tap_threshold;
  taps.g.resize(len);
  taps.g[0] = 1.0;
  for (int lag = 1; lag < len; ++lag) {
    taps.g[lag] = autocorrelation_g(lag * spec.tau, spec);
  }
  return taps;
}

}  // namespace ftn
