#pragma once

#include <vector>

namespace ftn {

// Unit-energy root-raised-cosine pulse family with symbol period T = 1.
// `tau` is the time-packing factor: transmit pulses every tau*T, so tau = 1
// is orthogonal signaling and tau < 1 introduces controlled ISI.
struct PulseSpec {
  double beta = 0.3;       // roll-off, in (0, 1]
  double tau = 1.0;        // time-packing factor, in (0, 1]
  int span_symbols = 16;   // one-sided truncation of p(t), in symbol periods
  int oversampling = 8;    // base samples per tau*T interval, >= 4
};

// Throws std::invalid_argument on parameter-range violations or if the
// truncated pulse captures less than 99.999% of unit energy.
void validate_pulse_spec(const PulseSpec& spec);

// Unit-energy RRC amplitude p(t); exactly 0 beyond +-span_symbols.
// Even in t by construction. Removable singularities (t = 0 and
// |t| = 1/(4 beta)) are evaluated by their limits.
double rrc_pulse(double t, const PulseSpec& spec);

// g(t) = integral p(x) p(x - t) dx for the untruncated pulse: the
// raised-cosine Nyquist pulse with the same beta. g(0) = 1 and g(k) = 0 for
// nonzero integer k. Singularities (t = 0, |t| = 1/(2 beta)) via limits.
double autocorrelation_g(double t, const PulseSpec& spec);

// Discrete ISI profile of the matched-filter output sampled every tau*T:
// g[lag] = g(lag * tau), lag = 0 .. L-1, with g[0] = 1.
struct IsiTaps {
  std::vector<double> g;
  double tau = 1.0;
  double beta = 0.3;
  double threshold = 1e-3;

  int length() const { return static_cast<int>(g.size()); }
};

// Keeps lags 1..L-1 where L-1 is the largest lag (capped at span/tau - 1)
// whose tap magnitude still reaches `tap_threshold`; L = 1 when no lag does
// (tau = 1). Every tap at or beyond lag L is below threshold in magnitude.
// Throws std::invalid_argument if the threshold would drop the main tap.
IsiTaps isi_taps(const PulseSpec& spec, double tap_threshold = 1e-3);

}  // namespace ftn
