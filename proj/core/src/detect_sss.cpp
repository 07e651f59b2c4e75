#include "ftn/detect.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "ftn/modem.hpp"

namespace ftn {

double empirical_noise_variance(const SoftEstimates& est) {
  if (est.soft.empty()) throw std::invalid_argument("empty estimates");
  double acc = 0.0;
  for (std::size_t k = 0; k < est.soft.size(); ++k) {
    const double e = est.soft[k] - est.hard[k];
    acc += e * e;
  }
  return acc / static_cast<double>(est.soft.size());
}

SoftEstimates sss_gbk_estimate(std::span<const double> y, const IsiTaps& taps,
                               const SssConfig& cfg) {
  const int n = static_cast<int>(y.size());
  const int len = taps.length();
  const int k_back = cfg.go_back_k;
  if (k_back < 0 || k_back >= len) {
    throw std::invalid_argument(
        "sss_gbk_estimate: go_back_k must satisfy 0 <= K < L = " +
        std::to_string(len));
  }
  const auto& g = taps.g;
  const double amp = cfg.amplitude;

  SoftEstimates est;
  est.soft.resize(n);
  est.hard.resize(n);
  for (int k = 0; k < n; ++k) {
    double s = y[k];
    const int lmax = std::min(len - 1, k);
    for (int l = 1; l <= lmax; ++l) {
      s -= g[l] * est.hard[k - l];
    }
    est.soft[k] = s;
    est.hard[k] = quantize(s, amp);

    if (k_back > 0 && k >= k_back) {
      // Revisit symbol i with K newer decisions available: remove its
      // trailing ISI again (decisions may have changed) plus the leading ISI
      // of the K symbols after it.
      const int i = k - k_back;
      double t = y[i];
      const int lmax_i = std::min(len - 1, i);
      for (int l = 1; l <= lmax_i; ++l) {
        t -= g[l] * est.hard[i - l];
      }
      for (int m = 1; m <= k_back; ++m) {
        t -= g[m] * est.hard[i + m];
      }
      est.soft[i] = t;
      est.hard[i] = quantize(t, amp);
    }
  }
  return est;
}

}  // namespace ftn
