#include "ftn/detect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ftn/modem.hpp"

namespace ftn {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Jacobian logarithm max*(x, y) = log(e^x + e^y), exact.
double maxstar(double x, double y) {
  if (x == kNegInf) return y;
  if (y == kNegInf) return x;
  return std::max(x, y) + std::log1p(std::exp(-std::fabs(x - y)));
}

}  // namespace

BcjrDetector::BcjrDetector(const IsiTaps& taps, int frame_len, double sigma2,
                           const BcjrConfig& cfg)
    : n_(frame_len), sigma2_(sigma2), amplitude_(cfg.amplitude) {
  if (frame_len < 1) {
    throw std::invalid_argument("BcjrDetector: frame_len must be >= 1");
  }
  if (!(sigma2 > 0.0)) {
    throw std::invalid_argument("BcjrDetector: sigma2 must be > 0");
  }
  const int mem = taps.length() - 1;
  nu_ = (cfg.nu_max >= 0) ? std::min(mem, cfg.nu_max) : mem;
  if (nu_ > cfg.max_state_bits) {
    throw std::invalid_argument(
        "BcjrDetector: trellis needs 2^" + std::to_string(nu_) +
        " states, above the 2^" + std::to_string(cfg.max_state_bits) +
        " cap; reduce nu_max");
  }
  chol_ = banded_toeplitz_cholesky(taps.g, n_);

  // Reversed-time step r observes column n-1-r of Lf, truncated to the
  // trellis horizon. The Toeplitz structure repeats interior columns, so
  // steps share a handful of unique gain tables.
  const int states = 1 << nu_;
  table_of_step_.resize(n_);
  std::vector<std::vector<double>> columns;
  for (int r = 0; r < n_; ++r) {
    std::vector<double> h = chol_.column(n_ - 1 - r);
    if (static_cast<int>(h.size()) > nu_ + 1) {
      h.resize(nu_ + 1);
    }
    int id = -1;
    for (std::size_t t = 0; t < columns.size(); ++t) {
      if (columns[t] == h) {
        id = static_cast<int>(t);
        break;
      }
    }
    if (id < 0) {
      id = static_cast<int>(columns.size());
      columns.push_back(std::move(h));
    }
    table_of_step_[r] = id;
  }
  isi_tables_.resize(columns.size());
  h0_.resize(columns.size());
  for (std::size_t t = 0; t < columns.size(); ++t) {
    const auto& h = columns[t];
    h0_[t] = h[0];
    auto& table = isi_tables_[t];
    table.assign(states, 0.0);
    for (int s = 0; s < states; ++s) {
      double mean = 0.0;
      for (int m = 1; m < static_cast<int>(h.size()); ++m) {
        // state bit m-1 is the symbol emitted m reversed-time steps ago
        const double sym = ((s >> (m - 1)) & 1) ? -amplitude_ : amplitude_;
        mean += h[m] * sym;
      }
      table[s] = mean;
    }
  }
}

std::vector<double> BcjrDetector::detect(std::span<const double> y) const {
  if (static_cast<int>(y.size()) != n_) {
    throw std::invalid_argument("BcjrDetector: frame length mismatch");
  }
  const int states = 1 << nu_;
  const int mask = states - 1;
  const double inv2s = 1.0 / (2.0 * sigma2_);

  // Whiten, then run the trellis in reversed time where the model is causal.
  std::vector<double> z(y.begin(), y.end());
  chol_.whiten(z);
  std::reverse(z.begin(), z.end());

  auto gamma = [&](int table, int s, int bit, double obs) {
    const double sym = bit ? -amplitude_ : amplitude_;
    const double d = obs - (isi_tables_[table][s] + h0_[table] * sym);
    return -d * d * inv2s;
  };

  // Forward pass. alpha[r] describes the state before consuming z[r]; the
  // initial point mass is bookkeeping only (out-of-frame symbols carry zero
  // gain in the short edge columns).
  std::vector<double> alpha(static_cast<std::size_t>(n_ + 1) * states);
  std::fill_n(alpha.begin(), states, kNegInf);
  alpha[0] = 0.0;
  const int half = states >> 1;
  for (int r = 0; r < n_; ++r) {
    const int tid = table_of_step_[r];
    const double* cur = alpha.data() + static_cast<std::size_t>(r) * states;
    double* nxt = alpha.data() + static_cast<std::size_t>(r + 1) * states;
    double peak = kNegInf;
    for (int t = 0; t < states; ++t) {
      const int bit = t & 1;
      const int p0 = t >> 1;
      const int p1 = p0 | half;
      const double v = maxstar(cur[p0] + gamma(tid, p0, bit, z[r]),
                               cur[p1] + gamma(tid, p1, bit, z[r]));
      nxt[t] = v;
      peak = std::max(peak, v);
    }
    for (int t = 0; t < states; ++t) {
      nxt[t] -= peak;
    }
  }

  // Backward pass with uniform terminal beta (the final state is free), LLRs
  // collected per step.
  std::vector<double> beta(states, 0.0);
  std::vector<double> beta_next(states);
  std::vector<double> llr_rev(n_);
  for (int r = n_ - 1; r >= 0; --r) {
    const int tid = table_of_step_[r];
    const double* cur = alpha.data() + static_cast<std::size_t>(r) * states;
    double acc_plus = kNegInf;
    double acc_minus = kNegInf;
    for (int s = 0; s < states; ++s) {
      if (cur[s] == kNegInf) continue;
      const int s0 = ((s << 1) | 0) & mask;
      const int s1 = ((s << 1) | 1) & mask;
      acc_plus = maxstar(acc_plus, cur[s] + gamma(tid, s, 0, z[r]) + beta[s0]);
      acc_minus = maxstar(acc_minus, cur[s] + gamma(tid, s, 1, z[r]) + beta[s1]);
    }
    llr_rev[r] = acc_plus - acc_minus;

    double peak = kNegInf;
    for (int s = 0; s < states; ++s) {
      const int s0 = ((s << 1) | 0) & mask;
      const int s1 = ((s << 1) | 1) & mask;
      const double v = maxstar(gamma(tid, s, 0, z[r]) + beta[s0],
                               gamma(tid, s, 1, z[r]) + beta[s1]);
      beta_next[s] = v;
      peak = std::max(peak, v);
    }
    for (int s = 0; s < states; ++s) {
      beta_next[s] -= peak;
    }
    beta.swap(beta_next);
  }

  std::vector<double> llr(n_);
  for (int k = 0; k < n_; ++k) {
    llr[k] = std::clamp(llr_rev[n_ - 1 - k], -kLlrMax, kLlrMax);
  }
  return llr;
}

std::vector<double> BcjrDetector::hard_symbols(std::span<const double> llr,
                                               double amplitude) {
  std::vector<double> hard(llr.size());
  for (std::size_t i = 0; i < llr.size(); ++i) {
    hard[i] = llr[i] >= 0.0 ? amplitude : -amplitude;
  }
  return hard;
}

}  // namespace ftn
