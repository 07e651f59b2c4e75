#include "ftn/polar.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ftn {
namespace {

bool is_pow2(int n) { return n >= 1 && (n & (n - 1)) == 0; }

double f_minsum(double a, double b) {
  const double s = ((a < 0.0) != (b < 0.0)) ? -1.0 : 1.0;
  return s * std::min(std::fabs(a), std::fabs(b));
}

// Exact boxplus 2 atanh(tanh(a/2) tanh(b/2)) in its overflow-safe Jacobian
// form.
double f_exact(double a, double b) {
  return f_minsum(a, b) + std::log1p(std::exp(-std::fabs(a + b))) -
         std::log1p(std::exp(-std::fabs(a - b)));
}

// Successive cancellation over the recursive factor-graph split.
//   llr:    len channel-side LLRs for this node (scratch, owned by caller)
//   frozen: len frozen flags, d: len decided pre-transform bits
//   x:      len partial-sum output (transformed bits of this subtree)
//   work:   len/2 + len/4 + ... scratch for child LLRs
void sc_node(const double* llr, int len, const std::uint8_t* frozen,
             std::uint8_t* d, std::uint8_t* x, double* work, bool exact) {
  if (len == 1) {
    d[0] = frozen[0] ? 0 : (llr[0] >= 0.0 ? 0 : 1);
    x[0] = d[0];
    return;
  }
  const int h = len / 2;
  double* child = work;
  for (int i = 0; i < h; ++i) {
    child[i] = exact ? f_exact(llr[i], llr[i + h]) : f_minsum(llr[i], llr[i + h]);
  }
  sc_node(child, h, frozen, d, x, work + h, exact);
  for (int i = 0; i < h; ++i) {
    child[i] = llr[i + h] + (1.0 - 2.0 * x[i]) * llr[i];
  }
  sc_node(child, h, frozen + h, d + h, x + h, work + h, exact);
  for (int i = 0; i < h; ++i) {
    x[i] ^= x[i + h];
  }
}

}  // namespace

std::vector<double> polarize(int n, double epsilon) {
  if (!is_pow2(n)) {
    throw std::invalid_argument("polarize: n must be a power of two");
  }
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw std::invalid_argument("polarize: epsilon must be in (0, 1)");
  }
  std::vector<double> cap{1.0 - epsilon};
  std::vector<double> next;
  while (static_cast<int>(cap.size()) < n) {
    next.resize(cap.size() * 2);
    for (std::size_t i = 0; i < cap.size(); ++i) {
      const double v = cap[i];
      next[2 * i] = v * v;
      next[2 * i + 1] = 2.0 * v - v * v;
    }
    cap.swap(next);
  }
  return cap;
}

std::vector<std::uint8_t> select_frozen(std::span<const double> capacities,
                                        int m) {
  const int n = static_cast<int>(capacities.size());
  if (m < 0 || m > n) {
    throw std::invalid_argument("select_frozen: need 0 <= m <= n");
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Descending capacity; among equals the larger index ranks first.
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (capacities[a] != capacities[b]) return capacities[a] > capacities[b];
    return a > b;
  });
  std::vector<std::uint8_t> frozen(n, 1);
  for (int i = 0; i < m; ++i) {
    frozen[order[i]] = 0;
  }
  return frozen;
}

PolarCode make_polar_code(int n, int m, double epsilon) {
  PolarCode code;
  code.n = n;
  code.m = m;
  code.epsilon = epsilon;
  code.capacities = polarize(n, epsilon);
  code.frozen = select_frozen(code.capacities, m);
  return code;
}

void polar_transform(std::span<std::uint8_t> word) {
  const int n = static_cast<int>(word.size());
  if (!is_pow2(n)) {
    throw std::invalid_argument("polar_transform: length must be a power of two");
  }
  for (int half = 1; half < n; half *= 2) {
    for (int base = 0; base < n; base += 2 * half) {
      for (int i = base; i < base + half; ++i) {
        word[i] ^= word[i + half];
      }
    }
  }
}

std::vector<std::uint8_t> polar_encode(std::span<const std::uint8_t> info,
                                       const PolarCode& code) {
  if (static_cast<int>(info.size()) != code.m) {
    throw std::invalid_argument("polar_encode: expected " +
                                std::to_string(code.m) + " info bits");
  }
  std::vector<std::uint8_t> x(code.n, 0);
  int next = 0;
  for (int i = 0; i < code.n; ++i) {
    if (!code.frozen[i]) {
      x[i] = info[next++] & 1;
    }
  }
  polar_transform(x);
  return x;
}

ScDecodeResult sc_decode(std::span<const double> llr, const PolarCode& code,
                         bool exact_tanh) {
  if (static_cast<int>(llr.size()) != code.n) {
    throw std::invalid_argument("sc_decode: expected " +
                                std::to_string(code.n) + " channel LLRs");
  }
  ScDecodeResult res;
  res.d.resize(code.n);
  std::vector<std::uint8_t> x(code.n);
  std::vector<double> work(code.n);  // holds all recursion levels
  sc_node(llr.data(), code.n, code.frozen.data(), res.d.data(), x.data(),
          work.data(), exact_tanh);
  res.info.reserve(code.m);
  for (int i = 0; i < code.n; ++i) {
    if (!code.frozen[i]) {
      res.info.push_back(res.d[i]);
    }
  }
  return res;
}

}  // namespace ftn
