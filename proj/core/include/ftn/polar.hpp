#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ftn {

// Polar code of length n (power of two) with m information bits, designed for
// a binary erasure channel with erasure probability epsilon.
struct PolarCode {
  int n = 0;
  int m = 0;
  double epsilon = 0.5;
  std::vector<double> capacities;    // I(W_N^(i)) in natural bit order
  std::vector<std::uint8_t> frozen;  // 1 = frozen (transmitted as 0)
};

// Bit-channel capacities after log2(n) polarization steps starting from
// I(W) = 1 - epsilon on the BEC. The recursion maps each parent capacity v
// to the adjacent pair (v^2, 2v - v^2), so the total capacity n (1 - epsilon)
// is conserved at every level.
std::vector<double> polarize(int n, double epsilon);

// Marks the m highest-capacity positions as information bits. Exact capacity
// ties (the BEC recursion produces them, e.g. 6 duplicate values at n = 1024,
// epsilon = 0.5) resolve toward the larger index.
std::vector<std::uint8_t> select_frozen(std::span<const double> capacities,
                                        int m);

PolarCode make_polar_code(int n, int m, double epsilon);

// In-place x = d F^{(x) log2 n} over GF(2) with F = [[1, 0], [1, 1]], natural
// bit order (no bit-reversal permutation). Involution: applying it twice is
// the identity.
void polar_transform(std::span<std::uint8_t> word);

// Scatters info bits into the free positions (frozen positions 0), then
// applies polar_transform.
std::vector<std::uint8_t> polar_encode(std::span<const std::uint8_t> info,
                                       const PolarCode& code);

struct ScDecodeResult {
  std::vector<std::uint8_t> info;  // the m recovered message bits
  std::vector<std::uint8_t> d;     // full n-bit pre-transform word
};

// Successive-cancellation decoding. Channel LLRs are positive for bit 0.
// The check-node update is min-sum by default; exact_tanh switches it to the
// exact boxplus rule.
ScDecodeResult sc_decode(std::span<const double> llr, const PolarCode& code,
                         bool exact_tanh = false);

}  // namespace ftn
