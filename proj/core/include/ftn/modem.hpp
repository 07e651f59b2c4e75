#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace ftn {

// LLR saturation used across the receiver chain.
inline constexpr double kLlrMax = 300.0;

enum class Modulation { bpsk, qpsk };

int bits_per_symbol(Modulation mod);

// Per-dimension constellation amplitude: BPSK 1, QPSK 1/sqrt(2) (unit symbol
// energy in both cases).
double lane_amplitude(Modulation mod);

// Bit convention: bit 0 -> +amplitude (matches the decoder's
// positive-LLR-means-bit-0 convention). QPSK is the Gray map
// (b_I, b_Q) -> ((1 - 2 b_I) + j (1 - 2 b_Q)) / sqrt(2); even-indexed bits
// ride the I lane, odd-indexed bits the Q lane.
std::vector<std::complex<double>> map_bits(std::span<const std::uint8_t> bits,
                                           Modulation mod);

// One real lane of the same mapping (lane 0 = I, lane 1 = Q). For BPSK only
// lane 0 exists.
std::vector<double> map_bits_lane(std::span<const std::uint8_t> bits,
                                  Modulation mod, int lane);

// Nearest constellation point per dimension; the tie at 0 resolves to
// +amplitude.
double quantize(double soft, double amplitude);

// Max-likelihood LLR of a +-amplitude decision from a Gaussian-channel soft
// estimate: clamp(2 amplitude soft / sigma2, +-kLlrMax). Positive means the
// bit is more likely 0.
double soft_to_llr(double soft, double sigma2, double amplitude);

// Per-dimension noise variance sigma^2 = N0/2 for unit symbol energy:
// 1 / (2 rate bits_per_symbol 10^(ebn0_db / 10)). Throws on rate <= 0 or
// rate > 1.
double ebn0_to_sigma2(double ebn0_db, double code_rate, int bits_per_symbol);

}  // namespace ftn
