#include "ftn/modem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ftn {

int bits_per_symbol(Modulation mod) {
  return mod == Modulation::bpsk ? 1 : 2;
}

double lane_amplitude(Modulation mod) {
  return mod == Modulation::bpsk ? 1.0 : 1.0 / std::sqrt(2.0);
}

std::vector<std::complex<double>> map_bits(std::span<const std::uint8_t> bits,
                                           Modulation mod) {
  const int bps = bits_per_symbol(mod);
  if (bits.size() % bps != 0) {
    throw std::invalid_argument("map_bits: bit count not a multiple of bits per symbol");
  }
  const double amp = lane_amplitude(mod);
  std::vector<std::complex<double>> out(bits.size() / bps);
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (mod == Modulation::bpsk) {
      out[k] = {amp * (1.0 - 2.0 * bits[k]), 0.0};
    } else {
      out[k] = {amp * (1.0 - 2.0 * bits[2 * k]),
                amp * (1.0 - 2.0 * bits[2 * k + 1])};
    }
  }
  return out;
}

std::vector<double> map_bits_lane(std::span<const std::uint8_t> bits,
                                  Modulation mod, int lane) {
  const int bps = bits_per_symbol(mod);
  if (lane < 0 || lane >= bps) {
    throw std::invalid_argument("map_bits_lane: lane out of range");
  }
  if (bits.size() % bps != 0) {
    throw std::invalid_argument("map_bits_lane: bit count not a multiple of bits per symbol");
  }
  const double amp = lane_amplitude(mod);
  std::vector<double> out(bits.size() / bps);
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = amp * (1.0 - 2.0 * bits[k * bps + lane]);
  }
  return out;
}

double quantize(double soft, double amplitude) {
  return soft >= 0.0 ? amplitude : -amplitude;
}

double soft_to_llr(double soft, double sigma2, double amplitude) {
  return std::clamp(2.0 * amplitude * soft / sigma2, -kLlrMax, kLlrMax);
}

double ebn0_to_sigma2(double ebn0_db, double code_rate, int bps) {
  if (!(code_rate > 0.0) || code_rate > 1.0) {
    throw std::invalid_argument("ebn0_to_sigma2: code rate must be in (0, 1]");
  }
  if (bps != 1 && bps != 2) {
    throw std::invalid_argument("ebn0_to_sigma2: bits_per_symbol must be 1 or 2");
  }
  const double ebn0 = std::pow(10.0, ebn0_db / 10.0);
  return 1.0 / (2.0 * code_rate * bps * ebn0);
}

}  // namespace ftn
