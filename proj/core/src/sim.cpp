#include "ftn/sim.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "ftn/channel.hpp"
#include "ftn/detect.hpp"
#include "ftn/polar.hpp"
#include "ftn/rng.hpp"

namespace ftn {
namespace {

bool is_pow2(int n) { return n >= 1 && (n & (n - 1)) == 0; }

PulseSpec pulse_spec_of(const SimConfig& cfg) {
  return PulseSpec{cfg.beta, cfg.tau, cfg.span_symbols, cfg.oversampling};
}

int frame_symbols(const SimConfig& cfg) {
  const int bps = bits_per_symbol(cfg.modulation);
  return cfg.coding == Coding::polar ? cfg.code_n / bps : cfg.code_n;
}

int frame_tx_bits(const SimConfig& cfg) {
  return frame_symbols(cfg) * bits_per_symbol(cfg.modulation);
}

int effective_threads(const SimConfig& cfg) {
  if (cfg.threads > 0) {
    return cfg.threads;
  }
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("FTN_SIM_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0 && cap < n) {
      n = static_cast<int>(cap);
    }
  }
  return n;
}

// Everything a frame needs, built once per operating point and shared
// read-only across worker threads.
struct PointContext {
  const SimConfig* cfg = nullptr;
  double sigma2 = 0.0;
  double amp = 1.0;
  int bps = 1;
  int n_sym = 0;
  IsiTaps taps;
  std::unique_ptr<PolarCode> code;
  std::unique_ptr<DiscreteChannel> dchan;
  std::unique_ptr<WaveformChannel> wchan;
  std::unique_ptr<BcjrDetector> bcjr;
  double gram_loading = 0.0;
};

PointContext make_context(const SimConfig& cfg, double ebn0_db) {
  PointContext ctx;
  ctx.cfg = &cfg;
  ctx.bps = bits_per_symbol(cfg.modulation);
  ctx.amp = lane_amplitude(cfg.modulation);
  ctx.n_sym = frame_symbols(cfg);
  ctx.sigma2 = ebn0_to_sigma2(ebn0_db, code_rate(cfg), ctx.bps);
  ctx.taps = isi_taps(pulse_spec_of(cfg), cfg.tap_threshold);
  if (cfg.coding == Coding::polar) {
    ctx.code = std::make_unique<PolarCode>(
        make_polar_code(cfg.code_n, cfg.code_m, cfg.epsilon));
  }
  if (cfg.channel == ChannelPath::discrete) {
    ctx.dchan = std::make_unique<DiscreteChannel>(ctx.taps, ctx.n_sym, ctx.sigma2);
    ctx.gram_loading = ctx.dchan->factor().loading;
  } else {
    ctx.wchan = std::make_unique<WaveformChannel>(pulse_spec_of(cfg), ctx.n_sym,
                                                  ctx.sigma2);
  }
  if (cfg.detector == DetectorKind::bcjr) {
    BcjrConfig bc;
    bc.nu_max = cfg.nu_max;
    bc.amplitude = ctx.amp;
    ctx.bcjr = std::make_unique<BcjrDetector>(ctx.taps, ctx.n_sym, ctx.sigma2, bc);
    ctx.gram_loading = std::max(ctx.gram_loading, ctx.bcjr->whitener().loading);
  }
  return ctx;
}

struct FrameOutcome {
  std::uint64_t bit_errors = 0;
  bool frame_error = false;
};

FrameOutcome run_frame(const PointContext& ctx, std::uint64_t frame_seed) {
  const SimConfig& cfg = *ctx.cfg;
  Rng rng(frame_seed);

  // Message first, then channel noise, in a fixed order per frame.
  const int tx_bits = frame_tx_bits(cfg);
  std::vector<std::uint8_t> message;
  std::vector<std::uint8_t> bits;
  if (cfg.coding == Coding::polar) {
    message.resize(cfg.code_m);
    for (auto& b : message) {
      b = static_cast<std::uint8_t>(rng.bit());
    }
    bits = polar_encode(message, *ctx.code);
  } else {
    bits.resize(tx_bits);
    for (auto& b : bits) {
      b = static_cast<std::uint8_t>(rng.bit());
    }
  }

  // Lanes run in I then Q order; each consumes its own noise slice.
  std::vector<double> llr_bits(bits.size());
  std::uint64_t raw_errors = 0;
  for (int lane = 0; lane < ctx.bps; ++lane) {
    const std::vector<double> symbols = map_bits_lane(bits, cfg.modulation, lane);
    const std::vector<double> y = ctx.dchan ? ctx.dchan->run(symbols, rng)
                                            : ctx.wchan->run(symbols, rng);
    std::vector<double> llr(ctx.n_sym);
    if (cfg.detector == DetectorKind::sss) {
      SssConfig sc;
      sc.go_back_k = cfg.go_back_k;
      sc.amplitude = ctx.amp;
      const SoftEstimates est = sss_gbk_estimate(y, ctx.taps, sc);
      double s2 = ctx.sigma2;
      if (cfg.sss_empirical_llr) {
        s2 = std::max(empirical_noise_variance(est), 1e-12);
      }
      for (int k = 0; k < ctx.n_sym; ++k) {
        llr[k] = soft_to_llr(est.soft[k], s2, ctx.amp);
      }
    } else {
      llr = ctx.bcjr->detect(y);
    }
    for (int k = 0; k < ctx.n_sym; ++k) {
      llr_bits[static_cast<std::size_t>(k) * ctx.bps + lane] = llr[k];
      const std::uint8_t hard = llr[k] >= 0.0 ? 0 : 1;
      raw_errors += hard != bits[static_cast<std::size_t>(k) * ctx.bps + lane];
    }
  }

  FrameOutcome out;
  if (cfg.coding == Coding::polar) {
    const ScDecodeResult dec = sc_decode(llr_bits, *ctx.code, cfg.exact_tanh);
    for (int i = 0; i < cfg.code_m; ++i) {
      out.bit_errors += dec.info[i] != message[i];
    }
  } else {
    out.bit_errors = raw_errors;
  }
  out.frame_error = out.bit_errors > 0;
  return out;
}

}  // namespace

void validate(const SimConfig& cfg) {
  validate_pulse_spec(pulse_spec_of(cfg));
  const int bps = bits_per_symbol(cfg.modulation);
  if (cfg.coding == Coding::polar) {
    if (!is_pow2(cfg.code_n)) {
      throw std::invalid_argument("sim: coded N must be a power of two");
    }
    if (cfg.code_m < 1 || cfg.code_m > cfg.code_n) {
      throw std::invalid_argument("sim: need 1 <= M <= N");
    }
    if (!(cfg.epsilon > 0.0) || !(cfg.epsilon < 1.0)) {
      throw std::invalid_argument("sim: design epsilon must be in (0, 1)");
    }
    if (cfg.code_n % bps != 0) {
      throw std::invalid_argument("sim: codeword length not a whole number of symbols");
    }
  } else if (cfg.code_n < 1) {
    throw std::invalid_argument("sim: frame length must be >= 1 symbols");
  }
  if (cfg.ebn0_grid_db.empty()) {
    throw std::invalid_argument("sim: Eb/N0 grid is empty");
  }
  for (std::size_t i = 1; i < cfg.ebn0_grid_db.size(); ++i) {
    if (!(cfg.ebn0_grid_db[i] > cfg.ebn0_grid_db[i - 1])) {
      throw std::invalid_argument("sim: Eb/N0 grid must be strictly increasing");
    }
  }
  if (cfg.min_bit_errors < 1) {
    throw std::invalid_argument("sim: min_bit_errors must be >= 1");
  }
  if (cfg.max_frames < 1) {
    throw std::invalid_argument("sim: max_frames must be >= 1");
  }
  if (cfg.zero_error_abort < 0) {
    throw std::invalid_argument("sim: zero_error_abort must be >= 0");
  }
  if (cfg.threads < 0) {
    throw std::invalid_argument("sim: threads must be >= 0");
  }
  // Surface detector-parameter problems (K vs L, trellis size) up front.
  const IsiTaps taps = isi_taps(pulse_spec_of(cfg), cfg.tap_threshold);
  if (cfg.detector == DetectorKind::sss) {
    if (cfg.go_back_k < 0 || cfg.go_back_k >= taps.length()) {
      throw std::invalid_argument(
          "sim: go-back K must satisfy 0 <= K < L = " +
          std::to_string(taps.length()) +
          (taps.length() == 1 ? " (tau = 1 has no ISI; use K = 0)" : ""));
    }
  } else {
    BcjrConfig bc;
    bc.nu_max = cfg.nu_max;
    const int mem = taps.length() - 1;
    const int nu = (bc.nu_max >= 0) ? std::min(mem, bc.nu_max) : mem;
    if (nu > bc.max_state_bits) {
      throw std::invalid_argument(
          "sim: BCJR needs 2^" + std::to_string(nu) + " states; reduce nu_max");
    }
  }
}

double code_rate(const SimConfig& cfg) {
  if (cfg.coding == Coding::polar) {
    return static_cast<double>(cfg.code_m) / cfg.code_n;
  }
  return 1.0;
}

double BerRecord::ber() const {
  return bits ? static_cast<double>(bit_errors) / static_cast<double>(bits) : 0.0;
}

double BerRecord::fer() const {
  return frames ? static_cast<double>(frame_errors) / static_cast<double>(frames)
                : 0.0;
}

BerRecord run_ber_point(const SimConfig& cfg, double ebn0_db) {
  const auto t0 = std::chrono::steady_clock::now();
  const PointContext ctx = make_context(cfg, ebn0_db);
  const std::uint64_t point_seed =
      combine_seed(cfg.master_seed, ebn0_seed_salt(ebn0_db));
  const std::uint64_t info_bits_per_frame =
      cfg.coding == Coding::polar ? cfg.code_m : frame_tx_bits(cfg);

  // Fixed batch sizes keep the stopping decision (and therefore the exact
  // set of frames run) independent of thread count and timing.
  const std::uint64_t batch = cfg.detector == DetectorKind::bcjr ? 64 : 1024;
  const int threads = effective_threads(cfg);

  BerRecord rec;
  rec.ebn0_db = ebn0_db;
  rec.seed = cfg.master_seed;
  rec.gram_loading = ctx.gram_loading;
  while (rec.bit_errors < cfg.min_bit_errors && rec.frames < cfg.max_frames) {
    const std::uint64_t todo = std::min<std::uint64_t>(batch, cfg.max_frames - rec.frames);
    if (threads == 1 || todo == 1) {
      for (std::uint64_t f = 0; f < todo; ++f) {
        const FrameOutcome out =
            run_frame(ctx, combine_seed(point_seed, rec.frames + f));
        rec.bit_errors += out.bit_errors;
        rec.frame_errors += out.frame_error;
      }
    } else {
      struct Part {
        std::uint64_t bit_errors = 0;
        std::uint64_t frame_errors = 0;
      };
      std::vector<Part> parts(threads);
      std::vector<std::thread> pool;
      pool.reserve(threads);
      for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          for (std::uint64_t f = t; f < todo; f += threads) {
            const FrameOutcome out =
                run_frame(ctx, combine_seed(point_seed, rec.frames + f));
            parts[t].bit_errors += out.bit_errors;
            parts[t].frame_errors += out.frame_error;
          }
        });
      }
      for (auto& th : pool) {
        th.join();
      }
      for (const Part& p : parts) {
        rec.bit_errors += p.bit_errors;
        rec.frame_errors += p.frame_errors;
      }
    }
    rec.frames += todo;
  }
  rec.bits = rec.frames * info_bits_per_frame;
  rec.elapsed_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

std::vector<BerRecord> sweep(const SimConfig& cfg,
                             const std::function<void(const BerRecord&)>& on_point) {
  validate(cfg);
  std::vector<BerRecord> records;
  records.reserve(cfg.ebn0_grid_db.size());
  int consecutive_zero = 0;
  for (const double ebn0 : cfg.ebn0_grid_db) {
    records.push_back(run_ber_point(cfg, ebn0));
    if (on_point) {
      on_point(records.back());
    }
    consecutive_zero = records.back().bit_errors == 0 ? consecutive_zero + 1 : 0;
    if (cfg.zero_error_abort > 0 && consecutive_zero >= cfg.zero_error_abort) {
      break;
    }
  }
  return records;
}

double spectral_efficiency(double tau, double beta, double rate,
                           int bits_per_symbol) {
  return 2.0 * rate * bits_per_symbol / (tau * (1.0 + beta));
}

double spectral_efficiency(const SimConfig& cfg) {
  return spectral_efficiency(cfg.tau, cfg.beta, code_rate(cfg),
                             bits_per_symbol(cfg.modulation));
}

namespace {

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

void write_csv_header(std::ostream& os) {
  os << "ebn0_db,tau,beta,detector,K,coding,N,M,bits,bit_errors,frame_errors,"
        "ber,fer,seed\n";
}

void write_csv_row(std::ostream& os, const SimConfig& cfg, const BerRecord& r) {
  os << fmt(r.ebn0_db) << ',' << fmt(cfg.tau) << ',' << fmt(cfg.beta) << ','
     << (cfg.detector == DetectorKind::sss ? "sss" : "bcjr") << ','
     << cfg.go_back_k << ','
     << (cfg.coding == Coding::polar ? "polar" : "none") << ',' << cfg.code_n
     << ',' << (cfg.coding == Coding::polar ? cfg.code_m : 0) << ',' << r.bits
     << ',' << r.bit_errors << ',' << r.frame_errors << ',' << fmt(r.ber())
     << ',' << fmt(r.fer()) << ',' << r.seed << '\n';
}

std::optional<double> ebn0_at_ber(std::span<const BerRecord> curve,
                                  double target_ber) {
  if (!(target_ber > 0.0)) {
    return std::nullopt;
  }
  for (const BerRecord& r : curve) {
    if (r.ber() == target_ber) {
      return r.ebn0_db;
    }
  }
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    const double hi = curve[i].ber();
    const double lo = curve[i + 1].ber();
    if (hi <= 0.0 || lo <= 0.0 || hi == lo) {
      continue;
    }
    if (hi > target_ber && target_ber > lo) {
      const double t = (std::log10(target_ber) - std::log10(hi)) /
                       (std::log10(lo) - std::log10(hi));
      return curve[i].ebn0_db + t * (curve[i + 1].ebn0_db - curve[i].ebn0_db);
    }
  }
  return std::nullopt;
}

std::optional<double> gap_db(std::span<const BerRecord> reference,
                             std::span<const BerRecord> test,
                             double target_ber) {
  const auto ref = ebn0_at_ber(reference, target_ber);
  const auto tst = ebn0_at_ber(test, target_ber);
  if (!ref || !tst) {
    return std::nullopt;
  }
  return *tst - *ref;
}

}  // namespace ftn
