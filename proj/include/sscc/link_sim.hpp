#pragma once

#include "sscc/config.hpp"
#include "sscc/modem.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace sscc {

/// A reproducible random stream. Identical (seed, stream_id) pairs replay the
/// same draws; distinct stream ids seed independent engines.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    /// Circularly-symmetric complex Gaussian with E|h|^2 = variance.
    cplx complex_gaussian(double variance);
    std::size_t uniform_index(std::size_t n);

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

struct ChannelRealization {
    cplx h_sd;
    cplx h_sp;
    std::vector<cplx> h_sr;
    std::vector<cplx> h_rd;
    std::vector<cplx> h_rp;
};

ChannelRealization draw_channels(const ValidatedConfig& cfg, RngStream& rng);

struct PowerAllocation {
    double p_s = 0.0;
    double p_r = 0.0;
    PowerPolicy policy = PowerPolicy::InstantaneousCsi;
};

/// Underlay power for the source and relay `relay_index`.
PowerAllocation allocate_power(const ValidatedConfig& cfg, const ChannelRealization& ch,
                               std::size_t relay_index);

struct SnrSample {
    double gamma_sd = 0.0;
    std::vector<double> gamma_sr;
    std::vector<double> gamma_rd;
    double gamma_srd = 0.0;
    double gamma_d = 0.0;
};

/// Per-hop SNRs with each candidate relay using its own power.
SnrSample compute_snrs(const ValidatedConfig& cfg, const ChannelRealization& ch);

/// Max-min relay selection; ties go to the lowest index.
std::size_t select_relay(const ValidatedConfig& cfg, const ChannelRealization& ch);
std::size_t select_relay(const SnrSample& snr);

struct TrialOutcome {
    SymbolPair sent;
    SymbolPair detected;
    std::size_t relay_index = 0;
    bool relay_decode_error = false;
    int bit_errors = 0;
    int symbol_errors = 0;
    double interference_s = 0.0;  // P_S |h_sp|^2
    double interference_r = 0.0;  // P_R |h_rp[l*]|^2
};

struct TrialOptions {
    // Scales every noise sample; 0 gives a noiseless link.
    double noise_scale = 1.0;
};

TrialOutcome run_trial(const ValidatedConfig& cfg, const RotatedConstellation& constellation,
                       RngStream& rng, const TrialOptions& opts = {});

struct WilsonInterval {
    double low = 0.0;
    double high = 0.0;
};

/// 95% Wilson score interval for `errors` out of `trials`.
WilsonInterval wilson_interval(std::uint64_t errors, std::uint64_t trials, double z = 1.959963984540054);

struct BerEstimate {
    double snr_point = 0.0;  // dB
    std::uint64_t errors = 0;
    std::uint64_t bits = 0;
    double ber = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double relay_decode_error_rate = 0.0;
    std::uint64_t trials = 0;
};

struct SweepSpec {
    std::vector<double> snr_grid_db;
    double pmax_offset_db = 10.0;
    std::uint64_t trials_per_point = 100000;
    std::uint64_t seed = 1;
    unsigned workers = 0;  // 0 = hardware concurrency
};

/// Trials per independent random stream. Fixed so results do not depend on
/// the worker count.
inline constexpr std::uint64_t kTrialsPerStream = 1u << 14;

/// Monte-Carlo BER along an SNR sweep. Each grid point splits its trials into
/// fixed-size chunks with their own RngStream; workers pull chunks and the
/// counts are summed.
std::vector<BerEstimate> estimate_ber(const ValidatedConfig& cfg, const SweepSpec& sweep);

/// Monte-Carlo BER at the config as given (no SNR override).
BerEstimate estimate_ber_point(const ValidatedConfig& cfg, std::uint64_t trials, std::uint64_t seed,
                               std::uint64_t stream_base = 0, unsigned workers = 0);

struct SnrEnsemble {
    std::vector<double> gamma_sd;
    std::vector<double> gamma_srd;
    std::vector<double> gamma_d;
    double mean_interference_s = 0.0;
    double max_interference_ratio = 0.0;  // max over draws of P|h_xp|^2 / qp
};

/// Draws `n` channel realizations and records the selection-stage SNRs.
SnrEnsemble sample_snrs(const ValidatedConfig& cfg, std::uint64_t n, std::uint64_t seed);

unsigned default_workers();

}  // namespace sscc
