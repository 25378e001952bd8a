#include "sscc/link_sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

namespace sscc {

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_id_(stream_id)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32),
                      0x5eed5eedu};
    engine_.seed(seq);
}

cplx RngStream::complex_gaussian(double variance)
{
    const double s = std::sqrt(variance / 2.0);
    const double re = normal_(engine_);
    const double im = normal_(engine_);
    return {s * re, s * im};
}

std::size_t RngStream::uniform_index(std::size_t n)
{
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
}

ChannelRealization draw_channels(const ValidatedConfig& vcfg, RngStream& rng)
{
    const SystemConfig& cfg = vcfg.get();
    const auto n = static_cast<std::size_t>(cfg.n_relays);
    ChannelRealization ch;
    ch.h_sd = rng.complex_gaussian(cfg.var_sd);
    ch.h_sp = rng.complex_gaussian(cfg.var_p);
    ch.h_sr.resize(n);
    ch.h_rd.resize(n);
    ch.h_rp.resize(n);
    for (std::size_t l = 0; l < n; ++l) {
        ch.h_sr[l] = rng.complex_gaussian(cfg.var_sr);
        ch.h_rd[l] = rng.complex_gaussian(cfg.var_rd);
        ch.h_rp[l] = rng.complex_gaussian(cfg.var_p);
    }
    return ch;
}

namespace {

double underlay_power(double qp, double pmax, double interference_gain)
{
    if (interference_gain <= 0.0)
        return pmax;
    return std::min(qp / interference_gain, pmax);
}

double source_power(const SystemConfig& cfg, const ChannelRealization& ch)
{
    if (cfg.policy == PowerPolicy::MeanValue)
        return mean_value_power(cfg);
    return underlay_power(cfg.qp, cfg.pmax, std::norm(ch.h_sp));
}

double relay_power(const SystemConfig& cfg, const ChannelRealization& ch, std::size_t l)
{
    if (cfg.policy == PowerPolicy::MeanValue)
        return mean_value_power(cfg);
    return underlay_power(cfg.qp, cfg.pmax, std::norm(ch.h_rp[l]));
}

}  // namespace

PowerAllocation allocate_power(const ValidatedConfig& vcfg, const ChannelRealization& ch,
                               std::size_t relay_index)
{
    const SystemConfig& cfg = vcfg.get();
    if (relay_index >= ch.h_rp.size())
        throw std::out_of_range("allocate_power: relay index " + std::to_string(relay_index));
    return {source_power(cfg, ch), relay_power(cfg, ch, relay_index), cfg.policy};
}

SnrSample compute_snrs(const ValidatedConfig& vcfg, const ChannelRealization& ch)
{
    const SystemConfig& cfg = vcfg.get();
    const double p_s = source_power(cfg, ch);
    SnrSample s;
    s.gamma_sd = p_s * std::norm(ch.h_sd);
    const std::size_t n = ch.h_sr.size();
    s.gamma_sr.resize(n);
    s.gamma_rd.resize(n);
    for (std::size_t l = 0; l < n; ++l) {
        s.gamma_sr[l] = p_s * std::norm(ch.h_sr[l]);
        s.gamma_rd[l] = relay_power(cfg, ch, l) * std::norm(ch.h_rd[l]);
    }
    const std::size_t best = select_relay(s);
    s.gamma_srd = std::min(s.gamma_sr[best], s.gamma_rd[best]);
    s.gamma_d = s.gamma_srd + s.gamma_sd;
    return s;
}

std::size_t select_relay(const SnrSample& snr)
{
    std::size_t best = 0;
    double best_min = -1.0;
    for (std::size_t l = 0; l < snr.gamma_sr.size(); ++l) {
        const double m = std::min(snr.gamma_sr[l], snr.gamma_rd[l]);
        if (m > best_min) {
            best_min = m;
            best = l;
        }
    }
    return best;
}

std::size_t select_relay(const ValidatedConfig& cfg, const ChannelRealization& ch)
{
    return select_relay(compute_snrs(cfg, ch));
}

TrialOutcome run_trial(const ValidatedConfig& vcfg, const RotatedConstellation& constellation,
                       RngStream& rng, const TrialOptions& opts)
{
    const SystemConfig& cfg = vcfg.get();
    const ChannelRealization ch = draw_channels(vcfg, rng);
    const SnrSample snr = compute_snrs(vcfg, ch);

    TrialOutcome out;
    out.relay_index = select_relay(snr);
    const std::size_t l = out.relay_index;
    const PowerAllocation power = allocate_power(vcfg, ch, l);
    out.interference_s = power.p_s * std::norm(ch.h_sp);
    out.interference_r = power.p_r * std::norm(ch.h_rp[l]);

    out.sent.x1 = rng.uniform_index(constellation.size());
    out.sent.x2 = rng.uniform_index(constellation.size());
    const TransmitPair tx =
        interleave(constellation.rotated_points[out.sent.x1], constellation.rotated_points[out.sent.x2]);

    // Slot one: source broadcasts lambda_s; relay and destination see independent noise.
    const double amp_s = std::sqrt(power.p_s);
    const cplx n_relay = opts.noise_scale * rng.complex_gaussian(SystemConfig::noise_var);
    const cplx n_dest = opts.noise_scale * rng.complex_gaussian(SystemConfig::noise_var);
    const cplx y_sr = amp_s * ch.h_sr[l] * tx.lambda_s + n_relay;
    const cplx y_sd = amp_s * ch.h_sd * tx.lambda_s + n_dest;

    cplx lambda_r = tx.lambda_r;
    if (!cfg.genie_relay) {
        const RelayDecision d = relay_decode_reencode(y_sr, ch.h_sr[l], power.p_s, constellation);
        out.relay_decode_error = !(d.symbols == out.sent);
        lambda_r = d.lambda_r;
    }

    // Slot two: relay forwards lambda_r.
    const cplx n_rd = opts.noise_scale * rng.complex_gaussian(SystemConfig::noise_var);
    const cplx y_rd = std::sqrt(power.p_r) * ch.h_rd[l] * lambda_r + n_rd;

    const ReorderedObservation obs = reorder(y_sd, y_rd, ch.h_sd, ch.h_rd[l], power.p_s, power.p_r);
    out.detected = ml_detect(obs, constellation);

    out.bit_errors = bit_distance(constellation, out.sent.x1, out.detected.x1) +
                     bit_distance(constellation, out.sent.x2, out.detected.x2);
    out.symbol_errors = (out.sent.x1 != out.detected.x1) + (out.sent.x2 != out.detected.x2);
    return out;
}

WilsonInterval wilson_interval(std::uint64_t errors, std::uint64_t trials, double z)
{
    if (trials == 0)
        return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(errors) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    // Clamp so the interval always brackets the point estimate despite rounding.
    return {std::min(p, std::max(0.0, centre - half)), std::max(p, std::min(1.0, centre + half))};
}

unsigned default_workers()
{
    if (const char* env = std::getenv("SSCC_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0)
            return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct ChunkCounts {
    std::uint64_t errors = 0;
    std::uint64_t units = 0;
    std::uint64_t relay_errors = 0;
};

template <typename ChunkFn>
void run_chunks(std::uint64_t n_chunks, unsigned workers, ChunkFn&& fn)
{
    if (workers == 0)
        workers = default_workers();
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(n_chunks, 1)));
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t c = next++; c < n_chunks; c = next++)
            fn(c);
    };
    if (workers <= 1) {
        worker();
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back(worker);
}

}  // namespace

BerEstimate estimate_ber_point(const ValidatedConfig& cfg, std::uint64_t trials, std::uint64_t seed,
                               std::uint64_t stream_base, unsigned workers)
{
    const RotatedConstellation constellation = rotate_constellation(qpsk_gray(), cfg->theta);
    const std::uint64_t n_chunks = (trials + kTrialsPerStream - 1) / kTrialsPerStream;
    std::vector<ChunkCounts> counts(n_chunks);
    const bool symbols = cfg->count_symbols;
    const std::uint64_t units_per_trial = symbols ? 2 : 2 * static_cast<std::uint64_t>(constellation.bits_per_symbol);

    run_chunks(n_chunks, workers, [&](std::uint64_t c) {
        RngStream rng(seed, stream_base + c);
        const std::uint64_t begin = c * kTrialsPerStream;
        const std::uint64_t end = std::min(trials, begin + kTrialsPerStream);
        ChunkCounts local;
        for (std::uint64_t t = begin; t < end; ++t) {
            const TrialOutcome o = run_trial(cfg, constellation, rng);
            local.errors += static_cast<std::uint64_t>(symbols ? o.symbol_errors : o.bit_errors);
            local.units += units_per_trial;
            local.relay_errors += o.relay_decode_error ? 1 : 0;
        }
        counts[c] = local;
    });

    BerEstimate est;
    std::uint64_t relay_errors = 0;
    for (const ChunkCounts& c : counts) {
        est.errors += c.errors;
        est.bits += c.units;
        relay_errors += c.relay_errors;
    }
    est.trials = trials;
    est.ber = est.bits ? static_cast<double>(est.errors) / static_cast<double>(est.bits) : 0.0;
    const WilsonInterval ci = wilson_interval(est.errors, est.bits);
    est.ci_low = ci.low;
    est.ci_high = ci.high;
    est.relay_decode_error_rate = trials ? static_cast<double>(relay_errors) / static_cast<double>(trials) : 0.0;
    est.snr_point = linear_to_db(cfg->qp / cfg->var_p);
    return est;
}

std::vector<BerEstimate> estimate_ber(const ValidatedConfig& cfg, const SweepSpec& sweep)
{
    std::vector<BerEstimate> out;
    out.reserve(sweep.snr_grid_db.size());
    for (std::size_t i = 0; i < sweep.snr_grid_db.size(); ++i) {
        const ValidatedConfig point = at_reference_snr(cfg, sweep.snr_grid_db[i], sweep.pmax_offset_db);
        BerEstimate est = estimate_ber_point(point, sweep.trials_per_point, sweep.seed,
                                             static_cast<std::uint64_t>(i + 1) << 32, sweep.workers);
        est.snr_point = sweep.snr_grid_db[i];
        out.push_back(est);
    }
    return out;
}

SnrEnsemble sample_snrs(const ValidatedConfig& cfg, std::uint64_t n, std::uint64_t seed)
{
    SnrEnsemble e;
    e.gamma_sd.reserve(n);
    e.gamma_srd.reserve(n);
    e.gamma_d.reserve(n);
    RngStream rng(seed, 0);
    double interference_sum = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const ChannelRealization ch = draw_channels(cfg, rng);
        const SnrSample s = compute_snrs(cfg, ch);
        e.gamma_sd.push_back(s.gamma_sd);
        e.gamma_srd.push_back(s.gamma_srd);
        e.gamma_d.push_back(s.gamma_d);

        const std::size_t l = select_relay(s);
        const PowerAllocation p = allocate_power(cfg, ch, l);
        const double is = p.p_s * std::norm(ch.h_sp);
        const double ir = p.p_r * std::norm(ch.h_rp[l]);
        interference_sum += is;
        e.max_interference_ratio = std::max({e.max_interference_ratio, is / cfg->qp, ir / cfg->qp});
    }
    e.mean_interference_s = n ? interference_sum / static_cast<double>(n) : 0.0;
    return e;
}

}  // namespace sscc
