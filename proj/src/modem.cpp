#include "sscc/modem.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace sscc {

BaseConstellation qpsk_gray()
{
    BaseConstellation c;
    c.bits_per_symbol = 2;
    const double s = 1.0 / std::numbers::sqrt2;
    for (std::uint8_t label = 0; label < 4; ++label) {
        const double re = (label & 0b10) ? -s : s;
        const double im = (label & 0b01) ? -s : s;
        c.points.emplace_back(re, im);
        c.labels.push_back(label);
    }
    return c;
}

namespace {

constexpr double kUniquenessTol = 1e-9;

bool all_distinct(const std::vector<double>& values)
{
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j)
            if (std::abs(values[i] - values[j]) < kUniquenessTol)
                return false;
    return true;
}

std::size_t nearest_component(double value, const RotatedConstellation& c, bool real_axis)
{
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double comp = real_axis ? c.rotated_points[i].real() : c.rotated_points[i].imag();
        const double d = std::abs(value - comp);
        if (d < best_dist) {
            best_dist = d;
            best = i;
        }
    }
    return best;
}

}  // namespace

RotatedConstellation rotate_constellation(const BaseConstellation& base, double theta)
{
    if (base.points.empty() || base.points.size() != base.labels.size())
        throw std::invalid_argument("rotate_constellation: empty or unlabeled constellation");

    RotatedConstellation c;
    c.base_points = base.points;
    c.bit_labels = base.labels;
    c.bits_per_symbol = base.bits_per_symbol;
    c.theta = theta;

    const cplx rotation = std::polar(1.0, theta);
    std::vector<double> re;
    std::vector<double> im;
    for (const cplx& p : base.points) {
        const cplx r = p * rotation;
        c.rotated_points.push_back(r);
        re.push_back(r.real());
        im.push_back(r.imag());
    }
    c.component_unique = all_distinct(re) && all_distinct(im);
    return c;
}

double component_separation(const RotatedConstellation& c)
{
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            const cplx d = c.rotated_points[i] - c.rotated_points[j];
            gap = std::min({gap, std::abs(d.real()), std::abs(d.imag())});
        }
    }
    return gap;
}

TransmitPair interleave(cplx x1_rot, cplx x2_rot)
{
    return {cplx(x1_rot.real(), x2_rot.imag()), cplx(x2_rot.real(), x1_rot.imag())};
}

std::pair<cplx, cplx> deinterleave(const TransmitPair& pair)
{
    return {cplx(pair.lambda_s.real(), pair.lambda_r.imag()),
            cplx(pair.lambda_r.real(), pair.lambda_s.imag())};
}

RelayDecision relay_decode_reencode(cplx y_sr, cplx h_sr, double p_s,
                                    const RotatedConstellation& constellation)
{
    const double gain = std::sqrt(p_s) * std::norm(h_sr);
    const cplx projected = std::conj(h_sr) * y_sr;

    RelayDecision d;
    // A dead link carries no information; fall back to index 0 deterministically.
    if (gain > 0.0) {
        d.symbols.x1 = nearest_component(projected.real() / gain, constellation, true);
        d.symbols.x2 = nearest_component(projected.imag() / gain, constellation, false);
    }
    d.lambda_r = interleave(constellation.rotated_points[d.symbols.x1],
                            constellation.rotated_points[d.symbols.x2])
                     .lambda_r;
    return d;
}

ReorderedObservation reorder(cplx y_sd, cplx y_rd, cplx h_sd, cplx h_rd, double p_s, double p_r)
{
    const cplx z_sd = std::conj(h_sd) * y_sd;
    const cplx z_rd = std::conj(h_rd) * y_rd;
    ReorderedObservation obs;
    obs.delta1 = z_sd.real();
    obs.delta2 = z_sd.imag();
    obs.delta3 = z_rd.real();
    obs.delta4 = z_rd.imag();
    obs.weight_sd = std::sqrt(p_s) * std::norm(h_sd);
    obs.weight_rd = std::sqrt(p_r) * std::norm(h_rd);
    obs.noisevar_sd = std::norm(h_sd) / 2.0;
    obs.noisevar_rd = std::norm(h_rd) / 2.0;
    return obs;
}

namespace {

double branch_metric(double delta, double weight, double noisevar, double component)
{
    if (!(weight > 0.0) || !(noisevar > 0.0))
        return 0.0;
    const double e = delta - weight * component;
    return e * e / noisevar;
}

}  // namespace

SymbolPair ml_detect(const ReorderedObservation& obs, const RotatedConstellation& c)
{
    SymbolPair best;
    double best1 = std::numeric_limits<double>::infinity();
    double best2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c.size(); ++i) {
        const cplx x = c.rotated_points[i];
        const double m1 = branch_metric(obs.delta1, obs.weight_sd, obs.noisevar_sd, x.real()) +
                          branch_metric(obs.delta4, obs.weight_rd, obs.noisevar_rd, x.imag());
        const double m2 = branch_metric(obs.delta2, obs.weight_sd, obs.noisevar_sd, x.imag()) +
                          branch_metric(obs.delta3, obs.weight_rd, obs.noisevar_rd, x.real());
        if (m1 < best1) {
            best1 = m1;
            best.x1 = i;
        }
        if (m2 < best2) {
            best2 = m2;
            best.x2 = i;
        }
    }
    return best;
}

int bit_distance(const RotatedConstellation& c, std::size_t a, std::size_t b)
{
    return std::popcount(static_cast<unsigned>(c.bit_labels[a] ^ c.bit_labels[b]));
}

}  // namespace sscc
