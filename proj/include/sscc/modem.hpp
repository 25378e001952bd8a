#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace sscc {

using cplx = std::complex<double>;

/// Unit-energy Gray-labelled QPSK: label b1b0 -> ((1-2*b1) + j(1-2*b0)) / sqrt(2).
struct BaseConstellation {
    std::vector<cplx> points;
    std::vector<std::uint8_t> labels;
    int bits_per_symbol = 0;
};

BaseConstellation qpsk_gray();

struct RotatedConstellation {
    std::vector<cplx> base_points;
    std::vector<cplx> rotated_points;
    std::vector<std::uint8_t> bit_labels;
    int bits_per_symbol = 0;
    double theta = 0.0;
    // Every real part distinct and every imaginary part distinct, so each
    // component alone identifies the symbol.
    bool component_unique = false;

    std::size_t size() const noexcept { return rotated_points.size(); }
};

/// Rotates every base point by e^{j theta}. A rotation that breaks component
/// uniqueness still builds (degraded-mode experiments); check component_unique.
RotatedConstellation rotate_constellation(const BaseConstellation& base, double theta);

/// Smallest gap between any two real parts and any two imaginary parts.
double component_separation(const RotatedConstellation& constellation);

struct TransmitPair {
    cplx lambda_s;
    cplx lambda_r;
};

/// lambda_s = Re{x1} + j Im{x2}, lambda_r = Re{x2} + j Im{x1}.
TransmitPair interleave(cplx x1_rot, cplx x2_rot);

/// Inverse of interleave: recovers (x1_rot, x2_rot).
std::pair<cplx, cplx> deinterleave(const TransmitPair& pair);

struct SymbolPair {
    std::size_t x1 = 0;
    std::size_t x2 = 0;
    friend bool operator==(const SymbolPair&, const SymbolPair&) = default;
};

struct RelayDecision {
    SymbolPair symbols;
    cplx lambda_r;
};

/// Relay demodulation: X1 from the real part of the matched-filter output,
/// X2 from its imaginary part (nearest rotated component), then re-interleave.
RelayDecision relay_decode_reencode(cplx y_sr, cplx h_sr, double p_s,
                                    const RotatedConstellation& constellation);

struct ReorderedObservation {
    double delta1 = 0.0;  // Re{h_sd* y_sd}
    double delta2 = 0.0;  // Im{h_sd* y_sd}
    double delta3 = 0.0;  // Re{h_rd* y_rd}
    double delta4 = 0.0;  // Im{h_rd* y_rd}
    double weight_sd = 0.0;
    double weight_rd = 0.0;
    double noisevar_sd = 0.0;  // per real dimension
    double noisevar_rd = 0.0;
};

ReorderedObservation reorder(cplx y_sd, cplx y_rd, cplx h_sd, cplx h_rd, double p_s, double p_r);

/// Per-symbol ML detection over the two faded components of each symbol.
/// X1 sees Re via the direct link (delta1) and Im via the relay link (delta4);
/// X2 sees Im via the direct link (delta2) and Re via the relay link (delta3).
/// Branches with zero weight are dropped. Ties go to the lowest index.
SymbolPair ml_detect(const ReorderedObservation& obs, const RotatedConstellation& constellation);

/// Number of differing bits between two symbol labels.
int bit_distance(const RotatedConstellation& constellation, std::size_t a, std::size_t b);

}  // namespace sscc
