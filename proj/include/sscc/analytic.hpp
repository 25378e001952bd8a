#pragma once

#include "sscc/config.hpp"

#include <functional>
#include <string>
#include <vector>

namespace sscc::analytic {

// Distribution functions of the per-hop and end-to-end SNRs. Every function
// follows cfg->policy: instantaneous-CSI underlay power, or the fixed
// mean-value power min(qp / var_p, pmax).

/// CDF of the direct-link SNR P_S |h_sd|^2.
double cdf_direct(double gamma, const AnalysisParams& params, const ValidatedConfig& cfg);
double pdf_direct(double gamma, const AnalysisParams& params, const ValidatedConfig& cfg);

/// CDF of the max-min relayed SNR over n_relays i.i.d. relays.
double cdf_relayed(double gamma, const AnalysisParams& params, const ValidatedConfig& cfg);
double pdf_relayed(double gamma, const AnalysisParams& params, const ValidatedConfig& cfg);

/// Product-form density f_relayed * f_direct used by the tractable BER analysis.
double pdf_upper(double gamma, const AnalysisParams& params, const ValidatedConfig& cfg);

/// Exact density / CDF of gamma_d = gamma_srd + gamma_sd by numeric convolution.
double pdf_exact_conv(double gamma, const AnalysisParams& params, const ValidatedConfig& cfg);
double cdf_exact_conv(double gamma, const AnalysisParams& params, const ValidatedConfig& cfg);

/// Exact CDF of the relayed SNR when every source hop shares one source power,
/// obtained by averaging the conditional product over |h_sp|^2. Equals
/// cdf_relayed for a single relay or mean-value power.
double cdf_relayed_shared_source(double gamma, const AnalysisParams& params, const ValidatedConfig& cfg);

/// Mean-value-feedback product density as a binomial sum of exponentials.
double pdf_mv(double gamma, const AnalysisParams& params, const ValidatedConfig& cfg);

// Literal transcriptions of two published expressions that disagree with the
// model they claim to describe. Kept for the closed-form audit only.
namespace as_printed {

/// 1 + e^{-g/Pmax} (e^{-Qp/Pmax} (1 - e^{-g/eta} / (1 + g/eta)) - 1)
double cdf_direct(double gamma, double eta, double qp, double pmax);

/// The relayed-SNR density as typeset: R_K {(1-F_sr)(1-F_rd)}^{R_K-1} d/dg[...].
double pdf_relayed(double gamma, double eta_sr, double eta_rd, double qp, double pmax, int n_relays);

}  // namespace as_printed

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
};

inline constexpr double kQuadRelTol = 1e-8;

/// Adaptive Gauss-Kronrod on [a, b]; b may be +infinity.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol = kQuadRelTol);

/// Upper end of the BER integral: Q(sqrt(beta g)) <= e^{-beta g / 2} / 2 falls below 1e-13 there.
double ber_cutoff(double beta);

/// alpha * int_0^inf Q(sqrt(beta g)) pdf(g) dg.
QuadResult ber_quadrature(const std::function<double(double)>& pdf, double alpha, double beta,
                          double cutoff_scale = 1.0);

double ber_upper_quadrature(const AnalysisParams& params, const ValidatedConfig& cfg);
double ber_exact_quadrature(const AnalysisParams& params, const ValidatedConfig& cfg);

struct SingularTerm {
    int r = 0;
    int t = 0;
    std::string reason;
};

struct ClosedForm15Report {
    double value = 0.0;              // sum of the finite terms
    double last_block = 0.0;         // magnitude of the last summed t-block
    int truncation = 0;
    int blocks_summed = 0;
    bool converged = false;
    std::vector<SingularTerm> singular_terms;
    std::string pfq_signature;       // which pFq the printed formula calls
    double quadrature = 0.0;         // authoritative: quadrature of the product density
    double abs_deviation = 0.0;
    double rel_deviation = 0.0;
    bool agrees = false;             // rel_deviation < 1e-6 with no singular terms
};

inline constexpr int kClosedForm15Truncation = 50;

/// Double series for clustered relays with unbounded peak power, evaluated
/// term by term as typeset (sign exponent taken as r + t). Singular terms are
/// skipped and listed; the quadrature value is reported alongside.
ClosedForm15Report ber_closed_form_15(const AnalysisParams& params, const ValidatedConfig& cfg,
                                      int truncation = kClosedForm15Truncation);

/// Mean-value closed form (binomial sum of exponential Q-integrals), as typeset.
double ber_mv_closed_form(const AnalysisParams& params, const ValidatedConfig& cfg);

struct MvAudit {
    double closed_form = 0.0;
    double quadrature = 0.0;
    double rel_deviation = 0.0;
    bool agrees = false;
    std::string note;
};

MvAudit audit_mv_closed_form(const AnalysisParams& params, const ValidatedConfig& cfg);

/// High-SNR power law with slope -(n_relays + 1).
double ber_asymptotic(const AnalysisParams& params, const ValidatedConfig& cfg);

enum class BerMethod {
    QuadratureUpper,
    ClosedForm15,
    MvClosedForm17,
    MvQuadrature,
    Asymptotic19,
    ExactConvolutionQuadrature,
};

std::string to_string(BerMethod method);
BerMethod method_from_string(const std::string& text);

struct BerCurve {
    std::vector<double> snr_points;  // dB
    std::vector<double> values;
    BerMethod method = BerMethod::QuadratureUpper;
};

/// Evaluates one method along an SNR sweep (see at_reference_snr).
BerCurve ber_curve(BerMethod method, const ValidatedConfig& cfg, const std::vector<double>& snr_grid_db,
                   double pmax_offset_db);

double ber_at(BerMethod method, const ValidatedConfig& cfg);

/// Negated least-squares slope of log10(BER) against log10(gamma_bar) over
/// points in [lo_db, hi_db]; nonpositive BER values are skipped.
double fit_diversity_order(const BerCurve& curve, double lo_db, double hi_db);

/// Same fit over the top decade (highest 10 dB) of the curve.
double fit_diversity_order(const BerCurve& curve);

}  // namespace sscc::analytic
