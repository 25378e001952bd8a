#include "sscc/analytic.hpp"

#include "sscc/specialfn.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace sscc::analytic {

namespace {

// SNR of one hop, P |h|^2, with P either the underlay power min(qp/|h_p|^2, pmax)
// or a fixed mean-value power.
struct Hop {
    double eta = 1.0;     // var_link * qp / var_p
    double a = 0.0;       // qp / (pmax var_p): threshold where P saturates at pmax
    double c = 0.0;       // 1 / (pmax var_link)
    bool exponential = false;
    double mean = 1.0;    // exponential mean under mean-value power
};

Hop make_hop(double eta, double var_link, const SystemConfig& cfg)
{
    Hop h;
    h.eta = eta;
    if (cfg.policy == PowerPolicy::MeanValue) {
        h.exponential = true;
        h.mean = mean_value_power(cfg) * var_link;
        return h;
    }
    if (std::isfinite(cfg.pmax)) {
        h.a = cfg.qp / (cfg.pmax * cfg.var_p);
        h.c = 1.0 / (cfg.pmax * var_link);
    }
    return h;
}

// 1 - F. Conditioning on the unit-exponential interference gain x gives
// P[gamma > g] = (1 - e^{-a}) e^{-c g} + int_a^inf e^{-x} e^{-x g / eta} dx.
double log_survival(const Hop& h, double g)
{
    if (g <= 0.0)
        return 0.0;
    if (h.exponential)
        return -g / h.mean;
    const double u = g / h.eta;
    return -h.c * g + std::log1p(-std::exp(-h.a) * u / (1.0 + u));
}

double survival(const Hop& h, double g) { return std::exp(log_survival(h, g)); }

// 1 - S without cancellation at small g.
double complement(double log_s) { return -std::expm1(log_s); }

double density(const Hop& h, double g)
{
    if (g < 0.0)
        return 0.0;
    if (h.exponential)
        return std::exp(-g / h.mean) / h.mean;
    const double u = g / h.eta;
    const double ea = std::exp(-h.a);
    return std::exp(-h.c * g) * (h.c * (1.0 - ea * u / (1.0 + u)) + ea / (h.eta * (1.0 + u) * (1.0 + u)));
}

Hop direct_hop(const AnalysisParams& p, const SystemConfig& cfg) { return make_hop(p.eta_sd, cfg.var_sd, cfg); }
Hop sr_hop(const AnalysisParams& p, const SystemConfig& cfg) { return make_hop(p.eta_sr, cfg.var_sr, cfg); }
Hop rd_hop(const AnalysisParams& p, const SystemConfig& cfg) { return make_hop(p.eta_rd, cfg.var_rd, cfg); }

}  // namespace

double cdf_direct(double gamma, const AnalysisParams& params, const ValidatedConfig& cfg)
{
    return complement(log_survival(direct_hop(params, *cfg), gamma));
}

double pdf_direct(double gamma, const AnalysisParams& params, const ValidatedConfig& cfg)
{
    return density(direct_hop(params, *cfg), gamma);
}

double cdf_relayed(double gamma, const AnalysisParams& params, const ValidatedConfig& cfg)
{
    if (gamma <= 0.0)
        return 0.0;
    const double single =
        complement(log_survival(sr_hop(params, *cfg), gamma) + log_survival(rd_hop(params, *cfg), gamma));
    return std::pow(single, cfg->n_relays);
}

double pdf_relayed(double gamma, const AnalysisParams& params, const ValidatedConfig& cfg)
{
    if (gamma < 0.0)
        return 0.0;
    const Hop sr = sr_hop(params, *cfg);
    const Hop rd = rd_hop(params, *cfg);
    const double s_sr = survival(sr, gamma);
    const double s_rd = survival(rd, gamma);
    const double single_cdf = complement(log_survival(sr, gamma) + log_survival(rd, gamma));
    const double single_pdf = density(sr, gamma) * s_rd + s_sr * density(rd, gamma);
    const int k = cfg->n_relays;
    const double power = k == 1 ? 1.0 : std::pow(single_cdf, k - 1);
    return k * power * single_pdf;
}

double pdf_upper(double gamma, const AnalysisParams& params, const ValidatedConfig& cfg)
{
    return pdf_relayed(gamma, params, cfg) * pdf_direct(gamma, params, cfg);
}

double pdf_exact_conv(double gamma, const AnalysisParams& params, const ValidatedConfig& cfg)
{
    if (gamma <= 0.0)
        return 0.0;
    const Hop direct = direct_hop(params, *cfg);
    auto integrand = [&](double x) { return pdf_relayed(x, params, cfg) * density(direct, gamma - x); };
    return integrate(integrand, 0.0, gamma, 1e-10).value;
}

double cdf_exact_conv(double gamma, const AnalysisParams& params, const ValidatedConfig& cfg)
{
    if (gamma <= 0.0)
        return 0.0;
    const Hop direct = direct_hop(params, *cfg);
    auto integrand = [&](double x) {
        return pdf_relayed(x, params, cfg) * complement(log_survival(direct, gamma - x));
    };
    return integrate(integrand, 0.0, gamma, 1e-10).value;
}

double pdf_mv(double gamma, const AnalysisParams& params, const ValidatedConfig& cfg)
{
    if (gamma < 0.0)
        return 0.0;
    const double m = mean_value_power(*cfg);
    const double mean_sd = m * cfg->var_sd;
    const int k = cfg->n_relays;
    double sum = 0.0;
    double binom = 1.0;
    for (int r = 0; r <= k - 1; ++r) {
        const double rate = ((r + 1) * params.z * mean_sd + 1.0) / mean_sd;
        sum += binom * ((r % 2) ? -1.0 : 1.0) * std::exp(-gamma * rate);
        binom = binom * (k - 1 - r) / (r + 1);
    }
    return k * params.z / mean_sd * sum;
}

double cdf_relayed_shared_source(double gamma, const AnalysisParams& params, const ValidatedConfig& cfg)
{
    if (gamma <= 0.0)
        return 0.0;
    const SystemConfig& c = *cfg;
    if (c.policy == PowerPolicy::MeanValue)
        return cdf_relayed(gamma, params, cfg);
    const double s_rd = survival(rd_hop(params, c), gamma);
    const int k = c.n_relays;
    // x = |h_sp|^2 / var_p ~ Exp(1); P_S = min(qp / (var_p x), pmax).
    auto conditional = [&](double x) {
        const double p_s = std::min(c.qp / (c.var_p * x), c.pmax);
        const double s_sr = std::exp(-gamma / (p_s * c.var_sr));
        return std::exp(-x) * std::pow(1.0 - s_sr * s_rd, k);
    };
    const double knee = std::isfinite(c.pmax) ? c.qp / (c.pmax * c.var_p) : 0.0;
    double total = 0.0;
    if (knee > 0.0)
        total += integrate(conditional, 0.0, knee, 1e-11).value;
    total += integrate(conditional, knee, std::numeric_limits<double>::infinity(), 1e-11).value;
    return total;
}

namespace as_printed {

namespace {

double bracket(double gamma, double eta, double qp, double pmax)
{
    // e^{-Qp/Pmax} (1 - e^{-g/eta} / (1 + g/eta)) - 1
    const double u = gamma / eta;
    return std::exp(-qp / pmax) * (1.0 - std::exp(-u) / (1.0 + u)) - 1.0;
}

double bracket_slope(double gamma, double eta)
{
    const double u = gamma / eta;
    const double e = std::exp(-u);
    return e / ((1.0 + u) * (1.0 + u) * eta) + e / ((1.0 + u) * eta);
}

}  // namespace

double cdf_direct(double gamma, double eta, double qp, double pmax)
{
    return 1.0 + std::exp(-gamma / pmax) * bracket(gamma, eta, qp, pmax);
}

double pdf_relayed(double gamma, double eta_sr, double eta_rd, double qp, double pmax, int n_relays)
{
    const double b_sr = bracket(gamma, eta_sr, qp, pmax);
    const double b_rd = bracket(gamma, eta_rd, qp, pmax);
    const double e2 = std::exp(-2.0 * gamma / pmax);
    const double brace = e2 * b_sr * b_rd;
    const double e2q = std::exp(-(2.0 * gamma + qp) / pmax);
    const double inner = 2.0 * e2 * b_sr * b_rd / pmax - e2q * bracket_slope(gamma, eta_rd) * b_sr -
                         e2q * bracket_slope(gamma, eta_sr) * b_rd;
    return n_relays * std::pow(brace, n_relays - 1) * inner;
}

}  // namespace as_printed

QuadResult integrate(const std::function<double(double)>& f, double a, double b, double rel_tol)
{
    QuadResult r;
    if (b <= a)
        return r;
    double error = 0.0;
    double l1 = 0.0;
    using gk = boost::math::quadrature::gauss_kronrod<double, 31>;
    if (std::isinf(b)) {
        r.value = gk::integrate(f, a, b, 20, rel_tol, &error, &l1);
    } else {
        // The recursive step compares an error estimate taken on [-1, 1] with a
        // tolerance in the caller's units, so short intervals never terminate.
        // Integrating over [0, 1] keeps the two within a factor of two.
        const double width = b - a;
        auto unit = [&](double t) { return width * f(a + width * t); };
        r.value = gk::integrate(unit, 0.0, 1.0, 20, rel_tol, &error, &l1);
    }
    r.error_estimate = error;
    // Absolute floor so integrals that are numerically zero still count as converged.
    r.converged = std::isfinite(r.value) && error <= std::max(rel_tol * std::abs(l1), 1e-300) * 10.0 + 1e-15;
    return r;
}

double ber_cutoff(double beta)
{
    // 0.5 e^{-beta g / 2} < 1e-13  <=>  g > 2 ln(5e12) / beta
    return 2.0 * std::log(0.5 / 1e-13) / beta;
}

QuadResult ber_quadrature(const std::function<double(double)>& pdf, double alpha, double beta,
                          double cutoff_scale)
{
    const double cut = ber_cutoff(beta) * cutoff_scale;
    auto integrand = [&](double g) { return specialfn::q_function(std::sqrt(beta * g)) * pdf(g); };
    // The Q kernel varies on a scale of 1/beta; splitting there keeps the first panel resolved.
    const double knee = std::min(cut, 4.0 / beta);
    // Q(sqrt(beta g)) has a sqrt(g) term at the origin; g = t^2 smooths it out.
    QuadResult head = integrate([&](double t) { return 2.0 * t * integrand(t * t); }, 0.0, std::sqrt(knee));
    QuadResult tail = integrate(integrand, knee, cut);
    QuadResult r;
    r.value = alpha * (head.value + tail.value);
    r.error_estimate = alpha * (head.error_estimate + tail.error_estimate);
    r.converged = head.converged && tail.converged;
    return r;
}

double ber_upper_quadrature(const AnalysisParams& params, const ValidatedConfig& cfg)
{
    return ber_quadrature([&](double g) { return pdf_upper(g, params, cfg); }, cfg->alpha, cfg->beta).value;
}

double ber_exact_quadrature(const AnalysisParams& params, const ValidatedConfig& cfg)
{
    return ber_quadrature([&](double g) { return pdf_exact_conv(g, params, cfg); }, cfg->alpha, cfg->beta)
        .value;
}

double ber_mv_closed_form(const AnalysisParams& params, const ValidatedConfig& cfg)
{
    const double m = mean_value_power(*cfg);
    const double mean_sd = m * cfg->var_sd;
    const double beta = cfg->beta;
    const int k = cfg->n_relays;
    double sum = 0.0;
    double binom = 1.0;
    for (int r = 0; r <= k - 1; ++r) {
        const double s = ((r + 1) * params.z * mean_sd + 1.0) / mean_sd;
        const double braces = 2.0 * s + beta * (1.0 + std::sqrt((beta + 2.0 * s) / beta));
        sum += binom * ((r % 2) ? -1.0 : 1.0) / braces;
        binom = binom * (k - 1 - r) / (r + 1);
    }
    // As typeset the expression carries no alpha prefactor.
    return k * params.z / mean_sd * sum;
}

MvAudit audit_mv_closed_form(const AnalysisParams& params, const ValidatedConfig& cfg)
{
    MvAudit a;
    const ValidatedConfig mv = with_policy(cfg, PowerPolicy::MeanValue);
    a.closed_form = ber_mv_closed_form(params, mv);
    a.quadrature =
        ber_quadrature([&](double g) { return pdf_mv(g, params, mv); }, mv->alpha, mv->beta).value;
    a.rel_deviation = std::abs(a.closed_form - a.quadrature) / std::abs(a.quadrature);
    a.agrees = a.rel_deviation < 1e-6;
    if (!a.agrees && mv->alpha != 1.0)
        a.note = "typeset form omits the alpha prefactor";
    return a;
}

double ber_asymptotic(const AnalysisParams& params, const ValidatedConfig& cfg)
{
    const int k = cfg->n_relays;
    const double lead = cfg->alpha * std::pow(2.0, k - 1) * specialfn::gamma_fn(k + 0.5) /
                        (std::sqrt(std::numbers::pi) * params.kappa3);
    const double spread = (params.kappa1 + params.kappa2) / (cfg->beta * params.kappa1 * params.kappa2);
    return lead * std::pow(spread, k) * std::pow(1.0 / params.gamma_bar, params.g_d);
}

std::string to_string(BerMethod method)
{
    switch (method) {
    case BerMethod::QuadratureUpper: return "QuadratureUpper";
    case BerMethod::ClosedForm15: return "ClosedForm15";
    case BerMethod::MvClosedForm17: return "MvClosedForm17";
    case BerMethod::MvQuadrature: return "MvQuadrature";
    case BerMethod::Asymptotic19: return "Asymptotic19";
    case BerMethod::ExactConvolutionQuadrature: return "ExactConvolutionQuadrature";
    }
    return "unknown";
}

BerMethod method_from_string(const std::string& text)
{
    for (BerMethod m : {BerMethod::QuadratureUpper, BerMethod::ClosedForm15, BerMethod::MvClosedForm17,
                        BerMethod::MvQuadrature, BerMethod::Asymptotic19,
                        BerMethod::ExactConvolutionQuadrature}) {
        if (to_string(m) == text)
            return m;
    }
    throw std::invalid_argument("unknown analytic method '" + text + "'");
}

double ber_at(BerMethod method, const ValidatedConfig& cfg)
{
    const AnalysisParams params = derive_params(cfg);
    switch (method) {
    case BerMethod::QuadratureUpper:
        return ber_upper_quadrature(params, cfg);
    case BerMethod::ExactConvolutionQuadrature:
        return ber_exact_quadrature(params, cfg);
    case BerMethod::ClosedForm15:
        return ber_closed_form_15(params, cfg).value;
    case BerMethod::MvClosedForm17:
        return ber_mv_closed_form(params, with_policy(cfg, PowerPolicy::MeanValue));
    case BerMethod::MvQuadrature: {
        const ValidatedConfig mv = with_policy(cfg, PowerPolicy::MeanValue);
        return ber_quadrature([&](double g) { return pdf_mv(g, params, mv); }, mv->alpha, mv->beta).value;
    }
    case BerMethod::Asymptotic19:
        return ber_asymptotic(params, cfg);
    }
    throw std::invalid_argument("ber_at: unknown method");
}

BerCurve ber_curve(BerMethod method, const ValidatedConfig& cfg, const std::vector<double>& snr_grid_db,
                   double pmax_offset_db)
{
    BerCurve curve;
    curve.method = method;
    for (double snr : snr_grid_db) {
        const ValidatedConfig point = at_reference_snr(cfg, snr, pmax_offset_db);
        curve.snr_points.push_back(snr);
        curve.values.push_back(ber_at(method, point));
    }
    return curve;
}

double fit_diversity_order(const BerCurve& curve, double lo_db, double hi_db)
{
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < curve.snr_points.size(); ++i) {
        const double s = curve.snr_points[i];
        if (s < lo_db || s > hi_db || !(curve.values[i] > 0.0))
            continue;
        xs.push_back(s / 10.0);
        ys.push_back(std::log10(curve.values[i]));
    }
    if (xs.size() < 2)
        throw std::invalid_argument("fit_diversity_order: fewer than two usable points");
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    if (sxx == 0.0)
        throw std::invalid_argument("fit_diversity_order: points share one SNR");
    return -sxy / sxx;
}

double fit_diversity_order(const BerCurve& curve)
{
    if (curve.snr_points.empty())
        throw std::invalid_argument("fit_diversity_order: empty curve");
    const double top = *std::max_element(curve.snr_points.begin(), curve.snr_points.end());
    return fit_diversity_order(curve, top - 10.0, top);
}

}  // namespace sscc::analytic
