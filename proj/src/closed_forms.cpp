#include "sscc/analytic.hpp"
#include "sscc/specialfn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace sscc::analytic {

namespace {

double binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0.0;
    double b = 1.0;
    for (int i = 1; i <= k; ++i)
        b = b * (n - k + i) / i;
    return b;
}

struct TermValue {
    double value = 0.0;
    std::optional<std::string> singular;
};

// One (r, t) term of the clustered-relay double series.
TermValue series_term(int r, int t, int n_relays, double eta_r, double eta_sd, double beta)
{
    TermValue out;
    const double pi = std::numbers::pi;
    const int n1 = 2 * r - t + 2;
    const double half_z = beta * eta_sd / 2.0;

    // sec(2 pi r - pi t) = (-1)^t for integers; csc(2 pi r - t) = -1 / sin(t), singular at t = 0.
    const double sec_term = (t % 2) ? -1.0 : 1.0;
    if (t == 0) {
        out.singular = "csc(2*pi*r - t) pole at t = 0";
        return out;
    }
    const double csc_term = -1.0 / std::sin(static_cast<double>(t));

    if (n1 == 0) {
        out.singular = "1/(2r - t + 2) pole";
        return out;
    }

    double pfq = 0.0;
    try {
        const std::array<double, 2> a{2.0, static_cast<double>(t - 2 - 2 * r)};
        const std::array<double, 2> b{t - 2.0 * r - 1.5, static_cast<double>(t - 2 * r - 1)};
        const specialfn::SeriesResult s = specialfn::hyper_pfq(a, b, half_z);
        if (!s.converged) {
            out.singular = "pFq series did not converge";
            return out;
        }
        pfq = s.value;
    } catch (const specialfn::PoleError& e) {
        out.singular = std::string("pFq parameter pole: ") + e.what();
        return out;
    }

    double erfi_term = 0.0;
    try {
        erfi_term = specialfn::erfi(std::sqrt(half_z));
    } catch (const std::overflow_error&) {
        out.singular = "erfi overflow";
        return out;
    }

    const double part_a = eta_sd * eta_sd * specialfn::gamma_fn(n1 + 0.5) * pfq /
                          (std::sqrt(pi) * n1 * std::pow(beta / 2.0, n1));
    const double part_b = std::exp(half_z) * std::sqrt(2.0 * pi * beta) * std::pow(eta_sd, n1 + 2.5) * sec_term;
    const double part_c = 2.0 * pi * std::pow(eta_sd, n1 + 2) * (n1 + 1) * (csc_term - erfi_term * sec_term);

    const double sign = ((r + t) % 2) ? -1.0 : 1.0;
    const double coef = binomial(n_relays, r) * binomial(2 * r + t + 2, t) * sign *
                        std::pow(eta_r, 2 * r + t + 2);
    out.value = coef * (part_a + part_b - part_c);
    if (!std::isfinite(out.value))
        out.singular = "term overflow";
    return out;
}

}  // namespace

ClosedForm15Report ber_closed_form_15(const AnalysisParams& params, const ValidatedConfig& cfg, int truncation)
{
    if (!cfg->clustered)
        throw std::invalid_argument("ber_closed_form_15: requires clustered relays (var_sr == var_rd)");
    if (std::isfinite(cfg->pmax))
        throw std::invalid_argument("ber_closed_form_15: requires unbounded pmax");
    if (truncation < 1)
        throw std::invalid_argument("ber_closed_form_15: truncation must be positive");

    ClosedForm15Report rep;
    rep.truncation = truncation;
    rep.pfq_signature = "2F2(2, t-2-2r; t-2r-3/2, t-2r-1; beta*eta_sd/2)";
    const int k = cfg->n_relays;
    // Beyond this t no parameter of any term sits on a pole.
    const int regular_from = 2 * k + 3;

    double sum = 0.0;
    for (int t = 0; t < truncation; ++t) {
        double block = 0.0;
        for (int r = 0; r <= k; ++r) {
            const TermValue term = series_term(r, t, k, params.eta_r, params.eta_sd, cfg->beta);
            if (term.singular) {
                rep.singular_terms.push_back({r, t, *term.singular});
                continue;
            }
            block += term.value;
        }
        sum += block;
        rep.blocks_summed = t + 1;
        rep.last_block = std::abs(block);
        if (t >= regular_from && rep.last_block < 1e-10 * std::max(std::abs(sum), 1e-300)) {
            rep.converged = true;
            break;
        }
    }
    rep.value = cfg->alpha * sum;

    rep.quadrature = ber_upper_quadrature(params, cfg);
    rep.abs_deviation = std::abs(rep.value - rep.quadrature);
    rep.rel_deviation = rep.abs_deviation / std::abs(rep.quadrature);
    rep.agrees = rep.singular_terms.empty() && rep.converged && rep.rel_deviation < 1e-6;
    return rep;
}

}  // namespace sscc::analytic
