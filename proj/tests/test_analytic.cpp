#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sscc/analytic.hpp"
#include "sscc/specialfn.hpp"

#include <cmath>
#include <numbers>

using namespace sscc;
namespace an = sscc::analytic;

namespace {

ValidatedConfig make(int n_relays, PowerPolicy policy = PowerPolicy::InstantaneousCsi)
{
    SystemConfig c;
    c.n_relays = n_relays;
    c.policy = policy;
    return validate_config(c);
}

// Composite Simpson on [a, b].
template <class F>
double simpson(F f, double a, double b, int n = 20000)
{
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i)
        s += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
    return s * h / 3.0;
}

// P(min(qp / g_p, pmax) * g <= gamma) with g ~ Exp(var_link), g_p ~ Exp(var_p),
// averaged over g_p by brute quadrature.
double direct_cdf_oracle(double gamma, double qp, double pmax, double var_p, double var_link)
{
    auto cond = [&](double gp) {
        const double p = std::min(qp / gp, pmax);
        return (1.0 - std::exp(-gamma / (p * var_link))) * std::exp(-gp / var_p) / var_p;
    };
    return simpson(cond, 0.0, qp / pmax) + simpson(cond, qp / pmax, 60.0 * var_p, 200000);
}

}  // namespace

TEST_CASE("direct-link CDF against brute-force averaging")
{
    const ValidatedConfig cfg = make(1);
    const AnalysisParams p = derive_params(cfg);
    CHECK(an::cdf_direct(1.0, p, cfg) == doctest::Approx(direct_cdf_oracle(1.0, 1.0, 10.0, 1.0, 1.0)).epsilon(1e-7));
    CHECK(an::cdf_direct(1.0, p, cfg) == doctest::Approx(0.504528).epsilon(1e-5));

    SystemConfig c;
    c.qp = 2.0;
    c.pmax = 3.0;
    c.var_p = 0.7;
    c.var_sd = 1.6;
    const ValidatedConfig other = validate_config(c);
    const AnalysisParams q = derive_params(other);
    for (double g : {0.1, 1.0, 4.0, 20.0})
        CHECK(an::cdf_direct(g, q, other) == doctest::Approx(direct_cdf_oracle(g, 2.0, 3.0, 0.7, 1.6)).epsilon(1e-7));
}

TEST_CASE("the typeset direct-link CDF differs")
{
    CHECK(an::as_printed::cdf_direct(1.0, 1.0, 1.0, 10.0) == doctest::Approx(0.76330).epsilon(1e-5));
}

TEST_CASE("CDF shape")
{
    for (int k = 1; k <= 4; ++k) {
        const ValidatedConfig cfg = make(k);
        const AnalysisParams p = derive_params(cfg);
        CHECK(an::cdf_relayed(0.0, p, cfg) == doctest::Approx(0.0));
        CHECK(an::cdf_relayed(1e4, p, cfg) == doctest::Approx(1.0));
        double prev = 0.0;
        for (double g = 0.01; g < 80.0; g *= 1.3) {
            const double f = an::cdf_relayed(g, p, cfg);
            CHECK(f >= prev);
            prev = f;
        }
    }
}

TEST_CASE("densities are derivatives of their CDFs")
{
    for (int k = 1; k <= 4; ++k) {
        const ValidatedConfig cfg = make(k);
        const AnalysisParams p = derive_params(cfg);
        for (double g : {0.05, 0.5, 2.0, 9.0}) {
            const double h = 1e-5 * std::max(1.0, g);
            const double fd = (an::cdf_relayed(g + h, p, cfg) - an::cdf_relayed(g - h, p, cfg)) / (2.0 * h);
            CHECK(an::pdf_relayed(g, p, cfg) == doctest::Approx(fd).epsilon(1e-6));
            const double fd_sd = (an::cdf_direct(g + h, p, cfg) - an::cdf_direct(g - h, p, cfg)) / (2.0 * h);
            CHECK(an::pdf_direct(g, p, cfg) == doctest::Approx(fd_sd).epsilon(1e-6));
        }
    }
}

TEST_CASE("mean-value direct link is exponential")
{
    const ValidatedConfig cfg = make(1, PowerPolicy::MeanValue);
    const AnalysisParams p = derive_params(cfg);
    for (double g : {0.3, 2.0})
        CHECK(an::cdf_direct(g, p, cfg) == doctest::Approx(1.0 - std::exp(-g)));
}

TEST_CASE("shared-source CDF reduces to the product form")
{
    const ValidatedConfig one = make(1);
    const ValidatedConfig mv = make(3, PowerPolicy::MeanValue);
    for (double g : {0.2, 1.0, 5.0}) {
        CHECK(an::cdf_relayed_shared_source(g, derive_params(one), one) ==
              doctest::Approx(an::cdf_relayed(g, derive_params(one), one)).epsilon(1e-7));
        CHECK(an::cdf_relayed_shared_source(g, derive_params(mv), mv) ==
              doctest::Approx(an::cdf_relayed(g, derive_params(mv), mv)).epsilon(1e-7));
    }
    const ValidatedConfig three = make(3);
    CHECK(an::cdf_relayed_shared_source(1.0, derive_params(three), three) !=
          doctest::Approx(an::cdf_relayed(1.0, derive_params(three), three)).epsilon(1e-3));
}

TEST_CASE("convolution density")
{
    const ValidatedConfig cfg = make(2);
    const AnalysisParams p = derive_params(cfg);
    const an::QuadResult mass = an::integrate([&](double g) { return an::pdf_exact_conv(g, p, cfg); }, 0.0,
                                              std::numeric_limits<double>::infinity());
    CHECK(mass.value == doctest::Approx(1.0).epsilon(1e-6));
    for (double g : {0.5, 3.0}) {
        const double h = 1e-4;
        const double fd = (an::cdf_exact_conv(g + h, p, cfg) - an::cdf_exact_conv(g - h, p, cfg)) / (2.0 * h);
        CHECK(an::pdf_exact_conv(g, p, cfg) == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("BER integral over an exponential density")
{
    // alpha int Q(sqrt(beta g)) e^{-g / mean} / mean dg = alpha (1 - sqrt(c / (1 + c))) / 2 with c = beta * mean / 2.
    const an::QuadResult r = an::ber_quadrature([](double g) { return std::exp(-g); }, 1.0, 2.0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(0.5 * (1.0 - 1.0 / std::numbers::sqrt2)).epsilon(1e-8));
    const an::QuadResult half = an::ber_quadrature([](double g) { return 0.25 * std::exp(-0.25 * g); }, 0.5, 1.0);
    const double c = 4.0 / 2.0;
    CHECK(half.value == doctest::Approx(0.25 * (1.0 - std::sqrt(c / (1.0 + c)))).epsilon(1e-8));
}

TEST_CASE("moving the cutoff does not change the BER")
{
    const ValidatedConfig cfg = make(2);
    const AnalysisParams p = derive_params(cfg);
    auto pdf = [&](double g) { return an::pdf_upper(g, p, cfg); };
    const double a = an::ber_quadrature(pdf, 1.0, 1.0, 1.0).value;
    const double b = an::ber_quadrature(pdf, 1.0, 1.0, 2.0).value;
    CHECK(a == doctest::Approx(b).epsilon(1e-8));
    CHECK(specialfn::q_function(std::sqrt(an::ber_cutoff(1.0))) < 1e-13);
}

TEST_CASE("asymptote")
{
    const ValidatedConfig one = at_reference_snr(make(1), 20.0, 10.0);
    const AnalysisParams p = derive_params(one);
    CHECK(an::ber_asymptotic(p, one) == doctest::Approx(1.0 / (p.gamma_bar * p.gamma_bar)));

    for (int k : {1, 2}) {
        const ValidatedConfig cfg = make(k);
        const double r30 = an::ber_at(an::BerMethod::Asymptotic19, at_reference_snr(cfg, 30.0, 10.0)) /
                           an::ber_at(an::BerMethod::QuadratureUpper, at_reference_snr(cfg, 30.0, 10.0));
        const double r35 = an::ber_at(an::BerMethod::Asymptotic19, at_reference_snr(cfg, 35.0, 10.0)) /
                           an::ber_at(an::BerMethod::QuadratureUpper, at_reference_snr(cfg, 35.0, 10.0));
        INFO("K = " << k << " ratio 30 dB " << r30 << " 35 dB " << r35);
        CHECK(std::abs(r35 / r30 - 1.0) < 0.2);
    }
}

TEST_CASE("diversity fit")
{
    an::BerCurve synthetic;
    for (double db = 0.0; db <= 40.0; db += 2.0) {
        synthetic.snr_points.push_back(db);
        synthetic.values.push_back(7.0 * std::pow(10.0, -3.0 * db / 10.0));
    }
    CHECK(an::fit_diversity_order(synthetic) == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(an::fit_diversity_order(synthetic, 0.0, 10.0) == doctest::Approx(3.0).epsilon(1e-10));

    const an::BerCurve asym = an::ber_curve(an::BerMethod::Asymptotic19, make(2), {10.0, 20.0, 30.0}, 10.0);
    CHECK(an::fit_diversity_order(asym, 0.0, 40.0) == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("upper-bound BER follows the product density")
{
    for (int k : {1, 3}) {
        const ValidatedConfig cfg = at_reference_snr(make(k), 15.0, 10.0);
        const AnalysisParams p = derive_params(cfg);
        const double direct = an::ber_quadrature([&](double g) { return an::pdf_upper(g, p, cfg); }, 1.0, 1.0).value;
        CHECK(an::ber_upper_quadrature(p, cfg) == doctest::Approx(direct));
        CHECK(an::ber_exact_quadrature(p, cfg) > 0.0);
    }
}

TEST_CASE("mean-value closed form")
{
    for (int k : {1, 2, 4}) {
        const ValidatedConfig cfg = make(k, PowerPolicy::MeanValue);
        const an::MvAudit a = an::audit_mv_closed_form(derive_params(cfg), cfg);
        INFO("K = " << k);
        CHECK(a.agrees);
    }
    SystemConfig c;
    c.alpha = 2.0;
    c.policy = PowerPolicy::MeanValue;
    const ValidatedConfig two = validate_config(c);
    const an::MvAudit a = an::audit_mv_closed_form(derive_params(two), two);
    CHECK_FALSE(a.agrees);
    CHECK(a.quadrature == doctest::Approx(2.0 * a.closed_form));
    CHECK_FALSE(a.note.empty());
}

TEST_CASE("clustered series preconditions")
{
    const ValidatedConfig cfg = make(1);
    CHECK_THROWS_AS(an::ber_closed_form_15(derive_params(cfg), cfg), std::invalid_argument);
}

TEST_CASE("method names round-trip")
{
    for (an::BerMethod m : {an::BerMethod::QuadratureUpper, an::BerMethod::ClosedForm15, an::BerMethod::MvClosedForm17,
                            an::BerMethod::MvQuadrature, an::BerMethod::Asymptotic19,
                            an::BerMethod::ExactConvolutionQuadrature})
        CHECK(an::method_from_string(an::to_string(m)) == m);
    CHECK_THROWS_AS(an::method_from_string("Simpson"), std::invalid_argument);
}
