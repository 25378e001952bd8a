#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sscc/config.hpp"

#include <cmath>
#include <numbers>

using namespace sscc;

namespace {

std::string rejected_field(SystemConfig c)
{
    try {
        validate_config(c);
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "";
}

}  // namespace

TEST_CASE("dB conversions")
{
    CHECK(db_to_linear(10.0) == doctest::Approx(10.0));
    CHECK(db_to_linear(-2.0) == doctest::Approx(0.6309573444801932));
    CHECK(linear_to_db(100.0) == doctest::Approx(20.0));
    for (double x : {-7.5, 0.0, 3.0, 41.0})
        CHECK(linear_to_db(db_to_linear(x)) == doctest::Approx(x));
}

TEST_CASE("policy names round-trip")
{
    CHECK(to_string(PowerPolicy::InstantaneousCsi) == "csi");
    CHECK(to_string(PowerPolicy::MeanValue) == "mv");
    CHECK(policy_from_string("mv") == PowerPolicy::MeanValue);
    CHECK_THROWS_AS(policy_from_string("perfect"), ConfigError);
}

TEST_CASE("the default config validates")
{
    const ValidatedConfig v = validate_config(SystemConfig{});
    CHECK(v->n_relays == 1);
    CHECK(v->theta == doctest::Approx(26.6 * std::numbers::pi / 180.0));
}

TEST_CASE("invalid configs name the offending field")
{
    SystemConfig c;
    c.n_relays = 0;
    CHECK(rejected_field(c) == "n_relays");

    c = {};
    c.var_rd = -1.0;
    CHECK(rejected_field(c) == "var_rd");

    c = {};
    c.var_p = 0.0;
    CHECK(rejected_field(c) == "var_p");

    c = {};
    c.qp = 0.0;
    CHECK(rejected_field(c) == "qp");

    c = {};
    c.pmax = -1.0;
    CHECK(rejected_field(c) == "pmax");

    c = {};
    c.alpha = 0.0;
    CHECK(rejected_field(c) == "alpha");

    c = {};
    c.beta = -2.0;
    CHECK(rejected_field(c) == "beta");

    c = {};
    c.theta = std::numbers::pi / 2.0;
    CHECK(rejected_field(c) == "theta");

    c = {};
    c.theta = 0.0;
    CHECK(rejected_field(c) == "theta");
    c.allow_degenerate_angle = true;
    CHECK(rejected_field(c).empty());

    c = {};
    c.clustered = true;
    c.var_sr = 2.0;
    CHECK(rejected_field(c) == "clustered");
    c.var_rd = 2.0;
    CHECK(rejected_field(c).empty());
}

TEST_CASE("unbounded peak power is accepted")
{
    SystemConfig c;
    c.pmax = kUnbounded;
    CHECK(std::isinf(validate_config(c)->pmax));
}

TEST_CASE("derived parameters")
{
    SystemConfig c;
    c.qp = 3.0;
    c.pmax = 5.0;
    c.var_p = 1.5;
    c.var_sd = 2.0;
    c.var_sr = 0.5;
    c.var_rd = 4.0;
    c.n_relays = 3;
    const AnalysisParams p = derive_params(validate_config(c));
    CHECK(p.eta_sd == doctest::Approx(4.0));
    CHECK(p.eta_sr == doctest::Approx(1.0));
    CHECK(p.eta_rd == doctest::Approx(8.0));
    CHECK(p.kappa3 == 1.0);
    CHECK(p.gamma_bar == doctest::Approx(4.0));
    CHECK(p.kappa1 == doctest::Approx(0.25));
    CHECK(p.kappa2 == doctest::Approx(2.0));
    CHECK(p.g_d == 4);
    // Mean-value power min(3 / 1.5, 5) = 2; hop means 1 and 8; z = 1/1 + 1/8.
    CHECK(p.z == doctest::Approx(1.125));
}

TEST_CASE("kappas reproduce gamma_bar")
{
    SystemConfig c;
    c.qp = 7.0;
    c.var_sr = 3.0;
    c.var_rd = 0.2;
    const AnalysisParams p = derive_params(validate_config(c));
    CHECK(p.eta_sr / p.kappa1 == doctest::Approx(p.gamma_bar));
    CHECK(p.eta_rd / p.kappa2 == doctest::Approx(p.gamma_bar));
    CHECK(p.eta_sd / p.kappa3 == doctest::Approx(p.gamma_bar));
}

TEST_CASE("mean-value power is capped by pmax")
{
    SystemConfig c;
    c.qp = 10.0;
    c.var_p = 2.0;
    c.pmax = 3.0;
    CHECK(mean_value_power(c) == doctest::Approx(3.0));
    c.pmax = 100.0;
    CHECK(mean_value_power(c) == doctest::Approx(5.0));
}

TEST_CASE("reference SNR sets qp and pmax")
{
    SystemConfig c;
    c.var_p = 2.0;
    const ValidatedConfig base = validate_config(c);
    const ValidatedConfig at = at_reference_snr(base, 20.0, 10.0);
    CHECK(at->qp == doctest::Approx(200.0));
    CHECK(at->pmax == doctest::Approx(2000.0));
    CHECK(std::isinf(at_reference_snr(base, 5.0, kUnbounded)->pmax));
    CHECK(derive_params(at).gamma_bar == doctest::Approx(100.0));
}

TEST_CASE("with_relays and with_policy revalidate")
{
    const ValidatedConfig base = validate_config(SystemConfig{});
    CHECK(with_relays(base, 4)->n_relays == 4);
    CHECK_THROWS_AS(with_relays(base, 0), ConfigError);
    CHECK(with_policy(base, PowerPolicy::MeanValue)->policy == PowerPolicy::MeanValue);
}
