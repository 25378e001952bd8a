#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sscc/specialfn.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

using namespace sscc::specialfn;

TEST_CASE("Q function values")
{
    CHECK(q_function(0.0) == doctest::Approx(0.5));
    CHECK(q_function(1.0) == doctest::Approx(0.158655253931457).epsilon(1e-12));
    CHECK(q_function(3.0) == doctest::Approx(1.3498980316301e-3).epsilon(1e-10));
    CHECK(q_function(10.0) == doctest::Approx(7.61985302416e-24).epsilon(1e-9));
}

TEST_CASE("Q function symmetry and monotonicity")
{
    double prev = 1.0;
    for (double x = -6.0; x <= 6.0; x += 0.25) {
        CHECK(q_function(x) + q_function(-x) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(q_function(x) < prev);
        prev = q_function(x);
    }
}

TEST_CASE("erfi values")
{
    CHECK(erfi(0.0) == 0.0);
    CHECK(erfi(1.0) == doctest::Approx(1.65042575879754).epsilon(1e-12));
    CHECK(erfi(0.5) == doctest::Approx(0.614952094696511).epsilon(1e-12));
    CHECK(erfi(-0.5) == doctest::Approx(-0.614952094696511).epsilon(1e-12));
}

TEST_CASE("erfi derivative is 2/sqrt(pi) exp(x^2)")
{
    for (double x : {0.3, 1.2, 2.5, 4.0}) {
        const double h = 1e-5;
        const double fd = (erfi(x + h) - erfi(x - h)) / (2.0 * h);
        CHECK(fd == doctest::Approx(2.0 / std::sqrt(std::numbers::pi) * std::exp(x * x)).epsilon(1e-7));
    }
}

TEST_CASE("erfi overflow is reported")
{
    CHECK_THROWS_AS(erfi(30.0), std::overflow_error);
}

TEST_CASE("gamma function")
{
    const double sqrt_pi = std::sqrt(std::numbers::pi);
    CHECK(gamma_fn(2.5) == doctest::Approx(0.75 * sqrt_pi));
    CHECK(gamma_fn(0.5) == doctest::Approx(sqrt_pi));
    CHECK(gamma_fn(-0.5) == doctest::Approx(-2.0 * sqrt_pi));
    CHECK(gamma_fn(6.0) == doctest::Approx(120.0));
    CHECK_THROWS_AS(gamma_fn(0.0), PoleError);
    CHECK_THROWS_AS(gamma_fn(-3.0), PoleError);
}

TEST_CASE("nonpositive integer detection")
{
    CHECK(is_nonpositive_integer(0.0));
    CHECK(is_nonpositive_integer(-4.0));
    CHECK_FALSE(is_nonpositive_integer(-4.5));
    CHECK_FALSE(is_nonpositive_integer(1.0));
}

TEST_CASE("pFq reduces to elementary functions")
{
    const std::array<double, 1> one{1.0};
    SUBCASE("1F1(1; 1; z) = e^z")
    {
        const SeriesResult r = hyper_pfq(one, one, 0.5);
        CHECK(r.converged);
        CHECK(r.value == doctest::Approx(std::exp(0.5)).epsilon(1e-12));
    }
    SUBCASE("0F0(; ; z) = e^z")
    {
        const SeriesResult r = hyper_pfq({}, {}, -1.3);
        CHECK(r.value == doctest::Approx(std::exp(-1.3)).epsilon(1e-12));
    }
    SUBCASE("2F1(1, 1; 2; z) = -ln(1 - z) / z")
    {
        const std::array<double, 2> a{1.0, 1.0};
        const std::array<double, 1> b{2.0};
        const SeriesResult r = hyper_pfq(a, b, 0.5);
        CHECK(r.converged);
        CHECK(r.value == doctest::Approx(-std::log(0.5) / 0.5).epsilon(1e-11));
    }
    SUBCASE("3F2 against an independent value")
    {
        const std::array<double, 3> a{1.0, 2.0, 3.0};
        const std::array<double, 2> b{4.0, 5.0};
        CHECK(hyper_pfq(a, b, 0.3).value == doctest::Approx(1.10264431319064).epsilon(1e-12));
    }
    SUBCASE("z = 0 gives 1")
    {
        CHECK(hyper_pfq(one, one, 0.0).value == 1.0);
    }
}

TEST_CASE("terminating pFq is a polynomial")
{
    // 2F1(-2, 1; 1; z) = (1 - z)^2
    const std::array<double, 2> a{-2.0, 1.0};
    const std::array<double, 1> b{1.0};
    for (double z : {-3.0, 0.25, 7.0}) {
        const SeriesResult r = hyper_pfq(a, b, z);
        CHECK(r.converged);
        CHECK(r.terms_used == 3);
        CHECK(r.value == doctest::Approx((1.0 - z) * (1.0 - z)));
    }
}

TEST_CASE("lower-parameter poles")
{
    const std::array<double, 1> a{1.0};
    const std::array<double, 1> b{-2.0};
    CHECK_THROWS_AS(hyper_pfq(a, b, 0.5), PoleError);

    // The series stops after the z^1 term, before (b)_k reaches zero.
    const std::array<double, 2> a_stop{-1.0, 1.0};
    const SeriesResult r = hyper_pfq(a_stop, b, 0.5);
    CHECK(r.value == doctest::Approx(1.0 + 0.5 * (-1.0) * 1.0 / (-2.0)));
}

TEST_CASE("divergent pFq reports non-convergence")
{
    // 2F0 has zero radius of convergence.
    const std::array<double, 2> a{1.5, 2.5};
    const SeriesResult r = hyper_pfq(a, {}, 3.0, kSeriesTol, 200);
    CHECK_FALSE(r.converged);
}
