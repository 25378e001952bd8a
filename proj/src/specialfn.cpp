#include "sscc/specialfn.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

namespace sscc::specialfn {

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double erfi(double x)
{
    // exp(x^2) must stay representable; log(DBL_MAX) ~ 709.78.
    if (x * x > 709.0)
        throw std::overflow_error("erfi: argument " + std::to_string(x) + " overflows");
    if (x == 0.0)
        return 0.0;

    // All terms share the sign of x, so the Maclaurin sum has no cancellation.
    const double x2 = x * x;
    double power = x;  // x^(2k+1) / k!
    double sum = x;
    for (int k = 1; k < 5000; ++k) {
        power *= x2 / k;
        const double term = power / (2 * k + 1);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum))
            break;
    }
    return 2.0 / std::sqrt(std::numbers::pi) * sum;
}

bool is_nonpositive_integer(double x)
{
    if (x > 1e-12)
        return false;
    return std::abs(x - std::round(x)) < 1e-12;
}

double gamma_fn(double x)
{
    if (is_nonpositive_integer(x))
        throw PoleError("gamma_fn: pole at " + std::to_string(x));
    return std::tgamma(x);
}

SeriesResult hyper_pfq(std::span<const double> a, std::span<const double> b, double z, double tol,
                       int max_terms)
{
    // Upper bound on the number of terms when the series terminates.
    std::optional<int> last_term;
    for (double ai : a) {
        if (is_nonpositive_integer(ai)) {
            const int m = static_cast<int>(std::lround(-ai));
            if (!last_term || m < *last_term)
                last_term = m;
        }
    }

    // (b_j)_k vanishes for k > -b_j; that's a pole unless the series has already stopped.
    for (double bj : b) {
        if (!is_nonpositive_integer(bj))
            continue;
        const int n = static_cast<int>(std::lround(-bj));
        if (!last_term || *last_term > n)
            throw PoleError("hyper_pfq: lower parameter " + std::to_string(bj) +
                            " is a pole at term " + std::to_string(n + 1));
    }

    SeriesResult result;
    double term = 1.0;
    double sum = 1.0;
    result.terms_used = 1;
    if (z == 0.0 || (last_term && *last_term == 0)) {
        result.value = 1.0;
        result.converged = true;
        return result;
    }

    const int limit = last_term ? *last_term : max_terms;
    for (int k = 0; k < limit; ++k) {
        double ratio = z / (k + 1);
        for (double ai : a)
            ratio *= ai + k;
        for (double bj : b)
            ratio /= bj + k;
        term *= ratio;
        sum += term;
        ++result.terms_used;

        if (!std::isfinite(sum)) {
            result.value = sum;
            result.converged = false;
            return result;
        }
        if (!last_term) {
            const double scale = std::abs(sum) > tol ? std::abs(sum) : 1.0;
            // Only trust a small term once the term ratio has turned contracting.
            if (std::abs(term) < tol * scale && std::abs(ratio) < 1.0) {
                result.value = sum;
                result.converged = true;
                return result;
            }
        }
    }

    result.value = sum;
    result.converged = last_term.has_value();
    return result;
}

}  // namespace sscc::specialfn
