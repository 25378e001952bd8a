#pragma once

#include <span>
#include <stdexcept>

namespace sscc::specialfn {

/// Raised when an argument or series parameter sits on a pole.
class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct SeriesResult {
    double value = 0.0;
    int terms_used = 0;
    bool converged = false;
};

inline constexpr double kSeriesTol = 1e-12;
inline constexpr int kSeriesMaxTerms = 10000;

/// Gaussian tail probability P[N(0,1) > x].
double q_function(double x);

/// Imaginary error function, (2/sqrt(pi)) * sum x^(2k+1) / (k! (2k+1)).
/// Throws std::overflow_error once exp(x^2) leaves the double range.
double erfi(double x);

/// Gamma function; throws PoleError at nonpositive integers.
double gamma_fn(double x);

/// Generalized hypergeometric series pFq(a; b; z) by direct summation with
/// incremental Pochhammer ratios. Terminating series (an upper parameter
/// that is a nonpositive integer) are summed exactly over their support.
/// Throws PoleError when a lower parameter makes a term divide by zero.
SeriesResult hyper_pfq(std::span<const double> a, std::span<const double> b, double z,
                       double tol = kSeriesTol, int max_terms = kSeriesMaxTerms);

/// True when x is a nonpositive integer (to within 1e-12).
bool is_nonpositive_integer(double x);

}  // namespace sscc::specialfn
