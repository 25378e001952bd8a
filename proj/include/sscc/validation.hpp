#pragma once

#include "sscc/config.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace sscc::validation {

struct CheckResult {
    std::string id;       // "1".."10", or "scenario:<name>"
    std::string title;
    bool passed = false;
    std::string detail;   // measured statistics
    double seconds = 0.0;
};

struct SuiteOptions {
    std::uint64_t seed = 20240607;
    // Scales Monte-Carlo sample counts; 1.0 gives the full-size criteria.
    double effort = 1.0;
    unsigned workers = 0;
};

/// Two-sided Kolmogorov-Smirnov distance between the empirical CDF of
/// `samples` and `cdf`. Sorts `samples` in place.
double ks_distance(std::vector<double>& samples, const std::function<double(double)>& cdf);

/// Same statistic evaluated only at every `stride`-th order statistic. A lower
/// bound on the full distance, for CDFs that are expensive to evaluate.
double ks_distance_strided(std::vector<double>& samples, const std::function<double(double)>& cdf,
                           std::size_t stride);

CheckResult check_distributions(const SuiteOptions& opts);
CheckResult check_pdf_consistency(const SuiteOptions& opts);
CheckResult check_upper_bound(const SuiteOptions& opts);
CheckResult check_simulation_vs_exact(const SuiteOptions& opts);
CheckResult check_diversity_order(const SuiteOptions& opts);
CheckResult check_limited_feedback(const SuiteOptions& opts);
CheckResult check_relay_saturation(const SuiteOptions& opts);
CheckResult check_interference_floor(const SuiteOptions& opts);
CheckResult check_closed_form_audit(const SuiteOptions& opts);
CheckResult check_modem_round_trip(const SuiteOptions& opts);

inline constexpr int kCriterionCount = 10;

/// Runs acceptance criterion `n` (1-based).
CheckResult run_criterion(int n, const SuiteOptions& opts);

/// Checks tied to one scenario: CDF shape, PDF/CDF agreement, interference
/// constraint and bound/oracle ordering on its grid.
std::vector<CheckResult> check_scenario(const ValidatedConfig& cfg, const std::vector<double>& snr_grid_db,
                                        double pmax_offset_db, const SuiteOptions& opts);

std::string format_result(const CheckResult& r);

}  // namespace sscc::validation
