#pragma once

#include "sscc/report.hpp"
#include "sscc/scenario.hpp"
#include "sscc/validation.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace sscc {

struct RunOptions {
    std::string subcommand;                 // simulate | analytic | compare | validate
    std::uint64_t seed = 1;
    std::optional<std::uint64_t> trials;    // overrides the scenario's trials
    std::vector<std::string> methods;       // analytic methods; empty = defaults
    std::vector<int> relay_counts;          // empty = scenario n_relays
    std::vector<PowerPolicy> policies;      // empty = scenario policy
    std::vector<int> criteria;              // validate: empty = all
    unsigned workers = 0;
};

std::vector<std::string> default_methods();

/// Monte-Carlo rows for every (relay count, policy) combination.
std::vector<CsvRow> simulate_rows(const Scenario& scenario, const RunOptions& opts);

/// Analytic rows for every (method, relay count, policy) combination.
std::vector<CsvRow> analytic_rows(const Scenario& scenario, const RunOptions& opts);

/// One line per (snr, relay count, policy): the Monte-Carlo estimate, every
/// analytic method, whether each method falls inside the Wilson interval and
/// whether the product-density curve drops below the interval.
std::string joined_table(const std::vector<CsvRow>& rows);

/// Runs one subcommand and writes its output file. Returns the process exit
/// status: nonzero when a validate check fails.
int run_subcommand(const Scenario& scenario, const RunOptions& opts, const std::filesystem::path& out,
                   std::ostream& log);

/// Path of the joined compare table written next to `out`.
std::filesystem::path joined_path(const std::filesystem::path& out);

}  // namespace sscc
