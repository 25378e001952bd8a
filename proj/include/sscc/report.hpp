#pragma once

#include "sscc/analytic.hpp"
#include "sscc/link_sim.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace sscc {

inline constexpr const char* kToolVersion = "0.3.0";
inline constexpr const char* kCsvHeader = "snr_db,method,ber,ci_low,ci_high,errors,bits,relay_count,policy";
inline constexpr const char* kMonteCarloMethod = "MonteCarlo";

struct CsvRow {
    double snr_db = 0.0;
    std::string method;
    double ber = 0.0;
    std::optional<double> ci_low;
    std::optional<double> ci_high;
    std::optional<std::uint64_t> errors;
    std::optional<std::uint64_t> bits;
    int relay_count = 1;
    PowerPolicy policy = PowerPolicy::InstantaneousCsi;
};

struct RunManifest {
    std::string subcommand;
    std::uint64_t seed = 0;
    std::vector<double> snr_grid_db;
    double pmax_offset_db = 10.0;
    std::uint64_t trials = 0;
    std::string options;       // effective CLI options other than the scenario
    std::string scenario_text;
    std::string timestamp;  // excluded from reproducibility comparisons
};

CsvRow to_row(const BerEstimate& est, int relay_count, PowerPolicy policy);
std::vector<CsvRow> to_rows(const analytic::BerCurve& curve, int relay_count, PowerPolicy policy);

/// Sorts by (method, snr_db) with relay_count and policy as tie-breakers.
void sort_rows(std::vector<CsvRow>& rows);

/// Writes the manifest as `# ` comment lines.
void write_manifest(std::ostream& out, const RunManifest& manifest);

/// Manifest, then the CSV header and the sorted rows.
void write_csv(std::ostream& out, const RunManifest& manifest, std::vector<CsvRow> rows);

std::string format_number(double v);
std::string current_timestamp();

}  // namespace sscc
