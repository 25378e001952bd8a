#pragma once

#include "sscc/config.hpp"

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace sscc {

class ScenarioError : public std::runtime_error {
public:
    ScenarioError(int line, std::string key, const std::string& message);
    int line() const noexcept { return line_; }
    const std::string& key() const noexcept { return key_; }

private:
    int line_;
    std::string key_;
};

struct Scenario {
    ValidatedConfig cfg;
    double qp_db = 0.0;
    double pmax_offset_db = 10.0;  // +inf for unbounded peak power
    double snr_start_db = 0.0;
    double snr_stop_db = 30.0;
    double snr_step_db = 5.0;
    std::uint64_t trials = 100000;
    std::string source_text;       // verbatim file contents, for the run manifest

    std::vector<double> snr_grid() const;
};

/// Parses the flat `key = value` scenario format. Every required key must be
/// present exactly once; `#` starts a comment. Optional keys: clustered,
/// error_unit (bits | symbols).
Scenario parse_scenario_text(const std::string& text);
Scenario parse_scenario(const std::filesystem::path& path);

/// The scenario used when no file is given: qp = 0 dB, pmax 10 dB above qp,
/// one relay, unit variances, QPSK rotated by 26.6 degrees.
std::string default_scenario_text();

}  // namespace sscc
