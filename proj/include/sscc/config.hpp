#pragma once

#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sscc {

enum class PowerPolicy { InstantaneousCsi, MeanValue };

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

double db_to_linear(double db);
double linear_to_db(double linear);

std::string to_string(PowerPolicy policy);
PowerPolicy policy_from_string(const std::string& text);

// Scenario parameters in linear units. Noise is unit variance per complex sample.
struct SystemConfig {
    double qp = 1.0;          // interference cap at the primary receiver
    double pmax = 10.0;       // peak transmit power, kUnbounded allowed
    int n_relays = 1;
    double var_sd = 1.0;
    double var_sr = 1.0;
    double var_rd = 1.0;
    double var_p = 1.0;       // variance of the secondary-to-primary links
    double theta = deg_to_rad(26.6);
    double alpha = 1.0;
    double beta = 1.0;
    PowerPolicy policy = PowerPolicy::InstantaneousCsi;

    bool clustered = false;          // relays co-located: var_sr == var_rd
    bool genie_relay = false;        // relay always decodes correctly
    bool count_symbols = false;      // symbol errors instead of bit errors
    bool allow_degenerate_angle = false;

    static constexpr double noise_var = 1.0;
};

class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& message)
        : std::invalid_argument(message), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// A SystemConfig that has passed validate_config. Only validate_config builds one.
class ValidatedConfig {
public:
    const SystemConfig& get() const noexcept { return cfg_; }
    const SystemConfig* operator->() const noexcept { return &cfg_; }
    const SystemConfig& operator*() const noexcept { return cfg_; }

private:
    explicit ValidatedConfig(SystemConfig cfg) : cfg_(cfg) {}
    friend ValidatedConfig validate_config(const SystemConfig& cfg);

    SystemConfig cfg_;
};

/// Checks every scenario invariant and throws ConfigError naming the first
/// violated one.
ValidatedConfig validate_config(const SystemConfig& cfg);

/// Rebuilds the config for one point of an SNR sweep. The sweep variable is
/// qp / var_p in dB, and pmax sits `pmax_offset_db` above qp (infinite offset
/// means unbounded peak power).
ValidatedConfig at_reference_snr(const ValidatedConfig& cfg, double snr_db, double pmax_offset_db);

ValidatedConfig with_relays(const ValidatedConfig& cfg, int n_relays);
ValidatedConfig with_policy(const ValidatedConfig& cfg, PowerPolicy policy);

struct AnalysisParams {
    double eta_sd = 0.0;
    double eta_sr = 0.0;
    double eta_rd = 0.0;
    double eta_r = 0.0;      // common relay eta, meaningful when clustered
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    double kappa3 = 0.0;
    double gamma_bar = 0.0;
    double z = 0.0;          // rate of the min-hop SNR under mean-value power
    int g_d = 0;
};

/// Derived analytical constants. Uses kappa3 = 1 so that gamma_bar = eta_sd.
AnalysisParams derive_params(const ValidatedConfig& cfg);

/// Transmit power under mean-value feedback: min(qp / var_p, pmax).
double mean_value_power(const SystemConfig& cfg);

}  // namespace sscc
