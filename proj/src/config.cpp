#include "sscc/config.hpp"

#include <algorithm>
#include <cmath>

namespace sscc {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

std::string to_string(PowerPolicy policy)
{
    return policy == PowerPolicy::InstantaneousCsi ? "csi" : "mv";
}

PowerPolicy policy_from_string(const std::string& text)
{
    if (text == "csi" || text == "instantaneous" || text == "InstantaneousCsi")
        return PowerPolicy::InstantaneousCsi;
    if (text == "mv" || text == "mean" || text == "MeanValue")
        return PowerPolicy::MeanValue;
    throw ConfigError("policy", "unknown power policy '" + text + "' (expected csi or mv)");
}

namespace {

void require_positive_variance(const char* name, double value)
{
    if (!(value > 0.0) || !std::isfinite(value))
        throw ConfigError(name, std::string(name) + ": variance must be positive");
}

}  // namespace

ValidatedConfig validate_config(const SystemConfig& cfg)
{
    if (!(cfg.qp > 0.0) || !std::isfinite(cfg.qp))
        throw ConfigError("qp", "qp must be positive and finite");
    if (!(cfg.pmax > 0.0))
        throw ConfigError("pmax", "pmax must be positive or unbounded");
    if (cfg.n_relays < 1)
        throw ConfigError("n_relays", "n_relays must be >= 1");
    require_positive_variance("var_sd", cfg.var_sd);
    require_positive_variance("var_sr", cfg.var_sr);
    require_positive_variance("var_rd", cfg.var_rd);
    require_positive_variance("var_p", cfg.var_p);

    const double quarter_turn = std::numbers::pi / 2.0;
    if (!std::isfinite(cfg.theta) || cfg.theta < 0.0 || cfg.theta >= quarter_turn)
        throw ConfigError("theta", "theta must lie in [0, pi/2)");
    if (cfg.theta == 0.0 && !cfg.allow_degenerate_angle)
        throw ConfigError("theta", "theta = 0 removes signal space diversity (degraded mode only)");

    if (!(cfg.alpha > 0.0) || !std::isfinite(cfg.alpha))
        throw ConfigError("alpha", "alpha must be positive");
    if (!(cfg.beta > 0.0) || !std::isfinite(cfg.beta))
        throw ConfigError("beta", "beta must be positive");
    if (cfg.clustered && cfg.var_sr != cfg.var_rd)
        throw ConfigError("clustered", "clustered relays require var_sr == var_rd");

    return ValidatedConfig(cfg);
}

ValidatedConfig at_reference_snr(const ValidatedConfig& cfg, double snr_db, double pmax_offset_db)
{
    SystemConfig next = cfg.get();
    next.qp = next.var_p * db_to_linear(snr_db);
    next.pmax = std::isinf(pmax_offset_db) && pmax_offset_db > 0 ? kUnbounded
                                                                 : next.qp * db_to_linear(pmax_offset_db);
    return validate_config(next);
}

ValidatedConfig with_relays(const ValidatedConfig& cfg, int n_relays)
{
    SystemConfig next = cfg.get();
    next.n_relays = n_relays;
    return validate_config(next);
}

ValidatedConfig with_policy(const ValidatedConfig& cfg, PowerPolicy policy)
{
    SystemConfig next = cfg.get();
    next.policy = policy;
    return validate_config(next);
}

double mean_value_power(const SystemConfig& cfg) { return std::min(cfg.qp / cfg.var_p, cfg.pmax); }

AnalysisParams derive_params(const ValidatedConfig& vcfg)
{
    const SystemConfig& cfg = vcfg.get();
    AnalysisParams p;
    p.eta_sd = cfg.var_sd * cfg.qp / cfg.var_p;
    p.eta_sr = cfg.var_sr * cfg.qp / cfg.var_p;
    p.eta_rd = cfg.var_rd * cfg.qp / cfg.var_p;
    p.eta_r = cfg.clustered ? p.eta_sr : 0.5 * (p.eta_sr + p.eta_rd);

    p.kappa3 = 1.0;
    p.gamma_bar = p.eta_sd / p.kappa3;
    p.kappa1 = p.eta_sr / p.gamma_bar;
    p.kappa2 = p.eta_rd / p.gamma_bar;

    const double m = mean_value_power(cfg);
    const double mean_sr = m * cfg.var_sr;
    const double mean_rd = m * cfg.var_rd;
    p.z = (mean_sr + mean_rd) / (mean_sr * mean_rd);

    p.g_d = cfg.n_relays + 1;
    return p;
}

}  // namespace sscc
