#include "sscc/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace sscc {

ScenarioError::ScenarioError(int line, std::string key, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line), key_(std::move(key))
{
}

std::vector<double> Scenario::snr_grid() const
{
    std::vector<double> grid;
    if (snr_step_db <= 0.0)
        return {snr_start_db};
    const int n = static_cast<int>(std::floor((snr_stop_db - snr_start_db) / snr_step_db + 1e-9));
    for (int i = 0; i <= n; ++i)
        grid.push_back(snr_start_db + i * snr_step_db);
    return grid;
}

namespace {

const std::vector<std::string> kRequiredKeys = {
    "qp_db",  "pmax_offset_db", "n_relays", "var_sd",       "var_sr",       "var_rd",
    "var_p",  "theta_deg",      "alpha",    "beta",         "policy",       "genie_relay",
    "snr_start_db", "snr_stop_db", "snr_step_db", "trials",
};
const std::set<std::string> kOptionalKeys = {"clustered", "error_unit"};

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Entry {
    std::string value;
    int line = 0;
};

double parse_double(const std::string& key, const Entry& e, bool allow_inf = false)
{
    if (allow_inf && (e.value == "inf" || e.value == "+inf"))
        return kUnbounded;
    double v = 0.0;
    const char* begin = e.value.data();
    const char* end = begin + e.value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v))
        throw ScenarioError(e.line, key, key + ": cannot parse '" + e.value + "' as a number");
    return v;
}

std::int64_t parse_int(const std::string& key, const Entry& e)
{
    std::int64_t v = 0;
    const char* begin = e.value.data();
    const char* end = begin + e.value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) {
        // Accept integral values written in scientific notation, e.g. 1e6.
        const double d = parse_double(key, e);
        if (d != std::floor(d) || std::abs(d) > 9e18)
            throw ScenarioError(e.line, key, key + ": expected an integer, got '" + e.value + "'");
        return static_cast<std::int64_t>(d);
    }
    return v;
}

bool parse_bool(const std::string& key, const Entry& e)
{
    if (e.value == "true" || e.value == "1" || e.value == "yes")
        return true;
    if (e.value == "false" || e.value == "0" || e.value == "no")
        return false;
    throw ScenarioError(e.line, key, key + ": expected true/false, got '" + e.value + "'");
}

}  // namespace

Scenario parse_scenario_text(const std::string& text)
{
    std::map<std::string, Entry> entries;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ScenarioError(line_no, "", "expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const bool known = std::find(kRequiredKeys.begin(), kRequiredKeys.end(), key) != kRequiredKeys.end() ||
                           kOptionalKeys.count(key) > 0;
        if (!known)
            throw ScenarioError(line_no, key, "unknown key '" + key + "'");
        if (entries.count(key))
            throw ScenarioError(line_no, key, "duplicate key '" + key + "'");
        if (value.empty())
            throw ScenarioError(line_no, key, key + ": missing value");
        entries[key] = {value, line_no};
    }
    for (const std::string& key : kRequiredKeys) {
        if (!entries.count(key))
            throw ScenarioError(0, key, "missing key '" + key + "'");
    }

    auto get = [&](const std::string& key) -> const Entry& { return entries.at(key); };

    SystemConfig cfg;
    const double qp_db = parse_double("qp_db", get("qp_db"));
    const double offset_db = parse_double("pmax_offset_db", get("pmax_offset_db"), true);
    cfg.qp = db_to_linear(qp_db);
    cfg.pmax = std::isinf(offset_db) ? kUnbounded : cfg.qp * db_to_linear(offset_db);
    cfg.n_relays = static_cast<int>(parse_int("n_relays", get("n_relays")));
    cfg.var_sd = parse_double("var_sd", get("var_sd"));
    cfg.var_sr = parse_double("var_sr", get("var_sr"));
    cfg.var_rd = parse_double("var_rd", get("var_rd"));
    cfg.var_p = parse_double("var_p", get("var_p"));
    cfg.theta = deg_to_rad(parse_double("theta_deg", get("theta_deg")));
    cfg.alpha = parse_double("alpha", get("alpha"));
    cfg.beta = parse_double("beta", get("beta"));
    try {
        cfg.policy = policy_from_string(get("policy").value);
    } catch (const ConfigError& e) {
        throw ScenarioError(get("policy").line, "policy", e.what());
    }
    cfg.genie_relay = parse_bool("genie_relay", get("genie_relay"));
    if (entries.count("clustered"))
        cfg.clustered = parse_bool("clustered", get("clustered"));
    if (entries.count("error_unit")) {
        const Entry& e = get("error_unit");
        if (e.value != "bits" && e.value != "symbols")
            throw ScenarioError(e.line, "error_unit", "error_unit: expected bits or symbols");
        cfg.count_symbols = e.value == "symbols";
    }

    const double start = parse_double("snr_start_db", get("snr_start_db"));
    const double stop = parse_double("snr_stop_db", get("snr_stop_db"));
    const double step = parse_double("snr_step_db", get("snr_step_db"));
    if (stop < start)
        throw ScenarioError(get("snr_stop_db").line, "snr_stop_db", "snr_stop_db must be >= snr_start_db");
    if (step <= 0.0)
        throw ScenarioError(get("snr_step_db").line, "snr_step_db", "snr_step_db must be positive");
    const std::int64_t trials = parse_int("trials", get("trials"));
    if (trials <= 0)
        throw ScenarioError(get("trials").line, "trials", "trials must be positive");

    std::optional<ValidatedConfig> validated;
    try {
        validated = validate_config(cfg);
    } catch (const ConfigError& e) {
        // Map the config field back to the scenario key that set it.
        std::string key = e.field();
        if (key == "qp")
            key = "qp_db";
        else if (key == "pmax")
            key = "pmax_offset_db";
        else if (key == "theta")
            key = "theta_deg";
        const int line = entries.count(key) ? entries.at(key).line : 0;
        throw ScenarioError(line, key, key + ": " + e.what());
    }

    return Scenario{
        .cfg = *validated,
        .qp_db = qp_db,
        .pmax_offset_db = offset_db,
        .snr_start_db = start,
        .snr_stop_db = stop,
        .snr_step_db = step,
        .trials = static_cast<std::uint64_t>(trials),
        .source_text = text,
    };
}

Scenario parse_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ScenarioError(0, "", "cannot open scenario file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str());
}

std::string default_scenario_text()
{
    return "# default scenario\n"
           "qp_db = 0\n"
           "pmax_offset_db = 10\n"
           "n_relays = 1\n"
           "var_sd = 1\n"
           "var_sr = 1\n"
           "var_rd = 1\n"
           "var_p = 1\n"
           "theta_deg = 26.6\n"
           "alpha = 1\n"
           "beta = 1\n"
           "policy = csi\n"
           "genie_relay = false\n"
           "snr_start_db = 0\n"
           "snr_stop_db = 30\n"
           "snr_step_db = 5\n"
           "trials = 100000\n";
}

}  // namespace sscc
