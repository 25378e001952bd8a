#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sscc/runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace sscc;
namespace fs = std::filesystem;

namespace {

std::string replace_line(std::string text, const std::string& key, const std::string& line)
{
    const auto at = text.find(key + " =");
    REQUIRE(at != std::string::npos);
    const auto end = text.find('\n', at);
    return text.replace(at, end - at, line);
}

ScenarioError parse_error(const std::string& text)
{
    try {
        parse_scenario_text(text);
    } catch (const ScenarioError& e) {
        return e;
    }
    FAIL("scenario parsed without error");
    return ScenarioError(0, "", "");
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Everything after the manifest.
std::string data_lines(const std::string& csv)
{
    std::istringstream in(csv);
    std::string line;
    std::string out;
    while (std::getline(in, line))
        if (!line.starts_with('#'))
            out += line + '\n';
    return out;
}

fs::path temp_file(const std::string& name)
{
    return fs::temp_directory_path() / ("sscc_test_" + name);
}

}  // namespace

TEST_CASE("default scenario parses")
{
    const Scenario s = parse_scenario_text(default_scenario_text());
    CHECK(s.cfg->theta == doctest::Approx(26.6 * std::numbers::pi / 180.0));
    CHECK(s.cfg->qp == doctest::Approx(1.0));
    CHECK(s.cfg->pmax == doctest::Approx(10.0));
    CHECK(s.trials == 100000);
    CHECK(s.snr_grid() == std::vector<double>{0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0});
}

TEST_CASE("scenario errors name the key and line")
{
    const std::string base = default_scenario_text();

    ScenarioError e = parse_error(replace_line(base, "n_relays", "n_relays = 0"));
    CHECK(e.key() == "n_relays");
    CHECK(e.line() == 4);

    e = parse_error(base + "colour = blue\n");
    CHECK(e.key() == "colour");

    e = parse_error(base + "alpha = 2\n");
    CHECK(e.key() == "alpha");
    CHECK(std::string(e.what()).find("duplicate") != std::string::npos);

    e = parse_error(replace_line(base, "beta", "# beta removed"));
    CHECK(e.key() == "beta");

    e = parse_error(replace_line(base, "var_sd", "var_sd = one"));
    CHECK(e.key() == "var_sd");

    e = parse_error(replace_line(base, "theta_deg", "theta_deg = 90"));
    CHECK(e.key() == "theta_deg");

    e = parse_error(replace_line(base, "trials", "trials = 2.5"));
    CHECK(e.key() == "trials");
}

TEST_CASE("optional keys, comments and unbounded peak power")
{
    std::string text = replace_line(default_scenario_text(), "pmax_offset_db", "pmax_offset_db = inf  # no cap");
    text += "clustered = true\nerror_unit = symbols\n";
    const Scenario s = parse_scenario_text(text);
    CHECK(std::isinf(s.cfg->pmax));
    CHECK(s.cfg->clustered);
    CHECK(s.cfg->count_symbols);
    CHECK(parse_scenario_text(replace_line(default_scenario_text(), "trials", "trials = 1e6")).trials == 1000000);
}

TEST_CASE("CSV layout")
{
    CsvRow analytic;
    analytic.snr_db = 5.0;
    analytic.method = "QuadratureUpper";
    analytic.ber = 0.25;
    CsvRow mc = analytic;
    mc.method = kMonteCarloMethod;
    mc.snr_db = 0.0;
    mc.ci_low = 0.2;
    mc.ci_high = 0.3;
    mc.errors = 25;
    mc.bits = 100;
    CsvRow first = analytic;
    first.snr_db = 0.0;

    std::ostringstream out;
    write_csv(out, RunManifest{.subcommand = "analytic", .seed = 3}, {analytic, mc, first});
    const std::string body = data_lines(out.str());
    CHECK(body == std::string(kCsvHeader) + "\n" +
                      "0,MonteCarlo,0.25,0.2,0.3,25,100,1,csi\n"
                      "0,QuadratureUpper,0.25,,,,,1,csi\n"
                      "5,QuadratureUpper,0.25,,,,,1,csi\n");
    CHECK(out.str().starts_with("# sscc"));
    CHECK(out.str().find("# seed: 3") != std::string::npos);
}

TEST_CASE("joined table flags")
{
    CsvRow mc;
    mc.method = kMonteCarloMethod;
    mc.ber = 0.1;
    mc.ci_low = 0.09;
    mc.ci_high = 0.11;
    CsvRow upper;
    upper.method = "QuadratureUpper";
    upper.ber = 0.05;
    CsvRow exact;
    exact.method = "ExactConvolutionQuadrature";
    exact.ber = 0.1;
    const std::string t = joined_table({mc, upper, exact});
    CHECK(t == "snr_db,relay_count,policy,mc_ber,mc_ci_low,mc_ci_high,ExactConvolutionQuadrature,"
               "ExactConvolutionQuadrature_in_ci,QuadratureUpper,QuadratureUpper_in_ci,upper_below_ci\n"
               "0,1,csi,0.1,0.09,0.11,0.1,1,0.05,0,1\n");
    CHECK(joined_path("out/run.csv") == fs::path("out/run_joined.csv"));
}

TEST_CASE("runs are reproducible for a fixed seed")
{
    const Scenario s = parse_scenario_text(replace_line(default_scenario_text(), "snr_stop_db", "snr_stop_db = 10"));
    RunOptions opts;
    opts.subcommand = "compare";
    opts.seed = 5;
    opts.trials = 20000;
    opts.workers = 2;
    std::ostringstream log;
    const fs::path a = temp_file("a.csv");
    const fs::path b = temp_file("b.csv");
    REQUIRE(run_subcommand(s, opts, a, log) == 0);
    opts.workers = 1;
    REQUIRE(run_subcommand(s, opts, b, log) == 0);
    CHECK(data_lines(slurp(a)) == data_lines(slurp(b)));
    CHECK(data_lines(slurp(joined_path(a))) == data_lines(slurp(joined_path(b))));

    opts.seed = 6;
    REQUIRE(run_subcommand(s, opts, b, log) == 0);
    CHECK(data_lines(slurp(a)) != data_lines(slurp(b)));
    for (const fs::path& p : {a, b, joined_path(a), joined_path(b)})
        fs::remove(p);
}

TEST_CASE("simulate covers every relay count and policy")
{
    const Scenario s = parse_scenario_text(replace_line(default_scenario_text(), "snr_stop_db", "snr_stop_db = 5"));
    RunOptions opts;
    opts.subcommand = "simulate";
    opts.trials = 5000;
    opts.relay_counts = {1, 3};
    opts.policies = {PowerPolicy::InstantaneousCsi, PowerPolicy::MeanValue};
    const std::vector<CsvRow> rows = simulate_rows(s, opts);
    CHECK(rows.size() == 8);
    for (const CsvRow& r : rows) {
        CHECK(r.method == kMonteCarloMethod);
        CHECK(r.bits.value() == 4 * 5000);
    }
}
