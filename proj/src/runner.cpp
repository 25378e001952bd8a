#include "sscc/runner.hpp"

#include "sscc/analytic.hpp"
#include "sscc/link_sim.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace sscc {

namespace {

std::vector<int> relay_counts(const Scenario& s, const RunOptions& o)
{
    return o.relay_counts.empty() ? std::vector<int>{s.cfg->n_relays} : o.relay_counts;
}

std::vector<PowerPolicy> policies(const Scenario& s, const RunOptions& o)
{
    return o.policies.empty() ? std::vector<PowerPolicy>{s.cfg->policy} : o.policies;
}

template <typename T, typename F>
std::string join(const std::vector<T>& items, F&& f)
{
    std::string out;
    for (const T& item : items)
        out += (out.empty() ? "" : ",") + f(item);
    return out;
}

std::string options_summary(const Scenario& s, const RunOptions& o)
{
    std::ostringstream out;
    out << "seed=" << o.seed << " trials=" << o.trials.value_or(s.trials)
        << " relay_counts=" << join(relay_counts(s, o), [](int k) { return std::to_string(k); })
        << " policies=" << join(policies(s, o), [](PowerPolicy p) { return to_string(p); });
    if (o.subcommand == "analytic" || o.subcommand == "compare")
        out << " methods=" << join(o.methods.empty() ? default_methods() : o.methods, [](const std::string& m) { return m; });
    if (o.subcommand == "validate" && !o.criteria.empty())
        out << " criteria=" << join(o.criteria, [](int c) { return std::to_string(c); });
    return out.str();
}

void open_output(const std::filesystem::path& path, std::ofstream& file)
{
    file.open(path);
    if (!file)
        throw std::runtime_error("cannot open output file '" + path.string() + "'");
}

}  // namespace

std::vector<std::string> default_methods()
{
    return {"QuadratureUpper", "ExactConvolutionQuadrature"};
}

std::vector<CsvRow> simulate_rows(const Scenario& scenario, const RunOptions& opts)
{
    std::vector<CsvRow> rows;
    for (int k : relay_counts(scenario, opts)) {
        for (PowerPolicy policy : policies(scenario, opts)) {
            const ValidatedConfig cfg = with_policy(with_relays(scenario.cfg, k), policy);
            SweepSpec sweep;
            sweep.snr_grid_db = scenario.snr_grid();
            sweep.pmax_offset_db = scenario.pmax_offset_db;
            sweep.trials_per_point = opts.trials.value_or(scenario.trials);
            sweep.seed = opts.seed;
            sweep.workers = opts.workers;
            for (const BerEstimate& e : estimate_ber(cfg, sweep))
                rows.push_back(to_row(e, k, policy));
        }
    }
    return rows;
}

std::vector<CsvRow> analytic_rows(const Scenario& scenario, const RunOptions& opts)
{
    std::vector<CsvRow> rows;
    const std::vector<std::string> methods = opts.methods.empty() ? default_methods() : opts.methods;
    for (const std::string& name : methods) {
        const analytic::BerMethod method = analytic::method_from_string(name);
        for (int k : relay_counts(scenario, opts)) {
            for (PowerPolicy policy : policies(scenario, opts)) {
                const ValidatedConfig cfg = with_policy(with_relays(scenario.cfg, k), policy);
                const analytic::BerCurve curve =
                    analytic::ber_curve(method, cfg, scenario.snr_grid(), scenario.pmax_offset_db);
                for (CsvRow& row : to_rows(curve, k, policy))
                    rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

std::string joined_table(const std::vector<CsvRow>& rows)
{
    using Key = std::tuple<int, PowerPolicy, double>;
    std::set<std::string> methods;
    std::map<Key, std::map<std::string, const CsvRow*>> table;
    for (const CsvRow& r : rows) {
        if (r.method != kMonteCarloMethod)
            methods.insert(r.method);
        table[{r.relay_count, r.policy, r.snr_db}][r.method] = &r;
    }

    std::ostringstream out;
    out << "snr_db,relay_count,policy,mc_ber,mc_ci_low,mc_ci_high";
    for (const std::string& m : methods)
        out << ',' << m << ',' << m << "_in_ci";
    out << ",upper_below_ci\n";
    for (const auto& [key, cells] : table) {
        const auto& [k, policy, snr] = key;
        const auto mc_it = cells.find(kMonteCarloMethod);
        const CsvRow* mc = mc_it == cells.end() ? nullptr : mc_it->second;
        out << format_number(snr) << ',' << k << ',' << to_string(policy) << ',';
        if (mc)
            out << format_number(mc->ber) << ',' << format_number(*mc->ci_low) << ',' << format_number(*mc->ci_high);
        else
            out << ",,";
        for (const std::string& m : methods) {
            const auto it = cells.find(m);
            out << ',';
            if (it == cells.end()) {
                out << ',';
                continue;
            }
            const double v = it->second->ber;
            out << format_number(v) << ',';
            if (mc)
                out << (v >= *mc->ci_low && v <= *mc->ci_high ? 1 : 0);
        }
        out << ',';
        const auto upper = cells.find(analytic::to_string(analytic::BerMethod::QuadratureUpper));
        if (mc && upper != cells.end())
            out << (upper->second->ber < *mc->ci_low ? 1 : 0);
        out << '\n';
    }
    return out.str();
}

std::filesystem::path joined_path(const std::filesystem::path& out)
{
    std::filesystem::path p = out;
    p.replace_filename(out.stem().string() + "_joined" + out.extension().string());
    return p;
}

int run_subcommand(const Scenario& scenario, const RunOptions& opts, const std::filesystem::path& out,
                   std::ostream& log)
{
    RunManifest manifest;
    manifest.subcommand = opts.subcommand;
    manifest.seed = opts.seed;
    manifest.snr_grid_db = scenario.snr_grid();
    manifest.pmax_offset_db = scenario.pmax_offset_db;
    manifest.trials = opts.trials.value_or(scenario.trials);
    manifest.options = options_summary(scenario, opts);
    manifest.scenario_text = scenario.source_text;
    manifest.timestamp = current_timestamp();

    if (opts.subcommand == "simulate" || opts.subcommand == "analytic" || opts.subcommand == "compare") {
        std::vector<CsvRow> rows;
        if (opts.subcommand != "analytic")
            rows = simulate_rows(scenario, opts);
        if (opts.subcommand != "simulate") {
            for (CsvRow& r : analytic_rows(scenario, opts))
                rows.push_back(std::move(r));
        }
        std::ofstream file;
        open_output(out, file);
        write_csv(file, manifest, rows);
        log << "wrote " << rows.size() << " rows to " << out.string() << '\n';
        if (opts.subcommand == "compare") {
            std::ofstream joined;
            open_output(joined_path(out), joined);
            write_manifest(joined, manifest);
            joined << joined_table(rows);
            log << "wrote joined table to " << joined_path(out).string() << '\n';
        }
        return 0;
    }

    if (opts.subcommand == "validate") {
        validation::SuiteOptions suite;
        suite.seed = opts.seed;
        suite.workers = opts.workers;
        if (opts.trials)
            suite.effort = static_cast<double>(*opts.trials) / 1e6;
        std::vector<int> criteria = opts.criteria;
        if (criteria.empty()) {
            for (int i = 1; i <= validation::kCriterionCount; ++i)
                criteria.push_back(i);
        }
        std::vector<validation::CheckResult> results;
        for (int c : criteria) {
            results.push_back(validation::run_criterion(c, suite));
            log << validation::format_result(results.back()) << std::endl;
        }
        for (const validation::CheckResult& r :
             validation::check_scenario(scenario.cfg, scenario.snr_grid(), scenario.pmax_offset_db, suite)) {
            results.push_back(r);
            log << validation::format_result(r) << std::endl;
        }

        std::ofstream file;
        open_output(out, file);
        write_manifest(file, manifest);
        int failed = 0;
        for (const validation::CheckResult& r : results) {
            file << validation::format_result(r) << '\n';
            failed += r.passed ? 0 : 1;
        }
        log << (failed ? std::to_string(failed) + " check(s) failed:" : std::string("all checks passed"));
        for (const validation::CheckResult& r : results) {
            if (!r.passed)
                log << ' ' << r.id;
        }
        log << '\n';
        return failed ? 1 : 0;
    }

    throw std::invalid_argument("unknown subcommand '" + opts.subcommand + "'");
}

}  // namespace sscc
