#include "sscc/analytic.hpp"
#include "sscc/link_sim.hpp"
#include "sscc/runner.hpp"
#include "sscc/scenario.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace {

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, ',');) {
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Monte-Carlo and analytic BER for underlay cognitive DF relaying with signal space diversity"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::uint64_t seed = 1;
    std::string out_path;
    std::string methods;
    std::string relay_counts;
    std::string policies;
    std::string criteria;
    std::uint64_t trials = 0;

    for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
             {"simulate", "Monte-Carlo BER along the scenario grid"},
             {"analytic", "Analytic BER curves for the requested methods"},
             {"compare", "Monte-Carlo and analytic rows plus a joined table"},
             {"validate", "Run the acceptance checks; nonzero exit on failure"}}) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--scenario", scenario_path, "Scenario file (key = value); default scenario if omitted")
            ->check(CLI::ExistingFile);
        sub->add_option("--seed", seed, "Random seed")->capture_default_str();
        sub->add_option("--out", out_path, "Output file")->required();
        sub->add_option("--trials", trials, "Override the scenario's trials per point");
        sub->add_option("--relay-counts", relay_counts, "Comma-separated relay counts, e.g. 1,2,3");
        sub->add_option("--policies", policies, "Comma-separated power policies: csi,mv");
        if (name == "analytic" || name == "compare") {
            std::string list;
            for (const std::string& m : sscc::default_methods())
                list += (list.empty() ? "" : ",") + m;
            sub->add_option("--methods", methods, "Comma-separated analytic methods (default " + list + ")");
        }
        if (name == "validate")
            sub->add_option("--criteria", criteria, "Comma-separated criterion numbers (default all)");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        const sscc::Scenario scenario = scenario_path.empty()
                                            ? sscc::parse_scenario_text(sscc::default_scenario_text())
                                            : sscc::parse_scenario(scenario_path);
        sscc::RunOptions opts;
        opts.subcommand = app.get_subcommands().front()->get_name();
        opts.seed = seed;
        if (trials > 0)
            opts.trials = trials;
        opts.methods = split_list(methods);
        for (const std::string& m : opts.methods)
            sscc::analytic::method_from_string(m);
        for (const std::string& k : split_list(relay_counts))
            opts.relay_counts.push_back(std::stoi(k));
        for (const std::string& p : split_list(policies))
            opts.policies.push_back(sscc::policy_from_string(p));
        for (const std::string& c : split_list(criteria))
            opts.criteria.push_back(std::stoi(c));
        opts.workers = sscc::default_workers();
        return sscc::run_subcommand(scenario, opts, out_path, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
