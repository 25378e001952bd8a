#include "sscc/validation.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"Acceptance criteria, one PASS/FAIL line each"};
    int criterion = 0;
    sscc::validation::SuiteOptions opts;
    app.add_option("--criterion", criterion, "Run one criterion (1-10); default all");
    app.add_option("--seed", opts.seed, "Random seed")->capture_default_str();
    app.add_option("--effort", opts.effort, "Scale of Monte-Carlo sample counts")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    int failed = 0;
    for (int n = 1; n <= sscc::validation::kCriterionCount; ++n) {
        if (criterion != 0 && n != criterion)
            continue;
        const sscc::validation::CheckResult r = sscc::validation::run_criterion(n, opts);
        std::cout << sscc::validation::format_result(r) << std::endl;
        failed += r.passed ? 0 : 1;
    }
    return failed ? 1 : 0;
}
