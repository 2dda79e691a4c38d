#include <iostream>

#include "CLI11.hpp"
#include "pdestab_cli/commands.hpp"

using namespace pdestab;
using namespace pdestab::cli;

int main(int argc, char** argv) {
    CLI::App app{"Certify and simulate boundary feedback for 1-D reaction-diffusion equations"};
    app.require_subcommand(1);

    std::string scenario_ref;
    std::vector<std::string> overrides;
    auto scenario_args = [&](CLI::App* sub) {
        sub->add_option("scenario", scenario_ref, "Scenario file, or the builtin name " + std::string(kBuiltinScenario))
            ->required();
        sub->add_option("--set", overrides, "Override a scenario field, key=value (repeatable)");
    };

    auto* certify = app.add_subcommand("certify", "Check the stabilization hypotheses and print the certificate");
    scenario_args(certify);

    std::string method = "fd";
    std::string prefix;
    auto* simulate = app.add_subcommand("simulate", "Integrate the closed loop and write CSV traces");
    scenario_args(simulate);
    simulate->add_option("--method", method, "fd or spectral")->check(CLI::IsMember({"fd", "spectral"}));
    simulate->add_option("--out", prefix, "Output prefix for <prefix>_trace.csv and <prefix>_snapshots.csv")
        ->required();

    std::string trace_prefix;
    auto* verify = app.add_subcommand("verify", "Check the decay estimates along a saved trace");
    scenario_args(verify);
    verify->add_option("--trace", trace_prefix, "Prefix used by simulate --out")->required();

    std::string suite_name = "all";
    SuiteOptions suite_opts;
    auto* properties = app.add_subcommand("properties", "Run the seeded inequality property suites");
    properties->add_option("--suite", suite_name, "wirtinger, boundary, agmon or all")
        ->check(CLI::IsMember({"wirtinger", "boundary", "agmon", "all"}));
    properties->add_option("--trials", suite_opts.trials, "Trials per suite")->check(CLI::PositiveNumber);
    properties->add_option("--seed", suite_opts.seed, "Generator seed");

    std::string batch_dir;
    auto* batch = app.add_subcommand("batch", "Certify, simulate and verify every scenario file in a directory");
    batch->add_option("dir", batch_dir, "Directory of scenario files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : int{input_error};
    }

    if (properties->parsed()) {
        return run_properties(*parse_property_suite(suite_name), suite_opts, std::cout);
    }
    if (batch->parsed()) return run_batch(batch_dir, std::cout, std::cerr);

    Scenario s;
    try {
        s = load_scenario(scenario_ref, overrides);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    if (certify->parsed()) return run_certify(s, std::cout, std::cerr);
    if (simulate->parsed()) {
        return run_simulate(s, method == "fd" ? Method::fd : Method::spectral, prefix, std::cout, std::cerr);
    }
    return run_verify(s, trace_prefix, std::cout, std::cerr);
}
