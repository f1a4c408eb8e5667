// Command-line front end: run scenario files and print per-trial metrics,
// or play the scripted split walkthrough.
//
// Exit codes: 0 success, 1 --assert-no-loss tripped, 2 bad usage or bad
// scenario.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "leasewire/harness/runner.hpp"
#include "leasewire/sim/trace.hpp"

namespace
{

int run_command(const std::string& scenario_path, std::optional<std::uint64_t> seed_override,
                std::uint64_t trials, const std::string& trace_path,
                const std::string& mode_override, bool assert_no_loss)
{
    auto parsed = leasewire::harness::load_scenario_file(scenario_path);
    if (!parsed.ok())
    {
        std::cerr << scenario_path << ":" << parsed.error().line << ": " << parsed.error().message
                  << "\n";
        return 2;
    }
    leasewire::harness::Scenario scenario = std::move(parsed.value());
    if (mode_override == "naive")
    {
        scenario.mode = leasewire::harness::ClientMode::naive;
    }
    else if (mode_override == "library")
    {
        scenario.mode = leasewire::harness::ClientMode::library;
    }
    const std::uint64_t base_seed = seed_override.value_or(scenario.seed);

    // Open the trace file before running anything so a bad path fails fast.
    std::ofstream trace_out;
    if (!trace_path.empty())
    {
        trace_out.open(trace_path);
        if (!trace_out)
        {
            std::cerr << "cannot write trace file '" << trace_path << "'\n";
            return 2;
        }
    }

    leasewire::harness::RunMetrics total;
    std::uint64_t lossy_trials = 0;
    for (std::uint64_t trial = 0; trial < trials; ++trial)
    {
        const std::uint64_t seed = base_seed + trial;
        leasewire::harness::RunResult result;
        try
        {
            result = leasewire::harness::run_scenario(scenario, seed);
        }
        catch (const std::exception& failure)
        {
            std::cerr << "trial " << trial << " (seed " << seed << "): " << failure.what() << "\n";
            return 2;
        }
        std::cout << "trial=" << trial << " seed=" << seed << " mode="
                  << to_string(scenario.mode) << " " << format_metrics(result.metrics)
                  << " trace_hash=" << leasewire::sim::format_hash(result.trace_hash) << "\n";
        total += result.metrics;
        if (result.metrics.ops_lost > 0)
        {
            ++lossy_trials;
        }
        if (trial == 0 && trace_out.is_open())
        {
            trace_out << result.trace_text;
        }
    }
    std::cout << "TOTAL trials=" << trials << " lossy_trials=" << lossy_trials << " "
              << format_metrics(total) << "\n";

    if (assert_no_loss && total.ops_lost > 0)
    {
        std::cerr << "loss detected: " << total.ops_lost << " acknowledged write(s) gone\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"lease-routed key/value simulation harness"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::optional<std::uint64_t> seed_override;
    std::uint64_t trials = 1;
    std::string trace_path;
    std::string mode_override;
    bool assert_no_loss = false;

    CLI::App* run = app.add_subcommand("run", "run a scenario file");
    run->add_option("--scenario", scenario_path, "scenario file")->required();
    run->add_option("--seed", seed_override, "override the scenario seed (trial i uses seed+i)");
    run->add_option("--trials", trials, "number of trials (at least 1)");
    run->add_option("--trace", trace_path, "write the first trial's trace to this file");
    run->add_option("--mode", mode_override, "override the client mode")
        ->check(CLI::IsMember({"naive", "library"}));
    run->add_flag("--assert-no-loss", assert_no_loss, "exit 1 if any acknowledged write is lost");

    CLI::App* demo = app.add_subcommand("demo", "narrated walkthroughs");
    std::string which = "split";
    demo->add_option("which", which, "walkthrough name")->check(CLI::IsMember({"split"}));

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (run->parsed())
    {
        if (trials == 0)
        {
            std::cerr << "--trials must be at least 1\n";
            return 2;
        }
        return run_command(scenario_path, seed_override, trials, trace_path, mode_override,
                           assert_no_loss);
    }
    return leasewire::harness::run_demo_split(std::cout);
}
