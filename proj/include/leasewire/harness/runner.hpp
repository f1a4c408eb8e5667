#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "leasewire/harness/metrics.hpp"
#include "leasewire/harness/scenario.hpp"

namespace leasewire::harness
{

struct RunResult
{
    RunMetrics metrics;
    std::string trace_text;
    std::uint64_t trace_hash = 0;
};

// Builds the world described by the scenario (lock service, tablet servers,
// network, client), drives the workload, applies faults, and audits the
// outcome.  The run is fully deterministic in (scenario, seed); pass
// seed_override to rerun the same scenario under a different seed.
RunResult run_scenario(const Scenario& scenario,
                       std::optional<std::uint64_t> seed_override = std::nullopt);

// Scripted walkthrough of a tablet split racing an in-flight write: the stale
// cached route draws a fenced rejection and the retry lands on the new child
// tablet.  Prints a narrated trace to `out`; returns 0 when the story played
// out as expected.
int run_demo_split(std::ostream& out);

} // namespace leasewire::harness
