#pragma once

#include <stdexcept>
#include <string>

#include "leasewire/sim/time.hpp"

namespace leasewire::sim
{

enum class FaultKind
{
    crash_server,
    restart_server,
    drop_link,
    heal_link,
    split_tablet,
};

const char* to_string(FaultKind kind);

struct FaultSpec
{
    SimTime at;
    FaultKind kind = FaultKind::crash_server;
    std::string target; // entity id, or tablet id for split_tablet
    std::string arg;    // peer for link faults, split key for split_tablet
};

struct ScenarioError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

} // namespace leasewire::sim
