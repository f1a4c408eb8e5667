#pragma once

#include <cstdint>
#include <stdexcept>

#include "leasewire/sim/time.hpp"

namespace leasewire::rpc
{

inline constexpr sim::Duration kBackoffInitial{1000};
inline constexpr sim::Duration kBackoffCap{60000};

// Doubles, saturating at the cap: 1s, 2s, 4s, ... 32s, 60s, 60s, ...
inline sim::Duration next_backoff(sim::Duration current, sim::Duration cap = kBackoffCap)
{
    if (current.ms <= 0)
    {
        throw std::invalid_argument("next_backoff: current must be positive");
    }
    const sim::Duration doubled = current * 2;
    return doubled < cap ? doubled : cap;
}

struct CallPolicy
{
    std::uint32_t max_attempts = 16;
    sim::Duration overall_deadline{120000};
    sim::Duration initial_backoff = kBackoffInitial;
    sim::Duration backoff_cap = kBackoffCap;
};

} // namespace leasewire::rpc
