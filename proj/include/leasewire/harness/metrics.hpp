#pragma once

#include <cstdint>
#include <string>

namespace leasewire::harness
{

// Per-run counters reported by the harness.  ops_lost is the headline number:
// operations the client acknowledged whose effect is gone at end of run.
struct RunMetrics
{
    std::uint64_t ops_issued = 0;
    std::uint64_t ops_acked = 0;
    std::uint64_t ops_lost = 0;
    std::uint64_t attempts_total = 0;
    std::uint64_t lockservice_lookups = 0;
    std::uint64_t cache_hits = 0;
    std::uint64_t wall_events = 0;

    RunMetrics& operator+=(const RunMetrics& other)
    {
        ops_issued += other.ops_issued;
        ops_acked += other.ops_acked;
        ops_lost += other.ops_lost;
        attempts_total += other.attempts_total;
        lockservice_lookups += other.lockservice_lookups;
        cache_hits += other.cache_hits;
        wall_events += other.wall_events;
        return *this;
    }
};

// "ops_issued=60 ops_acked=60 ... wall_events=1520", suitable for one
// key=value metrics line.
std::string format_metrics(const RunMetrics& metrics);

} // namespace leasewire::harness
