#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "leasewire/sim/time.hpp"

namespace leasewire::sim
{

enum class TraceEvent
{
    send,
    deliver,
    drop,
    timeout_fire,
    lease_grant,
    lease_expire,
    lease_release,
    fault,
    apply,
    ack,
};

const char* to_string(TraceEvent event);

struct TraceEntry
{
    SimTime at;
    std::uint64_t seq = 0;
    std::string actor;
    TraceEvent event = TraceEvent::send;
    std::string detail;

    // One line, tab-separated: <at ms> <seq> <actor> <event> <detail>.
    std::string render() const;
};

class Trace
{
public:
    void append(SimTime at, std::string actor, TraceEvent event, std::string detail);

    std::size_t size() const noexcept { return m_entries.size(); }
    bool empty() const noexcept { return m_entries.empty(); }
    const TraceEntry& operator[](std::size_t i) const { return m_entries[i]; }

    auto begin() const noexcept { return m_entries.begin(); }
    auto end() const noexcept { return m_entries.end(); }

    // Canonical text form: each entry rendered and newline-terminated.
    std::string render() const;

private:
    std::vector<TraceEntry> m_entries;
};

inline constexpr std::uint64_t kFnvOffsetBasis = 0xcbf29ce484222325ull;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ull;

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t state = kFnvOffsetBasis);

// Hash of the trace's canonical text form; an empty trace hashes to the
// FNV-1a offset basis.
std::uint64_t trace_hash(const Trace& trace);

std::string format_hash(std::uint64_t hash);

} // namespace leasewire::sim
