#include "leasewire/sim/trace.hpp"

#include <array>
#include <cstdio>

namespace leasewire::sim
{

const char* to_string(TraceEvent event)
{
    switch (event)
    {
        case TraceEvent::send: return "send";
        case TraceEvent::deliver: return "deliver";
        case TraceEvent::drop: return "drop";
        case TraceEvent::timeout_fire: return "timeout-fire";
        case TraceEvent::lease_grant: return "lease-grant";
        case TraceEvent::lease_expire: return "lease-expire";
        case TraceEvent::lease_release: return "lease-release";
        case TraceEvent::fault: return "fault";
        case TraceEvent::apply: return "apply";
        case TraceEvent::ack: return "ack";
    }
    return "?";
}

std::string TraceEntry::render() const
{
    std::string line = std::to_string(at.ms);
    line += '\t';
    line += std::to_string(seq);
    line += '\t';
    line += actor;
    line += '\t';
    line += to_string(event);
    line += '\t';
    line += detail;
    return line;
}

void Trace::append(SimTime at, std::string actor, TraceEvent event, std::string detail)
{
    TraceEntry entry;
    entry.at = at;
    entry.seq = m_entries.size();
    entry.actor = std::move(actor);
    entry.event = event;
    entry.detail = std::move(detail);
    m_entries.push_back(std::move(entry));
}

std::string Trace::render() const
{
    std::string out;
    for (const auto& entry : m_entries)
    {
        out += entry.render();
        out += '\n';
    }
    return out;
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t state)
{
    for (unsigned char c : bytes)
    {
        state ^= c;
        state *= kFnvPrime;
    }
    return state;
}

std::uint64_t trace_hash(const Trace& trace)
{
    std::uint64_t state = kFnvOffsetBasis;
    for (const auto& entry : trace)
    {
        state = fnv1a64(entry.render(), state);
        state = fnv1a64("\n", state);
    }
    return state;
}

std::string format_hash(std::uint64_t hash)
{
    std::array<char, 19> buf{};
    std::snprintf(buf.data(), buf.size(), "0x%016llx", static_cast<unsigned long long>(hash));
    return buf.data();
}

} // namespace leasewire::sim
