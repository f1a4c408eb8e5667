#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <unordered_set>
#include <vector>

#include "leasewire/sim/time.hpp"
#include "leasewire/sim/trace.hpp"

namespace leasewire::sim
{

using EventId = std::uint64_t;

// Single-threaded discrete-event scheduler.  Events at equal times fire in
// scheduling order, so a run is a pure function of the scheduled work.
class SimKernel
{
public:
    SimTime now() const noexcept { return m_now; }

    // Schedules fn at now() + delay.  Zero delay fires before the clock
    // advances.  Negative delay is a caller bug.
    EventId schedule(Duration delay, std::function<void()> fn);

    // Cancelled events are skipped silently when popped.
    void cancel(EventId id);

    // Runs the next pending event, advancing the clock to it.  Returns
    // false when nothing is pending.
    bool step();

    // Processes every event with time <= horizon, then leaves the clock at
    // the horizon even if the queue drained early.
    const Trace& run_until(SimTime horizon);

    bool idle() const;

    void emit(std::string actor, TraceEvent event, std::string detail);

    const Trace& trace() const noexcept { return m_trace; }
    std::uint64_t events_processed() const noexcept { return m_processed; }

private:
    struct Scheduled
    {
        std::int64_t at_ms;
        EventId id;
        std::function<void()> fn;
    };

    struct FiresLater
    {
        bool operator()(const Scheduled& a, const Scheduled& b) const
        {
            if (a.at_ms != b.at_ms)
            {
                return a.at_ms > b.at_ms;
            }
            return a.id > b.id;
        }
    };

    bool pop_next_(Scheduled& out);

    std::priority_queue<Scheduled, std::vector<Scheduled>, FiresLater> m_queue;
    std::unordered_set<EventId> m_cancelled;
    SimTime m_now{};
    EventId m_next_id = 1;
    std::uint64_t m_processed = 0;
    Trace m_trace;
};

} // namespace leasewire::sim
