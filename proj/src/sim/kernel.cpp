#include "leasewire/sim/kernel.hpp"

#include <stdexcept>
#include <utility>

namespace leasewire::sim
{

EventId SimKernel::schedule(Duration delay, std::function<void()> fn)
{
    if (delay.ms < 0)
    {
        throw std::invalid_argument("SimKernel::schedule: negative delay");
    }
    const EventId id = m_next_id++;
    m_queue.push(Scheduled{m_now.ms + delay.ms, id, std::move(fn)});
    return id;
}

void SimKernel::cancel(EventId id)
{
    m_cancelled.insert(id);
}

bool SimKernel::pop_next_(Scheduled& out)
{
    while (!m_queue.empty())
    {
        // priority_queue has no mutable top(); the element is abandoned by
        // the pop that follows, so moving out of it is safe.
        out = std::move(const_cast<Scheduled&>(m_queue.top()));
        m_queue.pop();
        if (m_cancelled.erase(out.id) == 0)
        {
            return true;
        }
    }
    return false;
}

bool SimKernel::step()
{
    Scheduled next;
    if (!pop_next_(next))
    {
        return false;
    }
    m_now = SimTime{next.at_ms};
    ++m_processed;
    next.fn();
    return true;
}

const Trace& SimKernel::run_until(SimTime horizon)
{
    if (horizon < m_now)
    {
        throw std::invalid_argument("SimKernel::run_until: horizon in the past");
    }
    while (!m_queue.empty())
    {
        if (m_cancelled.count(m_queue.top().id) != 0)
        {
            m_queue.pop();
            continue;
        }
        if (m_queue.top().at_ms > horizon.ms)
        {
            break;
        }
        step();
    }
    m_now = horizon;
    return m_trace;
}

bool SimKernel::idle() const
{
    // Approximate: cancelled-but-unpopped events still count.  Used only by
    // sanity checks, never by scheduling decisions.
    return m_queue.empty();
}

void SimKernel::emit(std::string actor, TraceEvent event, std::string detail)
{
    m_trace.append(m_now, std::move(actor), event, std::move(detail));
}

} // namespace leasewire::sim
