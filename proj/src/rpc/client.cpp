#include "leasewire/rpc/client.hpp"

#include <stdexcept>

#include "leasewire/rpc/frame.hpp"

namespace leasewire::rpc
{

const char* to_string(CallError error)
{
    switch (error)
    {
        case CallError::resolution_failed: return "resolution-failed";
        case CallError::exhausted: return "exhausted";
    }
    return "?";
}

ClientSession::ClientSession(sim::SimKernel& kernel, sim::Network& net, std::string id)
    : m_kernel(kernel)
    , m_net(net)
    , m_id(std::move(id))
{
    m_net.add_endpoint(m_id,
                       [this](const std::string&, const std::vector<std::uint8_t>& bytes)
                       {
                           Message message;
                           try
                           {
                               message = decode_frame(bytes);
                           }
                           catch (const MalformedFrame&)
                           {
                               return;
                           }
                           const auto* response = std::get_if<Response>(&message);
                           if (response == nullptr)
                           {
                               return;
                           }
                           // Replies to abandoned attempts still arrive and
                           // are traced as deliveries; they just no longer
                           // have a waiter.
                           if (m_slot.armed && response->id == m_slot.expected_id)
                           {
                               m_slot.response = *response;
                           }
                       });
}

void ClientSession::pump_until_settled_()
{
    while (m_slot.armed && !m_slot.response && !m_slot.timed_out)
    {
        if (!m_kernel.step())
        {
            throw std::logic_error("ClientSession: simulation drained while waiting");
        }
    }
}

std::optional<Response> ClientSession::attempt(const std::string& target, Request request,
                                               sim::Duration timeout)
{
    if (timeout.ms <= 0)
    {
        throw std::invalid_argument("ClientSession::attempt: timeout must be positive");
    }

    request.id = m_next_id++;
    m_slot = PendingSlot{};
    m_slot.expected_id = request.id;
    m_slot.armed = true;

    std::string label = "req id=" + std::to_string(request.id) + " method=" + request.method +
                        " name=" + request.name + " key=" + request.key +
                        " fence=" + std::to_string(request.fence);
    m_net.send(m_id, target, encode_frame(request), std::move(label));

    const auto timeout_id = m_kernel.schedule(
        timeout,
        [this, id = request.id, target, timeout]()
        {
            if (m_slot.armed && m_slot.expected_id == id && !m_slot.response)
            {
                m_slot.timed_out = true;
                m_kernel.emit(m_id, sim::TraceEvent::timeout_fire,
                              "id=" + std::to_string(id) + " target=" + target +
                                  " waited_ms=" + sim::to_string(timeout));
            }
        });

    pump_until_settled_();

    auto response = m_slot.response;
    if (response)
    {
        m_kernel.cancel(timeout_id);
    }
    m_slot = PendingSlot{};
    return response;
}

void ClientSession::wait(sim::Duration d)
{
    bool woke = false;
    m_kernel.schedule(d, [&woke]() { woke = true; });
    while (!woke)
    {
        if (!m_kernel.step())
        {
            throw std::logic_error("ClientSession: simulation drained while sleeping");
        }
    }
}

CallResult ClientSession::call(const Request& request, resolve::ResolverBase& resolver,
                               const CallPolicy& policy)
{
    resolve::ResolveContext ctx;
    ctx.method = request.method;
    if (!request.name.empty())
    {
        ctx.name = request.name;
    }
    if (!request.key.empty())
    {
        ctx.key = request.key;
    }

    const sim::SimTime start = m_kernel.now();
    sim::Duration backoff = policy.initial_backoff;
    CallResult result;

    for (std::uint32_t attempt_no = 1; attempt_no <= policy.max_attempts; ++attempt_no)
    {
        if (m_kernel.now() - start >= policy.overall_deadline)
        {
            break;
        }
        result.attempts = attempt_no;

        auto resolution = resolver.resolve(ctx);
        if (!resolution)
        {
            // An unresolvable first attempt is a caller error; later ones
            // are transient (an expired lease nobody has re-acquired yet).
            if (attempt_no == 1)
            {
                result.error = CallError::resolution_failed;
                return result;
            }
            wait(backoff);
            backoff = next_backoff(backoff, policy.backoff_cap);
            continue;
        }

        Request stamped = request;
        stamped.name = resolution->resolved_name;
        stamped.fence = resolution->epoch.value_or(0);
        const sim::Duration timeout =
            resolution->epoch ? resolution->timeout_guess : backoff;

        auto response = attempt(resolution->target, stamped, timeout);
        if (response && response->status != Status::not_owner)
        {
            result.response = *response;
            return result;
        }

        resolver.invalidate(resolution->resolved_name);
        wait(backoff);
        backoff = next_backoff(backoff, policy.backoff_cap);
    }

    result.error = CallError::exhausted;
    return result;
}

} // namespace leasewire::rpc
