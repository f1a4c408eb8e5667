#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "leasewire/resolve/resolver.hpp"
#include "leasewire/rpc/backoff.hpp"
#include "leasewire/rpc/message.hpp"
#include "leasewire/sim/net.hpp"

namespace leasewire::rpc
{

enum class CallError
{
    resolution_failed, // nothing recognized the request on first resolve
    exhausted,         // attempts or the overall deadline ran out
};

const char* to_string(CallError error);

struct CallResult
{
    std::optional<CallError> error;
    Response response; // meaningful only when !error
    std::uint32_t attempts = 0;

    bool ok() const noexcept { return !error && response.status == Status::ok; }
};

// One logical caller.  Calls are serialized: each one drives the simulation
// forward until its own outcome is known, so the session is also the pump
// that keeps background activity (renewals, faults, other deliveries)
// flowing while it waits.
class ClientSession
{
public:
    ClientSession(sim::SimKernel& kernel, sim::Network& net, std::string id);

    // Single shot: send and wait out one timeout budget.  nullopt on
    // timeout.  A crashed or unreachable target looks exactly like silence.
    std::optional<Response> attempt(const std::string& target, Request request,
                                    sim::Duration timeout);

    // Resolve, send, and retry until a definitive answer.  Per-attempt
    // timeout is the lease's remaining time when the resolution carries an
    // epoch, else the current backoff.  Timeouts and not-owner replies
    // invalidate the resolved name, wait out the backoff, and re-enter the
    // whole resolver chain.  ok and app-error return immediately.
    CallResult call(const Request& request, resolve::ResolverBase& resolver,
                    const CallPolicy& policy = {});

    // Parks the session for d of simulated time without blocking the world.
    void wait(sim::Duration d);

    const std::string& id() const noexcept { return m_id; }

private:
    struct PendingSlot
    {
        std::uint64_t expected_id = 0;
        bool armed = false;
        bool timed_out = false;
        std::optional<Response> response;
    };

    void pump_until_settled_();

    sim::SimKernel& m_kernel;
    sim::Network& m_net;
    std::string m_id;
    std::uint64_t m_next_id = 1;
    PendingSlot m_slot;
};

} // namespace leasewire::rpc
