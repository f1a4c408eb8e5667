/*
Purpose: The retry loop turns outages and stale routes into eventual
answers, and knows when to stop.

What this tests: Single-attempt success, crash-then-failover recovery with
exactly-once application at the new owner, no retry on app-error, the
not-owner/invalidate/re-resolve path, attempt and deadline exhaustion,
first-attempt resolution failure, and the timeout/backoff timing visible in
the trace.
*/

#include "leasewire/lock/directory.hpp"
#include "leasewire/resolve/resolver.hpp"
#include "leasewire/rpc/client.hpp"
#include "leasewire/rpc/dispatch.hpp"
#include "leasewire/rpc/frame.hpp"
#include "leasewire/sim/kernel.hpp"
#include "leasewire/sim/net.hpp"

#include "../support/check.hpp"

#include <iostream>
#include <map>
#include <memory>
#include <string>

using namespace leasewire;
using namespace leasewire::rpc;

namespace
{

// Minimal lease-fenced put server over the sim net.
struct MiniServer
{
    MiniServer(sim::Network& net, lock::LeaseDirectory& directory, std::string id)
        : dispatcher(id, &directory)
        , m_net(net)
        , m_id(std::move(id))
    {
        dispatcher.add("kv.put", Fencing::lease,
                       [this](const Request& request)
                       {
                           store[request.key] = request.value;
                           ++applies;
                           return Response{request.id, Status::ok, ""};
                       });
        dispatcher.add("kv.reject", Fencing::none,
                       [](const Request& request)
                       { return Response{request.id, Status::app_error, "nope"}; });
        m_net.add_endpoint(m_id,
                           [this](const std::string& from, const std::vector<std::uint8_t>& bytes)
                           {
                               auto reply = dispatcher.dispatch_frame(bytes);
                               m_net.send(m_id, from, std::move(reply), "resp");
                           },
                           [this] { store.clear(); });
    }

    Dispatcher dispatcher;
    std::map<std::string, std::string> store;
    int applies = 0;

private:
    sim::Network& m_net;
    std::string m_id;
};

// Scripted resolver: hands out a fixed sequence of targets, advancing on
// invalidation.
class ScriptedResolver : public resolve::ResolverBase
{
public:
    explicit ScriptedResolver(std::vector<std::optional<resolve::Resolution>> steps)
        : m_steps(std::move(steps))
    {
    }

    std::optional<resolve::Resolution> resolve(const resolve::ResolveContext&) override
    {
        const auto index = std::min(m_cursor, m_steps.size() - 1);
        return m_steps[index];
    }

    void invalidate(const lock::LeaseName& name) override
    {
        invalidated.push_back(name);
        ++m_cursor;
    }

    std::vector<lock::LeaseName> invalidated;

private:
    std::vector<std::optional<resolve::Resolution>> m_steps;
    std::size_t m_cursor = 0;
};

resolve::Resolution static_route(std::string target, std::string name)
{
    resolve::Resolution r;
    r.target = std::move(target);
    r.timeout_guess = sim::Duration{1000};
    r.resolved_name = std::move(name);
    r.valid_for = sim::Duration{1000};
    return r;
}

Request put_request(std::string key, std::string value)
{
    Request request;
    request.method = "kv.put";
    request.name = "t/1";
    request.key = std::move(key);
    request.value = std::move(value);
    return request;
}

} // namespace

int main()
{
    // Healthy owner: one attempt, applied once.
    {
        sim::SimKernel kernel;
        sim::Network net(kernel, sim::millis(10));
        lock::LeaseDirectory directory(kernel);
        MiniServer s1(net, directory, "s1");
        directory.acquire("t/1", "s1", sim::seconds(10));
        ClientSession client(kernel, net, "client");
        resolve::LeaseResolver resolver(directory);

        auto result = client.call(put_request("k", "v"), resolver);
        CHECK(result.ok());
        CHECK_EQ(result.attempts, 1u);
        CHECK_EQ(s1.applies, 1);
        CHECK_EQ(s1.store.at("k"), std::string("v"));
        CHECK_EQ(kernel.now().ms, 20); // round trip at 10 ms each way

        // The request went out carrying the lease's name and epoch.
        CHECK(kernel.trace().render().find("method=kv.put name=t/1 key=k fence=1") !=
              std::string::npos);
    }

    // Owner dies with the request in flight; the standby takes the lease
    // during backoff; the retry applies exactly once at the new owner.
    {
        sim::SimKernel kernel;
        sim::Network net(kernel, sim::millis(10));
        lock::LeaseDirectory directory(kernel);
        MiniServer s1(net, directory, "s1");
        MiniServer s2(net, directory, "s2");
        directory.acquire("t/1", "s1", sim::seconds(3));
        kernel.schedule(sim::millis(5), [&] { net.crash("s1"); });
        kernel.schedule(sim::millis(3500), [&] { directory.acquire("t/1", "s2", sim::seconds(10)); });

        ClientSession client(kernel, net, "client");
        resolve::LeaseResolver resolver(directory);
        auto result = client.call(put_request("k", "v"), resolver);

        CHECK(result.ok());
        CHECK_EQ(result.attempts, 2u);
        CHECK_EQ(s2.applies, 1);
        CHECK_EQ(s1.applies + s2.applies, 1); // exactly once, at the new owner
        CHECK_EQ(s2.store.at("k"), std::string("v"));

        // Attempt 1 timed out at the lease horizon (3 s), backoff 1 s, then
        // the retry's round trip: 3000 + 1000 + 20.
        CHECK_EQ(kernel.now().ms, 4020);
        const std::string trace = kernel.trace().render();
        CHECK(trace.find("timeout-fire") != std::string::npos);
        CHECK(trace.find("reason=crashed") != std::string::npos);
        CHECK(trace.find("fence=2") != std::string::npos); // retried under the new epoch
    }

    // app-error comes back immediately: one attempt, no retries.
    {
        sim::SimKernel kernel;
        sim::Network net(kernel, sim::millis(10));
        lock::LeaseDirectory directory(kernel);
        MiniServer s1(net, directory, "s1");
        ClientSession client(kernel, net, "client");
        ScriptedResolver resolver({static_route("s1", "t/1")});

        Request request = put_request("k", "v");
        request.method = "kv.reject";
        auto result = client.call(request, resolver);
        CHECK(!result.error.has_value());
        CHECK(result.response.status == Status::app_error);
        CHECK_EQ(result.response.value, std::string("nope"));
        CHECK_EQ(result.attempts, 1u);
        CHECK(resolver.invalidated.empty());
    }

    // not-owner: invalidate the stale route, back off, take the fresh one.
    {
        sim::SimKernel kernel;
        sim::Network net(kernel, sim::millis(10));
        lock::LeaseDirectory directory(kernel);
        MiniServer s1(net, directory, "s1");
        MiniServer s2(net, directory, "s2");
        directory.acquire("t/1", "s1", sim::seconds(30));
        ClientSession client(kernel, net, "client");

        // First route points at s2, which never owned the lease.
        ScriptedResolver resolver({static_route("s2", "t/1"), static_route("s1", "t/1")});
        auto result = client.call(put_request("k", "v"), resolver);
        CHECK(result.ok());
        CHECK_EQ(result.attempts, 2u);
        CHECK((resolver.invalidated == std::vector<lock::LeaseName>{"t/1"}));
        CHECK_EQ(s2.applies, 0); // fenced off, no side effects
        CHECK_EQ(s1.applies, 1);
    }

    // Nobody answers, non-lease routes: per-attempt timeout is the current
    // backoff, and the attempt budget runs out.
    {
        sim::SimKernel kernel;
        sim::Network net(kernel, sim::millis(10));
        lock::LeaseDirectory directory(kernel);
        ClientSession client(kernel, net, "client");
        ScriptedResolver resolver({static_route("ghost", "t/1")});

        CallPolicy policy;
        policy.max_attempts = 3;
        auto result = client.call(put_request("k", "v"), resolver, policy);
        CHECK(result.error == CallError::exhausted);
        CHECK_EQ(result.attempts, 3u);
        // attempts timed out after 1s, 1s, 2s with 1s and 2s waits between,
        // plus the final wait before the loop re-checks: all backoff-paced.
        CHECK_EQ(resolver.invalidated.size(), 3ull);
        CHECK(std::string(to_string(*result.error)) == "exhausted");
    }

    // The overall deadline cuts the loop even with attempts to spare.
    {
        sim::SimKernel kernel;
        sim::Network net(kernel, sim::millis(10));
        lock::LeaseDirectory directory(kernel);
        ClientSession client(kernel, net, "client");
        ScriptedResolver resolver({static_route("ghost", "t/1")});

        CallPolicy policy;
        policy.overall_deadline = sim::seconds(5);
        auto result = client.call(put_request("k", "v"), resolver, policy);
        CHECK(result.error == CallError::exhausted);
        CHECK(result.attempts < 16u);
        CHECK(kernel.now().ms >= 5000);
    }

    // Nothing matches on the very first attempt: the caller hears about it
    // immediately.
    {
        sim::SimKernel kernel;
        sim::Network net(kernel, sim::millis(10));
        ClientSession client(kernel, net, "client");
        ScriptedResolver resolver({std::nullopt});

        auto result = client.call(put_request("k", "v"), resolver);
        CHECK(result.error == CallError::resolution_failed);
        CHECK_EQ(result.attempts, 1u);
        CHECK_EQ(kernel.now().ms, 0); // no waiting around
        CHECK(std::string(to_string(*result.error)) == "resolution-failed");
    }

    // An expired-lease gap on a later attempt is retryable: no-match after
    // attempt 1 waits out the backoff instead of failing the call.
    {
        sim::SimKernel kernel;
        sim::Network net(kernel, sim::millis(10));
        lock::LeaseDirectory directory(kernel);
        MiniServer s1(net, directory, "s1");
        MiniServer s2(net, directory, "s2");
        directory.acquire("t/1", "s1", sim::seconds(1));
        kernel.schedule(sim::millis(5), [&] { net.crash("s1"); });
        // Lease dies at 1s; nobody re-acquires until 4.5s, so the resolver
        // reports no-match in between.
        kernel.schedule(sim::millis(4500), [&] { directory.acquire("t/1", "s2", sim::seconds(10)); });

        ClientSession client(kernel, net, "client");
        resolve::LeaseResolver resolver(directory);
        auto result = client.call(put_request("k", "v"), resolver);
        CHECK(result.ok());
        CHECK(result.attempts >= 2u);
        CHECK_EQ(s2.applies, 1);
    }

    std::cout << "call_loop_test: PASS\n";
    return 0;
}
