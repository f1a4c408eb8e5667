#include "leasewire/harness/runner.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "leasewire/kv/durable_log.hpp"
#include "leasewire/kv/server.hpp"
#include "leasewire/kv/tablet.hpp"
#include "leasewire/lock/directory.hpp"
#include "leasewire/resolve/resolver.hpp"
#include "leasewire/rpc/client.hpp"
#include "leasewire/rpc/frame.hpp"
#include "leasewire/sim/kernel.hpp"
#include "leasewire/sim/net.hpp"
#include "leasewire/sim/random.hpp"

namespace leasewire::harness
{

namespace
{

constexpr int kKeyLength = 3;          // wide keyspace so repeat puts don't mask losses
constexpr sim::Duration kNaiveWait{1000};
constexpr sim::Duration kDrainTail{2000};

std::string pick_key(const WorkloadSpec& workload, sim::SplitMix64& stream)
{
    std::string key(kKeyLength, workload.key_lo);
    for (char& c : key)
    {
        c = static_cast<char>(workload.key_lo + stream.next_in(0, workload.key_hi - workload.key_lo));
    }
    return key;
}

// Everything a single run needs, wired together.  Declaration order is
// construction order; the kernel must outlive everyone scheduling on it.
struct World
{
    World(const Scenario& scenario, std::uint64_t /*seed*/)
        : kernel()
        , net(kernel, scenario.latency)
        , directory(kernel)
    {
        auto made = kv::TabletMap::make(scenario.tablets);
        if (!made.ok())
        {
            throw sim::ScenarioError("bad tablet layout: " + made.error());
        }
        map = std::move(made.value());

        // Initial tablets round-robin across the active servers; standbys
        // start empty and adopt whatever leases they find lapsed.
        std::map<std::string, std::vector<std::string>> assignment;
        for (std::size_t i = 0; i < scenario.tablets.size(); ++i)
        {
            assignment[scenario.servers[i % scenario.servers.size()]].push_back(scenario.tablets[i].id);
        }

        kv::TabletServerConfig config;
        config.lease_ttl = scenario.lease_ttl;
        config.renew_every = sim::Duration{std::max<std::int64_t>(1, scenario.lease_ttl.ms / 2)};
        config.poll_every = sim::Duration{std::clamp<std::int64_t>(scenario.lease_ttl.ms / 4, 1, 250)};

        for (const auto& id : scenario.servers)
        {
            servers.push_back(std::make_unique<kv::TabletServer>(kernel, net, directory, map, durable,
                                                                 id, assignment[id], config));
        }
        for (const auto& id : scenario.standbys)
        {
            servers.push_back(std::make_unique<kv::TabletServer>(kernel, net, directory, map, durable,
                                                                 id, std::vector<std::string>{}, config));
        }

        client = std::make_unique<rpc::ClientSession>(kernel, net, "client");

        // The admin only ever fires one-way split commands; its endpoint
        // exists so the replies land as deliveries instead of drops.
        net.add_endpoint("admin", [](const std::string&, const std::vector<std::uint8_t>&) {});
        net.set_split_handler(
            [this](const sim::FaultSpec& spec)
            {
                const kv::TabletDescriptor* tablet = map.find(spec.target);
                if (!tablet)
                {
                    throw sim::ScenarioError("split-tablet: unknown tablet " + spec.target);
                }
                auto view = directory.lookup(tablet->lease_name());
                if (!view.ok())
                {
                    return; // unowned tablet: the fault entry records the attempt
                }
                rpc::Request request{m_admin_id++, "admin.split", "", spec.target, spec.arg, 0};
                std::string label = "req id=" + std::to_string(request.id) +
                                    " method=admin.split name= key=" + request.key +
                                    " fence=0";
                net.send("admin", view.value().owner, rpc::encode_frame(request), std::move(label));
            });

        lease_resolver = std::make_shared<resolve::LeaseResolver>(directory);
        std::map<std::string, std::string> hosts;
        for (const auto& server : servers)
        {
            hosts[server->id()] = server->id();
        }
        auto static_resolver = std::make_shared<resolve::StaticResolver>(std::move(hosts));
        auto sources = std::make_shared<resolve::Chain>(std::vector<resolve::Stage>{
            resolve::as_stage(lease_resolver), resolve::as_stage(static_resolver)});
        cached = std::make_shared<resolve::CachedResolver>(sources, [this] { return kernel.now(); });
        chain = std::make_unique<resolve::Chain>(std::vector<resolve::Stage>{
            resolve::make_tablet_stage(map), resolve::as_stage(cached)});
    }

    kv::TabletServer* server_by_id(const std::string& id)
    {
        for (auto& server : servers)
        {
            if (server->id() == id)
            {
                return server.get();
            }
        }
        return nullptr;
    }

    sim::SimKernel kernel;
    sim::Network net;
    lock::LeaseDirectory directory;
    kv::TabletMap map;
    kv::DurableLog durable;
    std::vector<std::unique_ptr<kv::TabletServer>> servers;
    std::unique_ptr<rpc::ClientSession> client;

    std::shared_ptr<resolve::LeaseResolver> lease_resolver;
    std::shared_ptr<resolve::CachedResolver> cached;
    std::unique_ptr<resolve::Chain> chain;

private:
    std::uint64_t m_admin_id = 1;
};

struct KeyHistory
{
    std::string last_acked_value;
    std::uint64_t last_acked_op = 0;
    std::uint64_t last_issued_op = 0;
    bool ever_acked = false;
};

} // namespace

RunResult run_scenario(const Scenario& scenario, std::optional<std::uint64_t> seed_override)
{
    const std::uint64_t seed = seed_override.value_or(scenario.seed);

    World world(scenario, seed);
    for (const auto& spec : scenario.faults)
    {
        world.net.inject_fault(spec);
    }

    auto key_stream = sim::named_stream(seed, "workload/keys");
    auto gap_stream = sim::named_stream(seed, "workload/gaps");
    auto mix_stream = sim::named_stream(seed, "workload/mix");

    RunMetrics metrics;
    std::map<std::string, KeyHistory> history;
    std::vector<std::string> readable; // keys with at least one acked put

    const WorkloadSpec& workload = scenario.workload;
    for (std::uint64_t op = 1; op <= workload.ops; ++op)
    {
        const sim::Duration gap{gap_stream.next_in(workload.gap_min.ms, workload.gap_max.ms)};
        world.kernel.run_until(world.kernel.now() + gap);

        bool is_put = mix_stream.next_unit() < workload.put_fraction;
        std::string key;
        if (!is_put && readable.empty())
        {
            is_put = true; // nothing to read yet
        }
        if (is_put)
        {
            key = pick_key(workload, key_stream);
        }
        else
        {
            key = readable[static_cast<std::size_t>(
                key_stream.next_in(0, static_cast<std::int64_t>(readable.size()) - 1))];
        }
        const std::string method = is_put ? "kv.put" : "kv.get";
        const std::string value = is_put ? "v" + std::to_string(op) : std::string();

        ++metrics.ops_issued;
        if (is_put)
        {
            history[key].last_issued_op = op;
        }

        bool acked = false;
        const char* ack_status = "ok";
        std::uint32_t attempts = 0;

        if (scenario.mode == ClientMode::library)
        {
            rpc::Request request{0, method, "", key, value, 0};
            rpc::CallResult result = world.client->call(request, *world.chain);
            attempts = result.attempts;
            acked = result.ok();
        }
        else
        {
            // The pattern under indictment: one lookup, one send, and blind
            // faith that both stayed true.  Puts are reported as done whether
            // or not anyone answered.
            const lock::LeaseName name = kv::tablet_for_key(world.map, key);
            ++metrics.lockservice_lookups;
            auto view = world.directory.lookup(name);
            std::optional<rpc::Response> response;
            if (view.ok())
            {
                attempts = 1;
                rpc::Request request{0, method, name, key, value, 0};
                response = world.client->attempt(view.value().owner, request, kNaiveWait);
            }
            const bool answered_ok = response && response->status == rpc::Status::ok;
            if (is_put && view.ok())
            {
                acked = true;
                ack_status = answered_ok ? "ok" : "assumed";
            }
            else
            {
                acked = answered_ok;
            }
        }

        metrics.attempts_total += attempts;
        if (acked)
        {
            ++metrics.ops_acked;
            if (is_put)
            {
                KeyHistory& h = history[key];
                if (!h.ever_acked)
                {
                    readable.push_back(key);
                }
                h.ever_acked = true;
                h.last_acked_value = value;
                h.last_acked_op = op;
            }
            world.kernel.emit("client", sim::TraceEvent::ack,
                              "op=" + std::to_string(op) + " method=" + method + " key=" + key +
                                  " value=" + value + " status=" + ack_status +
                                  " attempts=" + std::to_string(attempts));
        }
    }

    // Let scheduled faults and their aftermath (expiries, takeovers) play
    // out before judging the final state.
    sim::SimTime drain_until = world.kernel.now();
    for (const auto& spec : scenario.faults)
    {
        drain_until = std::max(drain_until, spec.at, [](sim::SimTime a, sim::SimTime b) { return a.ms < b.ms; });
    }
    world.kernel.run_until(drain_until + kDrainTail);

    // The loss audit: for every key whose newest write was acknowledged,
    // that value must be present wherever authority now lies.  The live
    // lease owner's store is authoritative; with no owner, the durable log
    // is what the next owner would replay.
    for (const auto& [key, h] : history)
    {
        if (!h.ever_acked || h.last_acked_op != h.last_issued_op)
        {
            continue; // a newer unacknowledged write makes the outcome legitimately ambiguous
        }
        const kv::TabletDescriptor& tablet = world.map.tablet_for_key(key);
        auto view = world.directory.lookup(tablet.lease_name());
        bool present = false;
        if (view.ok() && world.net.alive(view.value().owner))
        {
            if (kv::TabletServer* owner = world.server_by_id(view.value().owner))
            {
                const std::string* stored = owner->stored_value(key);
                present = stored != nullptr && *stored == h.last_acked_value;
            }
        }
        else
        {
            const std::string* logged = world.durable.last_value(key);
            present = logged != nullptr && *logged == h.last_acked_value;
        }
        if (!present)
        {
            ++metrics.ops_lost;
        }
    }

    metrics.lockservice_lookups += world.lease_resolver->lookups();
    metrics.cache_hits = world.cached->hits();
    metrics.wall_events = world.kernel.events_processed();

    RunResult result;
    result.metrics = metrics;
    result.trace_text = world.kernel.trace().render();
    result.trace_hash = sim::trace_hash(world.kernel.trace());
    return result;
}

int run_demo_split(std::ostream& out)
{
    auto parsed = parse_scenario("seed 11\n"
                                 "server alpha\n"
                                 "tablet T0 - inf\n"
                                 "lease_ttl 10\n"
                                 "latency 0.01\n");
    if (!parsed.ok())
    {
        out << "demo setup failed: " << parsed.error().message << "\n";
        return 1;
    }
    World world(parsed.value(), 11);
    world.client->wait(sim::Duration{1}); // let alpha start up and take its lease

    out << "One tablet (T0, whole keyspace) owned by alpha; client caches routes.\n\n";

    auto put = [&world](const std::string& key, const std::string& value)
    {
        rpc::Request request{0, "kv.put", "", key, value, 0};
        return world.client->call(request, *world.chain);
    };

    auto first = put("apple", "fruit");
    out << "put apple: " << (first.ok() ? "ok" : "failed") << " after " << first.attempts
        << " attempt(s); the route to tablets/T0 is now cached.\n";

    // Split T0 at "m" while a write to the right half is in flight: the
    // fault lands first (its admin command is already on the wire when the
    // client sends), so the cached route goes stale mid-flight.
    sim::FaultSpec split;
    split.at = world.kernel.now();
    split.kind = sim::FaultKind::split_tablet;
    split.target = "T0";
    split.arg = "m";
    world.net.inject_fault(split);
    world.client->wait(sim::Duration{5});

    auto second = put("rose", "flower");
    out << "put rose: " << (second.ok() ? "ok" : "failed") << " after " << second.attempts
        << " attempt(s); the stale route was fenced off and the retry followed the new map.\n";

    out << "\ntablets now:";
    for (const auto& tablet : world.map.tablets())
    {
        out << " " << tablet.id << "[" << tablet.start_key << ","
            << (tablet.end_key ? *tablet.end_key : std::string("inf")) << ")";
    }
    out << "\n\ntrace:\n" << world.kernel.trace().render();

    const bool ok = first.ok() && first.attempts == 1 && second.ok() && second.attempts == 2 &&
                    world.map.tablets().size() == 2;
    out << (ok ? "\ndemo ok\n" : "\ndemo did not play out as scripted\n");
    return ok ? 0 : 1;
}

} // namespace leasewire::harness
