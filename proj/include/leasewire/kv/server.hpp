#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "leasewire/kv/durable_log.hpp"
#include "leasewire/kv/tablet.hpp"
#include "leasewire/lock/directory.hpp"
#include "leasewire/rpc/dispatch.hpp"
#include "leasewire/sim/net.hpp"

namespace leasewire::kv
{

struct TabletServerConfig
{
    sim::Duration lease_ttl{10000};
    sim::Duration renew_every{5000}; // ttl / 2 by convention
    sim::Duration poll_every{250};   // unowned-tablet pickup cadence
};

// One storage node.  Owns whatever tablet leases it can get, keeps its
// volatile store rebuildable from the durable log, and fences every
// kv operation on the lease named by the request.
//
// Recovery is not a special mode: a crashed server simply stops renewing,
// its leases lapse, and whichever server's poll next finds them unowned
// acquires and replays.  A restarted server rejoins the same way.
class TabletServer
{
public:
    TabletServer(sim::SimKernel& kernel, sim::Network& net, lock::LeaseDirectory& directory,
                 TabletMap& map, DurableLog& durable, std::string id,
                 std::vector<std::string> initial_tablets, TabletServerConfig config = {});

    const std::string& id() const noexcept { return m_id; }

    // Volatile view, for end-of-run audits.
    const std::string* stored_value(const std::string& key) const;
    const std::set<lock::LeaseName>& held_leases() const noexcept { return m_held; }

private:
    void start_();
    void renew_tick_();
    void poll_tick_();
    void try_adopt_(const TabletDescriptor& tablet);
    void recover_(const TabletDescriptor& tablet);
    void wipe_volatile_();

    rpc::Response handle_put_(const rpc::Request& request);
    rpc::Response handle_get_(const rpc::Request& request);
    rpc::Response handle_split_(const rpc::Request& request);

    sim::SimKernel& m_kernel;
    sim::Network& m_net;
    lock::LeaseDirectory& m_directory;
    TabletMap& m_map;
    DurableLog& m_durable;
    std::string m_id;
    std::vector<std::string> m_initial_tablets;
    TabletServerConfig m_config;

    rpc::Dispatcher m_dispatcher;
    std::map<std::string, std::string> m_store;
    std::set<lock::LeaseName> m_held;
};

} // namespace leasewire::kv
