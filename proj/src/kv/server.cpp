#include "leasewire/kv/server.hpp"

#include "leasewire/rpc/frame.hpp"

namespace leasewire::kv
{

TabletServer::TabletServer(sim::SimKernel& kernel, sim::Network& net,
                           lock::LeaseDirectory& directory, TabletMap& map, DurableLog& durable,
                           std::string id, std::vector<std::string> initial_tablets,
                           TabletServerConfig config)
    : m_kernel(kernel)
    , m_net(net)
    , m_directory(directory)
    , m_map(map)
    , m_durable(durable)
    , m_id(std::move(id))
    , m_initial_tablets(std::move(initial_tablets))
    , m_config(config)
    , m_dispatcher(m_id, &directory)
{
    m_dispatcher.add("kv.put", rpc::Fencing::lease,
                     [this](const rpc::Request& r) { return handle_put_(r); });
    m_dispatcher.add("kv.get", rpc::Fencing::lease,
                     [this](const rpc::Request& r) { return handle_get_(r); });
    m_dispatcher.add("admin.split", rpc::Fencing::none,
                     [this](const rpc::Request& r) { return handle_split_(r); });

    m_net.add_endpoint(
        m_id,
        [this](const std::string& from, const std::vector<std::uint8_t>& bytes)
        {
            auto reply = m_dispatcher.dispatch_frame(bytes);
            auto message = rpc::decode_frame(reply);
            const auto& response = std::get<rpc::Response>(message);
            std::string label = "resp id=" + std::to_string(response.id) +
                                " status=" + rpc::to_string(response.status);
            m_net.send(m_id, from, std::move(reply), std::move(label));
        },
        [this]() { wipe_volatile_(); });

    m_kernel.schedule(sim::millis(0), [this]() { start_(); });
}

const std::string* TabletServer::stored_value(const std::string& key) const
{
    auto it = m_store.find(key);
    return it == m_store.end() ? nullptr : &it->second;
}

void TabletServer::start_()
{
    for (const auto& tablet_id : m_initial_tablets)
    {
        const TabletDescriptor* tablet = m_map.find(tablet_id);
        if (tablet == nullptr)
        {
            throw sim::ScenarioError("server " + m_id + " assigned unknown tablet " + tablet_id);
        }
        if (m_directory.acquire(tablet->lease_name(), m_id, m_config.lease_ttl))
        {
            m_held.insert(tablet->lease_name());
        }
    }
    m_kernel.schedule(m_config.renew_every, [this]() { renew_tick_(); });
    m_kernel.schedule(m_config.poll_every, [this]() { poll_tick_(); });
}

void TabletServer::renew_tick_()
{
    if (m_net.alive(m_id))
    {
        for (auto it = m_held.begin(); it != m_held.end();)
        {
            if (m_directory.renew(*it, m_id))
            {
                ++it;
            }
            else
            {
                it = m_held.erase(it);
            }
        }
    }
    m_kernel.schedule(m_config.renew_every, [this]() { renew_tick_(); });
}

void TabletServer::poll_tick_()
{
    if (m_net.alive(m_id))
    {
        // The map may change under us while adopting (splits do not, but
        // keep the snapshot semantics obvious): walk a copy.
        const auto tablets = m_map.tablets();
        for (const auto& tablet : tablets)
        {
            if (m_held.count(tablet.lease_name()) == 0 &&
                !m_directory.lookup(tablet.lease_name()))
            {
                try_adopt_(tablet);
            }
        }
    }
    m_kernel.schedule(m_config.poll_every, [this]() { poll_tick_(); });
}

void TabletServer::try_adopt_(const TabletDescriptor& tablet)
{
    if (!m_directory.acquire(tablet.lease_name(), m_id, m_config.lease_ttl))
    {
        return;
    }
    recover_(tablet);
    m_held.insert(tablet.lease_name());
}

void TabletServer::recover_(const TabletDescriptor& tablet)
{
    for (const auto& entry : m_durable.entries())
    {
        if (tablet.contains(entry.key))
        {
            m_store[entry.key] = entry.value;
        }
    }
}

void TabletServer::wipe_volatile_()
{
    m_store.clear();
    m_held.clear();
}

rpc::Response TabletServer::handle_put_(const rpc::Request& request)
{
    m_store[request.key] = request.value;
    const std::uint64_t seq = m_durable.append(request.key, request.value);
    m_kernel.emit(m_id, sim::TraceEvent::apply,
                  "tablet=" + request.name + " key=" + request.key + " value=" + request.value +
                      " durable_seq=" + std::to_string(seq));
    return rpc::Response{request.id, rpc::Status::ok, ""};
}

rpc::Response TabletServer::handle_get_(const rpc::Request& request)
{
    auto it = m_store.find(request.key);
    if (it == m_store.end())
    {
        return rpc::Response{request.id, rpc::Status::app_error, "not-found"};
    }
    return rpc::Response{request.id, rpc::Status::ok, it->second};
}

rpc::Response TabletServer::handle_split_(const rpc::Request& request)
{
    const std::string& parent_id = request.key;
    const std::string& split_key = request.value;

    const TabletDescriptor* parent = m_map.find(parent_id);
    if (parent == nullptr)
    {
        return rpc::Response{request.id, rpc::Status::app_error, "bad-split: no tablet " + parent_id};
    }
    const lock::LeaseName parent_lease = parent->lease_name();
    auto view = m_directory.lookup(parent_lease);
    if (!view || view->owner != m_id)
    {
        return rpc::Response{request.id, rpc::Status::not_owner, ""};
    }

    // The whole handoff is one scheduler-atomic step: partition the range,
    // retire the parent lease, take both children.  No instant exists where
    // a client can observe the children unowned.
    auto split = m_map.split(parent_id, split_key);
    if (!split)
    {
        return rpc::Response{request.id, rpc::Status::app_error, split.error()};
    }
    m_directory.release(parent_lease, m_id);
    m_held.erase(parent_lease);
    for (const std::string& child_id : {parent_id + "a", parent_id + "b"})
    {
        const TabletDescriptor* child = m_map.find(child_id);
        if (child != nullptr && m_directory.acquire(child->lease_name(), m_id, m_config.lease_ttl))
        {
            m_held.insert(child->lease_name());
        }
    }
    return rpc::Response{request.id, rpc::Status::ok, parent_id + "a," + parent_id + "b"};
}

} // namespace leasewire::kv
