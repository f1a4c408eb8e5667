#include "leasewire/lock/service.hpp"

#include <stdexcept>

#include "leasewire/rpc/frame.hpp"

namespace leasewire::lock
{

namespace
{

std::string describe(const LeaseRecord& record)
{
    return "epoch=" + std::to_string(record.epoch) +
           " expiry_ms=" + sim::to_string(record.expiry());
}

} // namespace

LockServiceEndpoint::LockServiceEndpoint(sim::Network& net, LeaseDirectory& directory,
                                         std::string id)
    : m_net(net)
    , m_directory(directory)
    , m_id(std::move(id))
    , m_dispatcher(m_id, nullptr)
{
    m_dispatcher.add("lease.acquire", rpc::Fencing::none,
                     [this](const rpc::Request& r) { return handle_acquire_(r); });
    m_dispatcher.add("lease.renew", rpc::Fencing::none,
                     [this](const rpc::Request& r) { return handle_renew_(r); });
    m_dispatcher.add("lease.release", rpc::Fencing::none,
                     [this](const rpc::Request& r) { return handle_release_(r); });
    m_dispatcher.add("lease.lookup", rpc::Fencing::none,
                     [this](const rpc::Request& r) { return handle_lookup_(r); });

    m_net.add_endpoint(m_id,
                       [this](const std::string& from, const std::vector<std::uint8_t>& bytes)
                       {
                           auto reply = m_dispatcher.dispatch_frame(bytes);
                           auto message = rpc::decode_frame(reply);
                           const auto& response = std::get<rpc::Response>(message);
                           std::string label = "resp id=" + std::to_string(response.id) +
                                               " status=" + rpc::to_string(response.status);
                           m_net.send(m_id, from, std::move(reply), std::move(label));
                       });
}

rpc::Response LockServiceEndpoint::handle_acquire_(const rpc::Request& request)
{
    sim::Duration ttl{};
    try
    {
        ttl = sim::millis(std::stoll(request.value));
    }
    catch (const std::exception&)
    {
        return rpc::Response{request.id, rpc::Status::app_error, "bad-ttl"};
    }
    if (!valid_lease_name(request.name) || request.key.empty() || ttl.ms <= 0)
    {
        return rpc::Response{request.id, rpc::Status::app_error, "bad-argument"};
    }
    auto record = m_directory.acquire(request.name, request.key, ttl);
    if (!record)
    {
        return rpc::Response{request.id, rpc::Status::app_error, to_string(record.error())};
    }
    return rpc::Response{request.id, rpc::Status::ok, describe(*record)};
}

rpc::Response LockServiceEndpoint::handle_renew_(const rpc::Request& request)
{
    auto record = m_directory.renew(request.name, request.key);
    if (!record)
    {
        return rpc::Response{request.id, rpc::Status::app_error, to_string(record.error())};
    }
    return rpc::Response{request.id, rpc::Status::ok, describe(*record)};
}

rpc::Response LockServiceEndpoint::handle_release_(const rpc::Request& request)
{
    auto released = m_directory.release(request.name, request.key);
    if (!released)
    {
        return rpc::Response{request.id, rpc::Status::app_error, to_string(released.error())};
    }
    return rpc::Response{request.id, rpc::Status::ok, ""};
}

rpc::Response LockServiceEndpoint::handle_lookup_(const rpc::Request& request)
{
    auto view = m_directory.lookup(request.name);
    if (!view)
    {
        return rpc::Response{request.id, rpc::Status::app_error, to_string(view.error())};
    }
    return rpc::Response{request.id, rpc::Status::ok,
                         "owner=" + view->owner + " epoch=" + std::to_string(view->epoch) +
                             " remaining_ms=" + sim::to_string(view->remaining)};
}

} // namespace leasewire::lock
