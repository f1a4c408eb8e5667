#pragma once

#include <string>

#include "leasewire/lock/directory.hpp"
#include "leasewire/rpc/dispatch.hpp"
#include "leasewire/sim/net.hpp"

namespace leasewire::lock
{

// Network face of the lease directory, for deployments where callers are
// not in-process.  Field use per method (request -> ok value):
//   lease.acquire  name, key=owner, value=ttl ms  -> "epoch=N expiry_ms=T"
//   lease.renew    name, key=owner                -> "epoch=N expiry_ms=T"
//   lease.release  name, key=owner                -> ""
//   lease.lookup   name                           -> "owner=O epoch=N remaining_ms=R"
// Domain failures (held, not-owner, no-owner) come back as app-error with
// the error name in the value.
class LockServiceEndpoint
{
public:
    LockServiceEndpoint(sim::Network& net, LeaseDirectory& directory, std::string id = "lockd");

    const std::string& id() const noexcept { return m_id; }

private:
    rpc::Response handle_acquire_(const rpc::Request& request);
    rpc::Response handle_renew_(const rpc::Request& request);
    rpc::Response handle_release_(const rpc::Request& request);
    rpc::Response handle_lookup_(const rpc::Request& request);

    sim::Network& m_net;
    LeaseDirectory& m_directory;
    std::string m_id;
    rpc::Dispatcher m_dispatcher;
};

} // namespace leasewire::lock
