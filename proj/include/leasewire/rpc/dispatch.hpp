#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "leasewire/lock/directory.hpp"
#include "leasewire/rpc/message.hpp"

namespace leasewire::rpc
{

enum class Fencing
{
    none,
    lease, // handler runs only while this server owns the named lease
};

// Server-side method table.  Lease-scoped methods are fenced before the
// handler runs: the server must hold the unexpired lease named by the
// request, at an epoch at least the caller's token, or the request is
// answered not-owner with no side effects.
class Dispatcher
{
public:
    using Handler = std::function<Response(const Request&)>;

    Dispatcher(std::string self_id, lock::LeaseDirectory* directory)
        : m_self(std::move(self_id))
        , m_directory(directory)
    {
    }

    void add(std::string method, Fencing fencing, Handler handler);

    Response dispatch(const Request& request);

    // Frame-level entry point; malformed input gets an app-error reply
    // rather than tearing anything down.
    std::vector<std::uint8_t> dispatch_frame(std::span<const std::uint8_t> bytes);

private:
    struct Method
    {
        Fencing fencing = Fencing::none;
        Handler handler;
    };

    bool holds_lease_(const Request& request) const;

    std::string m_self;
    lock::LeaseDirectory* m_directory;
    std::map<std::string, Method> m_methods;
};

} // namespace leasewire::rpc
