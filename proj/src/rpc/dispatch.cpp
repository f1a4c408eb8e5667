#include "leasewire/rpc/dispatch.hpp"

#include <stdexcept>

#include "leasewire/rpc/frame.hpp"

namespace leasewire::rpc
{

void Dispatcher::add(std::string method, Fencing fencing, Handler handler)
{
    if (fencing == Fencing::lease && m_directory == nullptr)
    {
        throw std::logic_error("Dispatcher: lease-scoped method without a directory");
    }
    m_methods.insert_or_assign(std::move(method), Method{fencing, std::move(handler)});
}

bool Dispatcher::holds_lease_(const Request& request) const
{
    if (request.name.empty())
    {
        return false;
    }
    auto view = m_directory->lookup(request.name);
    if (!view || view->owner != m_self)
    {
        return false;
    }
    return view->epoch >= request.fence;
}

Response Dispatcher::dispatch(const Request& request)
{
    auto it = m_methods.find(request.method);
    if (it == m_methods.end())
    {
        return Response{request.id, Status::app_error, "no-such-method"};
    }
    if (it->second.fencing == Fencing::lease && !holds_lease_(request))
    {
        return Response{request.id, Status::not_owner, ""};
    }
    Response response = it->second.handler(request);
    response.id = request.id;
    return response;
}

std::vector<std::uint8_t> Dispatcher::dispatch_frame(std::span<const std::uint8_t> bytes)
{
    Message message;
    try
    {
        message = decode_frame(bytes);
    }
    catch (const MalformedFrame&)
    {
        return encode_frame(Response{0, Status::app_error, "malformed-frame"});
    }
    const auto* request = std::get_if<Request>(&message);
    if (request == nullptr)
    {
        return encode_frame(Response{0, Status::app_error, "not-a-request"});
    }
    return encode_frame(dispatch(*request));
}

} // namespace leasewire::rpc
