#pragma once

#include <cstdint>
#include <string>
#include <variant>

namespace leasewire::rpc
{

enum class Status : std::uint8_t
{
    ok = 0,
    app_error = 1,
    not_owner = 2,
};

const char* to_string(Status status);

// fence carries the caller's lease epoch; 0 means no fencing token (epochs
// start at 1).
struct Request
{
    std::uint64_t id = 0;
    std::string method;
    std::string name;
    std::string key;
    std::string value;
    std::uint64_t fence = 0;

    bool operator==(const Request&) const = default;
};

struct Response
{
    std::uint64_t id = 0;
    Status status = Status::ok;
    std::string value;

    bool operator==(const Response&) const = default;
};

using Message = std::variant<Request, Response>;

} // namespace leasewire::rpc
