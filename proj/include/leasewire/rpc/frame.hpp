#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "leasewire/rpc/message.hpp"

namespace leasewire::rpc
{

// Frame layout, all integers big-endian:
//   u32  payload length
//   u8   kind (0 request, 1 response)
//   u64  id
//   requests:  five (u16 length, bytes) fields:
//              method, name, key, value, fence (empty or 8-byte epoch)
//   responses: u8 status, one (u16 length, bytes) value field
// Anything truncated, over-long, or with an unknown kind/status is rejected
// as malformed; decode never guesses.

struct MalformedFrame : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxFieldLength = 0xffff;

// Throws std::invalid_argument when a field exceeds kMaxFieldLength.
std::vector<std::uint8_t> encode_frame(const Message& message);

// Throws MalformedFrame; trailing bytes after the declared payload are an
// error, not an extension point.
Message decode_frame(std::span<const std::uint8_t> bytes);

} // namespace leasewire::rpc
