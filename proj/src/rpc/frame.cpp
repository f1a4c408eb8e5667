#include "leasewire/rpc/frame.hpp"

namespace leasewire::rpc
{

namespace
{

constexpr std::uint8_t kKindRequest = 0;
constexpr std::uint8_t kKindResponse = 1;

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v)
{
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v)
{
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v)
{
    for (int shift = 56; shift >= 0; shift -= 8)
    {
        out.push_back(static_cast<std::uint8_t>(v >> shift));
    }
}

void put_field(std::vector<std::uint8_t>& out, const std::string& field)
{
    if (field.size() > kMaxFieldLength)
    {
        throw std::invalid_argument("encode_frame: field exceeds 65535 bytes");
    }
    put_u16(out, static_cast<std::uint16_t>(field.size()));
    out.insert(out.end(), field.begin(), field.end());
}

class Reader
{
public:
    explicit Reader(std::span<const std::uint8_t> bytes) : m_bytes(bytes) {}

    std::uint8_t u8()
    {
        need_(1);
        return m_bytes[m_pos++];
    }

    std::uint16_t u16()
    {
        need_(2);
        std::uint16_t v = static_cast<std::uint16_t>(m_bytes[m_pos] << 8 | m_bytes[m_pos + 1]);
        m_pos += 2;
        return v;
    }

    std::uint32_t u32()
    {
        need_(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
        {
            v = v << 8 | m_bytes[m_pos + i];
        }
        m_pos += 4;
        return v;
    }

    std::uint64_t u64()
    {
        need_(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
        {
            v = v << 8 | m_bytes[m_pos + i];
        }
        m_pos += 8;
        return v;
    }

    std::string field()
    {
        const std::uint16_t len = u16();
        need_(len);
        std::string out(reinterpret_cast<const char*>(m_bytes.data() + m_pos), len);
        m_pos += len;
        return out;
    }

    std::size_t remaining() const { return m_bytes.size() - m_pos; }

private:
    void need_(std::size_t n) const
    {
        if (m_bytes.size() - m_pos < n)
        {
            throw MalformedFrame("malformed-frame: truncated");
        }
    }

    std::span<const std::uint8_t> m_bytes;
    std::size_t m_pos = 0;
};

} // namespace

const char* to_string(Status status)
{
    switch (status)
    {
        case Status::ok: return "ok";
        case Status::app_error: return "app-error";
        case Status::not_owner: return "not-owner";
    }
    return "?";
}

std::vector<std::uint8_t> encode_frame(const Message& message)
{
    std::vector<std::uint8_t> payload;
    if (const auto* request = std::get_if<Request>(&message))
    {
        payload.push_back(kKindRequest);
        put_u64(payload, request->id);
        put_field(payload, request->method);
        put_field(payload, request->name);
        put_field(payload, request->key);
        put_field(payload, request->value);
        if (request->fence == 0)
        {
            put_u16(payload, 0);
        }
        else
        {
            put_u16(payload, 8);
            put_u64(payload, request->fence);
        }
    }
    else
    {
        const auto& response = std::get<Response>(message);
        payload.push_back(kKindResponse);
        put_u64(payload, response.id);
        payload.push_back(static_cast<std::uint8_t>(response.status));
        put_field(payload, response.value);
    }

    std::vector<std::uint8_t> frame;
    frame.reserve(4 + payload.size());
    put_u32(frame, static_cast<std::uint32_t>(payload.size()));
    frame.insert(frame.end(), payload.begin(), payload.end());
    return frame;
}

Message decode_frame(std::span<const std::uint8_t> bytes)
{
    Reader header(bytes);
    const std::uint32_t declared = header.u32();
    if (header.remaining() != declared)
    {
        throw MalformedFrame(header.remaining() < declared
                                 ? "malformed-frame: truncated payload"
                                 : "malformed-frame: trailing bytes");
    }

    Reader payload(bytes.subspan(4));
    const std::uint8_t kind = payload.u8();
    if (kind == kKindRequest)
    {
        Request request;
        request.id = payload.u64();
        request.method = payload.field();
        request.name = payload.field();
        request.key = payload.field();
        request.value = payload.field();
        const std::uint16_t fence_len = payload.u16();
        if (fence_len == 8)
        {
            request.fence = payload.u64();
        }
        else if (fence_len != 0)
        {
            throw MalformedFrame("malformed-frame: bad fence length");
        }
        if (payload.remaining() != 0)
        {
            throw MalformedFrame("malformed-frame: trailing bytes");
        }
        return request;
    }
    if (kind == kKindResponse)
    {
        Response response;
        response.id = payload.u64();
        const std::uint8_t status = payload.u8();
        if (status > static_cast<std::uint8_t>(Status::not_owner))
        {
            throw MalformedFrame("malformed-frame: unknown status");
        }
        response.status = static_cast<Status>(status);
        response.value = payload.field();
        if (payload.remaining() != 0)
        {
            throw MalformedFrame("malformed-frame: trailing bytes");
        }
        return response;
    }
    throw MalformedFrame("malformed-frame: unknown kind");
}

} // namespace leasewire::rpc
