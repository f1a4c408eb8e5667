/*
Purpose: The frame format exists so two real processes can talk over a byte
stream; nothing in the codec may quietly depend on message boundaries that
TCP does not provide.

What this tests: frames dribbled through a socketpair one to three bytes at
a time, reassembled on the far side purely from the length prefix, decoded,
served by a Dispatcher, and the responses streamed back the same way.
*/

#include "leasewire/rpc/dispatch.hpp"
#include "leasewire/rpc/frame.hpp"
#include "leasewire/rpc/message.hpp"

#include "../support/check.hpp"

#include <sys/socket.h>
#include <unistd.h>

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

using namespace leasewire::rpc;

namespace
{

void send_dribbled(int fd, const std::vector<std::uint8_t>& frame)
{
    std::size_t offset = 0;
    std::size_t chunk = 1;
    while (offset < frame.size())
    {
        const std::size_t n = std::min(chunk, frame.size() - offset);
        const ssize_t wrote = ::write(fd, frame.data() + offset, n);
        CHECK(wrote == static_cast<ssize_t>(n));
        offset += n;
        chunk = chunk % 3 + 1; // 1, 2, 3, 1, ...
    }
}

// Pulls whole frames out of a stream by trusting only the length prefix.
class FrameReader
{
public:
    explicit FrameReader(int fd) : m_fd(fd) {}

    Message next()
    {
        while (true)
        {
            if (auto frame = take_frame_())
            {
                return decode_frame(*frame);
            }
            std::uint8_t chunk[7]; // deliberately tiny and unaligned
            const ssize_t got = ::read(m_fd, chunk, sizeof chunk);
            CHECK(got > 0);
            m_buffer.insert(m_buffer.end(), chunk, chunk + got);
        }
    }

private:
    std::optional<std::vector<std::uint8_t>> take_frame_()
    {
        if (m_buffer.size() < 4)
        {
            return std::nullopt;
        }
        const std::size_t payload = (std::size_t{m_buffer[0]} << 24) |
                                    (std::size_t{m_buffer[1]} << 16) |
                                    (std::size_t{m_buffer[2]} << 8) | std::size_t{m_buffer[3]};
        const std::size_t total = 4 + payload;
        if (m_buffer.size() < total)
        {
            return std::nullopt;
        }
        std::vector<std::uint8_t> frame(m_buffer.begin(),
                                        m_buffer.begin() + static_cast<std::ptrdiff_t>(total));
        m_buffer.erase(m_buffer.begin(), m_buffer.begin() + static_cast<std::ptrdiff_t>(total));
        return frame;
    }

    int m_fd;
    std::vector<std::uint8_t> m_buffer;
};

} // namespace

int main()
{
    int fds[2];
    CHECK(::socketpair(AF_UNIX, SOCK_STREAM, 0, fds) == 0);
    const int client_fd = fds[0];
    const int server_fd = fds[1];

    std::map<std::string, std::string> store;
    Dispatcher dispatcher("stream-server", nullptr);
    dispatcher.add("kv.put", Fencing::none,
                   [&store](const Request& request)
                   {
                       store[request.key] = request.value;
                       return Response{request.id, Status::ok, ""};
                   });
    dispatcher.add("kv.get", Fencing::none,
                   [&store](const Request& request)
                   {
                       auto it = store.find(request.key);
                       if (it == store.end())
                       {
                           return Response{request.id, Status::app_error, "not-found"};
                       }
                       return Response{request.id, Status::ok, it->second};
                   });

    std::vector<Request> requests;
    for (std::uint64_t i = 0; i < 32; ++i)
    {
        Request request;
        request.id = i + 1;
        request.method = i % 2 == 0 ? "kv.put" : "kv.get";
        request.key = "key-" + std::to_string(i / 2);
        request.value = i % 2 == 0 ? std::string(i + 1, 'x') : std::string();
        request.fence = i % 4 == 0 ? 0 : i * 1000;
        requests.push_back(std::move(request));
    }

    // Pipeline four requests per round so the reader always finds frames
    // back to back in its buffer.  (One byte per write costs a whole skb of
    // kernel buffer accounting; queueing all 32 dribbled frames at once
    // would fill the socketpair's send buffer and deadlock the test.)
    FrameReader server_reader(server_fd);
    FrameReader client_reader(client_fd);
    constexpr std::size_t kWindow = 4;
    for (std::size_t base = 0; base < requests.size(); base += kWindow)
    {
        for (std::size_t i = base; i < base + kWindow; ++i)
        {
            send_dribbled(client_fd, encode_frame(Message{requests[i]}));
        }

        // Server side: reassemble, decode, dispatch, respond in fragments.
        for (std::size_t i = base; i < base + kWindow; ++i)
        {
            Message message = server_reader.next();
            const auto& request = std::get<Request>(message);
            CHECK_EQ(request.id, requests[i].id);
            CHECK_EQ(request.method, requests[i].method);
            CHECK_EQ(request.key, requests[i].key);
            CHECK_EQ(request.value, requests[i].value);
            CHECK_EQ(request.fence, requests[i].fence);
            send_dribbled(server_fd, dispatcher.dispatch_frame(encode_frame(message)));
        }

        // Client side: every put acked, every get sees the preceding put.
        for (std::size_t i = base; i < base + kWindow; ++i)
        {
            Message message = client_reader.next();
            const auto& response = std::get<Response>(message);
            CHECK_EQ(response.id, requests[i].id);
            CHECK(response.status == Status::ok);
            if (requests[i].method == "kv.get")
            {
                CHECK_EQ(response.value, requests[i - 1].value);
            }
        }
    }

    ::close(client_fd);
    ::close(server_fd);
    std::cout << "tcp_frame_test: PASS\n";
    return 0;
}
