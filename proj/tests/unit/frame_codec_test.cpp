/*
Purpose: The wire format is bit-exact and rejects every mangled frame.

What this tests: A hand-assembled reference frame byte-for-byte, the
24-byte payload arithmetic for the canonical small request, decode∘encode
identity over 1000 randomized messages, the full truncation sweep, trailing
bytes, bad kind/status/fence-length, and field size limits.
*/

#include "leasewire/rpc/frame.hpp"
#include "leasewire/sim/random.hpp"

#include "../support/check.hpp"

#include <iostream>
#include <string>
#include <vector>

using namespace leasewire::rpc;
using leasewire::sim::SplitMix64;

namespace
{

std::string random_text(SplitMix64& rng, std::size_t max_len)
{
    std::string out(static_cast<std::size_t>(rng.next_in(0, static_cast<std::int64_t>(max_len))), ' ');
    for (char& c : out)
    {
        c = static_cast<char>(rng.next_in(0, 255));
    }
    return out;
}

Message roundtrip(const Message& message)
{
    return decode_frame(encode_frame(message));
}

} // namespace

int main()
{
    // Reference request, assembled by hand.  Payload:
    //   kind(1) + id(8) + "put"(2+3) + ""(2+0) + "k"(2+1) + "v"(2+1)
    //   + empty fence(2+0) = 24 bytes.
    {
        const Request request{1, "put", "", "k", "v", 0};
        const std::vector<std::uint8_t> expected{
            0x00, 0x00, 0x00, 0x18,                         // payload length 24
            0x00,                                           // kind: request
            0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x01, // id 1
            0x00, 0x03, 'p',  'u',  't',                    // method
            0x00, 0x00,                                     // name (empty)
            0x00, 0x01, 'k',                                // key
            0x00, 0x01, 'v',                                // value
            0x00, 0x00,                                     // fence absent
        };
        const auto encoded = encode_frame(request);
        CHECK_EQ(encoded.size(), 28ull);
        CHECK(encoded == expected);
        CHECK(roundtrip(request) == Message{request});
    }

    // A nonzero fence rides as an 8-byte big-endian field.
    {
        const Request request{0x0102030405060708ull, "kv.put", "tablets/T0", "key", "val", 7};
        const auto encoded = encode_frame(request);
        // fence field: length 8 then the epoch
        const std::vector<std::uint8_t> tail{0x00, 0x08, 0x00, 0x00, 0x00, 0x00,
                                             0x00, 0x00, 0x00, 0x07};
        CHECK(std::vector<std::uint8_t>(encoded.end() - 10, encoded.end()) == tail);
        CHECK(roundtrip(request) == Message{request});
    }

    // Reference response.
    {
        const Response response{3, Status::not_owner, "late"};
        const std::vector<std::uint8_t> expected{
            0x00, 0x00, 0x00, 0x10,                         // payload length 16
            0x01,                                           // kind: response
            0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x03, // id 3
            0x02,                                           // status not-owner
            0x00, 0x04, 'l',  'a',  't',  'e',              // value
        };
        const auto encoded = encode_frame(response);
        CHECK(encoded == expected);
        CHECK(roundtrip(response) == Message{response});
    }

    // Randomized round-trips, fences and all printable/unprintable bytes.
    {
        SplitMix64 rng(90210);
        for (int round = 0; round < 1000; ++round)
        {
            Message message;
            if (rng.next_unit() < 0.5)
            {
                Request request;
                request.id = rng.next();
                request.method = random_text(rng, 12);
                request.name = random_text(rng, 24);
                request.key = random_text(rng, 24);
                request.value = random_text(rng, 200);
                request.fence = rng.next_unit() < 0.5 ? 0 : rng.next();
                message = request;
            }
            else
            {
                Response response;
                response.id = rng.next();
                response.status = static_cast<Status>(rng.next_in(0, 2));
                response.value = random_text(rng, 200);
                message = response;
            }
            CHECK(roundtrip(message) == message);
        }
    }

    // Truncation sweep: every strict prefix is malformed.
    {
        const Request request{42, "kv.get", "tablets/T0", "needle", "", 9};
        const auto frame = encode_frame(request);
        for (std::size_t len = 0; len < frame.size(); ++len)
        {
            CHECK_THROWS(decode_frame(std::span(frame.data(), len)), MalformedFrame);
        }
        CHECK(decode_frame(frame) == Message{request});

        // Trailing garbage is equally malformed.
        auto padded = frame;
        padded.push_back(0);
        CHECK_THROWS(decode_frame(padded), MalformedFrame);
    }

    // Structural rot: unknown kind, unknown status, impossible fence length.
    {
        auto frame = encode_frame(Request{1, "m", "", "", "", 0});
        frame[4] = 2; // kind
        CHECK_THROWS(decode_frame(frame), MalformedFrame);

        auto response = encode_frame(Response{1, Status::ok, ""});
        response[13] = 3; // status
        CHECK_THROWS(decode_frame(response), MalformedFrame);

        // Fence must be empty or exactly 8 bytes; hand-build a 1-byte one.
        std::vector<std::uint8_t> bad{
            0x00, 0x00, 0x00, 0x15,                         // payload length 21
            0x00,                                           // request
            0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x01, // id
            0x00, 0x01, 'm',                                // method
            0x00, 0x00,                                     // name
            0x00, 0x00,                                     // key
            0x00, 0x00,                                     // value
            0x00, 0x01, 0x07,                               // fence, length 1
        };
        CHECK_THROWS(decode_frame(bad), MalformedFrame);

        // A declared length that disagrees with the actual payload is
        // malformed in both directions.
        auto shrunk = encode_frame(Request{1, "m", "", "", "", 0});
        shrunk[3] -= 1;
        CHECK_THROWS(decode_frame(shrunk), MalformedFrame);
        auto grown = encode_frame(Request{1, "m", "", "", "", 0});
        grown[3] += 1;
        CHECK_THROWS(decode_frame(grown), MalformedFrame);
    }

    // Oversized fields are the encoder's problem, reported loudly.
    {
        Request request{1, "m", "", "", std::string(kMaxFieldLength + 1, 'x'), 0};
        CHECK_THROWS(encode_frame(request), std::invalid_argument);
        Request fits{1, "m", "", "", std::string(kMaxFieldLength, 'x'), 0};
        CHECK(roundtrip(fits) == Message{fits});
    }

    std::cout << "frame_codec_test: PASS\n";
    return 0;
}
