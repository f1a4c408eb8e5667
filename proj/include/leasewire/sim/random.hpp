#pragma once

#include <cstdint>
#include <string_view>

#include "leasewire/sim/trace.hpp"

namespace leasewire::sim
{

// splitmix64; compact, well mixed, and stable across platforms.
class SplitMix64
{
public:
    explicit SplitMix64(std::uint64_t seed) : m_state(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (m_state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [lo, hi], inclusive.  Modulo bias is irrelevant at the
    // range sizes used here and keeps the stream definition simple.
    std::int64_t next_in(std::int64_t lo, std::int64_t hi)
    {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next() % span);
    }

    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t m_state;
};

// Substream derived from one root seed and a stream name.  Entities draw
// from their own streams, so adding an entity never perturbs the draws
// seen by existing ones.
inline SplitMix64 named_stream(std::uint64_t seed, std::string_view name)
{
    return SplitMix64(fnv1a64(name, kFnvOffsetBasis ^ seed));
}

} // namespace leasewire::sim
