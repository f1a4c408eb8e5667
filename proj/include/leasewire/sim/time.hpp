#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>

namespace leasewire::sim
{

// All simulated time is logical and fixed-point at millisecond resolution.
// Nothing in the library reads a wall clock.

struct Duration
{
    std::int64_t ms = 0;

    constexpr auto operator<=>(const Duration&) const = default;
};

constexpr Duration millis(std::int64_t ms) { return Duration{ms}; }

inline Duration seconds(double s) { return Duration{std::llround(s * 1000.0)}; }

constexpr Duration operator+(Duration a, Duration b) { return Duration{a.ms + b.ms}; }
constexpr Duration operator-(Duration a, Duration b) { return Duration{a.ms - b.ms}; }
constexpr Duration operator*(Duration a, std::int64_t k) { return Duration{a.ms * k}; }
constexpr Duration operator/(Duration a, std::int64_t k) { return Duration{a.ms / k}; }

struct SimTime
{
    std::int64_t ms = 0;

    constexpr auto operator<=>(const SimTime&) const = default;
};

constexpr SimTime operator+(SimTime t, Duration d) { return SimTime{t.ms + d.ms}; }
constexpr Duration operator-(SimTime a, SimTime b) { return Duration{a.ms - b.ms}; }

inline std::string to_string(SimTime t) { return std::to_string(t.ms); }
inline std::string to_string(Duration d) { return std::to_string(d.ms); }

} // namespace leasewire::sim
