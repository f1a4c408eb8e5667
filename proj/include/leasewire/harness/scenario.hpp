#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "leasewire/expected.hpp"
#include "leasewire/kv/tablet.hpp"
#include "leasewire/sim/fault.hpp"
#include "leasewire/sim/time.hpp"

namespace leasewire::harness
{

enum class ClientMode
{
    naive,   // look up once, send once, assume the best
    library, // resolver chain + cache + retry loop
};

const char* to_string(ClientMode mode);

struct WorkloadSpec
{
    std::uint64_t ops = 0;
    char key_lo = 'a';
    char key_hi = 'z';
    double put_fraction = 1.0;
    sim::Duration gap_min{50};
    sim::Duration gap_max{150};
};

struct Scenario
{
    std::uint64_t seed = 0;
    std::vector<std::string> servers;
    std::vector<std::string> standbys;
    std::vector<kv::TabletDescriptor> tablets;
    sim::Duration lease_ttl{10000}; // LEASEWIRE_DEFAULT_TTL overrides this default
    sim::Duration latency{10};
    std::vector<sim::FaultSpec> faults;
    WorkloadSpec workload;
    ClientMode mode = ClientMode::library;
};

struct ParseError
{
    int line = 0;
    std::string message;
};

// Line-oriented scenario text:
//
//   # comment
//   seed 42
//   server srv1
//   standby srv2
//   tablet T0 - inf          ("-" = empty start key, "inf" = unbounded)
//   lease_ttl 10             (seconds; also latency 0.01)
//   fault crash srv1 at=5.0 [arg=...]
//   workload ops=60 keys=a..z mix=put:0.9,get:0.1 [gap=0.05..0.15]
//   client library
//
// Fault kinds: crash, restart, drop (link), heal, split; long forms
// (crash-server, ...) are accepted too.  Targets are validated against the
// declared servers ("client" is allowed for link faults, tablet ids for
// splits, including not-yet-existing split children like T0a).
Expected<Scenario, ParseError> parse_scenario(std::string_view text);

Expected<Scenario, ParseError> load_scenario_file(const std::string& path);

} // namespace leasewire::harness
