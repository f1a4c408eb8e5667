#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "leasewire/expected.hpp"
#include "leasewire/sim/kernel.hpp"

namespace leasewire::lock
{

// Lease names are path-like: nonempty, '/'-separated, no empty segments.
// Plain strings keep them cheap as map keys and on the wire; validity is
// enforced where names enter the directory.
using LeaseName = std::string;

bool valid_lease_name(std::string_view name);

enum class LeaseError
{
    held,      // someone else owns the live lease
    not_owner, // caller does not own the live lease
    no_owner,  // nobody owns a live lease
};

const char* to_string(LeaseError error);

struct LeaseRecord
{
    LeaseName name;
    std::string owner;
    sim::SimTime acquired_at;
    sim::Duration ttl;
    std::uint64_t epoch = 0;

    // Exclusive: the lease is already dead at exactly this instant.
    sim::SimTime expiry() const { return acquired_at + ttl; }
};

struct LeaseView
{
    std::string owner;
    sim::Duration remaining;
    std::uint64_t epoch = 0;
};

// Exclusive, TTL-bounded name ownership with per-name fencing epochs.
// Expiry is lazy: dead leases are pruned when the name is next touched,
// never by a timer.
class LeaseDirectory
{
public:
    explicit LeaseDirectory(sim::SimKernel& kernel) : m_kernel(kernel) {}

    // First grant of a name gets epoch 1; every later grant is exactly one
    // higher, including grants long after expiry.  Re-acquire by the live
    // owner behaves as a renew (epoch kept, clock and ttl reset).
    Expected<LeaseRecord, LeaseError> acquire(const LeaseName& name, const std::string& owner,
                                              sim::Duration ttl);

    // Extends the live lease from now with its original ttl.
    Expected<LeaseRecord, LeaseError> renew(const LeaseName& name, const std::string& owner);

    Expected<void, LeaseError> release(const LeaseName& name, const std::string& owner);

    // Never reports a dead lease: remaining is always > 0 on success.
    Expected<LeaseView, LeaseError> lookup(const LeaseName& name);

private:
    struct Slot
    {
        std::optional<LeaseRecord> live;
        std::uint64_t last_epoch = 0;
    };

    void prune_(const LeaseName& name, Slot& slot);
    void emit_grant_(const LeaseRecord& record, bool renewal);

    sim::SimKernel& m_kernel;
    std::map<LeaseName, Slot> m_slots;
};

} // namespace leasewire::lock
