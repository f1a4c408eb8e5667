#include "leasewire/lock/directory.hpp"

#include <stdexcept>

namespace leasewire::lock
{

bool valid_lease_name(std::string_view name)
{
    if (name.empty() || name.front() == '/' || name.back() == '/')
    {
        return false;
    }
    return name.find("//") == std::string_view::npos;
}

const char* to_string(LeaseError error)
{
    switch (error)
    {
        case LeaseError::held: return "held";
        case LeaseError::not_owner: return "not-owner";
        case LeaseError::no_owner: return "no-owner";
    }
    return "?";
}

void LeaseDirectory::prune_(const LeaseName& name, Slot& slot)
{
    if (!slot.live || slot.live->expiry() > m_kernel.now())
    {
        return;
    }
    const LeaseRecord& dead = *slot.live;
    m_kernel.emit("lockd", sim::TraceEvent::lease_expire,
                  "name=" + name + " owner=" + dead.owner +
                      " epoch=" + std::to_string(dead.epoch) +
                      " expiry_ms=" + sim::to_string(dead.expiry()));
    slot.live.reset();
}

void LeaseDirectory::emit_grant_(const LeaseRecord& record, bool renewal)
{
    m_kernel.emit("lockd", sim::TraceEvent::lease_grant,
                  "name=" + record.name + " owner=" + record.owner +
                      " epoch=" + std::to_string(record.epoch) +
                      " ttl_ms=" + sim::to_string(record.ttl) +
                      " expiry_ms=" + sim::to_string(record.expiry()) +
                      " renew=" + (renewal ? "1" : "0"));
}

Expected<LeaseRecord, LeaseError> LeaseDirectory::acquire(const LeaseName& name,
                                                          const std::string& owner,
                                                          sim::Duration ttl)
{
    if (!valid_lease_name(name))
    {
        throw std::invalid_argument("LeaseDirectory::acquire: bad lease name: " + name);
    }
    if (ttl.ms <= 0)
    {
        throw std::invalid_argument("LeaseDirectory::acquire: ttl must be positive");
    }
    if (owner.empty())
    {
        throw std::invalid_argument("LeaseDirectory::acquire: empty owner");
    }

    Slot& slot = m_slots[name];
    prune_(name, slot);

    if (slot.live)
    {
        if (slot.live->owner != owner)
        {
            return LeaseError::held;
        }
        slot.live->acquired_at = m_kernel.now();
        slot.live->ttl = ttl;
        emit_grant_(*slot.live, true);
        return *slot.live;
    }

    LeaseRecord record;
    record.name = name;
    record.owner = owner;
    record.acquired_at = m_kernel.now();
    record.ttl = ttl;
    record.epoch = ++slot.last_epoch;
    slot.live = record;
    emit_grant_(record, false);
    return record;
}

Expected<LeaseRecord, LeaseError> LeaseDirectory::renew(const LeaseName& name,
                                                        const std::string& owner)
{
    auto it = m_slots.find(name);
    if (it == m_slots.end())
    {
        return LeaseError::not_owner;
    }
    prune_(name, it->second);
    if (!it->second.live || it->second.live->owner != owner)
    {
        return LeaseError::not_owner;
    }
    it->second.live->acquired_at = m_kernel.now();
    emit_grant_(*it->second.live, true);
    return *it->second.live;
}

Expected<void, LeaseError> LeaseDirectory::release(const LeaseName& name, const std::string& owner)
{
    auto it = m_slots.find(name);
    if (it == m_slots.end())
    {
        return LeaseError::not_owner;
    }
    prune_(name, it->second);
    if (!it->second.live || it->second.live->owner != owner)
    {
        return LeaseError::not_owner;
    }
    m_kernel.emit("lockd", sim::TraceEvent::lease_release,
                  "name=" + name + " owner=" + owner +
                      " epoch=" + std::to_string(it->second.live->epoch));
    it->second.live.reset();
    return {};
}

Expected<LeaseView, LeaseError> LeaseDirectory::lookup(const LeaseName& name)
{
    auto it = m_slots.find(name);
    if (it == m_slots.end())
    {
        return LeaseError::no_owner;
    }
    prune_(name, it->second);
    if (!it->second.live)
    {
        return LeaseError::no_owner;
    }
    LeaseView view;
    view.owner = it->second.live->owner;
    view.remaining = it->second.live->expiry() - m_kernel.now();
    view.epoch = it->second.live->epoch;
    return view;
}

} // namespace leasewire::lock
