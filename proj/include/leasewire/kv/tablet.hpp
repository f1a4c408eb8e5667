#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "leasewire/expected.hpp"
#include "leasewire/lock/directory.hpp"

namespace leasewire::kv
{

// Half-open key range [start_key, end_key); no end_key means +infinity.
struct TabletDescriptor
{
    std::string id;
    std::string start_key;
    std::optional<std::string> end_key;

    bool contains(std::string_view key) const
    {
        if (key < start_key)
        {
            return false;
        }
        return !end_key || key < *end_key;
    }

    lock::LeaseName lease_name() const { return "tablets/" + id; }
};

// Ordered, disjoint tablets jointly covering the whole keyspace.  The map
// is shared, mutable metadata; version bumps on every split.
class TabletMap
{
public:
    TabletMap() = default;

    // Rejects gaps, overlaps, or a keyspace not anchored at "" / +inf.
    static Expected<TabletMap, std::string> make(std::vector<TabletDescriptor> tablets);

    const TabletDescriptor& tablet_for_key(std::string_view key) const;

    // Replaces the parent with children <id>a / <id>b; the boundary key
    // starts the right child.  bad-split when the key is at or outside the
    // parent's bounds, or the tablet is unknown.
    Expected<void, std::string> split(const std::string& tablet_id, const std::string& split_key);

    const std::vector<TabletDescriptor>& tablets() const noexcept { return m_tablets; }
    std::uint64_t version() const noexcept { return m_version; }
    bool well_formed() const;

    const TabletDescriptor* find(const std::string& tablet_id) const;

private:
    std::vector<TabletDescriptor> m_tablets; // sorted by start_key
    std::uint64_t m_version = 1;
};

inline lock::LeaseName tablet_for_key(const TabletMap& map, std::string_view key)
{
    return map.tablet_for_key(key).lease_name();
}

} // namespace leasewire::kv
