#include "leasewire/kv/tablet.hpp"

#include <algorithm>
#include <stdexcept>

namespace leasewire::kv
{

Expected<TabletMap, std::string> TabletMap::make(std::vector<TabletDescriptor> tablets)
{
    if (tablets.empty())
    {
        return std::string("tablet map must not be empty");
    }
    std::sort(tablets.begin(), tablets.end(),
              [](const TabletDescriptor& a, const TabletDescriptor& b)
              { return a.start_key < b.start_key; });

    if (!tablets.front().start_key.empty())
    {
        return std::string("keyspace must start at the empty key");
    }
    for (std::size_t i = 0; i + 1 < tablets.size(); ++i)
    {
        if (!tablets[i].end_key)
        {
            return std::string("tablet " + tablets[i].id + " is unbounded but not last");
        }
        if (*tablets[i].end_key != tablets[i + 1].start_key)
        {
            return std::string("gap or overlap after tablet " + tablets[i].id);
        }
        if (*tablets[i].end_key <= tablets[i].start_key)
        {
            return std::string("tablet " + tablets[i].id + " has an empty range");
        }
    }
    if (tablets.back().end_key)
    {
        return std::string("last tablet must be unbounded");
    }
    for (std::size_t i = 0; i < tablets.size(); ++i)
    {
        for (std::size_t j = i + 1; j < tablets.size(); ++j)
        {
            if (tablets[i].id == tablets[j].id)
            {
                return std::string("duplicate tablet id " + tablets[i].id);
            }
        }
    }

    TabletMap map;
    map.m_tablets = std::move(tablets);
    return map;
}

const TabletDescriptor& TabletMap::tablet_for_key(std::string_view key) const
{
    if (m_tablets.empty())
    {
        throw std::logic_error("TabletMap: empty map");
    }
    // Last tablet whose start_key <= key; ranges tile the keyspace, so it
    // must contain the key.
    auto it = std::upper_bound(m_tablets.begin(), m_tablets.end(), key,
                               [](std::string_view k, const TabletDescriptor& t)
                               { return k < t.start_key; });
    return *std::prev(it);
}

const TabletDescriptor* TabletMap::find(const std::string& tablet_id) const
{
    for (const auto& tablet : m_tablets)
    {
        if (tablet.id == tablet_id)
        {
            return &tablet;
        }
    }
    return nullptr;
}

Expected<void, std::string> TabletMap::split(const std::string& tablet_id,
                                             const std::string& split_key)
{
    auto it = std::find_if(m_tablets.begin(), m_tablets.end(),
                           [&](const TabletDescriptor& t) { return t.id == tablet_id; });
    if (it == m_tablets.end())
    {
        return std::string("bad-split: no tablet " + tablet_id);
    }
    if (split_key <= it->start_key || (it->end_key && split_key >= *it->end_key))
    {
        return std::string("bad-split: key outside tablet " + tablet_id);
    }

    TabletDescriptor left{it->id + "a", it->start_key, split_key};
    TabletDescriptor right{it->id + "b", split_key, it->end_key};
    it = m_tablets.erase(it);
    it = m_tablets.insert(it, std::move(right));
    m_tablets.insert(it, std::move(left));
    ++m_version;
    return {};
}

bool TabletMap::well_formed() const
{
    auto copy = m_tablets;
    return static_cast<bool>(make(std::move(copy)));
}

} // namespace leasewire::kv
