#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace leasewire::kv
{

// Append-only record of every applied put, standing in for the shared
// durable storage under the tablet servers.  Volatile server state can
// always be rebuilt by replaying it in order.
class DurableLog
{
public:
    struct Entry
    {
        std::uint64_t seq = 0;
        std::string key;
        std::string value;
    };

    std::uint64_t append(std::string key, std::string value)
    {
        const std::uint64_t seq = m_entries.size() + 1;
        m_entries.push_back(Entry{seq, std::move(key), std::move(value)});
        return seq;
    }

    const std::vector<Entry>& entries() const noexcept { return m_entries; }

    // Latest value for key, or nullptr if never written.
    const std::string* last_value(std::string_view key) const
    {
        for (auto it = m_entries.rbegin(); it != m_entries.rend(); ++it)
        {
            if (it->key == key)
            {
                return &it->value;
            }
        }
        return nullptr;
    }

private:
    std::vector<Entry> m_entries;
};

} // namespace leasewire::kv
