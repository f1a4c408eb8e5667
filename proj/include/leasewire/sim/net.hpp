#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "leasewire/sim/fault.hpp"
#include "leasewire/sim/kernel.hpp"

namespace leasewire::sim
{

// Point-to-point message fabric over the kernel.  Every send either becomes
// a deliver entry or a drop entry; nothing vanishes untraced.
class Network
{
public:
    using DeliverFn = std::function<void(const std::string& from, const std::vector<std::uint8_t>& bytes)>;

    Network(SimKernel& kernel, Duration latency);

    // on_crash runs when the endpoint loses its volatile state.
    void add_endpoint(std::string id, DeliverFn on_deliver, std::function<void()> on_crash = {});
    bool has_endpoint(const std::string& id) const;
    bool alive(const std::string& id) const;

    // label is carried into the send/deliver/drop trace entries so traces
    // read as a narrative; it never reaches the payload.
    void send(const std::string& from, const std::string& to,
              std::vector<std::uint8_t> bytes, std::string label);

    // A crashed endpoint drops everything in flight to it and everything
    // sent until restart.  Restart brings it back empty-handed.
    void crash(const std::string& id);
    void restart(const std::string& id);

    // Empty peer means the entity is cut off from everyone.
    void drop_link(const std::string& id, const std::string& peer = "");
    void heal_link(const std::string& id, const std::string& peer = "");

    // Validates the target now, applies the fault at spec.at.  split_tablet
    // is not a network concern and is forwarded to the registered handler.
    void inject_fault(const FaultSpec& spec);
    void set_split_handler(std::function<void(const FaultSpec&)> handler);

    Duration latency() const noexcept { return m_latency; }

private:
    struct Endpoint
    {
        DeliverFn deliver;
        std::function<void()> on_crash;
        bool alive = true;
        std::uint64_t incarnation = 0;
    };

    bool link_up_(const std::string& a, const std::string& b) const;
    static std::pair<std::string, std::string> pair_key_(const std::string& a, const std::string& b);

    SimKernel& m_kernel;
    Duration m_latency;
    std::map<std::string, Endpoint> m_endpoints;
    std::set<std::pair<std::string, std::string>> m_down_pairs;
    std::set<std::string> m_isolated;
    std::function<void(const FaultSpec&)> m_split_handler;
    std::uint64_t m_next_msg = 1;
};

} // namespace leasewire::sim
