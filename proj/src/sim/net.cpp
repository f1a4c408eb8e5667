#include "leasewire/sim/net.hpp"

namespace leasewire::sim
{

const char* to_string(FaultKind kind)
{
    switch (kind)
    {
        case FaultKind::crash_server: return "crash-server";
        case FaultKind::restart_server: return "restart-server";
        case FaultKind::drop_link: return "drop-link";
        case FaultKind::heal_link: return "heal-link";
        case FaultKind::split_tablet: return "split-tablet";
    }
    return "?";
}

Network::Network(SimKernel& kernel, Duration latency)
    : m_kernel(kernel)
    , m_latency(latency)
{
    if (latency.ms < 0)
    {
        throw std::invalid_argument("Network: negative latency");
    }
}

void Network::add_endpoint(std::string id, DeliverFn on_deliver, std::function<void()> on_crash)
{
    if (m_endpoints.count(id) != 0)
    {
        throw ScenarioError("duplicate endpoint: " + id);
    }
    Endpoint ep;
    ep.deliver = std::move(on_deliver);
    ep.on_crash = std::move(on_crash);
    m_endpoints.emplace(std::move(id), std::move(ep));
}

bool Network::has_endpoint(const std::string& id) const
{
    return m_endpoints.count(id) != 0;
}

bool Network::alive(const std::string& id) const
{
    auto it = m_endpoints.find(id);
    return it != m_endpoints.end() && it->second.alive;
}

std::pair<std::string, std::string> Network::pair_key_(const std::string& a, const std::string& b)
{
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

bool Network::link_up_(const std::string& a, const std::string& b) const
{
    if (m_isolated.count(a) != 0 || m_isolated.count(b) != 0)
    {
        return false;
    }
    return m_down_pairs.count(pair_key_(a, b)) == 0;
}

void Network::send(const std::string& from, const std::string& to,
                   std::vector<std::uint8_t> bytes, std::string label)
{
    const std::uint64_t msg = m_next_msg++;
    m_kernel.emit(from, TraceEvent::send,
                  "to=" + to + " msg=" + std::to_string(msg) + " " + label);

    // Conditions sampled at send time travel with the message; a crash or
    // link cut in flight is detected again at delivery.
    const auto target_it = m_endpoints.find(to);
    const bool target_known = target_it != m_endpoints.end();
    const bool target_alive_at_send = target_known && target_it->second.alive;
    const std::uint64_t incarnation_at_send = target_known ? target_it->second.incarnation : 0;
    const bool link_up_at_send = link_up_(from, to);

    m_kernel.schedule(m_latency,
                      [this, from, to, msg,
                       bytes = std::move(bytes), label = std::move(label),
                       target_known, target_alive_at_send, incarnation_at_send,
                       link_up_at_send]()
                      {
                          auto it = m_endpoints.find(to);
                          const char* reason = nullptr;
                          if (it == m_endpoints.end() || !target_known)
                          {
                              reason = "no-endpoint";
                          }
                          else if (!target_alive_at_send || !it->second.alive)
                          {
                              reason = "crashed";
                          }
                          else if (it->second.incarnation != incarnation_at_send)
                          {
                              reason = "crashed-in-flight";
                          }
                          else if (!link_up_at_send || !link_up_(from, to))
                          {
                              reason = "link-down";
                          }
                          if (reason != nullptr)
                          {
                              m_kernel.emit(to, TraceEvent::drop,
                                            "from=" + from + " msg=" + std::to_string(msg) +
                                                " reason=" + reason + " " + label);
                              return;
                          }
                          m_kernel.emit(to, TraceEvent::deliver,
                                        "from=" + from + " msg=" + std::to_string(msg) + " " + label);
                          it->second.deliver(from, bytes);
                      });
}

void Network::crash(const std::string& id)
{
    auto it = m_endpoints.find(id);
    if (it == m_endpoints.end())
    {
        throw ScenarioError("crash-server: unknown target " + id);
    }
    m_kernel.emit(id, TraceEvent::fault, "kind=crash-server");
    it->second.alive = false;
    it->second.incarnation++;
    if (it->second.on_crash)
    {
        it->second.on_crash();
    }
}

void Network::restart(const std::string& id)
{
    auto it = m_endpoints.find(id);
    if (it == m_endpoints.end())
    {
        throw ScenarioError("restart-server: unknown target " + id);
    }
    m_kernel.emit(id, TraceEvent::fault, "kind=restart-server");
    it->second.alive = true;
}

void Network::drop_link(const std::string& id, const std::string& peer)
{
    if (!has_endpoint(id) || (!peer.empty() && !has_endpoint(peer)))
    {
        throw ScenarioError("drop-link: unknown target " + id + (peer.empty() ? "" : "/" + peer));
    }
    m_kernel.emit(id, TraceEvent::fault,
                  peer.empty() ? std::string("kind=drop-link") : "kind=drop-link arg=" + peer);
    if (peer.empty())
    {
        m_isolated.insert(id);
    }
    else
    {
        m_down_pairs.insert(pair_key_(id, peer));
    }
}

void Network::heal_link(const std::string& id, const std::string& peer)
{
    if (!has_endpoint(id) || (!peer.empty() && !has_endpoint(peer)))
    {
        throw ScenarioError("heal-link: unknown target " + id + (peer.empty() ? "" : "/" + peer));
    }
    m_kernel.emit(id, TraceEvent::fault,
                  peer.empty() ? std::string("kind=heal-link") : "kind=heal-link arg=" + peer);
    if (peer.empty())
    {
        m_isolated.erase(id);
    }
    else
    {
        m_down_pairs.erase(pair_key_(id, peer));
    }
}

void Network::inject_fault(const FaultSpec& spec)
{
    if (spec.at < m_kernel.now())
    {
        throw ScenarioError("fault scheduled in the past");
    }
    switch (spec.kind)
    {
        case FaultKind::crash_server:
        case FaultKind::restart_server:
            if (!has_endpoint(spec.target))
            {
                throw ScenarioError(std::string(to_string(spec.kind)) +
                                    ": unknown target " + spec.target);
            }
            break;
        case FaultKind::drop_link:
        case FaultKind::heal_link:
            if (!has_endpoint(spec.target) || (!spec.arg.empty() && !has_endpoint(spec.arg)))
            {
                throw ScenarioError(std::string(to_string(spec.kind)) +
                                    ": unknown target " + spec.target);
            }
            break;
        case FaultKind::split_tablet:
            if (!m_split_handler)
            {
                throw ScenarioError("split-tablet: no handler registered");
            }
            break;
    }

    m_kernel.schedule(spec.at - m_kernel.now(),
                      [this, spec]()
                      {
                          switch (spec.kind)
                          {
                              case FaultKind::crash_server:
                                  crash(spec.target);
                                  break;
                              case FaultKind::restart_server:
                                  restart(spec.target);
                                  break;
                              case FaultKind::drop_link:
                                  drop_link(spec.target, spec.arg);
                                  break;
                              case FaultKind::heal_link:
                                  heal_link(spec.target, spec.arg);
                                  break;
                              case FaultKind::split_tablet:
                                  m_kernel.emit(spec.target, TraceEvent::fault,
                                                "kind=split-tablet arg=" + spec.arg);
                                  m_split_handler(spec);
                                  break;
                          }
                      });
}

void Network::set_split_handler(std::function<void(const FaultSpec&)> handler)
{
    m_split_handler = std::move(handler);
}

} // namespace leasewire::sim
