#include "leasewire/harness/metrics.hpp"

#include <sstream>

namespace leasewire::harness
{

std::string format_metrics(const RunMetrics& metrics)
{
    std::ostringstream out;
    out << "ops_issued=" << metrics.ops_issued
        << " ops_acked=" << metrics.ops_acked
        << " ops_lost=" << metrics.ops_lost
        << " attempts_total=" << metrics.attempts_total
        << " lockservice_lookups=" << metrics.lockservice_lookups
        << " cache_hits=" << metrics.cache_hits
        << " wall_events=" << metrics.wall_events;
    return out.str();
}

} // namespace leasewire::harness
