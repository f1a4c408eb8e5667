#include "leasewire/resolve/resolver.hpp"

#include <algorithm>

namespace leasewire::resolve
{

std::optional<Resolution> LeaseResolver::resolve(const ResolveContext& ctx)
{
    if (!ctx.name)
    {
        return std::nullopt;
    }
    ++m_lookups;
    auto view = m_directory.lookup(*ctx.name);
    if (!view)
    {
        return std::nullopt;
    }
    Resolution resolution;
    resolution.target = view->owner;
    resolution.timeout_guess = std::max(view->remaining, m_floor);
    resolution.epoch = view->epoch;
    resolution.resolved_name = *ctx.name;
    resolution.valid_for = view->remaining;
    return resolution;
}

std::optional<Resolution> StaticResolver::resolve(const ResolveContext& ctx)
{
    if (!ctx.name)
    {
        return std::nullopt;
    }
    auto it = m_table.find(*ctx.name);
    if (it == m_table.end())
    {
        return std::nullopt;
    }
    Resolution resolution;
    resolution.target = it->second;
    resolution.timeout_guess = m_default_timeout;
    resolution.epoch = std::nullopt;
    resolution.resolved_name = *ctx.name;
    resolution.valid_for = m_default_timeout;
    return resolution;
}

Stage as_stage(std::shared_ptr<ResolverBase> resolver)
{
    Stage stage;
    stage.backing = resolver;
    stage.fn = [resolver](const ResolveContext& ctx, const NextFn&)
    { return resolver->resolve(ctx); };
    return stage;
}

Stage make_tablet_stage(const kv::TabletMap& live_map)
{
    Stage stage;
    stage.fn = [&live_map](const ResolveContext& ctx, const NextFn& next)
    {
        if (!ctx.key)
        {
            return next(ctx);
        }
        // tablet_for_key is total over a well-formed map; an empty map is a
        // wiring bug and throws there.
        ResolveContext rewritten = ctx;
        rewritten.name = tablet_for_key(live_map, *ctx.key);
        return next(rewritten);
    };
    return stage;
}

std::optional<Resolution> Chain::resolve_from_(std::size_t index, const ResolveContext& ctx)
{
    if (index >= m_stages.size())
    {
        return std::nullopt;
    }
    NextFn next = [this, index](const ResolveContext& deferred)
    { return resolve_from_(index + 1, deferred); };
    if (auto resolution = m_stages[index].fn(ctx, next))
    {
        return resolution;
    }
    return resolve_from_(index + 1, ctx);
}

std::optional<Resolution> Chain::resolve(const ResolveContext& ctx)
{
    return resolve_from_(0, ctx);
}

void Chain::invalidate(const lock::LeaseName& name)
{
    for (auto& stage : m_stages)
    {
        if (stage.backing)
        {
            stage.backing->invalidate(name);
        }
    }
}

std::optional<Resolution> CachedResolver::resolve(const ResolveContext& ctx)
{
    if (ctx.name)
    {
        auto it = m_entries.find(*ctx.name);
        if (it != m_entries.end())
        {
            if (m_clock() < it->second.deadline)
            {
                ++m_hits;
                return it->second.resolution;
            }
            m_entries.erase(it);
        }
    }
    ++m_misses;
    auto resolution = m_inner->resolve(ctx);
    if (resolution && resolution->valid_for.ms > 0)
    {
        m_entries.insert_or_assign(resolution->resolved_name,
                                   Entry{*resolution, m_clock() + resolution->valid_for});
    }
    return resolution;
}

void CachedResolver::invalidate(const lock::LeaseName& name)
{
    m_entries.erase(name);
    m_inner->invalidate(name);
}

} // namespace leasewire::resolve
