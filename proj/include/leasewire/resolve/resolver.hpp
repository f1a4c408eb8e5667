#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "leasewire/kv/tablet.hpp"
#include "leasewire/lock/directory.hpp"
#include "leasewire/sim/time.hpp"

namespace leasewire::resolve
{

// Smallest usable lease timeout: a nearly-expired lease must still leave a
// send a fighting chance.
inline constexpr sim::Duration kTimeoutFloor{100};

// Timeout handed out for resolutions that carry no lease information.
inline constexpr sim::Duration kStaticTimeout{1000};

struct ResolveContext
{
    std::string method;
    std::optional<lock::LeaseName> name;
    std::optional<std::string> key;
};

struct Resolution
{
    std::string target;
    sim::Duration timeout_guess;        // per-attempt send budget
    std::optional<std::uint64_t> epoch; // fencing token; present iff lease-backed
    lock::LeaseName resolved_name;      // name the target was found under
    sim::Duration valid_for;            // how long a cache may keep this

    bool operator==(const Resolution&) const = default;
};

// A resolver either produces a Resolution or reports no-match (nullopt).
class ResolverBase
{
public:
    virtual ~ResolverBase() = default;
    virtual std::optional<Resolution> resolve(const ResolveContext& ctx) = 0;
    virtual void invalidate(const lock::LeaseName& name) { (void)name; }
};

// Maps ctx.name through the lease directory.  The resulting timeout guess
// is the remaining lease time, floored; the cache validity is the true
// remaining time, so a stale entry can never outlive its lease.
class LeaseResolver : public ResolverBase
{
public:
    explicit LeaseResolver(lock::LeaseDirectory& directory, sim::Duration floor = kTimeoutFloor)
        : m_directory(directory)
        , m_floor(floor)
    {
    }

    std::optional<Resolution> resolve(const ResolveContext& ctx) override;

    std::uint64_t lookups() const noexcept { return m_lookups; }

private:
    lock::LeaseDirectory& m_directory;
    sim::Duration m_floor;
    std::uint64_t m_lookups = 0;
};

// Fixed name -> address table; the stand-in for DNS or a static host list.
class StaticResolver : public ResolverBase
{
public:
    explicit StaticResolver(std::map<std::string, std::string> table,
                            sim::Duration default_timeout = kStaticTimeout)
        : m_table(std::move(table))
        , m_default_timeout(default_timeout)
    {
    }

    std::optional<Resolution> resolve(const ResolveContext& ctx) override;

private:
    std::map<std::string, std::string> m_table;
    sim::Duration m_default_timeout;
};

// Middleware-style stages: a stage may answer, report no-match, or rewrite
// the context and defer to the remainder of the chain via next.
using NextFn = std::function<std::optional<Resolution>(const ResolveContext&)>;
using StageFn = std::function<std::optional<Resolution>(const ResolveContext&, const NextFn&)>;

struct Stage
{
    StageFn fn;
    std::shared_ptr<ResolverBase> backing; // set when the stage wraps a resolver
};

Stage as_stage(std::shared_ptr<ResolverBase> resolver);

// Rewrites key-addressed requests to the covering tablet's lease name and
// defers.  Reads the live map on every call: splits are visible to the very
// next resolution.  No key: defers untouched.  No covering tablet: no-match.
Stage make_tablet_stage(const kv::TabletMap& live_map);

// First match wins, in stage order.  A stage's no-match sends the original
// context to the next stage; invalidations fan out to all backing resolvers.
class Chain : public ResolverBase
{
public:
    explicit Chain(std::vector<Stage> stages) : m_stages(std::move(stages)) {}

    std::optional<Resolution> resolve(const ResolveContext& ctx) override;
    void invalidate(const lock::LeaseName& name) override;

private:
    std::optional<Resolution> resolve_from_(std::size_t index, const ResolveContext& ctx);

    std::vector<Stage> m_stages;
};

// Memoizes inner by resolved name until the lease-derived deadline or an
// explicit invalidation.  Negative results are never cached.
class CachedResolver : public ResolverBase
{
public:
    CachedResolver(std::shared_ptr<ResolverBase> inner, std::function<sim::SimTime()> clock)
        : m_inner(std::move(inner))
        , m_clock(std::move(clock))
    {
    }

    std::optional<Resolution> resolve(const ResolveContext& ctx) override;
    void invalidate(const lock::LeaseName& name) override;

    std::uint64_t hits() const noexcept { return m_hits; }
    std::uint64_t misses() const noexcept { return m_misses; }

private:
    struct Entry
    {
        Resolution resolution;
        sim::SimTime deadline; // exclusive, like lease expiry
    };

    std::shared_ptr<ResolverBase> m_inner;
    std::function<sim::SimTime()> m_clock;
    std::map<lock::LeaseName, Entry> m_entries;
    std::uint64_t m_hits = 0;
    std::uint64_t m_misses = 0;
};

} // namespace leasewire::resolve
