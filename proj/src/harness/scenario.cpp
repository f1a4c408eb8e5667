#include "leasewire/harness/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace leasewire::harness
{

const char* to_string(ClientMode mode)
{
    return mode == ClientMode::naive ? "naive" : "library";
}

namespace
{

struct LineFail
{
    std::string message;
};

std::vector<std::string> tokenize(std::string_view line)
{
    if (auto hash = line.find('#'); hash != std::string_view::npos)
    {
        line = line.substr(0, hash);
    }
    std::vector<std::string> tokens;
    std::istringstream stream{std::string(line)};
    std::string token;
    while (stream >> token)
    {
        tokens.push_back(token);
    }
    return tokens;
}

std::uint64_t parse_u64(const std::string& text, const char* what)
{
    std::size_t used = 0;
    std::uint64_t value = 0;
    try
    {
        value = std::stoull(text, &used);
    }
    catch (const std::exception&)
    {
        used = 0;
    }
    if (used != text.size())
    {
        throw LineFail{std::string("expected a non-negative integer for ") + what + ", got '" + text + "'"};
    }
    return value;
}

double parse_double(const std::string& text, const char* what)
{
    std::size_t used = 0;
    double value = 0;
    try
    {
        value = std::stod(text, &used);
    }
    catch (const std::exception&)
    {
        used = 0;
    }
    if (used != text.size() || !std::isfinite(value))
    {
        throw LineFail{std::string("expected a number for ") + what + ", got '" + text + "'"};
    }
    return value;
}

sim::Duration parse_seconds(const std::string& text, const char* what)
{
    double value = parse_double(text, what);
    if (value < 0)
    {
        throw LineFail{std::string(what) + " must be non-negative"};
    }
    return sim::seconds(value);
}

// "key=value" → value, or fail mentioning the directive.
std::string expect_kv(const std::string& token, std::string_view key)
{
    auto eq = token.find('=');
    if (eq == std::string::npos || token.substr(0, eq) != key)
    {
        throw LineFail{std::string("expected ") + std::string(key) + "=..., got '" + token + "'"};
    }
    return token.substr(eq + 1);
}

sim::FaultKind parse_fault_kind(const std::string& word)
{
    if (word == "crash" || word == "crash-server")
    {
        return sim::FaultKind::crash_server;
    }
    if (word == "restart" || word == "restart-server")
    {
        return sim::FaultKind::restart_server;
    }
    if (word == "drop" || word == "drop-link")
    {
        return sim::FaultKind::drop_link;
    }
    if (word == "heal" || word == "heal-link")
    {
        return sim::FaultKind::heal_link;
    }
    if (word == "split" || word == "split-tablet")
    {
        return sim::FaultKind::split_tablet;
    }
    throw LineFail{"unknown fault kind '" + word + "'"};
}

// mix=put:0.9,get:0.1 → fraction of puts.  Fractions must cover put/get only
// and sum to 1.
double parse_mix(const std::string& text)
{
    double put = 0;
    double get = 0;
    bool saw_put = false;
    bool saw_get = false;
    std::istringstream stream(text);
    std::string part;
    while (std::getline(stream, part, ','))
    {
        auto colon = part.find(':');
        if (colon == std::string::npos)
        {
            throw LineFail{"mix entries look like put:0.9, got '" + part + "'"};
        }
        const std::string op = part.substr(0, colon);
        const double fraction = parse_double(part.substr(colon + 1), "mix fraction");
        if (fraction < 0 || fraction > 1)
        {
            throw LineFail{"mix fraction out of [0,1]: '" + part + "'"};
        }
        if (op == "put" && !saw_put)
        {
            put = fraction;
            saw_put = true;
        }
        else if (op == "get" && !saw_get)
        {
            get = fraction;
            saw_get = true;
        }
        else
        {
            throw LineFail{"mix supports put and get once each, got '" + part + "'"};
        }
    }
    if (!saw_put && !saw_get)
    {
        throw LineFail{"empty mix"};
    }
    if (std::abs(put + get - 1.0) > 1e-9)
    {
        throw LineFail{"mix fractions must sum to 1"};
    }
    return put;
}

sim::Duration default_lease_ttl()
{
    if (const char* env = std::getenv("LEASEWIRE_DEFAULT_TTL"))
    {
        try
        {
            return parse_seconds(env, "LEASEWIRE_DEFAULT_TTL");
        }
        catch (const LineFail&)
        {
            // Unusable override; fall through to the built-in default.
        }
    }
    return sim::Duration{10000};
}

bool is_split_child_of(std::string_view child, std::string_view parent)
{
    if (child.size() <= parent.size() || child.substr(0, parent.size()) != parent)
    {
        return false;
    }
    return std::all_of(child.begin() + static_cast<std::ptrdiff_t>(parent.size()), child.end(),
                       [](char c) { return c == 'a' || c == 'b'; });
}

} // namespace

Expected<Scenario, ParseError> parse_scenario(std::string_view text)
{
    Scenario scenario;
    scenario.lease_ttl = default_lease_ttl();

    std::vector<std::pair<int, sim::FaultSpec>> faults; // keep line numbers for validation
    bool saw_workload = false;

    int line_no = 0;
    auto fail = [&line_no](std::string message) {
        return Expected<Scenario, ParseError>(ParseError{line_no, std::move(message)});
    };

    std::istringstream lines{std::string(text)};
    std::string line;
    while (std::getline(lines, line))
    {
        ++line_no;
        std::vector<std::string> tokens;
        try
        {
            tokens = tokenize(line);
            if (tokens.empty())
            {
                continue;
            }
            const std::string& directive = tokens[0];
            auto want_args = [&](std::size_t n) {
                if (tokens.size() != n + 1)
                {
                    throw LineFail{directive + " takes " + std::to_string(n) + " argument(s)"};
                }
            };

            if (directive == "seed")
            {
                want_args(1);
                scenario.seed = parse_u64(tokens[1], "seed");
            }
            else if (directive == "server" || directive == "standby")
            {
                want_args(1);
                const std::string& id = tokens[1];
                auto& into = directive == "server" ? scenario.servers : scenario.standbys;
                for (const auto& list : {scenario.servers, scenario.standbys})
                {
                    if (std::find(list.begin(), list.end(), id) != list.end())
                    {
                        throw LineFail{"duplicate server id '" + id + "'"};
                    }
                }
                if (id == "client" || id == "admin" || id == "lockd")
                {
                    throw LineFail{"'" + id + "' is reserved"};
                }
                into.push_back(id);
            }
            else if (directive == "tablet")
            {
                want_args(3);
                kv::TabletDescriptor tablet;
                tablet.id = tokens[1];
                tablet.start_key = tokens[2] == "-" ? std::string() : tokens[2];
                if (tokens[3] != "inf")
                {
                    tablet.end_key = tokens[3];
                }
                scenario.tablets.push_back(std::move(tablet));
            }
            else if (directive == "lease_ttl")
            {
                want_args(1);
                scenario.lease_ttl = parse_seconds(tokens[1], "lease_ttl");
                if (scenario.lease_ttl.ms <= 0)
                {
                    throw LineFail{"lease_ttl must be positive"};
                }
            }
            else if (directive == "latency")
            {
                want_args(1);
                scenario.latency = parse_seconds(tokens[1], "latency");
            }
            else if (directive == "fault")
            {
                if (tokens.size() < 4 || tokens.size() > 5)
                {
                    throw LineFail{"fault takes: fault KIND TARGET at=T [arg=V]"};
                }
                sim::FaultSpec spec;
                spec.kind = parse_fault_kind(tokens[1]);
                spec.target = tokens[2];
                spec.at = sim::SimTime{parse_seconds(expect_kv(tokens[3], "at"), "at").ms};
                if (tokens.size() == 5)
                {
                    spec.arg = expect_kv(tokens[4], "arg");
                }
                if (spec.kind == sim::FaultKind::split_tablet && spec.arg.empty())
                {
                    throw LineFail{"split needs arg=SPLIT_KEY"};
                }
                faults.emplace_back(line_no, spec);
            }
            else if (directive == "workload")
            {
                if (saw_workload)
                {
                    throw LineFail{"only one workload per scenario"};
                }
                saw_workload = true;
                WorkloadSpec& w = scenario.workload;
                for (std::size_t i = 1; i < tokens.size(); ++i)
                {
                    const std::string& token = tokens[i];
                    auto eq = token.find('=');
                    if (eq == std::string::npos)
                    {
                        throw LineFail{"workload settings look like ops=60, got '" + token + "'"};
                    }
                    const std::string key = token.substr(0, eq);
                    const std::string value = token.substr(eq + 1);
                    if (key == "ops")
                    {
                        w.ops = parse_u64(value, "ops");
                    }
                    else if (key == "keys")
                    {
                        if (value.size() != 4 || value.substr(1, 2) != "..")
                        {
                            throw LineFail{"keys looks like a..z, got '" + value + "'"};
                        }
                        w.key_lo = value[0];
                        w.key_hi = value[3];
                        if (w.key_lo > w.key_hi)
                        {
                            throw LineFail{"empty key range '" + value + "'"};
                        }
                    }
                    else if (key == "mix")
                    {
                        w.put_fraction = parse_mix(value);
                    }
                    else if (key == "gap")
                    {
                        auto dots = value.find("..");
                        if (dots == std::string::npos)
                        {
                            throw LineFail{"gap looks like 0.05..0.15, got '" + value + "'"};
                        }
                        w.gap_min = parse_seconds(value.substr(0, dots), "gap min");
                        w.gap_max = parse_seconds(value.substr(dots + 2), "gap max");
                        if (w.gap_min.ms <= 0 || w.gap_max.ms < w.gap_min.ms)
                        {
                            throw LineFail{"gap needs 0 < min <= max"};
                        }
                    }
                    else
                    {
                        throw LineFail{"unknown workload setting '" + key + "'"};
                    }
                }
            }
            else if (directive == "client")
            {
                want_args(1);
                if (tokens[1] == "naive")
                {
                    scenario.mode = ClientMode::naive;
                }
                else if (tokens[1] == "library")
                {
                    scenario.mode = ClientMode::library;
                }
                else
                {
                    throw LineFail{"client mode is naive or library, got '" + tokens[1] + "'"};
                }
            }
            else
            {
                throw LineFail{"unknown directive '" + directive + "'"};
            }
        }
        catch (const LineFail& failure)
        {
            return fail(failure.message);
        }
    }

    line_no = 0; // whole-file problems report line 0
    if (scenario.servers.empty())
    {
        return fail("scenario declares no servers");
    }
    if (scenario.tablets.empty())
    {
        return fail("scenario declares no tablets");
    }
    auto map = kv::TabletMap::make(scenario.tablets);
    if (!map.ok())
    {
        return fail("bad tablet layout: " + map.error());
    }

    auto known_node = [&scenario](const std::string& id) {
        auto in = [&id](const std::vector<std::string>& list) {
            return std::find(list.begin(), list.end(), id) != list.end();
        };
        return in(scenario.servers) || in(scenario.standbys);
    };
    for (const auto& [fault_line, spec] : faults)
    {
        line_no = fault_line;
        switch (spec.kind)
        {
        case sim::FaultKind::crash_server:
        case sim::FaultKind::restart_server:
            if (!known_node(spec.target))
            {
                return fail("fault targets unknown server '" + spec.target + "'");
            }
            break;
        case sim::FaultKind::drop_link:
        case sim::FaultKind::heal_link:
            if (!known_node(spec.target) && spec.target != "client")
            {
                return fail("fault targets unknown node '" + spec.target + "'");
            }
            if (!spec.arg.empty() && !known_node(spec.arg) && spec.arg != "client")
            {
                return fail("fault peer unknown node '" + spec.arg + "'");
            }
            break;
        case sim::FaultKind::split_tablet:
        {
            const bool known = std::any_of(
                scenario.tablets.begin(), scenario.tablets.end(), [&spec](const kv::TabletDescriptor& t) {
                    return t.id == spec.target || is_split_child_of(spec.target, t.id);
                });
            if (!known)
            {
                return fail("split targets unknown tablet '" + spec.target + "'");
            }
            break;
        }
        }
        scenario.faults.push_back(spec);
    }
    std::stable_sort(scenario.faults.begin(), scenario.faults.end(),
                     [](const sim::FaultSpec& a, const sim::FaultSpec& b) { return a.at.ms < b.at.ms; });

    return Expected<Scenario, ParseError>(std::move(scenario));
}

Expected<Scenario, ParseError> load_scenario_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
    {
        return Expected<Scenario, ParseError>(ParseError{0, "cannot open scenario file '" + path + "'"});
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

} // namespace leasewire::harness
