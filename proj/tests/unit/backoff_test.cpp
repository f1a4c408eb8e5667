/*
Purpose: Backoff doubles and pins at the cap, exactly.

What this tests: The full trajectory from 1 s pointwise, the cap from
below and at the fixed point, custom caps, and rejection of non-positive
inputs.
*/

#include "leasewire/rpc/backoff.hpp"

#include "../support/check.hpp"

#include <iostream>
#include <vector>

using namespace leasewire;
using namespace leasewire::rpc;

int main()
{
    CHECK_EQ(kBackoffInitial.ms, 1000);
    CHECK_EQ(kBackoffCap.ms, 60000);

    // Trajectory from 1 s: 2, 4, 8, 16, 32, 60, 60, 60.
    const std::vector<std::int64_t> expected{2000, 4000, 8000, 16000, 32000, 60000, 60000, 60000};
    sim::Duration current = kBackoffInitial;
    for (std::int64_t step : expected)
    {
        current = next_backoff(current);
        CHECK_EQ(current.ms, step);
    }

    CHECK_EQ(next_backoff(sim::seconds(40)).ms, 60000); // clipped, not skipped
    CHECK_EQ(next_backoff(sim::seconds(60)).ms, 60000); // fixed point
    CHECK_EQ(next_backoff(sim::millis(1)).ms, 2);
    CHECK_EQ(next_backoff(sim::seconds(7), sim::seconds(10)).ms, 10000);

    CHECK_THROWS(next_backoff(sim::millis(0)), std::invalid_argument);
    CHECK_THROWS(next_backoff(sim::millis(-1)), std::invalid_argument);

    // Policy defaults pin the retry budget.
    const CallPolicy policy;
    CHECK_EQ(policy.max_attempts, 16u);
    CHECK_EQ(policy.overall_deadline.ms, 120000);
    CHECK_EQ(policy.initial_backoff.ms, 1000);
    CHECK_EQ(policy.backoff_cap.ms, 60000);

    std::cout << "backoff_test: PASS\n";
    return 0;
}
