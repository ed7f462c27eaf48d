// Shared helpers for the unit and acceptance suites.
#ifndef ASEC_TESTS_SUPPORT_HPP
#define ASEC_TESTS_SUPPORT_HPP

#include "asec/oracle.hpp"
#include "asec/random_tasks.hpp"
#include "asec/synthesis.hpp"

#include <string>
#include <vector>

namespace asec::testing {

/// Solvable random tasks whose initial state is not a goal, every fifth one a
/// transport instance. Deterministic in (count, seed).
inline std::vector<BaseTask> solvable_instances(int count, std::uint64_t seed,
                                                std::size_t max_states = 20'000) {
    std::vector<BaseTask> out;
    SplitMix64 rng(seed);
    while (static_cast<int>(out.size()) < count) {
        BaseTask t;
        if (out.size() % 5 == 4) {
            TransportParams p;
            p.locations = static_cast<int>(rng.range(3, 5));
            p.trucks = static_cast<int>(rng.range(1, 2));
            p.packages = static_cast<int>(rng.range(1, 2));
            p.extra_roads = static_cast<int>(rng.range(0, 3));
            t = transport_task(p, rng.next());
        } else {
            RandomTaskParams p;
            p.atoms = static_cast<int>(rng.range(5, 10));
            p.actions = static_cast<int>(rng.range(p.atoms * 3 / 2, p.atoms * 4));
            p.max_pre = static_cast<int>(rng.range(1, 3));
            p.min_goal = 1;
            p.max_goal = 3;
            p.max_cost = 9;
            t = random_task(p, rng.next());
        }
        if (t.task.is_goal(t.task.initial()))
            continue;
        try {
            std::vector<double> costs(t.c_pddl.begin(), t.c_pddl.end());
            if (!dijkstra(t.task, costs, max_states).plan)
                continue;
        } catch (const OracleCapError &) {
            continue;
        }
        out.push_back(std::move(t));
    }
    return out;
}

} // namespace asec::testing

#endif
