#ifndef ASEC_RANDOM_TASKS_HPP
#define ASEC_RANDOM_TASKS_HPP

#include "asec/task.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace asec {

/// A task with declarative base costs, ready for estimator synthesis.
struct BaseTask {
    std::string name;
    GroundTask task;
    std::vector<long long> c_pddl;
};

struct RandomTaskParams {
    int atoms = 8;
    int actions = 16;
    int max_pre = 2;
    int max_add = 2;
    int max_del = 2;
    int min_goal = 1;
    int max_goal = 3;
    double init_density = 0.3;
    long long min_cost = 1;
    long long max_cost = 5;
};

/// Random STRIPS task. Deterministic in (params, seed); not necessarily solvable.
BaseTask random_task(const RandomTaskParams &params, std::uint64_t seed);

struct TransportParams {
    int locations = 5;
    int trucks = 2;
    int packages = 2;
    /// Extra roads on top of a spanning tree.
    int extra_roads = 3;
    long long max_road_length = 9;
};

struct PddlText {
    std::string domain;
    std::string problem;
};

/// Transport-style domain (drive / pick-up / drop, road-length drive costs,
/// unit handling costs) as PDDL text, with a random connected road network.
PddlText transport_pddl(const TransportParams &params, std::uint64_t seed);

/// transport_pddl grounded through the PDDL frontend.
BaseTask transport_task(const TransportParams &params, std::uint64_t seed);

/// Small mixed corpus: random STRIPS tasks and transport instances, all
/// solvable and with at most `max_states` reachable states.
std::vector<BaseTask> desk_corpus(int random_count, int transport_count, std::uint64_t seed,
                                  std::size_t max_states = 100'000);

} // namespace asec

#endif
