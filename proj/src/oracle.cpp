#include "asec/oracle.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <unordered_map>

namespace asec {

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double tolerance = 1e-12;
} // namespace

OptimalSolution dijkstra(const GroundTask &task, const std::vector<double> &action_costs,
                         std::size_t state_cap) {
    if (action_costs.size() != task.num_actions())
        throw StructuralError("cost vector does not cover every action");

    std::vector<State> states;
    std::unordered_map<State, int, StateHash> ids;
    std::vector<double> dist;
    std::vector<int> parent;
    std::vector<ActionId> via;

    auto lookup = [&](const State &s) {
        auto it = ids.find(s);
        if (it != ids.end())
            return it->second;
        if (states.size() >= state_cap)
            throw OracleCapError("oracle state cap of " + std::to_string(state_cap) +
                                 " exceeded");
        int id = static_cast<int>(states.size());
        ids.emplace(s, id);
        states.push_back(s);
        dist.push_back(inf);
        parent.push_back(-1);
        via.push_back(-1);
        return id;
    };

    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    const int root = lookup(task.initial());
    dist[root] = 0.0;
    queue.emplace(0.0, root);
    while (!queue.empty()) {
        auto [d, id] = queue.top();
        queue.pop();
        if (d > dist[id])
            continue;
        if (task.is_goal(states[id])) {
            Plan plan;
            for (int s = id; parent[s] >= 0; s = parent[s])
                plan.actions.push_back(via[s]);
            std::reverse(plan.actions.begin(), plan.actions.end());
            return {d, std::move(plan)};
        }
        const State current = states[id];
        for (const GroundAction &a : task.actions()) {
            if (!applicable(current, a))
                continue;
            const int next = lookup(apply(current, a));
            const double nd = d + action_costs[a.id];
            if (nd < dist[next]) {
                dist[next] = nd;
                parent[next] = id;
                via[next] = a.id;
                queue.emplace(nd, next);
            }
        }
    }
    return {inf, std::nullopt};
}

OptimalSolution dijkstra_optimal(const GroundTask &task, const CostOracleTable &oracle,
                                 std::size_t state_cap) {
    return dijkstra(task, oracle.costs(), state_cap);
}

bool check_epsilon_optimal(const GroundTask &task, const Plan &plan,
                           const CostOracleTable &oracle, double c_star, double epsilon) {
    if (!validate_plan(task, plan))
        throw StructuralError("plan is not a valid solution");
    return oracle.plan_cost(plan) <= c_star * epsilon * (1.0 + tolerance);
}

bool check_bound_theorem(const Plan &plan, double eta_eff, const CostOracleTable &oracle,
                         double c_star) {
    return oracle.plan_cost(plan) <= c_star * eta_eff * (1.0 + tolerance);
}

std::vector<State> reachable_states(const GroundTask &task, std::size_t state_cap) {
    std::vector<State> states{task.initial()};
    std::unordered_map<State, int, StateHash> ids{{task.initial(), 0}};
    for (std::size_t i = 0; i < states.size(); ++i) {
        const State current = states[i];
        for (const GroundAction &a : task.actions()) {
            if (!applicable(current, a))
                continue;
            State next = apply(current, a);
            if (ids.count(next))
                continue;
            if (states.size() >= state_cap)
                throw OracleCapError("oracle state cap of " + std::to_string(state_cap) +
                                     " exceeded");
            ids.emplace(next, static_cast<int>(states.size()));
            states.push_back(std::move(next));
        }
    }
    return states;
}

std::vector<double> cost_to_go(const GroundTask &task, const std::vector<State> &states,
                               const std::vector<double> &action_costs) {
    std::unordered_map<State, int, StateHash> ids;
    for (std::size_t i = 0; i < states.size(); ++i)
        ids.emplace(states[i], static_cast<int>(i));

    // predecessors[t] = (s, cost) for every edge s -> t
    std::vector<std::vector<std::pair<int, double>>> predecessors(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (const GroundAction &a : task.actions()) {
            if (!applicable(states[i], a))
                continue;
            auto it = ids.find(apply(states[i], a));
            if (it == ids.end())
                throw StructuralError("state set is not closed under successors");
            predecessors[it->second].emplace_back(static_cast<int>(i), action_costs[a.id]);
        }
    }

    std::vector<double> dist(states.size(), inf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (task.is_goal(states[i])) {
            dist[i] = 0.0;
            queue.emplace(0.0, static_cast<int>(i));
        }
    }
    while (!queue.empty()) {
        auto [d, id] = queue.top();
        queue.pop();
        if (d > dist[id])
            continue;
        for (auto [pred, cost] : predecessors[id]) {
            if (d + cost < dist[pred]) {
                dist[pred] = d + cost;
                queue.emplace(dist[pred], pred);
            }
        }
    }
    return dist;
}

} // namespace asec
