#include "asec/heuristics.hpp"

#include <functional>
#include <queue>
#include <stdexcept>

namespace asec {

HeuristicCostView HeuristicCostView::from_first_tier(const EstimatorTable &table) {
    std::vector<double> costs;
    costs.reserve(table.size());
    for (const EstimatorSet &set : table)
        costs.push_back(set.tier(0).c_min);
    return HeuristicCostView(std::move(costs));
}

HMaxHeuristic::HMaxHeuristic(const GroundTask &task, HeuristicCostView view)
    : task(task), view(std::move(view)), precondition_of(task.num_atoms()),
      atom_cost(task.num_atoms()), unsatisfied(task.num_actions()),
      action_support(task.num_actions()) {
    if (this->view.size() != task.num_actions())
        throw std::invalid_argument("cost view does not cover every action");
    for (const GroundAction &a : task.actions()) {
        if (a.pre.empty())
            no_precondition.push_back(a.id);
        for (AtomId p : a.pre)
            precondition_of[p].push_back(a.id);
    }
}

double HMaxHeuristic::evaluate(const State &state) {
    using Entry = std::pair<double, AtomId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;

    std::fill(atom_cost.begin(), atom_cost.end(), infinity);
    for (const GroundAction &a : task.actions()) {
        unsatisfied[a.id] = static_cast<int>(a.pre.size());
        action_support[a.id] = 0.0;
    }

    auto reach = [&](AtomId p, double cost) {
        if (cost < atom_cost[p]) {
            atom_cost[p] = cost;
            queue.emplace(cost, p);
        }
    };
    for (AtomId p : state.true_atoms())
        reach(p, 0.0);
    for (ActionId a : no_precondition)
        for (AtomId q : task.action(a).add)
            reach(q, view[a]);

    std::size_t goals_left = task.goal().size();
    std::vector<char> is_goal(task.num_atoms(), 0);
    for (AtomId g : task.goal())
        is_goal[g] = 1;

    while (!queue.empty() && goals_left > 0) {
        auto [cost, p] = queue.top();
        queue.pop();
        if (cost > atom_cost[p])
            continue;
        if (is_goal[p]) {
            is_goal[p] = 0;
            --goals_left;
        }
        for (ActionId a : precondition_of[p]) {
            // Atoms pop in non-decreasing cost order, so the last
            // precondition to arrive carries the maximum.
            action_support[a] = cost;
            if (--unsatisfied[a] == 0) {
                const double through = action_support[a] + view[a];
                for (AtomId q : task.action(a).add)
                    reach(q, through);
            }
        }
    }

    double h = 0.0;
    for (AtomId g : task.goal())
        h = std::max(h, atom_cost[g]);
    return h;
}

HeuristicKind parse_heuristic_kind(const std::string &name) {
    if (name == "blind")
        return HeuristicKind::blind;
    if (name == "hmax")
        return HeuristicKind::hmax;
    throw std::invalid_argument("unknown heuristic '" + name + "'");
}

std::string to_string(HeuristicKind kind) {
    return kind == HeuristicKind::blind ? "blind" : "hmax";
}

std::unique_ptr<Heuristic> make_heuristic(HeuristicKind kind, const GroundTask &task,
                                          const HeuristicCostView &view) {
    if (kind == HeuristicKind::hmax)
        return std::make_unique<HMaxHeuristic>(task, view);
    return std::make_unique<BlindHeuristic>();
}

} // namespace asec
