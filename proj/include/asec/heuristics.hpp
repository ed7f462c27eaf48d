#ifndef ASEC_HEURISTICS_HPP
#define ASEC_HEURISTICS_HPP

#include "asec/estimation.hpp"
#include "asec/task.hpp"

#include <memory>
#include <string>
#include <vector>

namespace asec {

/// Per-action costs the heuristic sees: tier 0's lower bound, fixed for
/// the whole run even when tighter bounds are learned later.
class HeuristicCostView {
public:
    HeuristicCostView() = default;
    explicit HeuristicCostView(std::vector<double> costs) : costs(std::move(costs)) {}

    static HeuristicCostView from_first_tier(const EstimatorTable &table);

    double operator[](ActionId a) const { return costs[static_cast<std::size_t>(a)]; }
    std::size_t size() const { return costs.size(); }

private:
    std::vector<double> costs;
};

class Heuristic {
public:
    virtual ~Heuristic() = default;
    /// Estimated cost-to-goal, or `infinity` for relaxed dead ends.
    virtual double evaluate(const State &state) = 0;
    virtual std::string name() const = 0;
};

class BlindHeuristic : public Heuristic {
public:
    double evaluate(const State &) override { return 0.0; }
    std::string name() const override { return "blind"; }
};

/// h_max over the cost view, computed as a Dijkstra-style fixpoint over
/// atoms. Holds scratch buffers, so one instance per search run.
class HMaxHeuristic : public Heuristic {
public:
    HMaxHeuristic(const GroundTask &task, HeuristicCostView view);

    double evaluate(const State &state) override;
    std::string name() const override { return "hmax"; }

private:
    const GroundTask &task;
    HeuristicCostView view;
    std::vector<std::vector<ActionId>> precondition_of;
    std::vector<ActionId> no_precondition;
    std::vector<double> atom_cost;
    std::vector<int> unsatisfied;
    std::vector<double> action_support;
};

enum class HeuristicKind { blind, hmax };

HeuristicKind parse_heuristic_kind(const std::string &name);
std::string to_string(HeuristicKind kind);

std::unique_ptr<Heuristic> make_heuristic(HeuristicKind kind, const GroundTask &task,
                                          const HeuristicCostView &view);

} // namespace asec

#endif
