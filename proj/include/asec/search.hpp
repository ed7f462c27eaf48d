#ifndef ASEC_SEARCH_HPP
#define ASEC_SEARCH_HPP

#include "asec/estimation.hpp"
#include "asec/heuristics.hpp"
#include "asec/open_list.hpp"
#include "asec/task.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace asec {

using StateId = int;

enum class SearchStatus { epsilon_ok, plan_found_bound_missed, unsolvable };
std::string to_string(SearchStatus status);

enum class Algorithm { asec, asec_ese, indifferent, fully_lazy };
Algorithm parse_algorithm(const std::string &name);
std::string to_string(Algorithm algorithm);

struct SearchStats {
    long long expansions = 0;
    long long generations = 0;
    long long reopenings = 0;
    /// Restarts of the fully lazy baseline (1 for the other engines).
    int iterations = 0;
    std::vector<long long> calls_per_tier;
    long long cheap_calls = 0;
    long long expensive_calls = 0;
    /// Expensive tiers available over all actions that were estimated at least once.
    long long max_expensive_calls = 0;
    long long estimator_failures = 0;
    double wall_ms = 0.0;
    double simulated_ms = 0.0;

    /// expensive_calls / max_expensive_calls; empty when nothing expensive existed.
    std::optional<double> expensive_ratio() const;
};

struct SearchResult {
    std::optional<Plan> plan;
    /// Interval of each plan step as used when its node was generated.
    std::vector<Interval> step_bounds;
    PlanBounds bounds;
    double eta_eff = infinity;
    SearchStatus status = SearchStatus::unsolvable;
    SearchStats stats;
};

struct SearchSetup {
    const GroundTask &task;
    const EstimatorTable &estimators;
    /// Defaults to the table's own tier bounds.
    EstimatorBackend *backend = nullptr;
    HeuristicKind heuristic = HeuristicKind::blind;
    BoundCacheOptions cache_options{};
    /// Throw std::logic_error if an OPEN insertion breaks
    /// g_min <= g_max or f >= g_min.
    bool check_invariants = false;
    /// 0 means unlimited.
    std::size_t max_states = 0;
};

/// Raised when a run interns more than `SearchSetup::max_states` states.
class StateLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Best node left in OPEN when a search terminated.
struct OpenSnapshot {
    double g_min = 0.0;
    double f = 0.0;
};

namespace detail {
class BestFirstEngine;
}

/// A* with synchronous estimations of costs. Per generated edge, tiers are
/// applied cheapest-first until the accumulated ratio meets epsilon, a
/// cheaper known path to the successor exists, or the tiers run out.
class AsecSearch {
public:
    AsecSearch(const SearchSetup &setup, double epsilon);
    ~AsecSearch();

    SearchResult run();

    /// Best remaining OPEN node after run(); empty if OPEN is exhausted.
    std::optional<OpenSnapshot> best_open();
    /// Lower bound on the optimal cost from the explored graph under the
    /// current cache: cheapest route from the root through CLOSED states to a
    /// goal state, or to a frontier state plus its heuristic value.
    double explored_lower_bound() const;
    BoundCache &cache() { return *cache_; }
    const HeuristicCostView &view() const { return view_; }

private:
    SearchSetup setup;
    double epsilon;
    std::unique_ptr<TableBackend> table_backend;
    std::unique_ptr<BoundCache> cache_;
    HeuristicCostView view_;
    std::unique_ptr<Heuristic> heuristic;
    std::unique_ptr<detail::BestFirstEngine> engine;
};

SearchResult asec(const SearchSetup &setup, double epsilon);

/// Baseline: every tier of an action is applied the first time the action
/// is needed.
SearchResult indifferent(const SearchSetup &setup, double epsilon);

/// Baseline: one tier per newly needed action; when the plan misses the
/// bound, refine the first refinable plan action and search again from scratch.
SearchResult fully_lazy(const SearchSetup &setup, double epsilon);

/// Final lower bound per action: the cached interval for estimated actions,
/// tier 0's c_min otherwise.
std::vector<double> final_lower_bounds(const BoundCache &cache);

namespace detail {

struct SearchNode {
    double g_min = infinity;
    double g_max = infinity;
    double h = 0.0;
    StateId parent = -1;
    ActionId action = -1;
    Interval edge{};
    std::uint32_t version = 0;
    enum class Status : std::uint8_t { fresh, open, closed } status = Status::fresh;
};

/// Decides the interval of edge (node, action) into a successor whose best
/// known g_min is `successor_g_min`; empty means the edge has no estimate.
using EdgeEvaluator = std::function<std::optional<Interval>(
    const SearchNode &node, ActionId action, double successor_g_min)>;

class BestFirstEngine {
public:
    BestFirstEngine(const SearchSetup &setup, Heuristic &heuristic, EdgeEvaluator evaluator);

    /// Runs to the first goal pop or OPEN exhaustion.
    SearchResult search();
    std::optional<OpenSnapshot> best_open();
    double explored_lower_bound(const std::function<double(ActionId)> &lower_cost) const;

    long long expansions = 0;
    long long generations = 0;
    long long reopenings = 0;

private:
    StateId intern(State state);
    void insert(StateId id);
    bool is_current(const OpenList<StateId>::Entry &entry) const;

    const SearchSetup &setup;
    Heuristic &heuristic;
    EdgeEvaluator evaluator;
    std::vector<State> states;
    std::unordered_map<State, StateId, StateHash> index;
    std::vector<SearchNode> nodes;
    OpenList<StateId> open;
};

} // namespace detail

} // namespace asec

#endif
