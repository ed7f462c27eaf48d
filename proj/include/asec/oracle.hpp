#ifndef ASEC_ORACLE_HPP
#define ASEC_ORACLE_HPP

#include "asec/cost_oracle.hpp"
#include "asec/task.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace asec {

/// The oracle refuses tasks whose reachable state space exceeds its cap.
class OracleCapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t default_oracle_state_cap = 1'000'000;

struct OptimalSolution {
    /// Infinity when no plan exists.
    double cost;
    std::optional<Plan> plan;
};

/// Uniform-cost search over arbitrary non-negative per-action costs.
OptimalSolution dijkstra(const GroundTask &task, const std::vector<double> &action_costs,
                         std::size_t state_cap = default_oracle_state_cap);

/// c* and an optimal plan under the true costs.
OptimalSolution dijkstra_optimal(const GroundTask &task, const CostOracleTable &oracle,
                                 std::size_t state_cap = default_oracle_state_cap);

/// c(plan) <= c* * epsilon up to a relative tolerance of 1e-12. Throws
/// StructuralError when the plan is not a valid solution.
bool check_epsilon_optimal(const GroundTask &task, const Plan &plan,
                           const CostOracleTable &oracle, double c_star, double epsilon);

/// c(plan) <= c* * eta_eff, the guarantee every optimal plan under some
/// estimator subset carries.
bool check_bound_theorem(const Plan &plan, double eta_eff, const CostOracleTable &oracle,
                         double c_star);

/// Every state reachable from the initial state, initial first.
std::vector<State> reachable_states(const GroundTask &task,
                                    std::size_t state_cap = default_oracle_state_cap);

/// Exact cost-to-go h*(s) under `action_costs` for every state in `states`
/// (backward Dijkstra over the explicit reachable graph).
std::vector<double> cost_to_go(const GroundTask &task, const std::vector<State> &states,
                               const std::vector<double> &action_costs);

} // namespace asec

#endif
