#ifndef ASEC_COST_ORACLE_HPP
#define ASEC_COST_ORACLE_HPP

#include "asec/task.hpp"

#include <vector>

namespace asec {

/// Hidden true action costs. Only the oracle and bench layers read these;
/// search engines never receive one.
class CostOracleTable {
public:
    CostOracleTable() = default;
    explicit CostOracleTable(std::vector<double> costs);

    double cost(ActionId action) const { return costs_.at(static_cast<std::size_t>(action)); }
    std::size_t size() const { return costs_.size(); }
    const std::vector<double> &costs() const { return costs_; }

    /// Sum of true costs along the plan.
    double plan_cost(const Plan &plan) const;

private:
    std::vector<double> costs_;
};

} // namespace asec

#endif
