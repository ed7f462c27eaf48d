#ifndef ASEC_ESTIMATION_HPP
#define ASEC_ESTIMATION_HPP

#include "asec/cost_oracle.hpp"
#include "asec/task.hpp"

#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace asec {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

/// Relative tolerance for comparing an effective ratio against a target bound.
inline constexpr double ratio_tolerance = 1e-12;

/// True iff `ratio <= bound` up to `ratio_tolerance` (relative).
inline bool within_bound(double ratio, double bound) {
    return ratio <= bound * (1.0 + ratio_tolerance);
}

class EstimationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An estimator returned lo > hi.
class EstimatorContractError : public EstimationError {
public:
    using EstimationError::EstimationError;
};

/// Two estimators of the same action returned disjoint intervals, or an
/// interval excludes the known true cost.
class InconsistentEstimatorsError : public EstimationError {
public:
    using EstimationError::EstimationError;
};

/// The external estimator process failed: malformed reply, exit, timeout.
class ExternalEstimatorError : public EstimationError {
public:
    using EstimationError::EstimationError;
};

struct Interval {
    double lo = 0.0;
    double hi = infinity;

    friend bool operator==(const Interval &, const Interval &) = default;
};

struct EstimatorSpec {
    double c_min = 0.0;
    double c_max = 0.0;
    double tau_ms = 0.0;

    friend bool operator==(const EstimatorSpec &, const EstimatorSpec &) = default;
};

/// Ordered tiers for one action, cheapest first. Construction validates
/// 0 <= c_min <= c_max per tier and non-decreasing tau.
class EstimatorSet {
public:
    EstimatorSet() = default;
    explicit EstimatorSet(std::vector<EstimatorSpec> tiers);

    std::size_t size() const { return tiers_.size(); }
    const EstimatorSpec &tier(std::size_t i) const { return tiers_.at(i); }
    const std::vector<EstimatorSpec> &tiers() const { return tiers_; }

    friend bool operator==(const EstimatorSet &, const EstimatorSet &) = default;

private:
    std::vector<EstimatorSpec> tiers_;
};

using EstimatorTable = std::vector<EstimatorSet>;

/// Checks that every true cost lies inside every tier of its action.
/// Throws InconsistentEstimatorsError naming the first offending action.
void check_oracle_containment(const GroundTask &task, const EstimatorTable &table,
                              const CostOracleTable &oracle);

/// Source of estimator answers. The default backend reads the tier bounds
/// from the table; the external backend asks a subprocess.
class EstimatorBackend {
public:
    virtual ~EstimatorBackend() = default;
    virtual Interval estimate(const GroundAction &action, int tier) = 0;
};

class TableBackend : public EstimatorBackend {
public:
    explicit TableBackend(const EstimatorTable &table) : table(table) {}
    Interval estimate(const GroundAction &action, int tier) override;

private:
    const EstimatorTable &table;
};

struct EstimationStats {
    std::vector<long long> calls_per_tier;
    std::vector<double> latency_ms_per_tier;
    long long failures = 0;
    /// Sum of nominal tau over all successful calls.
    double simulated_ms = 0.0;

    long long total_calls() const;
    long long cheap_calls() const;
    long long expensive_calls() const;
};

struct BoundCacheOptions {
    /// Sleep tau_ms on every call instead of only recording it.
    bool simulate_latency = false;
    /// When present, every cached interval is checked to contain the true cost.
    const CostOracleTable *oracle = nullptr;
};

/// Tightest-known interval per action plus the index of the next unused tier.
/// Shared by every edge labelled with the same action for the whole run.
class BoundCache {
public:
    BoundCache(const GroundTask &task, const EstimatorTable &table, EstimatorBackend &backend,
               BoundCacheOptions options = {});

    /// Next unused tier (and consumes it), or nullopt when all are used.
    std::optional<int> get_estimator(ActionId action);

    /// Runs `tier` and intersects its interval into the cache. Returns the
    /// tightened interval.
    Interval apply_estimator(ActionId action, int tier);

    /// get_estimator + apply_estimator, skipping tiers whose external call
    /// fails. Returns false once no tier could be applied.
    bool refine(ActionId action);

    /// At least one tier has been applied successfully.
    bool estimated(ActionId action) const { return entries[action].estimated; }
    Interval bounds(ActionId action) const { return entries[action].bounds; }
    bool has_unused_tier(ActionId action) const {
        return static_cast<std::size_t>(entries[action].next_tier) < table[action].size();
    }
    int next_tier(ActionId action) const { return entries[action].next_tier; }
    int tier_count(ActionId action) const { return static_cast<int>(table[action].size()); }

    const EstimationStats &stats() const { return stats_; }
    /// Expensive tiers (index >= 1) available over all estimated actions.
    long long max_expensive_calls() const;
    long long estimated_actions() const;

    const GroundTask &task() const { return task_; }
    const EstimatorTable &estimators() const { return table; }

private:
    struct Entry {
        Interval bounds{};
        int next_tier = 0;
        bool estimated = false;
    };

    const GroundTask &task_;
    const EstimatorTable &table;
    EstimatorBackend &backend;
    BoundCacheOptions options;
    std::vector<Entry> entries;
    EstimationStats stats_;
};

struct PlanBounds {
    double c_min = 0.0;
    double c_max = 0.0;

    friend bool operator==(const PlanBounds &, const PlanBounds &) = default;
};

PlanBounds sum_bounds(std::span<const Interval> steps);

/// c_max / c_min, or exactly 1 when c_min is 0.
double eta_eff(const PlanBounds &bounds);
double eta_eff(double c_min, double c_max);

} // namespace asec

#endif
