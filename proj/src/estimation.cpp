#include "asec/estimation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <numeric>
#include <sstream>
#include <thread>

namespace asec {

CostOracleTable::CostOracleTable(std::vector<double> costs) : costs_(std::move(costs)) {
    for (double c : costs_) {
        if (!(c >= 0.0) || !std::isfinite(c))
            throw StructuralError("true costs must be finite and non-negative");
    }
}

double CostOracleTable::plan_cost(const Plan &plan) const {
    double total = 0.0;
    for (ActionId a : plan.actions)
        total += cost(a);
    return total;
}

EstimatorSet::EstimatorSet(std::vector<EstimatorSpec> tiers) : tiers_(std::move(tiers)) {
    if (tiers_.empty())
        throw EstimatorContractError("estimator set has no tiers");
    for (std::size_t i = 0; i < tiers_.size(); ++i) {
        const EstimatorSpec &t = tiers_[i];
        if (!(t.c_min >= 0.0))
            throw EstimatorContractError("tier " + std::to_string(i) + ": negative cmin");
        if (!(t.c_min <= t.c_max))
            throw EstimatorContractError("tier " + std::to_string(i) + ": cmin exceeds cmax");
        if (!(t.tau_ms >= 0.0))
            throw EstimatorContractError("tier " + std::to_string(i) + ": negative tau_ms");
        if (i > 0 && t.tau_ms < tiers_[i - 1].tau_ms)
            throw EstimatorContractError("tier " + std::to_string(i) +
                                         ": tiers must be ordered cheapest-first by tau_ms");
    }
}

void check_oracle_containment(const GroundTask &task, const EstimatorTable &table,
                              const CostOracleTable &oracle) {
    if (table.size() != task.num_actions() || oracle.size() != task.num_actions())
        throw StructuralError("estimator/oracle tables do not cover every action");
    for (const GroundAction &a : task.actions()) {
        const double c = oracle.cost(a.id);
        const EstimatorSet &set = table[a.id];
        for (std::size_t i = 0; i < set.size(); ++i) {
            if (c < set.tier(i).c_min || c > set.tier(i).c_max) {
                std::ostringstream msg;
                msg << "action '" << a.name << "': true cost " << c << " outside tier " << i
                    << " [" << set.tier(i).c_min << ", " << set.tier(i).c_max << "]";
                throw InconsistentEstimatorsError(msg.str());
            }
        }
        // Positive true cost: every tier must be informative on both sides.
        for (std::size_t i = 0; i < set.size(); ++i) {
            if (c > 0.0 && (set.tier(i).c_min == 0.0 || !std::isfinite(set.tier(i).c_max)))
                throw InconsistentEstimatorsError("action '" + a.name + "': tier " +
                                                  std::to_string(i) +
                                                  " is uninformative for a positive true cost");
        }
    }
}

Interval TableBackend::estimate(const GroundAction &action, int tier) {
    const EstimatorSpec &spec = table.at(action.id).tier(static_cast<std::size_t>(tier));
    return {spec.c_min, spec.c_max};
}

long long EstimationStats::total_calls() const {
    return std::accumulate(calls_per_tier.begin(), calls_per_tier.end(), 0LL);
}

long long EstimationStats::cheap_calls() const {
    return calls_per_tier.empty() ? 0 : calls_per_tier[0];
}

long long EstimationStats::expensive_calls() const {
    return total_calls() - cheap_calls();
}

BoundCache::BoundCache(const GroundTask &task, const EstimatorTable &table,
                       EstimatorBackend &backend, BoundCacheOptions options)
    : task_(task), table(table), backend(backend), options(options),
      entries(task.num_actions()) {
    if (table.size() != task.num_actions())
        throw StructuralError("estimator table does not cover every action");
    std::size_t max_tiers = 0;
    for (const EstimatorSet &set : table)
        max_tiers = std::max(max_tiers, set.size());
    stats_.calls_per_tier.assign(max_tiers, 0);
    stats_.latency_ms_per_tier.assign(max_tiers, 0.0);
}

std::optional<int> BoundCache::get_estimator(ActionId action) {
    Entry &e = entries.at(static_cast<std::size_t>(action));
    if (static_cast<std::size_t>(e.next_tier) >= table[action].size())
        return std::nullopt;
    return e.next_tier++;
}

Interval BoundCache::apply_estimator(ActionId action, int tier) {
    Entry &e = entries.at(static_cast<std::size_t>(action));
    const GroundAction &a = task_.action(action);
    const EstimatorSpec &spec = table[action].tier(static_cast<std::size_t>(tier));

    if (options.simulate_latency && spec.tau_ms > 0.0)
        std::this_thread::sleep_for(std::chrono::duration<double, std::milli>(spec.tau_ms));

    const auto start = std::chrono::steady_clock::now();
    Interval fresh;
    try {
        fresh = backend.estimate(a, tier);
    } catch (const ExternalEstimatorError &) {
        ++stats_.failures;
        throw;
    }
    const double elapsed =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();

    ++stats_.calls_per_tier[tier];
    stats_.latency_ms_per_tier[tier] += elapsed;
    stats_.simulated_ms += spec.tau_ms;

    if (!(fresh.lo <= fresh.hi) || fresh.lo < 0.0) {
        std::ostringstream msg;
        msg << "action '" << a.name << "' tier " << tier << " returned invalid interval ("
            << fresh.lo << ", " << fresh.hi << ")";
        throw EstimatorContractError(msg.str());
    }

    Interval tightened = fresh;
    if (e.estimated) {
        tightened.lo = std::max(e.bounds.lo, fresh.lo);
        tightened.hi = std::min(e.bounds.hi, fresh.hi);
    }
    if (tightened.lo > tightened.hi) {
        std::ostringstream msg;
        msg << "action '" << a.name << "': tier " << tier << " interval (" << fresh.lo << ", "
            << fresh.hi << ") is disjoint from cached (" << e.bounds.lo << ", " << e.bounds.hi
            << ")";
        throw InconsistentEstimatorsError(msg.str());
    }
    if (options.oracle) {
        const double c = options.oracle->cost(action);
        if (c < tightened.lo || c > tightened.hi) {
            std::ostringstream msg;
            msg << "action '" << a.name << "': true cost " << c << " outside cached interval ("
                << tightened.lo << ", " << tightened.hi << ")";
            throw InconsistentEstimatorsError(msg.str());
        }
    }
    e.bounds = tightened;
    e.estimated = true;
    return tightened;
}

bool BoundCache::refine(ActionId action) {
    while (auto tier = get_estimator(action)) {
        try {
            apply_estimator(action, *tier);
            return true;
        } catch (const ExternalEstimatorError &err) {
            std::clog << "warning: estimator tier " << *tier << " unavailable for '"
                      << task_.action(action).name << "': " << err.what() << '\n';
        }
    }
    return false;
}

long long BoundCache::max_expensive_calls() const {
    long long total = 0;
    for (std::size_t a = 0; a < entries.size(); ++a) {
        if (entries[a].estimated)
            total += static_cast<long long>(table[a].size()) - 1;
    }
    return total;
}

long long BoundCache::estimated_actions() const {
    return std::count_if(entries.begin(), entries.end(),
                         [](const Entry &e) { return e.estimated; });
}

PlanBounds sum_bounds(std::span<const Interval> steps) {
    PlanBounds b;
    for (const Interval &s : steps) {
        b.c_min += s.lo;
        b.c_max += s.hi;
    }
    return b;
}

double eta_eff(double c_min, double c_max) {
    if (c_min == 0.0)
        return 1.0;
    return c_max / c_min;
}

double eta_eff(const PlanBounds &bounds) {
    return eta_eff(bounds.c_min, bounds.c_max);
}

} // namespace asec
