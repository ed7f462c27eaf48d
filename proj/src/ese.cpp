#include "asec/ese.hpp"

#include <algorithm>
#include <stdexcept>

namespace asec {

EseAltMode parse_ese_alt_mode(const std::string &name) {
    if (name == "gmin" || name == "g_min")
        return EseAltMode::g_min;
    if (name == "f")
        return EseAltMode::f;
    throw std::invalid_argument("unknown ESE alternative mode '" + name + "'");
}

std::string to_string(EseAltMode mode) {
    return mode == EseAltMode::g_min ? "gmin" : "f";
}

EseResult ese(EseContext &ctx) {
    if (ctx.step_bounds.size() != ctx.plan.size())
        throw std::invalid_argument("step bounds do not match the plan");

    EseResult result;
    result.eta_eff = ctx.eta_eff;
    result.bounds = sum_bounds(ctx.step_bounds);
    const std::vector<long long> calls_before = ctx.cache.stats().calls_per_tier;

    std::optional<double> alt_bound;
    if (ctx.alternative)
        alt_bound = ctx.alt_mode == EseAltMode::f ? ctx.alternative->f : ctx.alternative->g_min;

    std::vector<Interval> steps = ctx.step_bounds;
    for (std::size_t i = 0; i < ctx.plan.size(); ++i) {
        const ActionId action = ctx.plan.actions[i];
        while (!within_bound(result.eta_eff, ctx.epsilon) && ctx.cache.has_unused_tier(action)) {
            if (!ctx.cache.refine(action))
                break;
            // The cache is per action, so every occurrence tightens.
            const Interval tight = ctx.cache.bounds(action);
            for (std::size_t k = 0; k < steps.size(); ++k) {
                if (ctx.plan.actions[k] == action)
                    steps[k] = tight;
            }
            result.bounds = sum_bounds(steps);
            double denominator = result.bounds.c_min;
            if (alt_bound && *alt_bound < denominator)
                denominator = *alt_bound;
            if (ctx.explored_bound)
                denominator = std::min(denominator, ctx.explored_bound());
            if (ctx.search_c_min)
                denominator = std::max(denominator, *ctx.search_c_min);
            result.eta_eff = eta_eff(denominator, result.bounds.c_max);
            result.trajectory.push_back(result.eta_eff);
        }
        if (within_bound(result.eta_eff, ctx.epsilon))
            break;
    }

    const std::vector<long long> &calls_after = ctx.cache.stats().calls_per_tier;
    result.stats.calls_per_tier.resize(calls_after.size());
    for (std::size_t t = 0; t < calls_after.size(); ++t) {
        result.stats.calls_per_tier[t] = calls_after[t] - calls_before[t];
        result.stats.calls += result.stats.calls_per_tier[t];
    }
    result.success = within_bound(result.eta_eff, ctx.epsilon);
    return result;
}

bool AsecEseResult::success() const {
    return search.status == SearchStatus::epsilon_ok || (ese && ese->success);
}

AsecEseResult asec_with_ese(const SearchSetup &setup, double epsilon, EseAltMode alt_mode) {
    AsecSearch search(setup, epsilon);
    AsecEseResult out;
    out.search = search.run();
    if (out.search.status != SearchStatus::plan_found_bound_missed)
        return out;
    const Plan &plan = *out.search.plan;
    bool applicable = false;
    for (ActionId a : plan.actions)
        applicable = applicable || search.cache().has_unused_tier(a);
    if (!applicable)
        return out;
    EseContext ctx{plan,
                   out.search.step_bounds,
                   search.cache(),
                   search.best_open(),
                   epsilon,
                   out.search.eta_eff,
                   alt_mode,
                   [&search] { return search.explored_lower_bound(); },
                   out.search.bounds.c_min};
    out.ese = ese(ctx);
    return out;
}

} // namespace asec
