#ifndef ASEC_ESE_HPP
#define ASEC_ESE_HPP

#include "asec/estimation.hpp"
#include "asec/search.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace asec {

/// Which value of the best OPEN node clamps the plan's lower bound.
enum class EseAltMode {
    g_min,
    f,
};

EseAltMode parse_ese_alt_mode(const std::string &name);
std::string to_string(EseAltMode mode);

/// State of a search that returned a plan missing the bound.
struct EseContext {
    const Plan &plan;
    /// Per-step intervals of the plan as returned by the search.
    std::vector<Interval> step_bounds;
    BoundCache &cache;
    /// Best OPEN node at termination, captured once.
    std::optional<OpenSnapshot> alternative;
    double epsilon = 1.0;
    /// Ratio the search returned.
    double eta_eff = infinity;
    EseAltMode alt_mode = EseAltMode::g_min;
    /// Lower bound on the optimal cost over the whole explored graph under
    /// the current cache. The alternative node alone misses routes into the
    /// goal state through CLOSED states, which can make the clamped ratio
    /// unsound; when set, the denominator never exceeds this bound.
    std::function<double()> explored_bound;
    /// The plan's lower bound when the search returned it, which is itself a
    /// lower bound on the optimal cost. When set, the denominator never drops
    /// below it, so the ratio can only improve on the search's.
    std::optional<double> search_c_min;
};

struct EseStats {
    long long calls = 0;
    std::vector<long long> calls_per_tier;
};

struct EseResult {
    double eta_eff = infinity;
    PlanBounds bounds;
    bool success = false;
    EseStats stats;
    /// Ratio after every applied tier, in order.
    std::vector<double> trajectory;
};

/// End-of-search estimations: walks the plan edges in order, applying
/// unused tiers while the ratio exceeds epsilon. The denominator of the ratio
/// is the refined plan lower bound, clamped by the alternative node when that
/// node is cheaper, then by `explored_bound` and `search_c_min` if set.
EseResult ese(EseContext &context);

struct AsecEseResult {
    SearchResult search;
    /// Set when the search missed the bound and some plan edge had unused tiers.
    std::optional<EseResult> ese;

    /// Final ratio after ESE (or the search's ratio if ESE did not run).
    double eta_eff() const { return ese ? ese->eta_eff : search.eta_eff; }
    bool success() const;
};

/// ASEC followed by ESE when the bound was missed and ESE is applicable.
/// Both optional clamps of EseContext are enabled.
AsecEseResult asec_with_ese(const SearchSetup &setup, double epsilon,
                            EseAltMode alt_mode = EseAltMode::g_min);

} // namespace asec

#endif
