#include "asec/synthesis.hpp"

#include <stdexcept>
#include <string>

namespace asec {

SynthesizedEstimators synthesize_estimators(const std::vector<long long> &c_pddl, double p1,
                                            double p2, double p3, std::uint64_t seed,
                                            SynthesisOptions options) {
    for (double p : {p1, p2, p3}) {
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("probabilities must lie in [0, 1]");
    }
    SplitMix64 rng(seed);
    SynthesizedEstimators out;
    std::vector<double> true_costs;
    for (std::size_t a = 0; a < c_pddl.size(); ++a) {
        const long long base = c_pddl[a];
        if (base <= 0)
            throw std::invalid_argument("action " + std::to_string(a) + " has base cost " +
                                        std::to_string(base) +
                                        "; estimator synthesis needs positive integer costs");
        const double u1 = rng.uniform();
        const double u2 = rng.uniform();
        const double u3 = rng.uniform();
        const auto c = static_cast<double>(base);
        std::vector<EstimatorSpec> tiers;
        if (u1 < p1) {
            tiers.push_back({c, 4 * c, options.cheap_tau_ms});
            if (u2 < p2)
                tiers.push_back({2 * c, 4 * c, options.expensive_tau_ms});
            if (u3 < p3)
                tiers.push_back({2 * c, 2 * c, options.expensive_tau_ms});
            true_costs.push_back(2 * c);
            out.estimated.push_back(true);
        } else {
            tiers.push_back({c, c, options.cheap_tau_ms});
            true_costs.push_back(c);
            out.estimated.push_back(false);
        }
        out.estimators.emplace_back(std::move(tiers));
    }
    out.oracle = CostOracleTable(std::move(true_costs));
    return out;
}

} // namespace asec
