#ifndef ASEC_SYNTHESIS_HPP
#define ASEC_SYNTHESIS_HPP

#include "asec/cost_oracle.hpp"
#include "asec/estimation.hpp"

#include <cstdint>
#include <vector>

namespace asec {

/// SplitMix64. Portable and fully specified so generated variants are
/// reproducible in any language:
///
///     state += 0x9E3779B97F4A7C15
///     z = state
///     z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///     z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///     return z ^ (z >> 31)
///
/// uniform() takes the top 53 bits: (next() >> 11) * 2^-53.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    bool bernoulli(double p) { return uniform() < p; }
    /// Uniform integer in [lo, hi].
    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::uint64_t state;
};

struct SynthesisOptions {
    /// Nominal latency of tier 0 and of the expensive tiers.
    double cheap_tau_ms = 0.0;
    double expensive_tau_ms = 1.0;
};

struct SynthesizedEstimators {
    EstimatorTable estimators;
    CostOracleTable oracle;
    /// Which actions were marked as estimated.
    std::vector<bool> estimated;
};

/// Turns declarative costs into estimator tiers. For each action in id order
/// three uniforms u1, u2, u3 are drawn; the action is estimated iff u1 < p1.
/// Estimated actions with base cost c get tiers (c, 4c), then (2c, 4c) iff
/// u2 < p2, then (2c, 2c) iff u3 < p3, and true cost 2c. Other actions get
/// the single exact tier (c, c) and true cost c.
///
/// Throws std::invalid_argument for a base cost of 0 or probabilities
/// outside [0, 1].
SynthesizedEstimators synthesize_estimators(const std::vector<long long> &c_pddl, double p1,
                                            double p2, double p3, std::uint64_t seed,
                                            SynthesisOptions options = {});

} // namespace asec

#endif
