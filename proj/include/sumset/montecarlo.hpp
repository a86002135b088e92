#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "sumset/core.hpp"
#include "sumset/decompose.hpp"

namespace sumset::mc {

/// One seeded sampling run. p_hat = hits / trials; the interval is the 95%
/// Wilson score interval (rule-of-three style ends at hits = 0 or trials);
/// ci99_high is the 99% upper confidence limit used against p_bound.
/// Inconclusive decider runs are counted separately, never as hits.
struct Estimate {
    std::string mode;  // "event" or "decide"
    std::int64_t n = 0;
    std::optional<std::int64_t> k;
    std::uint64_t trials = 0;
    std::uint64_t hits = 0;
    std::uint64_t inconclusive = 0;
    std::uint64_t seed = 0;
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double ci99_high = 0.0;
};

struct WilsonInterval {
    double low = 0.0;
    double high = 1.0;
};

/// Wilson score interval at normal quantile z; `alpha` is the corresponding
/// two-sided tail mass, used for the -ln(alpha)/trials bound when hits is 0
/// (the rule of three at the 95% level) and its mirror at hits = trials.
WilsonInterval wilson(std::uint64_t hits, std::uint64_t trials, double z, double alpha);

inline constexpr double kZ95 = 1.959963984540054;
inline constexpr double kZ99 = 2.5758293035489004;

/// Estimate P(E_n) for the event family with parameter k: trial i samples
/// X ⊆ [0, n] uniformly from stream (seed, i) and tests membership in E_n.
Estimate estimate_event(std::int64_t n, std::int64_t k, std::uint64_t trials,
                        std::uint64_t seed, int threads = 0,
                        std::optional<std::uint64_t> node_limit = {});
/// Serial reference implementation, kept for testing the parallel kernel.
Estimate estimate_event_serial(std::int64_t n, std::int64_t k, std::uint64_t trials,
                               std::uint64_t seed,
                               std::optional<std::uint64_t> node_limit = {});

/// Same harness with the general budgeted decider.
Estimate estimate_decomposable(std::int64_t n, const SearchConfig& config,
                               std::uint64_t trials, std::uint64_t seed);
Estimate estimate_decomposable_serial(std::int64_t n, const SearchConfig& config,
                                      std::uint64_t trials, std::uint64_t seed);

}  // namespace sumset::mc
