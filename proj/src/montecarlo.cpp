#include "sumset/montecarlo.hpp"

#include <cmath>
#include <stdexcept>

#include <omp.h>

#include "sumset/rng.hpp"

namespace sumset::mc {

WilsonInterval wilson(std::uint64_t hits, std::uint64_t trials, double z, double alpha) {
    if (trials == 0) throw std::invalid_argument("wilson: trials must be >= 1");
    const double n = static_cast<double>(trials);
    if (hits == 0) return {0.0, std::min(1.0, -std::log(alpha) / n)};
    if (hits == trials) return {std::max(0.0, 1.0 + std::log(alpha) / n), 1.0};
    const double p = static_cast<double>(hits) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

Estimate finish(std::string mode, std::int64_t n, std::uint64_t trials, std::uint64_t seed,
                std::uint64_t hits, std::uint64_t inconclusive) {
    Estimate e;
    e.mode = std::move(mode);
    e.n = n;
    e.trials = trials;
    e.seed = seed;
    e.hits = hits;
    e.inconclusive = inconclusive;
    e.p_hat = static_cast<double>(hits) / static_cast<double>(trials);
    const WilsonInterval w95 = wilson(hits, trials, kZ95, 0.05);
    e.ci_low = w95.low;
    e.ci_high = w95.high;
    e.ci99_high = wilson(hits, trials, kZ99, 0.01).high;
    return e;
}

// OpenMP kernel: trials are independent streams of (seed, index), so any
// static or dynamic partition accumulates the same counters.
template <typename Trial>
Estimate run_trials_parallel(std::string mode, std::int64_t n, std::uint64_t trials,
                             std::uint64_t seed, int threads, Trial&& trial) {
    if (trials < 1) throw std::invalid_argument("estimate: trials must be >= 1");
    std::uint64_t hits = 0, inconclusive = 0;
    const std::int64_t count = static_cast<std::int64_t>(trials);
    const int workers = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(workers) \
    reduction(+ : hits, inconclusive)
    for (std::int64_t i = 0; i < count; ++i) {
        TrialRng rng(seed, static_cast<std::uint64_t>(i));
        const Verdict v = trial(rng);
        if (v == Verdict::decomposable)
            ++hits;
        else if (v == Verdict::inconclusive)
            ++inconclusive;
    }
    return finish(std::move(mode), n, trials, seed, hits, inconclusive);
}

// Plain-loop reference the parallel kernel is tested against.
template <typename Trial>
Estimate run_trials_serial(std::string mode, std::int64_t n, std::uint64_t trials,
                           std::uint64_t seed, Trial&& trial) {
    if (trials < 1) throw std::invalid_argument("estimate: trials must be >= 1");
    std::uint64_t hits = 0, inconclusive = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        TrialRng rng(seed, i);
        const Verdict v = trial(rng);
        if (v == Verdict::decomposable)
            ++hits;
        else if (v == Verdict::inconclusive)
            ++inconclusive;
    }
    return finish(std::move(mode), n, trials, seed, hits, inconclusive);
}

}  // namespace

Estimate estimate_event(std::int64_t n, std::int64_t k, std::uint64_t trials,
                        std::uint64_t seed, int threads,
                        std::optional<std::uint64_t> node_limit) {
    Estimate e = run_trials_parallel("event", n, trials, seed, threads, [&](TrialRng& rng) {
        return event_verdict(rng.random_window(n), n, k, node_limit);
    });
    e.k = k;
    return e;
}

Estimate estimate_event_serial(std::int64_t n, std::int64_t k, std::uint64_t trials,
                               std::uint64_t seed, std::optional<std::uint64_t> node_limit) {
    Estimate e = run_trials_serial("event", n, trials, seed, [&](TrialRng& rng) {
        return event_verdict(rng.random_window(n), n, k, node_limit);
    });
    e.k = k;
    return e;
}

Estimate estimate_decomposable(std::int64_t n, const SearchConfig& config,
                               std::uint64_t trials, std::uint64_t seed) {
    return run_trials_parallel("decide", n, trials, seed, config.threads, [&](TrialRng& rng) {
        return decide_budgeted(rng.random_window(n), config).verdict;
    });
}

Estimate estimate_decomposable_serial(std::int64_t n, const SearchConfig& config,
                                      std::uint64_t trials, std::uint64_t seed) {
    return run_trials_serial("decide", n, trials, seed, [&](TrialRng& rng) {
        return decide_budgeted(rng.random_window(n), config).verdict;
    });
}

}  // namespace sumset::mc
