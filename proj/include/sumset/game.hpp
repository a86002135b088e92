#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sumset/core.hpp"
#include "sumset/decompose.hpp"

namespace sumset::game {

/// Player I behaviors. "minimal" passes the previous cylinder through
/// unchanged; "random" extends it with seeded coin flips up to a randomly
/// drawn k; "sumsetish" appends a deliberately decomposable block to stress
/// Player II's construction.
enum class Adversary { minimal, random_fill, sumsetish };

Adversary adversary_from_string(const std::string& name);
const char* to_string(Adversary a);

struct GameParams {
    double alpha = 0.25;  // in (0, 1/3); only verify_prefix consumes it
    double beta = 0.8;    // in (3/4, 1) with alpha*beta < 1/4
    std::int64_t rounds = 1;
    Adversary adversary = Adversary::minimal;
    std::uint64_t seed = 0;
    SetWindow f0;  // Player I's opening base, |f0| >= 2
    std::int64_t k0 = 0;

    void validate() const;  // usage errors on constraint violations
};

/// One exchange: Player I's cylinder (f, k) and Player II's response, the
/// cylinder over [0, 7k + t^2] with base f ∪ (k, 2k] ∪ {5k + i*t : 1 <= i <= t}
/// where t = floor(k^beta).
struct MoveRecord {
    std::int64_t m = 0;
    SetWindow f;
    std::int64_t k = 0;
    std::int64_t t = 0;
    std::int64_t window_end = 0;
    SetWindow prefix;
};

struct GameTranscript {
    GameParams params;
    std::vector<MoveRecord> moves;
    /// Prefix of the limit set over [0, last window_end]; every round's
    /// prefix is exactly its restriction.
    SetWindow limit_prefix;
};

/// Raised when an adversary emits a cylinder that does not refine the
/// previous one; the message names the round.
struct protocol_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// floor(k^beta) with the floor certified by directed rounding (precision is
/// escalated until both rounding directions agree).
std::int64_t floor_pow(std::int64_t k, double beta);
/// floor(n^alpha / 2), same certification; the perturbation budget used by
/// verify_prefix.
std::int64_t perturbation_budget(std::int64_t n, double alpha);

MoveRecord player2_move(const SetWindow& f, std::int64_t k, double beta);

/// Alternate the configured adversary with player2_move for params.rounds
/// rounds. Deterministic given the seed.
GameTranscript play(const GameParams& params);

struct RoundVerification {
    std::int64_t m = 0;
    std::int64_t n = 0;       // the round's window_end
    std::int64_t budget = 0;  // floor(n^alpha / 2)
    Verdict verdict = Verdict::inconclusive;
    std::uint64_t nodes = 0;
    std::optional<BudgetedWitness> witness;
};

struct VerifyReport {
    double alpha = 0.0;
    std::vector<RoundVerification> rounds;
};

/// Run the budgeted decider on each round's prefix at budget floor(n^alpha/2).
/// The report records finite-scale verdicts; it never asserts the asymptotic
/// statement, and inconclusive outcomes are recorded as such.
VerifyReport verify_prefix(const GameTranscript& transcript, double alpha,
                           const SearchConfig& decider_config);

}  // namespace sumset::game
