#include "sumset/game.hpp"

#include <mpfr.h>

#include <algorithm>
#include <stdexcept>

#include "sumset/rng.hpp"

namespace sumset::game {

Adversary adversary_from_string(const std::string& name) {
    if (name == "minimal") return Adversary::minimal;
    if (name == "random") return Adversary::random_fill;
    if (name == "sumsetish") return Adversary::sumsetish;
    throw std::invalid_argument("unknown adversary: " + name);
}

const char* to_string(Adversary a) {
    switch (a) {
        case Adversary::minimal: return "minimal";
        case Adversary::random_fill: return "random";
        case Adversary::sumsetish: return "sumsetish";
    }
    return "unknown";
}

void GameParams::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0 / 3.0))
        throw std::invalid_argument("GameParams: alpha must lie in (0, 1/3)");
    if (!(beta > 0.75 && beta < 1.0))
        throw std::invalid_argument("GameParams: beta must lie in (3/4, 1)");
    if (!(alpha * beta < 0.25))
        throw std::invalid_argument("GameParams: alpha*beta must be below 1/4");
    if (rounds < 1) throw std::invalid_argument("GameParams: rounds must be >= 1");
    if (f0.cardinality() < 2) throw std::invalid_argument("GameParams: |F_0| must be >= 2");
    if (k0 < std::max<std::int64_t>(f0.max_element(), 0))
        throw std::invalid_argument("GameParams: k_0 must be >= max(F_0 ∪ {0})");
}

namespace {

// Certified floor of base^exp / divisor at escalating precision: accept only
// when both rounding directions give the same integer part.
std::int64_t certified_floor(std::int64_t base, double exp, int divisor) {
    if (base < 1) throw std::invalid_argument("certified_floor: base must be >= 1");
    for (mpfr_prec_t prec = 128; prec <= 2048; prec *= 2) {
        mpfr_t lo, hi;
        mpfr_init2(lo, prec);
        mpfr_init2(hi, prec);
        mpfr_set_si(lo, base, MPFR_RNDN);
        mpfr_set_si(hi, base, MPFR_RNDN);
        mpfr_t e;
        mpfr_init2(e, prec);
        mpfr_set_d(e, exp, MPFR_RNDN);  // exact: exp is a double
        mpfr_pow(lo, lo, e, MPFR_RNDD);
        mpfr_pow(hi, hi, e, MPFR_RNDU);
        if (divisor != 1) {
            mpfr_div_si(lo, lo, divisor, MPFR_RNDD);
            mpfr_div_si(hi, hi, divisor, MPFR_RNDU);
        }
        mpfr_floor(lo, lo);
        mpfr_floor(hi, hi);
        const std::int64_t flo = mpfr_get_si(lo, MPFR_RNDN);
        const std::int64_t fhi = mpfr_get_si(hi, MPFR_RNDN);
        mpfr_clears(lo, hi, e, nullptr);
        if (flo == fhi) return flo;
    }
    throw std::runtime_error("certified_floor: power sits on an integer boundary");
}

}  // namespace

std::int64_t floor_pow(std::int64_t k, double beta) { return certified_floor(k, beta, 1); }

std::int64_t perturbation_budget(std::int64_t n, double alpha) {
    return certified_floor(n, alpha, 2);
}

MoveRecord player2_move(const SetWindow& f, std::int64_t k, double beta) {
    if (f.cardinality() < 2) throw std::invalid_argument("player2_move: |F| must be >= 2");
    if (k < std::max<std::int64_t>(f.max_element(), 0))
        throw std::invalid_argument("player2_move: k must be >= max(F ∪ {0})");
    if (!(beta > 0.75 && beta < 1.0))
        throw std::invalid_argument("player2_move: beta must lie in (3/4, 1)");

    MoveRecord move;
    move.f = f;
    move.k = k;
    move.t = floor_pow(k, beta);
    move.window_end = 7 * k + move.t * move.t;

    SetWindow prefix(move.window_end);
    for (auto e : f.elements()) prefix.set(e);
    for (std::int64_t i = k + 1; i <= 2 * k; ++i) prefix.set(i);
    for (std::int64_t i = 1; i <= move.t; ++i) prefix.set(5 * k + i * move.t);
    move.prefix = std::move(prefix);
    return move;
}

namespace {

struct Cylinder {
    SetWindow f;
    std::int64_t k;
};

Cylinder next_player1_move(const GameParams& params, const MoveRecord& prev,
                           std::int64_t round) {
    const std::int64_t end = prev.window_end;
    TrialRng rng(params.seed, static_cast<std::uint64_t>(round));
    switch (params.adversary) {
        case Adversary::minimal: {
            return {prev.prefix.rewindow(end + 1), end + 1};
        }
        case Adversary::random_fill: {
            const std::int64_t k = end + 1 + static_cast<std::int64_t>(
                                                 rng.next() % static_cast<std::uint64_t>(end + 2));
            SetWindow f = prev.prefix.rewindow(k);
            for (std::int64_t p = end + 1; p <= k; ++p)
                if (rng.next() & 1u) f.set(p);
            return {std::move(f), k};
        }
        case Adversary::sumsetish: {
            // Append {0, d} + {0, d, 2d} translated past the old window.
            const std::int64_t d = 1 + static_cast<std::int64_t>(rng.next() % 3);
            const std::int64_t base = end + 1;
            const std::int64_t k = base + 3 * d + 1 + static_cast<std::int64_t>(rng.next() % 3);
            SetWindow f = prev.prefix.rewindow(k);
            for (std::int64_t s : {std::int64_t{0}, d, 2 * d, 3 * d}) f.set(base + s);
            return {std::move(f), k};
        }
    }
    throw std::logic_error("unreachable adversary");
}

void check_protocol(const Cylinder& c, const MoveRecord& prev, std::int64_t round) {
    if (c.k <= prev.window_end)
        throw protocol_error("round " + std::to_string(round) +
                             ": adversary cylinder does not extend the window");
    if (c.k < std::max<std::int64_t>(c.f.max_element(), 0))
        throw protocol_error("round " + std::to_string(round) + ": adversary base exceeds k");
    // F must agree with the previous prefix on [0, prev end].
    if (c.f.truncated(prev.window_end) != prev.prefix)
        throw protocol_error("round " + std::to_string(round) +
                             ": adversary base does not refine the previous cylinder");
}

}  // namespace

GameTranscript play(const GameParams& params) {
    params.validate();
    GameTranscript transcript;
    transcript.params = params;

    MoveRecord move = player2_move(params.f0, params.k0, params.beta);
    move.m = 0;
    transcript.moves.push_back(move);
    for (std::int64_t m = 1; m < params.rounds; ++m) {
        Cylinder c = next_player1_move(params, transcript.moves.back(), m);
        check_protocol(c, transcript.moves.back(), m);
        MoveRecord next = player2_move(c.f, c.k, params.beta);
        next.m = m;
        // Nesting: the new prefix restricted to the old window must match.
        if (next.prefix.truncated(transcript.moves.back().window_end) !=
            transcript.moves.back().prefix)
            throw protocol_error("round " + std::to_string(m) +
                                 ": constructed prefix does not nest");
        transcript.moves.push_back(std::move(next));
    }
    transcript.limit_prefix = transcript.moves.back().prefix;
    return transcript;
}

VerifyReport verify_prefix(const GameTranscript& transcript, double alpha,
                           const SearchConfig& decider_config) {
    if (!(alpha > 0.0 && alpha < 1.0 / 3.0))
        throw std::invalid_argument("verify_prefix: alpha must lie in (0, 1/3)");
    VerifyReport report;
    report.alpha = alpha;
    for (const auto& move : transcript.moves) {
        RoundVerification rv;
        rv.m = move.m;
        rv.n = move.window_end;
        rv.budget = perturbation_budget(move.window_end, alpha);
        SearchConfig cfg = decider_config;
        cfg.budget = rv.budget;
        const DecideResult res = decide_budgeted(move.prefix, cfg);
        rv.verdict = res.verdict;
        rv.nodes = res.nodes;
        rv.witness = res.witness;
        report.rounds.push_back(std::move(rv));
    }
    return report;
}

}  // namespace sumset::game
