// Acceptance suite: every criterion runs at its stated tolerance and prints
// one pass/fail line. The process exits with the number of failed criteria.
#include <sys/wait.h>

#include <bit>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sumset/bounds.hpp"
#include "sumset/decompose.hpp"
#include "sumset/game.hpp"
#include "sumset/json_io.hpp"
#include "sumset/montecarlo.hpp"
#include "sumset/rng.hpp"

using namespace sumset;
namespace bd = sumset::bounds;

namespace {

std::string cli_path;

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

std::string run_cli(const std::string& args) {
    if (cli_path.empty()) return {};
    FILE* pipe = popen((cli_path + " " + args + " 2>/dev/null").c_str(), "r");
    if (!pipe) return {};
    std::string out;
    char buf[4096];
    while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
    pclose(pipe);
    return out;
}

// 1. decide_exact verdicts equal oracle membership for every A ⊆ [0, n],
//    n = 0..12, and every emitted witness re-validates through sumset_window.
Outcome criterion1() {
    Outcome o;
    SearchConfig cfg;
    for (std::int64_t n = 0; n <= 12; ++n) {
        const OracleResult oracle = oracle_decomposable_masks(n, 2);
        std::uint64_t checked = 0;
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << (n + 1)); ++m) {
            const SetWindow a = SetWindow::from_words(n, {m});
            const DecideResult r = decide_exact(a, cfg);
            const bool want = oracle.achievable[m];
            if ((r.verdict == Verdict::decomposable) != want) {
                o.pass = false;
                o.detail = "verdict mismatch at n=" + std::to_string(n) +
                           " mask=" + std::to_string(m);
                return o;
            }
            if (r.witness) {
                ++checked;
                if (sumset_window(r.witness->decomposition.y, r.witness->decomposition.z, n) !=
                    a) {
                    o.pass = false;
                    o.detail = "witness fails re-validation at n=" + std::to_string(n) +
                               " mask=" + std::to_string(m);
                    return o;
                }
            }
        }
        if (n == 12)
            o.detail = "all 2^13 windows at n=12 agree with the oracle (" +
                       std::to_string(oracle.count) + " decomposable, witnesses " +
                       std::to_string(checked) + ")";
    }
    return o;
}

// 2. Budgeted verdicts equal Hamming-ball intersection with the oracle set
//    for every A ⊆ [0, 10] and t in {0, 1, 2}.
Outcome criterion2() {
    Outcome o;
    const std::int64_t n = 10;
    const OracleResult oracle = oracle_decomposable_masks(n, 2);
    // Flip patterns of weight <= 2 over n+1 bits.
    std::vector<std::uint64_t> flips;
    for (std::uint64_t d = 0; d < (std::uint64_t{1} << (n + 1)); ++d)
        if (std::popcount(d) <= 2) flips.push_back(d);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << (n + 1)); ++m) {
        for (std::int64_t t = 0; t <= 2; ++t) {
            bool ball = false;
            for (const auto d : flips) {
                if (std::popcount(d) > static_cast<int>(t)) continue;
                if (oracle.achievable[m ^ d]) {
                    ball = true;
                    break;
                }
            }
            SearchConfig cfg;
            cfg.budget = t;
            const DecideResult r = decide_budgeted(SetWindow::from_words(n, {m}), cfg);
            if ((r.verdict == Verdict::decomposable) != ball) {
                o.pass = false;
                o.detail = "mismatch at mask=" + std::to_string(m) + " t=" + std::to_string(t);
                return o;
            }
            if (r.witness &&
                (sumset_window(r.witness->decomposition.y, r.witness->decomposition.z, n) !=
                     r.witness->a_prime ||
                 static_cast<std::int64_t>(r.witness->flips.size()) > t)) {
                o.pass = false;
                o.detail = "invalid witness at mask=" + std::to_string(m);
                return o;
            }
        }
    }
    o.detail = "6144 budgeted verdicts match Hamming-ball membership exactly";
    return o;
}

// 3. Bound constants, all exact or margin-certified.
Outcome criterion3() {
    Outcome o;
    std::ostringstream detail;
    const bd::Interval a2 = bd::alpha_k(2);
    if (a2.lo != 2.0 || a2.hi != 2.0) {
        o.pass = false;
        o.detail = "alpha_2 not exactly 2";
        return o;
    }
    const std::int64_t k = bd::find_k();
    if (k != 17) {
        o.pass = false;
        o.detail = "find_k(2^(1/3)) = " + std::to_string(k);
        return o;
    }
    const bd::Interval a16 = bd::alpha_k(16), a17 = bd::alpha_k(17), thr = bd::cbrt2();
    if (!(a16.lo - thr.hi >= 0x1p-20 && thr.lo - a17.hi >= 0x1p-20)) {
        o.pass = false;
        o.detail = "bracket margins below 2^-20";
        return o;
    }
    if (bd::w(34, 17) != 631) {
        o.pass = false;
        o.detail = "w(34,17) != 631";
        return o;
    }
    const mpq_class expected(mpz_class("251239591"), mpz_class("34359738368"));
    if (bd::p_bound_exact(34, 17) != expected) {
        o.pass = false;
        o.detail = "p_bound(34,17) not exactly 251239591/2^35";
        return o;
    }
    detail << "alpha_2 = 2 exactly; find_k = 17 with brackets [" << a17.hi << ", " << thr.lo
           << "] and [" << thr.hi << ", " << a16.lo << "]; w(34,17) = 631; p_bound exact";
    o.detail = detail.str();
    return o;
}

// 4. Empirical event estimates stay under the analytic bound at the 99%
//    upper confidence limit for n in {34, 51, 68}.
Outcome criterion4() {
    Outcome o;
    std::ostringstream detail;
    for (const std::int64_t n : {34, 51, 68}) {
        const mc::Estimate e = mc::estimate_event(n, 17, 100000, 1);
        const double pb = bd::p_bound(n, 17);
        if (e.inconclusive != 0) {
            o.pass = false;
            o.detail = "inconclusive trials at n=" + std::to_string(n);
            return o;
        }
        if (!(e.ci99_high <= pb)) {
            o.pass = false;
            o.detail = "99% UCL " + std::to_string(e.ci99_high) + " exceeds p_bound " +
                       std::to_string(pb) + " at n=" + std::to_string(n);
            return o;
        }
        detail << "n=" << n << ": hits " << e.hits << "/" << e.trials << ", 99% UCL "
               << e.ci99_high << " <= p_bound " << pb << "; ";
    }
    o.detail = detail.str();
    return o;
}

// 5. Exhaustive census decay: deterministic fractions, weakly decreasing from
//    n = 8 on, with the n = 12 count equal to the oracle count.
Outcome criterion5() {
    Outcome o;
    SearchConfig cfg;
    std::ostringstream detail;
    std::vector<CensusResult> results;
    for (const std::int64_t n : {4, 8, 12, 16}) {
        SearchConfig one = cfg, eight = cfg;
        one.threads = 1;
        eight.threads = 8;
        const CensusResult a = census(n, one);
        const CensusResult b = census(n, eight);
        if (a.decomposable != b.decomposable || a.inconclusive != b.inconclusive) {
            o.pass = false;
            o.detail = "census not thread-invariant at n=" + std::to_string(n);
            return o;
        }
        if (a.inconclusive != 0) {
            o.pass = false;
            o.detail = "census inconclusive at n=" + std::to_string(n);
            return o;
        }
        results.push_back(a);
        detail << "n=" << n << ": " << a.decomposable << "/" << a.total << " (" << a.fraction
               << "); ";
    }
    const OracleResult oracle = oracle_decomposable_masks(12, 2);
    if (results[2].decomposable != oracle.count) {
        o.pass = false;
        o.detail = "census(12) = " + std::to_string(results[2].decomposable) +
                   " but oracle counts " + std::to_string(oracle.count);
        return o;
    }
    detail << "n=12 census equals oracle count " << oracle.count;
    // Stated expectation: fractions weakly decreasing from n = 8 onward.
    if (results[1].fraction < results[2].fraction ||
        results[2].fraction < results[3].fraction) {
        o.pass = false;
        detail << "; the fractions are NOT weakly decreasing from n=8 (exact window "
                  "decomposability becomes easier before it turns: any window with min(A) >= 1 "
                  "and |A| >= 2 splits off its top element), so the stated decay is "
                  "unattainable at these scales";
    }
    o.detail = detail.str();
    return o;
}

// 6. Game construction (minimal adversary, 3 rounds) matches the hand-derived
//    round 0 and keeps all structural invariants.
Outcome criterion6() {
    Outcome o;
    game::GameParams p;
    p.alpha = 0.25;
    p.beta = 0.8;
    p.rounds = 3;
    p.adversary = game::Adversary::minimal;
    p.seed = 0;
    p.f0 = SetWindow::of(1, {0, 1});
    p.k0 = 4;
    const game::GameTranscript t = game::play(p);
    if (t.moves[0].window_end != 37 ||
        t.moves[0].prefix != SetWindow::of(37, {0, 1, 5, 6, 7, 8, 23, 26, 29})) {
        o.pass = false;
        o.detail = "round 0 prefix or window end differs from the hand derivation";
        return o;
    }
    for (const auto& m : t.moves) {
        for (std::int64_t i = m.k + 1; i <= 2 * m.k; ++i)
            if (!m.prefix.test(i)) {
                o.pass = false;
                o.detail = "block missing in round " + std::to_string(m.m);
                return o;
            }
        for (std::int64_t i = 1; i <= m.t; ++i)
            if (!m.prefix.test(5 * m.k + i * m.t)) {
                o.pass = false;
                o.detail = "progression missing in round " + std::to_string(m.m);
                return o;
            }
        for (std::int64_t q = 5 * m.k + m.t * m.t + 1; q <= m.window_end; ++q)
            if (m.prefix.test(q)) {
                o.pass = false;
                o.detail = "terminal gap not empty in round " + std::to_string(m.m);
                return o;
            }
        if (m.t != game::floor_pow(m.k, p.beta) || m.window_end != 7 * m.k + m.t * m.t) {
            o.pass = false;
            o.detail = "recomputed parameters differ in round " + std::to_string(m.m);
            return o;
        }
    }
    for (std::size_t i = 1; i < t.moves.size(); ++i)
        if (t.moves[i].prefix.truncated(t.moves[i - 1].window_end) != t.moves[i - 1].prefix) {
            o.pass = false;
            o.detail = "nesting violated at round " + std::to_string(i);
            return o;
        }
    o.detail = "round 0 = {0,1,5,6,7,8,23,26,29} at window 37; block, progression, "
               "terminal gap and nesting hold for all 3 rounds";
    return o;
}

// 7. Game verification at scale: round 0 of (F0={0,1}, k0=32, beta=0.8,
//    alpha=0.25, adversary=random, seed=7) at node limit 10^8. The stated
//    expectation is an irreducible verdict; the run must terminate and record
//    a verdict either way, and a decomposable outcome fails this criterion.
Outcome criterion7() {
    Outcome o;
    game::GameParams p;
    p.alpha = 0.25;
    p.beta = 0.8;
    p.rounds = 1;
    p.adversary = game::Adversary::random_fill;
    p.seed = 7;
    p.f0 = SetWindow::of(1, {0, 1});
    p.k0 = 32;
    const game::GameTranscript t = game::play(p);
    SearchConfig cfg;
    cfg.node_limit = 100000000;
    const game::VerifyReport report = game::verify_prefix(t, p.alpha, cfg);
    const auto& r = report.rounds[0];
    std::ostringstream detail;
    detail << "round 0: n=" << r.n << ", budget=" << r.budget << ", verdict="
           << to_string(r.verdict) << ", nodes=" << r.nodes;
    if (r.n != 480 || r.budget != 2) {
        o.pass = false;
        o.detail = "unexpected scale: " + detail.str();
        return o;
    }
    if (r.verdict == Verdict::inconclusive) {
        o.pass = false;
        o.detail = "node-limit sizing failed: " + detail.str();
        return o;
    }
    if (r.verdict == Verdict::decomposable) {
        o.pass = false;
        detail << "; witness Y=" << r.witness->decomposition.y.to_string()
               << " Z=" << r.witness->decomposition.z.to_string() << " flips="
               << r.witness->flips.size()
               << " (witness re-validates: "
               << (sumset_window(r.witness->decomposition.y, r.witness->decomposition.z, r.n) ==
                           r.witness->a_prime
                       ? "yes"
                       : "NO")
               << "); the finite-scale construction at k0=32 admits a budget-2 sumset, so the "
                  "expected irreducible verdict is unattainable at this scale";
        o.detail = detail.str();
        return o;
    }
    o.detail = detail.str();
    return o;
}

// 8. Pattern frequencies of a seeded pseudorandom window: all 8 patterns over
//    a 3-interval within 0.01 of 1/8, counts summing exactly to n+1.
Outcome criterion8() {
    Outcome o;
    TrialRng rng(1, 0);
    const std::int64_t len = 100000;
    const SetWindow a = rng.random_window(len);
    const std::int64_t L = 3;
    const std::int64_t n = len - L;
    std::int64_t total = 0;
    double worst = 0.0;
    for (std::uint64_t fm = 0; fm < 8; ++fm) {
        const SetWindow f = SetWindow::from_words(L - 1, {fm});
        const std::int64_t count = pattern_frequency(a, L, f, n);
        total += count;
        const double dev =
            std::abs(static_cast<double>(count) / static_cast<double>(n + 1) - 0.125);
        worst = std::max(worst, dev);
        if (dev >= 0.01) {
            o.pass = false;
            o.detail = "pattern " + std::to_string(fm) + " deviates by " + std::to_string(dev);
            return o;
        }
    }
    if (total != n + 1) {
        o.pass = false;
        o.detail = "pattern counts sum to " + std::to_string(total) + " instead of n+1";
        return o;
    }
    std::ostringstream detail;
    detail << "8 patterns within " << worst << " of 1/8; counts sum to " << n + 1 << " exactly";
    o.detail = detail.str();
    return o;
}

// 9. Determinism: repeated seeded runs and thread counts 1 vs 8 produce
//    byte-identical JSON, at the library serializers and through the CLI.
Outcome criterion9() {
    Outcome o;
    {
        const mc::Estimate a = mc::estimate_event(34, 17, 100000, 1, 1);
        const mc::Estimate b = mc::estimate_event(34, 17, 100000, 1, 8);
        const mc::Estimate c = mc::estimate_event(34, 17, 100000, 1, 8);
        const double pb = bd::p_bound(34, 17);
        if (io::estimate_to_json(a, pb).dump() != io::estimate_to_json(b, pb).dump() ||
            io::estimate_to_json(b, pb).dump() != io::estimate_to_json(c, pb).dump()) {
            o.pass = false;
            o.detail = "estimate JSON differs across thread counts or repeats";
            return o;
        }
    }
    {
        SearchConfig one, eight;
        one.threads = 1;
        eight.threads = 8;
        const CensusResult a = census(12, one);
        const CensusResult b = census(12, eight);
        if (io::census_to_json(a, one).dump() != io::census_to_json(b, one).dump()) {
            o.pass = false;
            o.detail = "census JSON differs across thread counts";
            return o;
        }
    }
    {
        game::GameParams p;
        p.rounds = 2;
        p.adversary = game::Adversary::random_fill;
        p.seed = 7;
        p.f0 = SetWindow::of(1, {0, 1});
        p.k0 = 4;
        if (io::transcript_to_json(game::play(p)).dump() !=
            io::transcript_to_json(game::play(p)).dump()) {
            o.pass = false;
            o.detail = "game transcript JSON differs across repeats";
            return o;
        }
    }
    if (!cli_path.empty()) {
        const std::string cmd = "--json sample event --k 17 --n 34 --trials 20000 --seed 1";
        const std::string a = run_cli(cmd + " --threads 1");
        const std::string b = run_cli(cmd + " --threads 8");
        if (a.empty() || a != b) {
            o.pass = false;
            o.detail = "CLI sample JSON differs across thread counts";
            return o;
        }
    }
    o.detail = "estimates, census, transcript and CLI output byte-identical across "
               "seeds/threads";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) cli_path = argv[1];
    struct Entry {
        int id;
        Outcome (*fn)();
    };
    const std::vector<Entry> entries{{1, criterion1}, {2, criterion2}, {3, criterion3},
                                     {4, criterion4}, {5, criterion5}, {6, criterion6},
                                     {7, criterion7}, {8, criterion8}, {9, criterion9}};
    int failures = 0;
    for (const auto& e : entries) {
        const auto start = Clock::now();
        Outcome o;
        try {
            o = e.fn();
        } catch (const std::exception& ex) {
            o.pass = false;
            o.detail = std::string("exception: ") + ex.what();
        }
        const auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
        std::cout << "criterion " << e.id << ": " << (o.pass ? "PASS" : "FAIL") << " — "
                  << o.detail << " [" << ms << " ms]" << std::endl;
        failures += o.pass ? 0 : 1;
    }
    std::cout << (failures == 0 ? "all criteria passed"
                                : std::to_string(failures) + " criterion(s) failed")
              << std::endl;
    return failures;
}
