#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <vector>

#include "sumset/core.hpp"
#include "sumset/rng.hpp"

using namespace sumset;

namespace {

// Independent oracle: the naive double loop {y+z : y in Y, z in Z, y+z <= n}.
SetWindow naive_sumset(const SetWindow& y, const SetWindow& z, std::int64_t n) {
    SetWindow s(n);
    for (auto a : y.elements())
        for (auto b : z.elements())
            if (a + b <= n) s.set(a + b);
    return s;
}

SetWindow window_from_mask(std::int64_t n, std::uint64_t mask) {
    return SetWindow::from_words(n, {mask});
}

}  // namespace

TEST_CASE("sumset_window matches the stated examples") {
    CHECK(sumset_window(SetWindow::of(2, {0, 1}), SetWindow::of(2, {0, 1}), 2) ==
          SetWindow::of(2, {0, 1, 2}));
    // identity element 0
    SetWindow a = SetWindow::of(9, {1, 4, 7, 9});
    CHECK(sumset_window(SetWindow::of(9, {0}), a, 9) == a);
    // all sums exceed the window
    CHECK(sumset_window(SetWindow::of(3, {2, 3}), SetWindow::of(3, {2, 3}), 3) == SetWindow(3));
    // empty factors give the empty window
    CHECK(sumset_window(SetWindow(5), SetWindow::of(5, {1, 2}), 5) == SetWindow(5));
}

TEST_CASE("sumset_window agrees with the naive double loop exhaustively at n = 10") {
    const std::int64_t n = 10;
    for (std::uint64_t ym = 0; ym < (1u << (n + 1)); ++ym) {
        SetWindow y = window_from_mask(n, ym);
        for (std::uint64_t zm = ym; zm < (1u << (n + 1)); ++zm) {
            SetWindow z = window_from_mask(n, zm);
            REQUIRE(sumset_window(y, z, n) == naive_sumset(y, z, n));
        }
    }
}

TEST_CASE("sumset_window agrees with the naive double loop on random sets at n = 64") {
    TrialRng rng(2024, 0);
    for (int i = 0; i < 2000; ++i) {
        SetWindow y = rng.random_window(64);
        SetWindow z = rng.random_window(64);
        REQUIRE(sumset_window(y, z, 64) == naive_sumset(y, z, 64));
    }
}

TEST_CASE("sumset_window is commutative and associative up to truncation") {
    const std::int64_t n = 6;
    for (std::uint64_t ym = 0; ym < (1u << (n + 1)); ym += 3) {
        for (std::uint64_t zm = 0; zm < (1u << (n + 1)); zm += 5) {
            SetWindow y = window_from_mask(n, ym), z = window_from_mask(n, zm);
            REQUIRE(sumset_window(y, z, n) == sumset_window(z, y, n));
            for (std::uint64_t wm = 0; wm < (1u << (n + 1)); wm += 7) {
                SetWindow w = window_from_mask(n, wm);
                REQUIRE(sumset_window(sumset_window(y, z, n), w, n) ==
                        sumset_window(y, sumset_window(z, w, n), n));
            }
        }
    }
    // randomized at the spec scale [0, 8]
    TrialRng rng(7, 1);
    for (int i = 0; i < 20000; ++i) {
        SetWindow y = rng.random_window(8), z = rng.random_window(8), w = rng.random_window(8);
        REQUIRE(sumset_window(y, z, 8) == sumset_window(z, y, 8));
        REQUIRE(sumset_window(sumset_window(y, z, 8), w, 8) ==
                sumset_window(y, sumset_window(z, w, 8), 8));
    }
}

TEST_CASE("|Y+Z| never exceeds |Y| * |Z|") {
    TrialRng rng(11, 2);
    for (int i = 0; i < 5000; ++i) {
        SetWindow y = rng.random_window(40), z = rng.random_window(40);
        CHECK(sumset_window(y, z, 40).cardinality() <= y.cardinality() * z.cardinality());
    }
}

TEST_CASE("sym_diff_count") {
    CHECK(sym_diff_count(SetWindow::of(2, {0, 1, 2}), SetWindow::of(2, {0, 1, 2})) == 0);
    CHECK(sym_diff_count(SetWindow::of(3, {0, 1, 3}), SetWindow::of(3, {0, 1, 2})) == 2);
    CHECK(sym_diff_count(SetWindow(4), SetWindow::full(4)) == 5);
    CHECK_THROWS_AS(sym_diff_count(SetWindow(3), SetWindow(4)), std::invalid_argument);
}

TEST_CASE("z_alpha_profile on the squares: ratios approach 1 at alpha = 1/2") {
    // |S(n)| = floor(sqrt(n)) + 1 for the set of squares, the direct count.
    const std::int64_t n = 10000;
    SetWindow squares(n);
    for (std::int64_t i = 0; i * i <= n; ++i) squares.set(i * i);
    std::vector<std::int64_t> checkpoints{100, 1000, 10000};
    const CountingProfile p = z_alpha_profile(squares, 0.5, checkpoints, 0.5);
    for (const auto& s : p.samples) {
        std::int64_t isqrt = 0;
        while ((isqrt + 1) * (isqrt + 1) <= s.n) ++isqrt;
        CHECK(s.count == isqrt + 1);
        CHECK(s.ratio == doctest::Approx(1.0).epsilon(0.05));
    }
    CHECK_FALSE(p.last_below_tolerance);  // not vanishing
}

TEST_CASE("z_alpha_profile trivial cases and validation") {
    SetWindow empty(100);
    std::vector<std::int64_t> cp{1, 10, 100};
    const CountingProfile p = z_alpha_profile(empty, 0.7, cp, 0.01);
    for (const auto& s : p.samples) CHECK(s.ratio == 0.0);
    CHECK(p.last_below_tolerance);

    const CountingProfile full = z_alpha_profile(SetWindow::full(100), 1.0, cp, 0.5);
    CHECK(full.samples.back().ratio == doctest::Approx(101.0 / 100.0));

    CHECK_THROWS_AS(z_alpha_profile(empty, 0.0, cp, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(z_alpha_profile(empty, 1.5, cp, 0.1), std::invalid_argument);
    std::vector<std::int64_t> bad{0};
    CHECK_THROWS_AS(z_alpha_profile(empty, 0.5, bad, 0.1), std::invalid_argument);
}

TEST_CASE("counting profile is nondecreasing in n") {
    TrialRng rng(3, 3);
    SetWindow s = rng.random_window(500);
    std::vector<std::int64_t> cp;
    for (std::int64_t n = 1; n <= 500; n += 7) cp.push_back(n);
    const CountingProfile p = z_alpha_profile(s, 0.9, cp, 0.1);
    for (std::size_t i = 1; i < p.samples.size(); ++i)
        CHECK(p.samples[i].count >= p.samples[i - 1].count);
}

TEST_CASE("pattern_frequency trivial cases") {
    // every shift matches the full block
    const std::int64_t n = 57;
    CHECK(pattern_frequency(SetWindow::full(n + 1), 2, SetWindow::of(1, {0, 1}), n) == n + 1);
    // empty pattern over an empty set
    CHECK(pattern_frequency(SetWindow(n), 1, SetWindow(0), n - 1) == n);
    CHECK_THROWS_AS(pattern_frequency(SetWindow(10), 2, SetWindow::of(5, {3}), 5),
                    std::invalid_argument);
    CHECK_THROWS_AS(pattern_frequency(SetWindow(10), 4, SetWindow(3), 8), std::invalid_argument);
}

TEST_CASE("pattern_frequency sums to n+1 over all patterns and is near-uniform on "
          "pseudorandom windows") {
    TrialRng rng(99, 4);
    const std::int64_t len = 4000;
    SetWindow a = rng.random_window(len);
    const std::int64_t L = 3;
    const std::int64_t n = len - L;
    std::int64_t total = 0;
    for (std::uint64_t fm = 0; fm < (1u << L); ++fm) {
        SetWindow f = SetWindow::from_words(L - 1, {fm});
        total += pattern_frequency(a, L, f, n);
    }
    CHECK(total == n + 1);

    // frequency of one fixed pattern against a brute-force scan
    SetWindow f = SetWindow::of(2, {0, 2});
    std::int64_t brute = 0;
    for (std::int64_t j = 0; j <= n; ++j) {
        bool match = true;
        for (std::int64_t b = 0; b < L; ++b)
            match &= a.test(j + b) == f.test(b);
        brute += match;
    }
    CHECK(pattern_frequency(a, L, f, n) == brute);
}

TEST_CASE("SetWindow invariants and helpers") {
    SetWindow s = SetWindow::of(70, {0, 63, 64, 70});
    CHECK(s.cardinality() == 4);
    CHECK(s.min_element() == 0);
    CHECK(s.max_element() == 70);
    CHECK(s.count_prefix(63) == 2);
    CHECK(s.truncated(64) == SetWindow::of(64, {0, 63, 64}));
    CHECK(s.rewindow(100).length() == 100);
    CHECK_THROWS_AS(s.rewindow(69), std::invalid_argument);
    CHECK_THROWS_AS(s.test(71), std::out_of_range);
    CHECK(s.shifted(10, 80) == SetWindow::of(80, {10, 73, 74, 80}));
    CHECK(s.to_string() == "{0, 63, 64, 70}");
}
