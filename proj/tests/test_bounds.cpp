#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "sumset/bounds.hpp"

using namespace sumset::bounds;

namespace {

// Pascal-row partial sums, the independent route for w: row[i] = C(n+1, i)
// maintained by the additive recurrence.
mpz_class w_by_pascal(std::int64_t n, std::int64_t k) {
    std::vector<mpz_class> row{1};  // C(0, ·); n+1 recurrence steps give C(n+1, ·)
    for (std::int64_t m = 1; m <= n + 1; ++m) {
        std::vector<mpz_class> next(m + 1, 0);
        for (std::size_t i = 0; i < row.size(); ++i) {
            next[i] += row[i];
            next[i + 1] += row[i];
        }
        row = std::move(next);
    }
    mpz_class sum = 0;
    for (std::int64_t i = 0; i <= n / k && i < static_cast<std::int64_t>(row.size()); ++i)
        sum += row[static_cast<std::size_t>(i)];
    return sum;
}

}  // namespace

TEST_CASE("w examples") {
    CHECK(w(10, 17) == 1);           // n < k: only i = 0
    CHECK(w(34, 17) == 631);         // 1 + 35 + 595
    CHECK(w(5, 5) == 7);             // n = k: 1 + (n+1)
    CHECK(w(0, 1) == 1);             // only i = 0
    CHECK_THROWS_AS(w(-1, 2), std::invalid_argument);
    CHECK_THROWS_AS(w(5, 0), std::invalid_argument);
}

TEST_CASE("w equals the Pascal-recurrence partial sums up to n = 200") {
    for (std::int64_t n = 0; n <= 200; n += (n < 40 ? 1 : 13)) {
        for (std::int64_t k : {1, 2, 3, 5, 7, 17, 50, 199}) {
            if (k > n && n > 0) continue;
            REQUIRE(w(n, std::max<std::int64_t>(k, 1)) ==
                    w_by_pascal(n, std::max<std::int64_t>(k, 1)));
        }
    }
}

TEST_CASE("p_bound exact values") {
    const mpq_class expected(mpz_class("251239591"), mpz_class("34359738368"));
    CHECK(p_bound_exact(34, 17) == expected);
    CHECK(p_bound(34, 17) == doctest::Approx(7.312e-3).epsilon(1e-3));
    // n < k gives w = 1, so exactly 1 / 2^{n+1}
    CHECK(p_bound_exact(9, 17) == mpq_class(1, 1024));
    // nonincreasing in k for fixed n
    for (std::int64_t k = 1; k < 40; ++k)
        CHECK(p_bound_exact(40, k + 1) <= p_bound_exact(40, k));
}

TEST_CASE("p_bound stays below 1 on the sane grid n >= 8k (k past the threshold)") {
    for (std::int64_t k : {17, 19, 23, 31}) {
        mpq_class one(1);
        for (std::int64_t n = 8 * k; n <= 8 * k + 256; ++n)
            REQUIRE(p_bound_exact(n, k) <= one);
    }
}

TEST_CASE("alpha_k values and brackets") {
    const Interval a2 = alpha_k(2);
    CHECK(a2.lo == 2.0);  // exactly 2: both rounding directions agree
    CHECK(a2.hi == 2.0);

    const Interval a17 = alpha_k(17);
    const Interval a16 = alpha_k(16);
    const Interval thr = cbrt2();
    CHECK(a17.mid() == doctest::Approx(1.2508).epsilon(1e-3));
    CHECK(a16.mid() == doctest::Approx(1.2634).epsilon(1e-3));
    CHECK(thr.mid() == doctest::Approx(1.259921).epsilon(1e-5));
    // certified brackets with margin at least 2^-20
    CHECK(compare(a17, thr) == Cmp::less);
    CHECK(compare(thr, a16) == Cmp::less);
    CHECK(thr.lo - a17.hi >= 0x1p-20);
    CHECK(a16.lo - thr.hi >= 0x1p-20);

    CHECK_THROWS_AS(alpha_k(1), std::invalid_argument);
}

TEST_CASE("alpha_k is strictly decreasing on [2, 1000]") {
    Interval prev = alpha_k(2);
    for (std::int64_t k = 3; k <= 1000; ++k) {
        const Interval cur = alpha_k(k);
        // strict decrease certified by the enclosures themselves
        REQUIRE(cur.hi < prev.lo);
        prev = cur;
    }
}

TEST_CASE("find_k") {
    CHECK(find_k() == 17);
    CHECK(find_k(2.001) == 2);   // alpha_2 = 2 sits just below
    CHECK(find_k(1.3) == 14);    // high-precision scan, frozen from the enclosures
    CHECK_THROWS_AS(find_k(0.9), std::invalid_argument);
}

TEST_CASE("comparison margins") {
    CHECK(compare({1.0, 1.0}, {2.0, 2.0}) == Cmp::less);
    CHECK(compare({2.0, 2.0}, {1.0, 1.0}) == Cmp::greater);
    CHECK(compare({1.0, 1.0}, {1.0 + 0x1p-30, 1.0 + 0x1p-30}) == Cmp::too_close);
}

TEST_CASE("tail_and_c certificate") {
    {
        const TailCertificate cert = tail_and_c(300, 17);
        CHECK(cert.c > 0.5);
        CHECK(cert.c < 1.0);
        CHECK(cert.c > cert.rate.hi);
        CHECK(cert.rate.mid() == doctest::Approx(0.978).epsilon(5e-3));
        CHECK(cert.checked_through == 812);
        CHECK(cert.tail.lo <= cert.tail.hi);
    }
    {
        // the geometric-series example: 0.99^1000 / 0.01
        const TailCertificate cert = tail_and_c(1000, 17, 0.99);
        CHECK(cert.c == 0.99);
        CHECK(cert.tail.lo == doctest::Approx(4.3171e-3).epsilon(1e-3));
        CHECK(cert.tail.hi == doctest::Approx(4.3171e-3).epsilon(1e-3));
    }
    CHECK_THROWS_AS(tail_and_c(10, 2), std::invalid_argument);   // alpha_2 = 2 >= 2^{1/3}
    CHECK_THROWS_AS(tail_and_c(10, 17, 0.4), std::invalid_argument);
    CHECK_THROWS_AS(tail_and_c(10, 17, 0.95), std::invalid_argument);  // below alpha^3/2
}
