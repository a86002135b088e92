#include "sumset/bounds.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>

namespace sumset::bounds {

namespace {

constexpr mpfr_prec_t kPrec = 128;

struct Real {
    mpfr_t v;
    Real() { mpfr_init2(v, kPrec); }
    explicit Real(mpfr_prec_t prec) { mpfr_init2(v, prec); }
    ~Real() { mpfr_clear(v); }
    Real(const Real&) = delete;
    Real& operator=(const Real&) = delete;
};

// One directed-rounding evaluation of alpha_k = k / (k-1)^{(k-1)/k}.
// `low` selects the lower end of the enclosure. The exponent (k-1)/k and the
// power are rounded in the direction that bounds the final quotient, using
// that the base k-1 >= 1 makes the power monotone in the exponent.
void alpha_k_directed(std::int64_t k, bool low, mpfr_t out) {
    const mpfr_rnd_t den_rnd = low ? MPFR_RNDU : MPFR_RNDD;
    Real e, den;
    mpfr_set_si(e.v, k - 1, MPFR_RNDN);
    mpfr_div_si(e.v, e.v, k, den_rnd);
    mpfr_set_si(den.v, k - 1, MPFR_RNDN);
    mpfr_pow(den.v, den.v, e.v, den_rnd);
    mpfr_si_div(out, k, den.v, low ? MPFR_RNDD : MPFR_RNDU);
}

}  // namespace

Cmp compare(const Interval& a, const Interval& b, double margin) {
    if (b.lo - a.hi >= margin) return Cmp::less;
    if (a.lo - b.hi >= margin) return Cmp::greater;
    return Cmp::too_close;
}

mpz_class w(std::int64_t n, std::int64_t k) {
    if (n < 0 || k < 1) throw std::invalid_argument("w: requires n >= 0 and k >= 1");
    const std::int64_t limit = n / k;
    mpz_class sum = 0;
    mpz_class binom;
    for (std::int64_t i = 0; i <= limit; ++i) {
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n + 1),
                     static_cast<unsigned long>(i));
        sum += binom;
    }
    return sum;
}

mpq_class p_bound_exact(std::int64_t n, std::int64_t k) {
    const mpz_class wnk = w(n, k);
    mpz_class num = wnk * wnk * wnk;
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(n + 1));
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

double p_bound(std::int64_t n, std::int64_t k) {
    const mpq_class q = p_bound_exact(n, k);
    Real r;
    mpfr_set_q(r.v, q.get_mpq_t(), MPFR_RNDN);
    return mpfr_get_d(r.v, MPFR_RNDN);
}

Interval alpha_k(std::int64_t k) {
    if (k < 2) throw std::invalid_argument("alpha_k: requires k >= 2");
    Real lo, hi;
    alpha_k_directed(k, true, lo.v);
    alpha_k_directed(k, false, hi.v);
    return {mpfr_get_d(lo.v, MPFR_RNDD), mpfr_get_d(hi.v, MPFR_RNDU)};
}

std::string alpha_k_decimal(std::int64_t k, int digits) {
    if (k < 2) throw std::invalid_argument("alpha_k: requires k >= 2");
    Real lo;
    alpha_k_directed(k, true, lo.v);
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, lo.v);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

Interval cbrt2() {
    Real lo, hi;
    mpfr_set_ui(lo.v, 2, MPFR_RNDN);
    mpfr_cbrt(lo.v, lo.v, MPFR_RNDD);
    mpfr_set_ui(hi.v, 2, MPFR_RNDN);
    mpfr_cbrt(hi.v, hi.v, MPFR_RNDU);
    return {mpfr_get_d(lo.v, MPFR_RNDD), mpfr_get_d(hi.v, MPFR_RNDU)};
}

std::int64_t find_k(std::optional<double> threshold) {
    Interval thr = threshold ? Interval{*threshold, *threshold} : cbrt2();
    if (!(thr.lo > 1.0)) throw std::invalid_argument("find_k: threshold must exceed 1");
    for (std::int64_t k = 2; k <= 1000000; ++k) {
        switch (compare(alpha_k(k), thr)) {
            case Cmp::less:
                return k;
            case Cmp::greater:
                break;
            case Cmp::too_close:
                throw comparison_too_close("find_k: alpha_k too close to threshold at k = " +
                                           std::to_string(k));
        }
    }
    throw std::runtime_error("find_k: no k below threshold up to 10^6");
}

TailCertificate tail_and_c(std::int64_t n0, std::int64_t k, std::optional<double> c_opt) {
    if (n0 < 1) throw std::invalid_argument("tail_and_c: n0 must be >= 1");
    const Interval a = alpha_k(k);
    if (compare(a, cbrt2()) != Cmp::less)
        throw std::invalid_argument(
            "tail_and_c: requires alpha_k < 2^(1/3); no geometric envelope exists for k = " +
            std::to_string(k));

    TailCertificate cert;
    cert.n0 = n0;
    cert.k = k;
    // rate = alpha_k^3 / 2 < 1; any c above it eventually dominates p_bound.
    cert.rate.lo = std::nextafter(a.lo * a.lo * a.lo / 2, 0.0);
    cert.rate.hi = std::nextafter(a.hi * a.hi * a.hi / 2, 2.0);
    const double c = c_opt ? *c_opt : std::min(0.999, (cert.rate.hi + 1.0) / 2.0);
    if (!(c > 0.5 && c < 1.0))
        throw std::invalid_argument("tail_and_c: c must lie in (1/2, 1)");
    if (!(c > cert.rate.hi))
        throw std::invalid_argument("tail_and_c: c must exceed alpha_k^3/2 = " +
                                    std::to_string(cert.rate.hi) +
                                    " for the asymptotic certificate");
    cert.c = c;

    // Exact range check: p_bound(n, k) <= c^n as rationals (c is an exact
    // binary rational). Walk c^n incrementally.
    constexpr std::int64_t kCheckSpan = 512;
    mpq_class cq(c);
    cq.canonicalize();
    mpq_class cpow = 1;
    for (std::int64_t i = 0; i < n0; ++i) cpow *= cq;
    std::int64_t first_fail = -1;
    mpq_class walk = cpow;
    for (std::int64_t n = n0; n <= n0 + kCheckSpan; ++n) {
        if (p_bound_exact(n, k) > walk) {
            first_fail = n;
            break;
        }
        walk *= cq;
    }
    if (first_fail >= 0) {
        // Report the smallest workable n0: past the last violation in a
        // generous scan window.
        std::int64_t last_violation = first_fail;
        mpq_class probe = 1;
        for (std::int64_t i = 0; i < first_fail; ++i) probe *= cq;
        for (std::int64_t n = first_fail; n <= first_fail + 8192; ++n) {
            if (p_bound_exact(n, k) > probe) last_violation = n;
            probe *= cq;
        }
        throw std::invalid_argument(
            "tail_and_c: p_bound exceeds c^n at n = " + std::to_string(first_fail) +
            "; smallest workable n0 is " + std::to_string(last_violation + 1));
    }
    cert.checked_through = n0 + kCheckSpan;

    // tail = c^{n0} / (1 - c), outward rounded.
    {
        Real lo, hi;
        mpfr_set_d(lo.v, c, MPFR_RNDN);  // exact
        mpfr_pow_si(lo.v, lo.v, static_cast<long>(n0), MPFR_RNDD);
        mpfr_div_d(lo.v, lo.v, 1.0 - c, MPFR_RNDD);
        mpfr_set_d(hi.v, c, MPFR_RNDN);
        mpfr_pow_si(hi.v, hi.v, static_cast<long>(n0), MPFR_RNDU);
        mpfr_div_d(hi.v, hi.v, 1.0 - c, MPFR_RNDU);
        cert.tail = {mpfr_get_d(lo.v, MPFR_RNDD), mpfr_get_d(hi.v, MPFR_RNDU)};
    }
    cert.note =
        "envelope certified exactly on [n0, checked_through] and asymptotically "
        "by alpha_k^3/2 < c; the paper's Stirling constants are not tracked";
    return cert;
}

}  // namespace sumset::bounds
