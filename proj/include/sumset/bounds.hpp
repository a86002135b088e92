#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace sumset::bounds {

/// Outward-rounded enclosure of a real value. Endpoints carry 53 significant
/// bits; they are produced from 128-bit directed-rounding arithmetic, so the
/// true value always lies in [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
    double mid() const { return lo + (hi - lo) / 2; }
};

enum class Cmp { less, greater, too_close };

/// Raised when a comparison cannot be certified with the required margin.
struct comparison_too_close : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Certified three-way comparison: `less` means the true values satisfy
/// a < b with a gap of at least `margin` (default 2^-20), symmetrically for
/// `greater`; anything tighter is reported as too_close.
Cmp compare(const Interval& a, const Interval& b, double margin = 0x1p-20);

/// w_{n,k} = sum of (n+1 choose i) for i = 0..floor(n/k), exactly.
mpz_class w(std::int64_t n, std::int64_t k);

/// w_{n,k}^3 / 2^{n+1} as an exact rational.
mpq_class p_bound_exact(std::int64_t n, std::int64_t k);
/// Same value rounded to double.
double p_bound(std::int64_t n, std::int64_t k);

/// alpha_k = k^{1/k} (k/(k-1))^{(k-1)/k}, equivalently k / (k-1)^{(k-1)/k};
/// rigorous enclosure (exact [2, 2] at k = 2). Requires k >= 2.
Interval alpha_k(std::int64_t k);
/// Decimal rendering of alpha_k at the given number of significant digits.
std::string alpha_k_decimal(std::int64_t k, int digits = 22);

/// Enclosure of 2^{1/3}.
Interval cbrt2();

/// Smallest k >= 2 with alpha_k below the threshold; the default threshold
/// is 2^{1/3} (the paper's choice, giving 17). Every comparison along the
/// scan is certified with the module margin.
std::int64_t find_k(std::optional<double> threshold = {});

/// Geometric-envelope certificate for P(E_n) <= c^n.
struct TailCertificate {
    std::int64_t n0 = 0;
    std::int64_t k = 0;
    double c = 0.0;
    /// p_bound(n, k) <= c^n verified by exact rational comparison for every
    /// n in [n0, checked_through].
    std::int64_t checked_through = 0;
    /// alpha_k^3 / 2, the asymptotic growth rate; c exceeds its upper end.
    Interval rate;
    /// c^{n0} / (1 - c), enclosure of the geometric tail sum.
    Interval tail;
    /// Caveat carried into reports: the envelope is certified exactly on the
    /// checked range and asymptotically by rate < c; the intermediate range
    /// is not constant-tracked.
    std::string note;
};

/// Certify a c in (1/2, 1) with p_bound(n, k) <= c^n on [n0, n0 + 512] and
/// rate < c, and compute the geometric tail from n0. A caller-supplied c is
/// validated instead of chosen. When the check fails at n0, the error
/// message reports the smallest workable n0.
TailCertificate tail_and_c(std::int64_t n0, std::int64_t k, std::optional<double> c = {});

}  // namespace sumset::bounds
