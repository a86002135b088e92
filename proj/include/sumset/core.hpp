#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sumset {

/// A finite integer-set window: a subset of [0, n] stored as an (n+1)-bit
/// membership vector packed into 64-bit words. Index i corresponds to the
/// integer i. Values are immutable in spirit: operations return new windows,
/// and set() is only meant for construction. Bits above n are kept zero so
/// that word-wise equality and popcounts are exact.
class SetWindow {
public:
    SetWindow() : SetWindow(0) {}
    explicit SetWindow(std::int64_t n);

    static SetWindow full(std::int64_t n);
    static SetWindow of(std::int64_t n, std::initializer_list<std::int64_t> elems);
    static SetWindow from_elements(std::int64_t n, std::span<const std::int64_t> elems);
    /// Adopt a packed word vector (must already be sized for n + 1 bits);
    /// bits above n are cleared.
    static SetWindow from_words(std::int64_t n, std::vector<std::uint64_t> words);

    /// Window endpoint n; the window is the inclusive range [0, n].
    std::int64_t length() const { return n_; }
    /// Number of addressable bits, n + 1.
    std::int64_t bit_size() const { return n_ + 1; }

    bool test(std::int64_t i) const {
        check_index(i);
        return (words_[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1u;
    }
    void set(std::int64_t i, bool value = true);

    std::int64_t cardinality() const;
    bool empty() const { return cardinality() == 0; }
    /// Smallest member, or -1 for the empty set.
    std::int64_t min_element() const;
    /// Largest member, or -1 for the empty set.
    std::int64_t max_element() const;
    std::vector<std::int64_t> elements() const;

    /// |S ∩ [0, m]| for m ≤ n.
    std::int64_t count_prefix(std::int64_t m) const;

    /// Same set re-windowed to [0, m]. Growing a window never drops members;
    /// shrinking requires every member to fit (usage error otherwise).
    SetWindow rewindow(std::int64_t m) const;
    /// Restriction to [0, m] ≤ n, members above m dropped.
    SetWindow truncated(std::int64_t m) const;
    /// {a + d : a ∈ S, a + d ≤ m} as a window over [0, m].
    SetWindow shifted(std::int64_t d, std::int64_t m) const;

    std::span<const std::uint64_t> words() const { return words_; }
    std::size_t word_count() const { return words_.size(); }

    bool operator==(const SetWindow&) const = default;

    /// "{0, 2, 5}" rendering, for diagnostics.
    std::string to_string() const;

private:
    void check_index(std::int64_t i) const {
        if (i < 0 || i > n_)
            throw std::out_of_range("SetWindow: index " + std::to_string(i) +
                                    " outside window [0, " + std::to_string(n_) + "]");
    }

    std::int64_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Truncated sumset (Y + Z) ∩ [0, n]: the OR of Z's bit-vector shifted by
/// each member of Y. Factors may have any window length ≤ n.
SetWindow sumset_window(const SetWindow& y, const SetWindow& z, std::int64_t n);

/// |A △ B| within the common window. Mismatched lengths are a usage error.
std::int64_t sym_diff_count(const SetWindow& a, const SetWindow& b);

/// Normalized counting statistics for membership of S in the family Z_alpha
/// (sets whose counting function is o(n^alpha)).
struct CountingProfile {
    struct Sample {
        std::int64_t n = 0;
        std::int64_t count = 0;   // |S(n)|
        double ratio = 0.0;       // |S(n)| / n^alpha
    };
    double alpha = 1.0;
    std::vector<Sample> samples;
    double tolerance = 0.0;
    /// Whether the last ratio falls below the caller's tolerance.
    bool last_below_tolerance = false;
};

/// Counting profile of S at the given checkpoints (each in [1, n]; n = 0 has
/// no defined ratio). Requires 0 < alpha ≤ 1.
CountingProfile z_alpha_profile(const SetWindow& s, double alpha,
                                std::span<const std::int64_t> checkpoints,
                                double tolerance);

/// |{j ∈ [0, n] : A ∩ (I + j) = F + j}| where I = [0, pattern_length - 1] and
/// F ⊆ I. Requires n + pattern_length ≤ bit_size(A) so every shifted block
/// lies inside A's window. For each j exactly one F matches, so the counts
/// over all 2^pattern_length patterns sum to n + 1.
std::int64_t pattern_frequency(const SetWindow& a, std::int64_t pattern_length,
                               const SetWindow& f, std::int64_t n);

}  // namespace sumset
