#include "sumset/core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace sumset {

namespace {

std::size_t words_for(std::int64_t n) {
    return static_cast<std::size_t>((n >> 6) + 1);
}

// Zero out bits above n in the last word.
void clear_tail(std::vector<std::uint64_t>& words, std::int64_t n) {
    const int used = static_cast<int>((n & 63) + 1);
    if (used < 64) words.back() &= (std::uint64_t{1} << used) - 1;
}

}  // namespace

SetWindow::SetWindow(std::int64_t n) : n_(n) {
    if (n < 0) throw std::invalid_argument("SetWindow: negative window length");
    words_.assign(words_for(n), 0);
}

SetWindow SetWindow::full(std::int64_t n) {
    SetWindow s(n);
    s.words_.assign(words_for(n), ~std::uint64_t{0});
    clear_tail(s.words_, n);
    return s;
}

SetWindow SetWindow::of(std::int64_t n, std::initializer_list<std::int64_t> elems) {
    SetWindow s(n);
    for (auto e : elems) s.set(e);
    return s;
}

SetWindow SetWindow::from_elements(std::int64_t n, std::span<const std::int64_t> elems) {
    SetWindow s(n);
    for (auto e : elems) s.set(e);
    return s;
}

SetWindow SetWindow::from_words(std::int64_t n, std::vector<std::uint64_t> words) {
    SetWindow s(n);
    if (words.size() != s.words_.size())
        throw std::invalid_argument("SetWindow::from_words: word count mismatch");
    s.words_ = std::move(words);
    clear_tail(s.words_, n);
    return s;
}

void SetWindow::set(std::int64_t i, bool value) {
    check_index(i);
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    auto& w = words_[static_cast<std::size_t>(i >> 6)];
    if (value)
        w |= mask;
    else
        w &= ~mask;
}

std::int64_t SetWindow::cardinality() const {
    std::int64_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
}

std::int64_t SetWindow::min_element() const {
    for (std::size_t j = 0; j < words_.size(); ++j)
        if (words_[j]) return static_cast<std::int64_t>(j << 6) + std::countr_zero(words_[j]);
    return -1;
}

std::int64_t SetWindow::max_element() const {
    for (std::size_t j = words_.size(); j-- > 0;)
        if (words_[j]) return static_cast<std::int64_t>(j << 6) + 63 - std::countl_zero(words_[j]);
    return -1;
}

std::vector<std::int64_t> SetWindow::elements() const {
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(cardinality()));
    for (std::size_t j = 0; j < words_.size(); ++j) {
        std::uint64_t w = words_[j];
        while (w) {
            out.push_back(static_cast<std::int64_t>(j << 6) + std::countr_zero(w));
            w &= w - 1;
        }
    }
    return out;
}

std::int64_t SetWindow::count_prefix(std::int64_t m) const {
    check_index(m);
    const std::size_t last = static_cast<std::size_t>(m >> 6);
    std::int64_t c = 0;
    for (std::size_t j = 0; j < last; ++j) c += std::popcount(words_[j]);
    const int used = static_cast<int>((m & 63) + 1);
    const std::uint64_t mask = used == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << used) - 1;
    return c + std::popcount(words_[last] & mask);
}

SetWindow SetWindow::rewindow(std::int64_t m) const {
    if (m < n_ && max_element() > m)
        throw std::invalid_argument("SetWindow::rewindow: member above new window end");
    SetWindow s(m);
    const std::size_t copy = std::min(s.words_.size(), words_.size());
    std::copy_n(words_.begin(), copy, s.words_.begin());
    clear_tail(s.words_, m);
    return s;
}

SetWindow SetWindow::truncated(std::int64_t m) const {
    if (m > n_) throw std::invalid_argument("SetWindow::truncated: window can only shrink");
    SetWindow s(m);
    std::copy_n(words_.begin(), s.words_.size(), s.words_.begin());
    clear_tail(s.words_, m);
    return s;
}

SetWindow SetWindow::shifted(std::int64_t d, std::int64_t m) const {
    if (d < 0) throw std::invalid_argument("SetWindow::shifted: negative shift");
    SetWindow s(m);
    const std::size_t word_shift = static_cast<std::size_t>(d >> 6);
    const int bit_shift = static_cast<int>(d & 63);
    for (std::size_t j = 0; j + word_shift < s.words_.size() && j < words_.size(); ++j) {
        const std::uint64_t w = words_[j];
        s.words_[j + word_shift] |= w << bit_shift;
        if (bit_shift && j + word_shift + 1 < s.words_.size())
            s.words_[j + word_shift + 1] |= w >> (64 - bit_shift);
    }
    clear_tail(s.words_, m);
    return s;
}

std::string SetWindow::to_string() const {
    std::string out = "{";
    bool first = true;
    for (auto e : elements()) {
        if (!first) out += ", ";
        out += std::to_string(e);
        first = false;
    }
    return out + "}";
}

SetWindow sumset_window(const SetWindow& y, const SetWindow& z, std::int64_t n) {
    if (y.length() > n || z.length() > n)
        throw std::invalid_argument("sumset_window: factor window exceeds result window");
    // OR of Z shifted by each member of Y, truncated at n.
    auto zw = z.words();
    std::vector<std::uint64_t> acc(words_for(n), 0);
    for (std::size_t j = 0; j < y.word_count(); ++j) {
        std::uint64_t w = y.words()[j];
        while (w) {
            const std::int64_t yv = static_cast<std::int64_t>(j << 6) + std::countr_zero(w);
            w &= w - 1;
            const std::size_t word_shift = static_cast<std::size_t>(yv >> 6);
            const int bit_shift = static_cast<int>(yv & 63);
            for (std::size_t i = 0; i < zw.size() && i + word_shift < acc.size(); ++i) {
                acc[i + word_shift] |= zw[i] << bit_shift;
                if (bit_shift && i + word_shift + 1 < acc.size())
                    acc[i + word_shift + 1] |= zw[i] >> (64 - bit_shift);
            }
        }
    }
    return SetWindow::from_words(n, std::move(acc));
}

std::int64_t sym_diff_count(const SetWindow& a, const SetWindow& b) {
    if (a.length() != b.length())
        throw std::invalid_argument("sym_diff_count: mismatched window lengths");
    std::int64_t c = 0;
    for (std::size_t j = 0; j < a.word_count(); ++j)
        c += std::popcount(a.words()[j] ^ b.words()[j]);
    return c;
}

CountingProfile z_alpha_profile(const SetWindow& s, double alpha,
                                std::span<const std::int64_t> checkpoints,
                                double tolerance) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::invalid_argument("z_alpha_profile: alpha must lie in (0, 1]");
    CountingProfile p;
    p.alpha = alpha;
    p.tolerance = tolerance;
    for (auto n : checkpoints) {
        if (n < 1 || n > s.length())
            throw std::invalid_argument("z_alpha_profile: checkpoint outside [1, n]");
        CountingProfile::Sample sample;
        sample.n = n;
        sample.count = s.count_prefix(n);
        sample.ratio = static_cast<double>(sample.count) /
                       std::pow(static_cast<double>(n), alpha);
        p.samples.push_back(sample);
    }
    p.last_below_tolerance = !p.samples.empty() && p.samples.back().ratio < tolerance;
    return p;
}

std::int64_t pattern_frequency(const SetWindow& a, std::int64_t pattern_length,
                               const SetWindow& f, std::int64_t n) {
    if (pattern_length < 1 || pattern_length > 64)
        throw std::invalid_argument("pattern_frequency: pattern length must be in [1, 64]");
    if (f.max_element() >= pattern_length)
        throw std::invalid_argument("pattern_frequency: pattern exceeds its interval");
    if (n < 0 || n + pattern_length > a.bit_size())
        throw std::invalid_argument("pattern_frequency: shifts run past A's window");

    // Bit-sliced match: for each offset b in the interval, the shifts j with
    // A[j + b] equal to F[b] form one mask; AND over offsets leaves matches.
    SetWindow matches = SetWindow::full(n);
    std::vector<std::uint64_t> acc(matches.word_count());
    std::copy_n(matches.words().begin(), acc.size(), acc.begin());
    for (std::int64_t b = 0; b < pattern_length; ++b) {
        const bool want = b <= f.length() && f.test(b);
        for (std::size_t j = 0; j < acc.size(); ++j) {
            const std::int64_t base = static_cast<std::int64_t>(j << 6) + b;
            // A >> b restricted to shift positions, one word at a time.
            const std::size_t wj = static_cast<std::size_t>(base >> 6);
            const int off = static_cast<int>(base & 63);
            std::uint64_t slice = a.words()[wj] >> off;
            if (off && wj + 1 < a.word_count()) slice |= a.words()[wj + 1] << (64 - off);
            acc[j] &= want ? slice : ~slice;
        }
    }
    std::int64_t count = 0;
    for (std::size_t j = 0; j < acc.size(); ++j) {
        std::uint64_t m = acc[j];
        if (j + 1 == acc.size()) {
            const int used = static_cast<int>((n & 63) + 1);
            if (used < 64) m &= (std::uint64_t{1} << used) - 1;
        }
        count += std::popcount(m);
    }
    return count;
}

}  // namespace sumset
