#pragma once

#include <cstdint>

#include "sumset/core.hpp"

namespace sumset {

/// Counter-based deterministic generator. Stream t of seed s starts from
/// state mix64(s + GOLDEN * (t + 1)) and then takes standard SplitMix64
/// steps, so draws depend only on (seed, stream index) and are identical
/// across platforms and across any partitioning of the index range.
class TrialRng {
public:
    TrialRng(std::uint64_t seed, std::uint64_t stream)
        : state_(mix64(seed + kGolden * (stream + 1))) {}

    std::uint64_t next() {
        state_ += kGolden;
        return mix64(state_);
    }

    /// Uniform subset of [0, n]: each element independently with probability 1/2.
    SetWindow random_window(std::int64_t n) {
        SetWindow s(n);
        std::vector<std::uint64_t> words(s.word_count());
        for (auto& w : words) w = next();
        return SetWindow::from_words(n, std::move(words));
    }

private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

    static std::uint64_t mix64(std::uint64_t v) {
        v ^= v >> 30;
        v *= 0xbf58476d1ce4e5b9ULL;
        v ^= v >> 27;
        v *= 0x94d049bb133111ebULL;
        v ^= v >> 31;
        return v;
    }

    std::uint64_t state_;
};

}  // namespace sumset
