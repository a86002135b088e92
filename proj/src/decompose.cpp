#include "sumset/decompose.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <limits>
#include <stdexcept>

#include <omp.h>

namespace sumset {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::decomposable: return "decomposable";
        case Verdict::irreducible: return "irreducible";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

namespace {

using Words = std::vector<std::uint64_t>;

constexpr std::int64_t kMaxDecideWindow = 32768;
constexpr std::int64_t kNoMember = -1;

bool test_bit(const Words& w, std::int64_t i) {
    return (w[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1u;
}
void set_bit(Words& w, std::int64_t i) {
    w[static_cast<std::size_t>(i >> 6)] |= std::uint64_t{1} << (i & 63);
}
void clear_bit(Words& w, std::int64_t i) {
    w[static_cast<std::size_t>(i >> 6)] &= ~(std::uint64_t{1} << (i & 63));
}

// Branch-and-bound over positions 0..n. At each position the four
// membership branches (neither, Z only, Y only, both) are tried in that
// fixed order; any decomposition is reached along exactly one branch, so
// the search is complete and the first accepted leaf is the canonical
// witness. The running sumset S of the placed factors is final on the
// settled prefix: a pair summing to x is decided once the scan passes x.
//
// Flip accounting (budgeted mode): a new sum landing on a non-member pays
// one flip the moment the bit is set; a member passed uncovered pays one
// flip at pass time. The total equals |A △ S| exactly, so exceeding the
// budget prunes soundly. All other prunes below only cut subtrees that
// provably contain no witness, which preserves the canonical witness.
class Search {
public:
    Search(const SetWindow& a, const SearchConfig& cfg)
        : n_(a.length()),
          nwords_(a.word_count()),
          min_size_(cfg.min_size),
          budget_(cfg.budget),
          cap_(cfg.size_cap ? *cfg.size_cap : std::numeric_limits<int>::max()),
          node_limit_(cfg.node_limit),
          sym_(cfg.symmetry_breaking) {
        aw_.assign(a.words().begin(), a.words().end());
        const int used = static_cast<int>((n_ & 63) + 1);
        tail_mask_ = used == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << used) - 1;
        sw_.assign(nwords_, 0);
        yw_.assign(nwords_, 0);
        zw_.assign(nwords_, 0);
        shift_buf_.assign(nwords_, 0);
        bad_.assign(nwords_, 0);
        fy_.assign(nwords_, 0);
        fz_.assign(nwords_, 0);
        u_.assign(nwords_, 0);
        r_.assign(nwords_, 0);
        next_member_.assign(static_cast<std::size_t>(n_) + 2, kNoMember);
        for (std::int64_t i = n_; i >= 0; --i)
            next_member_[static_cast<std::size_t>(i)] =
                test_bit(aw_, i) ? i : next_member_[static_cast<std::size_t>(i) + 1];
        changes_.reserve(64);
    }

    DecideResult run() {
        DecideResult res;
        const bool found = dfs(0);
        res.nodes = nodes_;
        if (found) {
            res.verdict = Verdict::decomposable;
            BudgetedWitness w;
            w.decomposition.y = SetWindow::from_words(n_, yw_);
            w.decomposition.z = SetWindow::from_words(n_, zw_);
            w.a_prime = SetWindow::from_words(n_, sw_);
            for (std::int64_t i = 0; i <= n_; ++i)
                if (test_bit(aw_, i) != test_bit(sw_, i)) w.flips.push_back(i);
            res.witness = std::move(w);
        } else {
            res.verdict = limit_hit_ ? Verdict::inconclusive : Verdict::irreducible;
        }
        return res;
    }

private:
    bool dfs(std::int64_t x) {
        if (x > n_) return ycount_ >= min_size_ && zcount_ >= min_size_;
        for (int branch = 0; branch < 4; ++branch) {
            const bool py = branch == 2 || branch == 3;
            const bool pz = branch == 1 || branch == 3;
            if (!branch_allowed(x, py, pz)) continue;
            ++nodes_;
            if (node_limit_ && nodes_ > *node_limit_) {
                limit_hit_ = true;
                return false;
            }
            if (try_branch(x, py, pz)) return true;
            if (limit_hit_) return false;
        }
        return false;
    }

    bool branch_allowed(std::int64_t x, bool py, bool pz) {
        if (py && ycount_ >= cap_) return false;
        if (pz && zcount_ >= cap_) return false;
        // min Y <= min Z: the first placement overall must touch Y.
        if (sym_ && pz && !py && ycount_ == 0 && zcount_ == 0) return false;
        if (!(py || pz)) return true;
        if (budget_ - flips_ > 0) return true;
        // No flips left: the minimum of the final sumset is pinned to the
        // first remaining member of A (or absent), so first placements that
        // cannot realize that minimum are dead.
        const std::int64_t mstar = next_member_[static_cast<std::size_t>(x)];
        if (ycount_ == 0 && zcount_ == 0) {
            if (py && pz) return mstar == kNoMember ? 2 * x > n_ : 2 * x == mstar;
            // Single-side first placement; the other side starts past x.
            if (mstar == kNoMember) return x > 0;
            return 2 * x + 1 <= mstar;
        }
        if (zcount_ == 0 && pz) {
            const std::int64_t first_sum = miny_ + x;
            return mstar == kNoMember ? first_sum > n_ : first_sum == mstar;
        }
        if (ycount_ == 0 && py) {
            const std::int64_t first_sum = minz_ + x;
            return mstar == kNoMember ? first_sum > n_ : first_sum == mstar;
        }
        return true;
    }

    bool try_branch(std::int64_t x, bool py, bool pz) {
        const std::size_t mark = changes_.size();
        const std::int64_t flips0 = flips_;
        const std::int64_t miny0 = miny_, minz0 = minz_;
        bool placed_y = false, placed_z = false;
        bool ok = true;
        if (py) {
            placed_y = true;
            set_bit(yw_, x);
            if (ycount_++ == 0) miny_ = x;
            ok = apply_sums(zw_, x);
        }
        if (ok && pz) {
            placed_z = true;
            set_bit(zw_, x);
            if (zcount_++ == 0) minz_ = x;
            ok = apply_sums(yw_, x);
        }
        if (ok && test_bit(aw_, x) && !test_bit(sw_, x)) ok = ++flips_ <= budget_;
        if (ok) ok = prune_subtree(x, py || pz);
        const bool found = ok && dfs(x + 1);
        if (!found) {
            for (std::size_t i = changes_.size(); i-- > mark;)
                sw_[changes_[i].word] = changes_[i].old_value;
            changes_.resize(mark);
            flips_ = flips0;
            if (placed_y) {
                clear_bit(yw_, x);
                --ycount_;
                miny_ = miny0;
            }
            if (placed_z) {
                clear_bit(zw_, x);
                --zcount_;
                minz_ = minz0;
            }
        }
        return found;
    }

    // OR (other << x) ∩ [0, n] into S, paying for newly covered non-members.
    bool apply_sums(const Words& other, std::int64_t x) {
        shift_up(other, x, shift_buf_);
        for (std::size_t j = static_cast<std::size_t>(x >> 6); j < nwords_; ++j) {
            const std::uint64_t fresh = shift_buf_[j] & ~sw_[j];
            if (!fresh) continue;
            changes_.push_back({j, sw_[j]});
            flips_ += std::popcount(fresh & ~aw_[j]);
            sw_[j] |= fresh;
        }
        return flips_ <= budget_;
    }

    bool prune_subtree(std::int64_t x, bool placed) {
        const std::int64_t remaining = n_ - x;
        if (ycount_ + remaining < min_size_ || zcount_ + remaining < min_size_) return false;
        // Horizon: every future sum is at least min(min Y, min Z, x+1) + x+1,
        // so uncovered members below that line must all be abandoned.
        {
            const std::int64_t base =
                std::min({ycount_ ? miny_ : x + 1, zcount_ ? minz_ : x + 1, x + 1});
            const std::int64_t h = std::min(base + x + 1, n_ + 1);
            if (h > x + 1) {
                const std::int64_t doomed = count_uncovered_members(x + 1, h);
                if (flips_ + doomed > budget_) return false;
            }
        }
        if (budget_ - flips_ > 0) return true;
        const std::int64_t mstar = next_member_[static_cast<std::size_t>(x) + 1];
        if (ycount_ == 0 && zcount_ == 0) {
            if (mstar != kNoMember && 2 * (x + 1) > mstar) return false;
        } else if (zcount_ == 0) {
            if (mstar != kNoMember) {
                if (miny_ + x + 1 > mstar) return false;
            } else {
                // Future Z elements must push every sum past n.
                const std::int64_t lo = std::max(x + 1, n_ - miny_ + 1);
                const std::int64_t avail = lo > n_ ? 0 : n_ - lo + 1;
                if (avail < min_size_) return false;
            }
        } else if (ycount_ == 0) {
            if (mstar != kNoMember) {
                if (minz_ + x + 1 > mstar) return false;
            } else {
                const std::int64_t lo = std::max(x + 1, n_ - minz_ + 1);
                const std::int64_t avail = lo > n_ ? 0 : n_ - lo + 1;
                if (avail < min_size_) return false;
            }
        }
        if (placed) return feasibility_prune(x);
        return true;
    }

    // Exact-mode lookahead (no flips left). Future placements may only
    // produce sums on members or already-set bits, which pins down which
    // elements are still placeable and which members are still coverable.
    bool feasibility_prune(std::int64_t x) {
        for (std::size_t j = 0; j < nwords_; ++j) bad_[j] = ~aw_[j] & ~sw_[j];
        bad_.back() &= tail_mask_;
        mask_from(fy_, x + 1);
        mask_from(fz_, x + 1);
        if (ycount_ >= cap_) std::fill(fy_.begin(), fy_.end(), 0);
        if (zcount_ >= cap_) std::fill(fz_.begin(), fz_.end(), 0);
        subtract_shifted_down(fz_, yw_, bad_);  // z incompatible with some placed y
        subtract_shifted_down(fy_, zw_, bad_);
        if (ycount_ + popcount_words(fy_) < min_size_) return false;
        if (zcount_ + popcount_words(fz_) < min_size_) return false;
        // Uncovered members ahead must be reachable as placed+future sums.
        bool have_u = false;
        for (std::size_t j = 0; j < nwords_; ++j) {
            u_[j] = aw_[j] & ~sw_[j];
            have_u |= u_[j] != 0;
        }
        if (!have_u) return true;
        mask_range_inplace(u_, x + 1, n_ + 1);
        if (all_zero(u_)) return true;
        std::copy(sw_.begin(), sw_.end(), r_.begin());
        if (covered(u_, r_)) return true;
        or_sumset_into(r_, yw_, fz_);
        if (covered(u_, r_)) return true;
        or_sumset_into(r_, zw_, fy_);
        if (covered(u_, r_)) return true;
        or_sumset_into(r_, fy_, fz_);
        return covered(u_, r_);
    }

    bool covered(const Words& u, const Words& r) const {
        for (std::size_t j = 0; j < nwords_; ++j)
            if (u[j] & ~r[j]) return false;
        return true;
    }

    // dst |= (right << e) for every element e of left, truncated at n.
    void or_sumset_into(Words& dst, const Words& left, const Words& right) {
        for (std::size_t j = 0; j < nwords_; ++j) {
            std::uint64_t w = left[j];
            while (w) {
                const std::int64_t e = static_cast<std::int64_t>(j << 6) + std::countr_zero(w);
                w &= w - 1;
                const std::size_t ws = static_cast<std::size_t>(e >> 6);
                const int bs = static_cast<int>(e & 63);
                for (std::size_t i = 0; i + ws < nwords_; ++i) {
                    dst[i + ws] |= right[i] << bs;
                    if (bs && i + ws + 1 < nwords_) dst[i + ws + 1] |= right[i] >> (64 - bs);
                }
            }
        }
        dst.back() &= tail_mask_;
    }

    // dst &= ~(bad >> e) for every element e of elems.
    void subtract_shifted_down(Words& dst, const Words& elems, const Words& bad) {
        for (std::size_t j = 0; j < nwords_; ++j) {
            std::uint64_t w = elems[j];
            while (w) {
                const std::int64_t e = static_cast<std::int64_t>(j << 6) + std::countr_zero(w);
                w &= w - 1;
                const std::size_t ws = static_cast<std::size_t>(e >> 6);
                const int bs = static_cast<int>(e & 63);
                for (std::size_t i = 0; i + ws < nwords_; ++i) {
                    std::uint64_t down = bad[i + ws] >> bs;
                    if (bs && i + ws + 1 < nwords_) down |= bad[i + ws + 1] << (64 - bs);
                    dst[i] &= ~down;
                }
            }
        }
    }

    void shift_up(const Words& src, std::int64_t x, Words& dst) const {
        std::fill(dst.begin(), dst.end(), 0);
        const std::size_t ws = static_cast<std::size_t>(x >> 6);
        const int bs = static_cast<int>(x & 63);
        for (std::size_t i = 0; i + ws < nwords_; ++i) {
            const std::uint64_t w = src[i];
            if (!w) continue;
            dst[i + ws] |= w << bs;
            if (bs && i + ws + 1 < nwords_) dst[i + ws + 1] |= w >> (64 - bs);
        }
        dst.back() &= tail_mask_;
    }

    void mask_from(Words& dst, std::int64_t lo) const {
        std::fill(dst.begin(), dst.end(), ~std::uint64_t{0});
        dst.back() &= tail_mask_;
        mask_range_inplace(dst, lo, n_ + 1);
    }

    // Keep only bits in [lo, hi).
    static void mask_range_inplace(Words& w, std::int64_t lo, std::int64_t hi) {
        const std::int64_t bits = static_cast<std::int64_t>(w.size()) * 64;
        lo = std::clamp<std::int64_t>(lo, 0, bits);
        hi = std::clamp<std::int64_t>(hi, 0, bits);
        for (std::int64_t j = 0; j < static_cast<std::int64_t>(w.size()); ++j) {
            const std::int64_t wlo = j * 64, whi = wlo + 64;
            if (whi <= lo || wlo >= hi) {
                w[static_cast<std::size_t>(j)] = 0;
                continue;
            }
            std::uint64_t m = ~std::uint64_t{0};
            if (lo > wlo) m &= ~std::uint64_t{0} << (lo - wlo);
            if (hi < whi) m &= (~std::uint64_t{0}) >> (whi - hi);
            w[static_cast<std::size_t>(j)] &= m;
        }
    }

    static std::int64_t popcount_words(const Words& w) {
        std::int64_t c = 0;
        for (auto v : w) c += std::popcount(v);
        return c;
    }

    static bool all_zero(const Words& w) {
        for (auto v : w)
            if (v) return false;
        return true;
    }

    // |{p in [lo, hi) : p in A, p not in S}|
    std::int64_t count_uncovered_members(std::int64_t lo, std::int64_t hi) const {
        std::int64_t c = 0;
        for (std::size_t j = static_cast<std::size_t>(lo >> 6); j < nwords_; ++j) {
            const std::int64_t wlo = static_cast<std::int64_t>(j) * 64;
            if (wlo >= hi) break;
            std::uint64_t m = aw_[j] & ~sw_[j];
            if (lo > wlo) m &= ~std::uint64_t{0} << (lo - wlo);
            if (hi < wlo + 64) m &= (~std::uint64_t{0}) >> (wlo + 64 - hi);
            c += std::popcount(m);
        }
        return c;
    }

    struct Change {
        std::size_t word;
        std::uint64_t old_value;
    };

    const std::int64_t n_;
    const std::size_t nwords_;
    const int min_size_;
    const std::int64_t budget_;
    const std::int64_t cap_;
    const std::optional<std::uint64_t> node_limit_;
    const bool sym_;

    Words aw_, sw_, yw_, zw_;
    Words shift_buf_, bad_, fy_, fz_, u_, r_;
    std::uint64_t tail_mask_ = 0;
    std::vector<std::int64_t> next_member_;
    std::vector<Change> changes_;
    std::int64_t flips_ = 0;
    std::int64_t ycount_ = 0, zcount_ = 0;
    std::int64_t miny_ = 0, minz_ = 0;
    std::uint64_t nodes_ = 0;
    bool limit_hit_ = false;
};

void validate_config(const SetWindow& a, const SearchConfig& cfg) {
    if (a.length() > kMaxDecideWindow)
        throw std::invalid_argument("decide: window longer than supported maximum");
    if (cfg.min_size < 1) throw std::invalid_argument("SearchConfig: min_size must be >= 1");
    if (cfg.budget < 0 || cfg.budget > a.bit_size())
        throw std::invalid_argument("SearchConfig: budget must lie in [0, n+1]");
    if (cfg.size_cap && *cfg.size_cap < cfg.min_size)
        throw std::invalid_argument("SearchConfig: size_cap below min_size");
}

}  // namespace

DecideResult decide_budgeted(const SetWindow& a, const SearchConfig& config) {
    validate_config(a, config);
    DecideResult res;
    if (config.min_size > a.bit_size()) {
        res.verdict = Verdict::irreducible;
        return res;
    }
    if (config.size_cap) {
        // |Y + Z| <= |Y|*|Z|, so a window with too many members is hopeless.
        const std::int64_t cap = *config.size_cap;
        if (a.cardinality() > cap * cap + config.budget) {
            res.verdict = Verdict::irreducible;
            return res;
        }
    }
    Search search(a, config);
    return search.run();
}

DecideResult decide_exact(const SetWindow& a, SearchConfig config) {
    config.budget = 0;
    return decide_budgeted(a, config);
}

Verdict event_verdict(const SetWindow& x, std::int64_t n, std::int64_t k,
                      std::optional<std::uint64_t> node_limit) {
    if (k < 1) throw std::invalid_argument("is_in_event: k must be >= 1");
    if (x.length() > n) throw std::invalid_argument("is_in_event: X exceeds window [0, n]");
    const std::int64_t cap = n / k;
    if (cap < 1) return Verdict::irreducible;  // no factor sets fit under the cap
    SearchConfig cfg;
    cfg.min_size = 1;
    cfg.budget = cap;
    cfg.size_cap = static_cast<int>(cap);
    cfg.node_limit = node_limit;
    return decide_budgeted(x.length() == n ? x : x.rewindow(n), cfg).verdict;
}

bool is_in_event(const SetWindow& x, std::int64_t n, std::int64_t k) {
    return event_verdict(x, n, k, std::nullopt) == Verdict::decomposable;
}

namespace {

// Tight enumeration core shared by the serial and parallel oracles:
// marks every truncated sumset reachable from factor masks in [ylo, yhi).
void oracle_mark_range(std::int64_t n, int min_size, int size_cap,
                       std::uint32_t ylo, std::uint32_t yhi,
                       std::vector<std::uint64_t>& marks) {
    const std::uint32_t space = std::uint32_t{1} << (n + 1);
    const std::uint32_t window = space - 1;
    for (std::uint32_t ymask = ylo; ymask < yhi; ++ymask) {
        const int yc = std::popcount(ymask);
        if (yc < min_size || yc > size_cap) continue;
        // z >= y lexicographically; the sumset is symmetric in its factors.
        for (std::uint32_t zmask = ymask; zmask < space; ++zmask) {
            const int zc = std::popcount(zmask);
            if (zc < min_size || zc > size_cap) continue;
            std::uint32_t sum = 0;
            std::uint32_t y = ymask;
            while (y) {
                sum |= (zmask << std::countr_zero(y)) & window;
                y &= y - 1;
            }
            marks[sum >> 6] |= std::uint64_t{1} << (sum & 63);
        }
    }
}

OracleResult oracle_finish(std::int64_t n, std::vector<std::uint64_t> marks) {
    OracleResult res;
    res.n = n;
    const std::size_t space = std::size_t{1} << (n + 1);
    res.achievable.assign(space, false);
    for (std::size_t m = 0; m < space; ++m)
        if ((marks[m >> 6] >> (m & 63)) & 1u) {
            res.achievable[m] = true;
            ++res.count;
        }
    return res;
}

void oracle_validate(std::int64_t n, int min_size) {
    if (n < 0 || n > 13)
        throw std::invalid_argument("oracle_decomposable_masks: refuses n > 13 (4^(n+1) pairs)");
    if (min_size < 1) throw std::invalid_argument("oracle_decomposable_masks: min_size must be >= 1");
}

}  // namespace

OracleResult oracle_decomposable_masks_serial(std::int64_t n, int min_size,
                                              std::optional<int> size_cap) {
    oracle_validate(n, min_size);
    const int cap = size_cap ? *size_cap : std::numeric_limits<int>::max();
    const std::uint32_t space = std::uint32_t{1} << (n + 1);
    std::vector<std::uint64_t> marks((space + 63) / 64, 0);
    oracle_mark_range(n, min_size, cap, 0, space, marks);
    return oracle_finish(n, std::move(marks));
}

OracleResult oracle_decomposable_masks(std::int64_t n, int min_size,
                                       std::optional<int> size_cap, int threads) {
    oracle_validate(n, min_size);
    const int cap = size_cap ? *size_cap : std::numeric_limits<int>::max();
    const std::uint32_t space = std::uint32_t{1} << (n + 1);
    const std::size_t mwords = (space + 63) / 64;
    std::vector<std::uint64_t> marks(mwords, 0);
    const int workers = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel num_threads(workers)
    {
        std::vector<std::uint64_t> local(mwords, 0);
#pragma omp for schedule(dynamic, 64)
        for (std::int64_t ymask = 0; ymask < static_cast<std::int64_t>(space); ++ymask)
            oracle_mark_range(n, min_size, cap, static_cast<std::uint32_t>(ymask),
                              static_cast<std::uint32_t>(ymask) + 1, local);
#pragma omp critical
        for (std::size_t j = 0; j < mwords; ++j) marks[j] |= local[j];
    }
    return oracle_finish(n, std::move(marks));
}

namespace {

void census_validate(std::int64_t n, bool force) {
    if (n < 0) throw std::invalid_argument("census: n must be >= 0");
    if (n > 16 && !force)
        throw std::invalid_argument(
            "census: exhaustive mode is limited to n <= 16; "
            "use montecarlo sampling (sample decide) for larger windows");
    if (n > 30) throw std::invalid_argument("census: mask space too large even when forced");
}

CensusResult census_finish(std::int64_t n, std::uint64_t decomposable,
                           std::uint64_t inconclusive) {
    CensusResult res;
    res.n = n;
    res.total = std::uint64_t{1} << (n + 1);
    res.decomposable = decomposable;
    res.inconclusive = inconclusive;
    res.fraction = static_cast<double>(decomposable) / static_cast<double>(res.total);
    return res;
}

}  // namespace

// OpenMP kernel over the mask space; worker counts only affect wall time
// because the per-mask verdicts merge by addition.
CensusResult census(std::int64_t n, const SearchConfig& config, bool force) {
    census_validate(n, force);
    std::uint64_t decomposable = 0, inconclusive = 0;
    const std::int64_t total = std::int64_t{1} << (n + 1);
    const int workers = config.threads > 0 ? config.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 64) num_threads(workers) \
    reduction(+ : decomposable, inconclusive)
    for (std::int64_t mask = 0; mask < total; ++mask) {
        SetWindow a = SetWindow::from_words(n, {static_cast<std::uint64_t>(mask)});
        const DecideResult r = decide_budgeted(a, config);
        if (r.verdict == Verdict::decomposable)
            ++decomposable;
        else if (r.verdict == Verdict::inconclusive)
            ++inconclusive;
    }
    return census_finish(n, decomposable, inconclusive);
}

// Plain-loop reference the parallel kernel is tested against.
CensusResult census_serial(std::int64_t n, const SearchConfig& config, bool force) {
    census_validate(n, force);
    std::uint64_t decomposable = 0, inconclusive = 0;
    const std::int64_t total = std::int64_t{1} << (n + 1);
    for (std::int64_t mask = 0; mask < total; ++mask) {
        SetWindow a = SetWindow::from_words(n, {static_cast<std::uint64_t>(mask)});
        const DecideResult r = decide_budgeted(a, config);
        if (r.verdict == Verdict::decomposable)
            ++decomposable;
        else if (r.verdict == Verdict::inconclusive)
            ++inconclusive;
    }
    return census_finish(n, decomposable, inconclusive);
}

}  // namespace sumset
