#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sumset/core.hpp"

namespace sumset {

/// Parameters shared by the exact and budgeted deciders.
///
/// min_size is the lower bound on |Y| and |Z| (2 for nontrivial sumsets,
/// 1 for the bounded event E_n). budget is the number of tolerated flips
/// |A △ A'|. size_cap, when present, bounds |Y| and |Z| from above.
/// node_limit is a search-effort guard: exceeding it yields the explicit
/// "inconclusive" verdict, never an irreducibility claim.
struct SearchConfig {
    int min_size = 2;
    std::int64_t budget = 0;
    std::optional<int> size_cap;
    std::optional<std::uint64_t> node_limit;
    int threads = 0;  // census/montecarlo worker count; 0 = library default
    // Test hook: disabling the min Y <= min Z rule must not change verdicts.
    bool symmetry_breaking = true;
};

enum class Verdict { decomposable, irreducible, inconclusive };

const char* to_string(Verdict v);

struct Decomposition {
    SetWindow y;
    SetWindow z;
};

/// Witness for budgeted decomposability: A' = (Y + Z) ∩ [0, n] with
/// |A △ A'| ≤ budget; flips lists the positions of A △ A'.
struct BudgetedWitness {
    SetWindow a_prime;
    Decomposition decomposition;
    std::vector<std::int64_t> flips;
};

struct DecideResult {
    Verdict verdict = Verdict::inconclusive;
    std::optional<BudgetedWitness> witness;
    std::uint64_t nodes = 0;
};

/// Exact window decomposability: is there Y, Z ⊆ [0, n] with the configured
/// sizes and (Y + Z) ∩ [0, n] = A? The budget in `config` is ignored (forced
/// to zero). A missing witness is a definitive window-irreducible verdict
/// unless the node limit tripped.
///
/// Search order (also the witness-determinism contract): positions are
/// scanned 0..n; at each position the four membership branches are tried in
/// the fixed order (neither, Z only, Y only, both); symmetry breaking keeps
/// min Y ≤ min Z; the first complete witness is returned.
DecideResult decide_exact(const SetWindow& a, SearchConfig config = {});

/// Perturbation-budgeted decomposability: a witness exists iff some A' with
/// |A △ A'| ≤ budget is exactly decomposable under the size constraints.
/// With budget = 0 this coincides with decide_exact, witness included.
DecideResult decide_budgeted(const SetWindow& a, const SearchConfig& config);

/// Membership in the event E_n: X is within ⌊n/k⌋ flips of a truncated
/// sumset whose factors each have between 1 and ⌊n/k⌋ elements.
bool is_in_event(const SetWindow& x, std::int64_t n, std::int64_t k);

/// is_in_event with an effort guard, for samplers that must report
/// inconclusive runs separately.
Verdict event_verdict(const SetWindow& x, std::int64_t n, std::int64_t k,
                      std::optional<std::uint64_t> node_limit);

/// Ground-truth oracle: every achievable truncated sumset mask over [0, n],
/// by full enumeration of the 4^(n+1) factor pairs. Refuses n > 13.
struct OracleResult {
    std::int64_t n = 0;
    std::vector<bool> achievable;  // indexed by membership mask, 2^(n+1) entries
    std::uint64_t count = 0;
};
OracleResult oracle_decomposable_masks(std::int64_t n, int min_size = 2,
                                       std::optional<int> size_cap = {},
                                       int threads = 0);
OracleResult oracle_decomposable_masks_serial(std::int64_t n, int min_size = 2,
                                              std::optional<int> size_cap = {});

/// Exhaustive census of decomposable windows A ⊆ [0, n] under `config`.
/// Deterministic and independent of the worker count: the mask space is
/// partitioned into disjoint ranges merged by addition. Refuses n > 16
/// unless `force` is set (sampling lives in the montecarlo module).
struct CensusResult {
    std::int64_t n = 0;
    std::uint64_t total = 0;
    std::uint64_t decomposable = 0;
    std::uint64_t inconclusive = 0;
    double fraction = 0.0;
};
CensusResult census(std::int64_t n, const SearchConfig& config, bool force = false);
/// Serial reference implementation, kept for testing the parallel kernel.
CensusResult census_serial(std::int64_t n, const SearchConfig& config, bool force = false);

}  // namespace sumset
