#pragma once

#include <optional>
#include <string>
#include <vector>

#include "escherpos/escher.hpp"

namespace escherpos {

/// Result of an exhaustive structural check on one UIO.
struct LemmaOutcome {
    Int instances = 0;
    Int violations = 0;
    std::optional<std::string> counterexample;

    bool ok() const { return violations == 0; }
    void fail(std::string what);
};

// Each check takes the full-length Eschers of U (enumerate_eschers(u, |U|)).

/// Every index of every N-Escher falls in exactly one of the three cases, all k < N.
LemmaOutcome check_trichotomy(const Uio& u, const std::vector<Sequence>& eschers);

/// Case2 at m implies the n-windows starting at m+k, m+k+1, m+k+2 are Eschers.
LemmaOutcome check_case2_shifted_windows(const Uio& u, const std::vector<Sequence>& eschers);

/// purity() never sees a Case2/Case3 mix on prefixes of N-Eschers.
LemmaOutcome check_no_mixed_purity(const Uio& u, const std::vector<Sequence>& eschers);

/// Every N-Escher has a valid k-sub-Escher for every 1 <= k < N.
LemmaOutcome check_subescher_exists(const Uio& u, const std::vector<Sequence>& eschers);

/// For every full disjoint pair (u, v) with n >= k and every two consecutive
/// valid insertions, the spliced arrow chain between them is not pure.
LemmaOutcome check_insertion_splices(const Uio& u);

/// Closed logical sequences w_1 ◁ w_2 ◁ ... ◁ w_t ◁ w_1 (◁ ∈ {≺, →}, t <=
/// max_symbols, elements may repeat) with at least as many ≺ as → never hold.
LemmaOutcome check_closed_sequences(const Uio& u, int max_symbols);

/// The spliced chain for consecutive insertions at j and j + gap (n = |u|).
Sequence insertion_splice(std::span<const int> u, std::span<const int> v, int j, int gap);

} // namespace escherpos
