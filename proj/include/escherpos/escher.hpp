#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "escherpos/integer.hpp"
#include "escherpos/uio.hpp"

namespace escherpos {

/// Sequence of distinct UIO elements (1-based ids). For Eschers the indices are
/// read modulo the length.
using Sequence = std::vector<int>;

std::string to_string(std::span<const int> seq);
/// Parses "1,3,2".
Sequence parse_sequence(std::string_view text);

/// w_0 → w_1 → ... → w_{m-1} → w_0. Throws std::invalid_argument on repeated elements.
bool is_escher(const Uio& u, std::span<const int> seq);

/// All Eschers of length m on the elements of U, lexicographic.
std::vector<Sequence> enumerate_eschers(const Uio& u, int m);
/// All Eschers of length m using only elements of `support`, lexicographic.
std::vector<Sequence> enumerate_eschers_on(const Uio& u, std::span<const int> support, int m);
Int count_eschers(const Uio& u, int m);

/// Arrow chain whose every prefix is connected in the incomparability graph.
bool is_correct(const Uio& u, std::span<const int> seq);
/// Arrow chain where each w_j (j > 0) has some earlier w_i with w_i not ≺ w_j.
bool is_correct_literal(const Uio& u, std::span<const int> seq);
/// Number of orderings of all of U that are correct.
Int count_full_corrects(const Uio& u);

// ------------------------------------------------------------ sub-Eschers

enum class SubEscherCase { Case1, Case2, Case3 };
std::string_view to_string(SubEscherCase c);

/// Classifies index m (mod N) of the N-Escher w for window length k:
///   Case1: w_{m+k} → w_{m+1} and w_m → w_{m+k+1}
///   Case2: w_{m+k} ≻ w_{m+1} and w_m → w_{m+k+1}
///   Case3: w_{m+k} → w_{m+1} and w_m ≻ w_{m+k+1}
/// The fourth combination throws InternalError.
SubEscherCase subescher_case(const Uio& u, std::span<const int> w, int m, int k);

struct FirstSubEscher {
    int index;        ///< L: the window [w_{L+1}, ..., w_{L+k}] is the first valid one
    bool exceptional; ///< 0 ∈ [L+1, L+k] modulo N
};

/// Smallest L >= 0 such that index L is Case1. Throws std::invalid_argument if
/// w is not an Escher.
std::optional<FirstSubEscher> first_valid_subescher(const Uio& u, std::span<const int> w, int k);

enum class Purity { NotPure, PurePlus, PureMinus };
std::string_view to_string(Purity p);

/// Purity of the arrow chain s_0 → ... → s_L for window length k. Every m with
/// 0 <= m <= L - k - 1 is tested. Needs at least k + 2 elements. A mix of
/// Case2 and Case3 windows without any Case1 throws InternalError.
Purity purity(const Uio& u, std::span<const int> chain, int k);

// ------------------------------------------------------------ insertions

/// Indices l in [0, n*k) with u_l → v_{l+1} and v_l → u_{l+1} (u mod n, v mod k).
std::vector<int> valid_insertions(const Uio& u_order, std::span<const int> u, std::span<const int> v);
std::optional<int> first_valid_insertion(const Uio& u_order, std::span<const int> u, std::span<const int> v);

struct EscherPair {
    Sequence u; ///< n-Escher
    Sequence v; ///< k-Escher
    auto operator<=>(const EscherPair&) const = default;
};

/// Number of ordered pairs (u, v) of an n-Escher and a k-Escher whose supports
/// partition U. Requires n + k = |U|.
Int disjoint_pair_count(const Uio& u, int n, int k);
std::vector<EscherPair> full_disjoint_pairs(const Uio& u, int n, int k);

// ------------------------------------------------------------ φ and ψ

enum class KAnchor {
    ZeroModK,   ///< q ∈ [L+1, L+k] with q ≡ 0 mod k
    WindowStart ///< q = L+1
};
enum class NAnchor {
    ZeroModNAfterWindow, ///< q ∈ [L+k+1, L+N] with q ≡ 0 mod n
    ZeroModNEndingAtL,   ///< q ∈ [L-n+1, L] with q ≡ 0 mod n
    WindowStart          ///< q = L+k+1
};
enum class OrdinaryStart { U0, UkModN };
enum class ExceptionalStart { VnModK, V0 };

/// Choice of initial points for the two windows cut out by φ and for the
/// spliced cycle rebuilt by ψ.
struct AnchorConvention {
    KAnchor k_anchor = KAnchor::ZeroModK;
    NAnchor n_anchor = NAnchor::ZeroModNEndingAtL;
    OrdinaryStart ordinary = OrdinaryStart::U0;
    ExceptionalStart exceptional = ExceptionalStart::VnModK;

    std::string name() const;
    static AnchorConvention parse(std::string_view name);
    /// Every convention in calibration search order.
    static std::vector<AnchorConvention> all();

    auto operator<=>(const AnchorConvention&) const = default;
};

/// Convention certified by calibrate_convention(8); see README.
inline constexpr AnchorConvention kDefaultConvention{
    KAnchor::ZeroModK, NAnchor::ZeroModNEndingAtL, OrdinaryStart::U0, ExceptionalStart::VnModK};

/// Anchors both windows by q ≡ 0 using the integer range [L+k+1, L+N] for the
/// n-window. Kept for comparison; it does not round-trip.
inline constexpr AnchorConvention kAfterWindowConvention{
    KAnchor::ZeroModK, NAnchor::ZeroModNAfterWindow, OrdinaryStart::U0, ExceptionalStart::VnModK};

struct PhiTrace {
    EscherPair pair;
    int first_subescher; ///< FE(w)
    bool exceptional;
};

/// φ: P_{n+k} → P_n × P_k. Requires n > k >= 1 and |w| = n + k.
PhiTrace phi_trace(const Uio& u, std::span<const int> w, int n, int k,
                   const AnchorConvention& conv = kDefaultConvention);
EscherPair phi(const Uio& u, std::span<const int> w, int n, int k,
               const AnchorConvention& conv = kDefaultConvention);

struct PsiTrace {
    std::optional<Sequence> w;
    std::optional<int> first_insertion; ///< FI(u, v)
    bool exceptional = false;
};

/// ψ: splice v into u after the first valid insertion. nullopt when no valid
/// insertion exists. Supports must be disjoint and cover U.
PsiTrace psi_trace(const Uio& u, std::span<const int> uu, std::span<const int> v,
                   const AnchorConvention& conv = kDefaultConvention);
std::optional<Sequence> psi(const Uio& u, std::span<const int> uu, std::span<const int> v,
                            const AnchorConvention& conv = kDefaultConvention);

struct RoundTripStats {
    Int eschers = 0;
    Int failures = 0;
    bool injective = true;
    std::optional<std::string> counterexample;
};

/// ψ(φ(w)) = w and injectivity of φ over every (n+k)-Escher of U (|U| = n+k).
RoundTripStats check_round_trip(const Uio& u, int n, int k, const AnchorConvention& conv,
                                const std::vector<Sequence>& full_eschers);

struct CalibrationEntry {
    AnchorConvention convention;
    Int checked = 0;
    bool passed = false;
    std::optional<std::string> counterexample;
};

struct CalibrationResult {
    AnchorConvention convention;
    std::vector<CalibrationEntry> log;
    /// Outcome of kAfterWindowConvention on h = 2,3,3, w = 1,3,2, n = 2, k = 1.
    std::string witness;
};

/// First convention (in AnchorConvention::all() order) for which ψ∘φ = id on
/// every UIO with |U| <= max_n and every coprime n > k >= 1 with n + k = |U|.
/// Throws InternalError with the log when none passes. Requires max_n <= 8.
CalibrationResult calibrate_convention(int max_n);

} // namespace escherpos
