#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace detqpe {

/// Occupation bitmask over one spin block: bit i holds the occupation of
/// spatial orbital i.
using Mask = std::uint64_t;

/// C(n, k) over the 64-bit-safe range; throws NumericError on overflow.
std::uint64_t binomial(int n, int k);

/// The particle-number- and Sz-restricted configuration space: all
/// (alpha-string, beta-string) pairs with fixed per-spin electron counts.
struct DeterminantSpace {
    int n = 0;       ///< spatial orbitals per spin block
    int k_alpha = 0; ///< alpha electrons
    int k_beta = 0;  ///< beta electrons
    std::uint64_t dim_alpha = 0;
    std::uint64_t dim_beta = 0;
    std::uint64_t dimension = 0;

    DeterminantSpace() = default;
    DeterminantSpace(int n, int k_alpha, int k_beta);
};

/// Position of one determinant inside a DeterminantSpace.
struct ConfigIndex {
    std::uint64_t c1 = 0; ///< alpha-string rank
    std::uint64_t c2 = 0; ///< beta-string rank

    std::uint64_t flat(const DeterminantSpace& space) const { return c1 * space.dim_beta + c2; }
};

/// Number of restricted determinants C(n, k_alpha) * C(n, k_beta).
std::uint64_t dimension(int n, int k_alpha, int k_beta);

/// Lexicographic rank of a k-subset (subsets compared as sorted index
/// tuples). Inverse of unrank_mask.
std::uint64_t rank_mask(Mask mask, int n, int k);
Mask unrank_mask(std::uint64_t index, int n, int k);

/// Parity (mod 2) of the occupied orbitals strictly between positions i and j.
int parity_between(Mask mask, int i, int j);

std::string mask_to_string(Mask mask, int n); ///< big-endian: leftmost char is orbital n-1
Mask mask_from_string(const std::string& bits, int n);

struct SingleExcitation {
    Mask mask;
    int sign; ///< +1 or -1
};

/// a_p^dagger a_r applied within one spin block. Empty when the operator
/// annihilates the configuration (r empty or p already occupied).
std::optional<SingleExcitation> apply_single_excitation(Mask mask, int p, int r);

/// One determinant as a pair of per-spin masks. Spin orbitals are indexed in
/// blocked order: alpha = [0, n), beta = [n, 2n).
struct DetPair {
    Mask alpha = 0;
    Mask beta = 0;

    bool operator==(const DetPair&) const = default;
};

struct PairExcitation {
    DetPair det;
    int sign;
};

/// Elementary creation/annihilation on spin orbital `so` in [0, 2n), with the
/// full Jordan-Wigner parity accumulated over all lower spin orbitals.
std::optional<PairExcitation> apply_creation(DetPair det, int so, int n);
std::optional<PairExcitation> apply_annihilation(DetPair det, int so, int n);

/// a_p^dagger a_q^dagger a_s a_r on a determinant pair (global spin-orbital
/// indices, applied right to left). Empty when any step annihilates.
std::optional<PairExcitation> apply_double_excitation(DetPair det, int p, int q, int r, int s,
                                                      int n);

/// Enumerate every mask over `n` orbitals that has `k` electrons distributed
/// over the orbitals NOT flagged in `excluded`. The callback receives the
/// mask over free positions only (excluded bits are always 0).
void for_each_free_submask(int n, Mask excluded, int k, const std::function<void(Mask)>& visit);

} // namespace detqpe
