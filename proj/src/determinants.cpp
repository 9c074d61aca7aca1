#include "detqpe/determinants.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include "detqpe/errors.hpp"

namespace detqpe {

namespace {

constexpr int kMaxOrbitals = 64;

struct BinomialTable {
    // C[n][k], saturated at UINT64_MAX on overflow.
    std::array<std::array<std::uint64_t, kMaxOrbitals + 1>, kMaxOrbitals + 1> c{};

    BinomialTable() {
        for (int n = 0; n <= kMaxOrbitals; ++n) {
            c[n][0] = 1;
            for (int k = 1; k <= n; ++k) {
                const std::uint64_t a = c[n - 1][k - 1];
                const std::uint64_t b = (k <= n - 1) ? c[n - 1][k] : 0;
                std::uint64_t sum = 0;
                if (__builtin_add_overflow(a, b, &sum) || a == UINT64_MAX || b == UINT64_MAX)
                    sum = UINT64_MAX;
                c[n][k] = sum;
            }
        }
    }
};

const BinomialTable& table() {
    static const BinomialTable t;
    return t;
}

inline Mask low_bits(int count) {
    return count >= 64 ? ~Mask{0} : ((Mask{1} << count) - 1);
}

} // namespace

std::uint64_t binomial(int n, int k) {
    if (n < 0 || n > kMaxOrbitals) throw NumericError("binomial: n out of supported range");
    if (k < 0 || k > n) return 0;
    const std::uint64_t v = table().c[n][k];
    if (v == UINT64_MAX) throw NumericError("binomial: value exceeds 64-bit index width");
    return v;
}

std::uint64_t dimension(int n, int k_alpha, int k_beta) {
    if (k_alpha < 0 || k_alpha > n || k_beta < 0 || k_beta > n)
        throw InputError("dimension: electron count outside [0, n]");
    const std::uint64_t da = binomial(n, k_alpha);
    const std::uint64_t db = binomial(n, k_beta);
    const unsigned __int128 d = static_cast<unsigned __int128>(da) * db;
    if (d > UINT64_MAX) throw NumericError("dimension: determinant count exceeds 64-bit index width");
    return static_cast<std::uint64_t>(d);
}

DeterminantSpace::DeterminantSpace(int n_, int ka, int kb) : n(n_), k_alpha(ka), k_beta(kb) {
    dim_alpha = binomial(n, k_alpha);
    dim_beta = binomial(n, k_beta);
    dimension = detqpe::dimension(n, k_alpha, k_beta);
    if (dim_alpha == 0 || dim_beta == 0) throw InputError("DeterminantSpace: empty spin sector");
}

std::uint64_t rank_mask(Mask mask, int n, int k) {
    if (std::popcount(mask) != k) throw InputError("rank_mask: popcount does not match k");
    if (mask & ~low_bits(n)) throw InputError("rank_mask: mask has bits beyond n");
    const auto& C = table().c;
    std::uint64_t rank = 0;
    int remaining = k;
    int prev = -1;
    for (int pos = 0; pos < n && remaining > 0; ++pos) {
        if (mask & (Mask{1} << pos)) {
            // subsets with the same prefix but a smaller element at this slot
            for (int x = prev + 1; x < pos; ++x) rank += C[n - 1 - x][remaining - 1];
            prev = pos;
            --remaining;
        }
    }
    return rank;
}

Mask unrank_mask(std::uint64_t index, int n, int k) {
    if (k < 0 || k > n) throw InputError("unrank_mask: k outside [0, n]");
    if (index >= binomial(n, k)) throw InputError("unrank_mask: index out of range");
    const auto& C = table().c;
    Mask mask = 0;
    int pos = 0;
    for (int slot = 0; slot < k; ++slot) {
        while (true) {
            const std::uint64_t below = C[n - 1 - pos][k - 1 - slot];
            if (index < below) break;
            index -= below;
            ++pos;
        }
        mask |= Mask{1} << pos;
        ++pos;
    }
    return mask;
}

int parity_between(Mask mask, int i, int j) {
    if (i == j) throw InputError("parity_between: equal positions");
    const int lo = std::min(i, j);
    const int hi = std::max(i, j);
    const Mask interior = low_bits(hi) & ~low_bits(lo + 1);
    return std::popcount(mask & interior) & 1;
}

std::string mask_to_string(Mask mask, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i)
        if (mask & (Mask{1} << i)) s[static_cast<std::size_t>(n - 1 - i)] = '1';
    return s;
}

Mask mask_from_string(const std::string& bits, int n) {
    if (static_cast<int>(bits.size()) != n)
        throw InputError("occupation string has length " + std::to_string(bits.size()) +
                         ", expected " + std::to_string(n));
    Mask mask = 0;
    for (int i = 0; i < n; ++i) {
        const char c = bits[static_cast<std::size_t>(n - 1 - i)];
        if (c == '1')
            mask |= Mask{1} << i;
        else if (c != '0')
            throw InputError("occupation string must contain only 0 and 1");
    }
    return mask;
}

std::optional<SingleExcitation> apply_single_excitation(Mask mask, int p, int r) {
    const Mask bit_r = Mask{1} << r;
    if (p == r) {
        if (!(mask & bit_r)) return std::nullopt;
        return SingleExcitation{mask, +1};
    }
    const Mask bit_p = Mask{1} << p;
    if (!(mask & bit_r) || (mask & bit_p)) return std::nullopt;
    const int sign = parity_between(mask, p, r) ? -1 : +1;
    return SingleExcitation{(mask & ~bit_r) | bit_p, sign};
}

namespace {

// Occupied count strictly below global spin orbital `so` (blocked ordering).
inline int occupied_below(const DetPair& det, int so, int n) {
    if (so < n) return std::popcount(det.alpha & low_bits(so));
    return std::popcount(det.alpha) + std::popcount(det.beta & low_bits(so - n));
}

inline bool occupied(const DetPair& det, int so, int n) {
    return so < n ? (det.alpha >> so) & 1 : (det.beta >> (so - n)) & 1;
}

inline void flip(DetPair& det, int so, int n) {
    if (so < n)
        det.alpha ^= Mask{1} << so;
    else
        det.beta ^= Mask{1} << (so - n);
}

} // namespace

std::optional<PairExcitation> apply_creation(DetPair det, int so, int n) {
    if (occupied(det, so, n)) return std::nullopt;
    const int sign = (occupied_below(det, so, n) & 1) ? -1 : +1;
    flip(det, so, n);
    return PairExcitation{det, sign};
}

std::optional<PairExcitation> apply_annihilation(DetPair det, int so, int n) {
    if (!occupied(det, so, n)) return std::nullopt;
    const int sign = (occupied_below(det, so, n) & 1) ? -1 : +1;
    flip(det, so, n);
    return PairExcitation{det, sign};
}

std::optional<PairExcitation> apply_double_excitation(DetPair det, int p, int q, int r, int s,
                                                      int n) {
    int sign = 1;
    auto step = [&](std::optional<PairExcitation> next) {
        if (next) {
            det = next->det;
            sign *= next->sign;
        }
        return next.has_value();
    };
    if (!step(apply_annihilation(det, r, n))) return std::nullopt;
    if (!step(apply_annihilation(det, s, n))) return std::nullopt;
    if (!step(apply_creation(det, q, n))) return std::nullopt;
    if (!step(apply_creation(det, p, n))) return std::nullopt;
    return PairExcitation{det, sign};
}

void for_each_free_submask(int n, Mask excluded, int k, const std::function<void(Mask)>& visit) {
    std::array<int, kMaxOrbitals> free_pos{};
    int n_free = 0;
    for (int i = 0; i < n; ++i)
        if (!(excluded & (Mask{1} << i))) free_pos[static_cast<std::size_t>(n_free++)] = i;
    if (k < 0 || k > n_free) return;
    if (k == 0) {
        visit(0);
        return;
    }
    // Gosper's hack over a compressed word, expanded to the free positions.
    const Mask last = low_bits(k) << (n_free - k);
    Mask packed = low_bits(k);
    while (true) {
        Mask mask = 0;
        Mask bits = packed;
        while (bits) {
            const int b = std::countr_zero(bits);
            bits &= bits - 1;
            mask |= Mask{1} << free_pos[static_cast<std::size_t>(b)];
        }
        visit(mask);
        if (packed == last) break;
        const Mask c = packed & (~packed + 1);
        const Mask rr = packed + c;
        packed = (((rr ^ packed) >> 2) / c) | rr;
    }
}

} // namespace detqpe
