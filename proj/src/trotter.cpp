#include "detqpe/trotter.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "detqpe/errors.hpp"

namespace detqpe {

namespace {

inline Mask bit(int i) { return Mask{1} << i; }

struct BlockView {
    // Geometry of one spin block inside the flat index.
    int k;                    // electrons in this block
    std::uint64_t dim_other;  // strings in the other block
    std::uint64_t stride;     // flat stride of this block's rank
    std::uint64_t other_stride;
};

BlockView block_view(const DeterminantSpace& space, bool alpha) {
    if (alpha) return {space.k_alpha, space.dim_beta, space.dim_beta, 1};
    return {space.k_beta, space.dim_alpha, 1, space.dim_beta};
}

inline bool is_alpha(int so, int n) { return so < n; }
inline int local(int so, int n) { return so < n ? so : so - n; }

// 2x2 rotation with off-diagonal (-1)^(eta+1) i sin(theta) = -i*sign*sin(theta).
inline void rotate_pair(Complex& a, Complex& b, double cos_t, double sin_t, int sign) {
    const Complex od{0.0, sign > 0 ? -sin_t : sin_t};
    const Complex u = a, v = b;
    a = cos_t * u + od * v;
    b = od * u + cos_t * v;
}

// Applies the 2x2 to every determinant sharing a same-block excitation pair:
// ranks (ra, rb) in block `view`, all strings of the other block untouched.
void rotate_block_pair(StateVector& state, const BlockView& view, std::uint64_t ra,
                       std::uint64_t rb, double cos_t, double sin_t, int sign) {
    Complex* amps = state.amps.data();
    const std::uint64_t base_a = ra * view.stride;
    const std::uint64_t base_b = rb * view.stride;
    for (std::uint64_t o = 0; o < view.dim_other; ++o) {
        const std::uint64_t off = o * view.other_stride;
        rotate_pair(amps[base_a + off], amps[base_b + off], cos_t, sin_t, sign);
    }
}

struct SameBlockPair {
    std::uint64_t ra, rb;
    int sign;
};

// Connected pairs of a single excitation a^+_lo <-> a_hi confined to one spin
// block, optionally with extra orbitals pinned occupied (`pinned`).
template <typename Visit>
void for_each_single_excitation_pair(const DeterminantSpace& space, bool alpha, int lo, int hi,
                                     Mask pinned, const Visit& visit) {
    const int n = space.n;
    const int k = alpha ? space.k_alpha : space.k_beta;
    const int k_free = k - 1 - std::popcount(pinned);
    for_each_free_submask(n, bit(lo) | bit(hi) | pinned, k_free, [&](Mask sub) {
        const Mask base = sub | pinned;
        const Mask m_lo = base | bit(lo);
        const Mask m_hi = base | bit(hi);
        const int sign = parity_between(m_hi, lo, hi) ? -1 : +1;
        visit(SameBlockPair{rank_mask(m_lo, n, k), rank_mask(m_hi, n, k), sign});
    });
}

} // namespace

std::vector<double> diagonal_angles(const ClassifiedHamiltonian& h,
                                    const DeterminantSpace& space) {
    const int n = space.n;
    if (h.n_orbitals != n) throw InputError("diagonal_angles: orbital count mismatch");
    const int n_so = 2 * n;

    std::vector<double> pp_coeff(static_cast<std::size_t>(n_so), 0.0);
    std::vector<double> pair_coeff(static_cast<std::size_t>(n_so) * n_so, 0.0);
    for (const auto& t : h.pp_terms) pp_coeff[static_cast<std::size_t>(t.p)] += t.h;
    for (const auto& t : h.pqqp_terms) {
        pair_coeff[static_cast<std::size_t>(t.p) * n_so + t.q] += t.h;
        pair_coeff[static_cast<std::size_t>(t.q) * n_so + t.p] += t.h;
    }

    // Per-string occupation lists; beta contributions are precomputed, the
    // alpha-beta cross part is factorized through S(q) sums.
    std::vector<std::vector<int>> beta_occ(space.dim_beta);
    std::vector<double> beta_part(space.dim_beta, 0.0);
    for (std::uint64_t c2 = 0; c2 < space.dim_beta; ++c2) {
        const Mask m = unrank_mask(c2, n, space.k_beta);
        auto& occ = beta_occ[c2];
        for (int i = 0; i < n; ++i)
            if (m & bit(i)) occ.push_back(n + i);
        double v = 0.0;
        for (std::size_t a = 0; a < occ.size(); ++a) {
            v += pp_coeff[static_cast<std::size_t>(occ[a])];
            for (std::size_t b = a + 1; b < occ.size(); ++b)
                v += pair_coeff[static_cast<std::size_t>(occ[a]) * n_so + occ[b]];
        }
        beta_part[c2] = v;
    }

    std::vector<double> angles(space.dimension, 0.0);
    std::vector<double> cross(static_cast<std::size_t>(n), 0.0);
    for (std::uint64_t c1 = 0; c1 < space.dim_alpha; ++c1) {
        const Mask m = unrank_mask(c1, n, space.k_alpha);
        std::vector<int> occ;
        for (int i = 0; i < n; ++i)
            if (m & bit(i)) occ.push_back(i);
        double alpha_part = 0.0;
        for (std::size_t a = 0; a < occ.size(); ++a) {
            alpha_part += pp_coeff[static_cast<std::size_t>(occ[a])];
            for (std::size_t b = a + 1; b < occ.size(); ++b)
                alpha_part += pair_coeff[static_cast<std::size_t>(occ[a]) * n_so + occ[b]];
        }
        for (int q = 0; q < n; ++q) {
            double s = 0.0;
            for (int a : occ) s += pair_coeff[static_cast<std::size_t>(a) * n_so + (n + q)];
            cross[static_cast<std::size_t>(q)] = s;
        }
        for (std::uint64_t c2 = 0; c2 < space.dim_beta; ++c2) {
            double v = alpha_part + beta_part[c2];
            for (int b : beta_occ[c2]) v += cross[static_cast<std::size_t>(b - n)];
            angles[c1 * space.dim_beta + c2] = v;
        }
    }
    return angles;
}

void apply_diagonal(const std::vector<double>& angles, StateVector& state, double theta_scale) {
    if (angles.size() != state.amps.size()) throw InputError("apply_diagonal: size mismatch");
    for (std::size_t i = 0; i < angles.size(); ++i)
        state.amps[i] *= std::polar(1.0, -angles[i] * theta_scale);
}

void apply_diagonal(const std::vector<PpTerm>& pp, const std::vector<PqqpTerm>& pqqp,
                    StateVector& state, double theta_scale) {
    ClassifiedHamiltonian h;
    h.n_orbitals = state.space.n;
    h.pp_terms = pp;
    h.pqqp_terms = pqqp;
    apply_diagonal(diagonal_angles(h, state.space), state, theta_scale);
}

void apply_offdiagonal_term(const PqTerm& term, StateVector& state, double theta) {
    const int n = state.space.n;
    if (is_alpha(term.p, n) != is_alpha(term.q, n))
        throw InputError("pq term must stay within one spin block");
    const bool alpha = is_alpha(term.p, n);
    const double c = std::cos(theta), s = std::sin(theta);
    const BlockView view = block_view(state.space, alpha);
    for_each_single_excitation_pair(state.space, alpha, local(term.p, n), local(term.q, n), 0,
                                    [&](const SameBlockPair& pair) {
                                        rotate_block_pair(state, view, pair.ra, pair.rb, c, s,
                                                          pair.sign);
                                    });
}

void apply_offdiagonal_term(const PqqrTerm& term, StateVector& state, double theta) {
    const int n = state.space.n;
    if (is_alpha(term.p, n) != is_alpha(term.r, n))
        throw InputError("pqqr excitation must stay within one spin block");
    if (term.q == term.p || term.q == term.r)
        throw InputError("pqqr number orbital must differ from the excitation pair");
    const bool exc_alpha = is_alpha(term.p, n);
    const double c = std::cos(theta), s = std::sin(theta);
    const int lp = local(term.p, n), lr = local(term.r, n), lq = local(term.q, n);

    if (is_alpha(term.q, n) == exc_alpha) {
        // Number orbital rides along in the excitation block.
        const BlockView view = block_view(state.space, exc_alpha);
        for_each_single_excitation_pair(state.space, exc_alpha, lp, lr, bit(lq),
                                        [&](const SameBlockPair& pair) {
                                            rotate_block_pair(state, view, pair.ra, pair.rb, c, s,
                                                              pair.sign);
                                        });
        return;
    }

    // Number orbital lives in the other block: gate the rotation on strings
    // occupying it.
    const int k_other = exc_alpha ? state.space.k_beta : state.space.k_alpha;
    std::vector<std::uint64_t> gated;
    for_each_free_submask(n, bit(lq), k_other - 1, [&](Mask sub) {
        gated.push_back(rank_mask(sub | bit(lq), n, k_other));
    });
    Complex* amps = state.amps.data();
    const std::uint64_t dim_beta = state.space.dim_beta;
    for_each_single_excitation_pair(
        state.space, exc_alpha, lp, lr, 0, [&](const SameBlockPair& pair) {
            for (const std::uint64_t o : gated) {
                const std::uint64_t ia = exc_alpha ? pair.ra * dim_beta + o : o * dim_beta + pair.ra;
                const std::uint64_t ib = exc_alpha ? pair.rb * dim_beta + o : o * dim_beta + pair.rb;
                rotate_pair(amps[ia], amps[ib], c, s, pair.sign);
            }
        });
}

void apply_offdiagonal_term(const PqrsTerm& term, StateVector& state, double theta) {
    const int n = state.space.n;
    if (is_alpha(term.p, n) != is_alpha(term.r, n) || is_alpha(term.q, n) != is_alpha(term.s, n))
        throw InputError("pqrs term must conserve per-spin particle number");
    const double c = std::cos(theta), s = std::sin(theta);
    const int lp = local(term.p, n), lq = local(term.q, n);
    const int lr = local(term.r, n), ls = local(term.s, n);

    if (is_alpha(term.p, n) == is_alpha(term.q, n)) {
        // Same-block double excitation {r,s} -> {p,q}.
        const bool alpha = is_alpha(term.p, n);
        const int k = alpha ? state.space.k_alpha : state.space.k_beta;
        const BlockView view = block_view(state.space, alpha);
        for_each_free_submask(n, bit(lp) | bit(lq) | bit(lr) | bit(ls), k - 2, [&](Mask sub) {
            const Mask m_a = sub | bit(lr) | bit(ls);
            const Mask m_b = sub | bit(lp) | bit(lq);
            // Sign of a^+_p a^+_q a_s a_r applied right to left on m_a.
            int parity = std::popcount(m_a & (bit(lr) - 1));
            Mask m = m_a ^ bit(lr);
            parity += std::popcount(m & (bit(ls) - 1));
            m ^= bit(ls);
            parity += std::popcount(m & (bit(lq) - 1));
            m |= bit(lq);
            parity += std::popcount(m & (bit(lp) - 1));
            const int sign = (parity & 1) ? -1 : +1;
            rotate_block_pair(state, view, rank_mask(m_a, n, k), rank_mask(m_b, n, k), c, s,
                              sign);
        });
        return;
    }

    // Cross-block: (p, r) excite one spin, (q, s) the other; block-local signs
    // multiply because the Jordan-Wigner strings cancel pairwise across blocks.
    const bool p_alpha = is_alpha(term.p, n);
    std::vector<SameBlockPair> other;
    for_each_single_excitation_pair(state.space, !p_alpha, lq, ls, 0,
                                    [&](const SameBlockPair& pair) { other.push_back(pair); });
    Complex* amps = state.amps.data();
    const std::uint64_t dim_beta = state.space.dim_beta;
    for_each_single_excitation_pair(
        state.space, p_alpha, lp, lr, 0, [&](const SameBlockPair& mine) {
            for (const SameBlockPair& theirs : other) {
                const std::uint64_t ia = p_alpha ? mine.ra * dim_beta + theirs.ra
                                                 : theirs.ra * dim_beta + mine.ra;
                const std::uint64_t ib = p_alpha ? mine.rb * dim_beta + theirs.rb
                                                 : theirs.rb * dim_beta + mine.rb;
                rotate_pair(amps[ia], amps[ib], c, s, mine.sign * theirs.sign);
            }
        });
}

TrotterStepper::TrotterStepper(const ClassifiedHamiltonian& h, const DeterminantSpace& space,
                               const TrotterConfig& cfg)
    : space_(space), config_(cfg), offset_(h.offset), hamiltonian_(h) {
    if (h.n_orbitals != space.n)
        throw InputError("TrotterStepper: Hamiltonian and space orbital counts differ");
    if (cfg.r < 1) throw InputError("TrotterStepper: r must be >= 1");
    if (!std::isfinite(cfg.t)) throw InputError("TrotterStepper: t must be finite");
    theta_scale_ = cfg.t / cfg.r;

    if (config_.ordering == TermOrdering::kDefault) {
        const std::vector<double> angles = diagonal_angles(h, space);
        diagonal_phase_.resize(angles.size());
        for (std::size_t i = 0; i < angles.size(); ++i)
            diagonal_phase_[i] = std::polar(1.0, -angles[i] * theta_scale_);
    } else {
        for (const auto& t : h.pp_terms) schedule_.push_back({t, t.seq});
        for (const auto& t : h.pqqp_terms) schedule_.push_back({t, t.seq});
        for (const auto& t : h.pq_terms) schedule_.push_back({t, t.seq});
        for (const auto& t : h.pqqr_terms) schedule_.push_back({t, t.seq});
        for (const auto& t : h.pqrs_terms) schedule_.push_back({t, t.seq});
        std::sort(schedule_.begin(), schedule_.end(),
                  [](const OrderedTerm& a, const OrderedTerm& b) { return a.seq < b.seq; });
    }
}

void TrotterStepper::apply(StateVector& state) const {
    if (state.space.dimension != space_.dimension || state.space.n != space_.n)
        throw InputError("TrotterStepper: state dimension mismatch");
    const double tau = theta_scale_;

    if (config_.ordering == TermOrdering::kDefault) {
        for (std::size_t i = 0; i < diagonal_phase_.size(); ++i)
            state.amps[i] *= diagonal_phase_[i];
        for (const auto& t : hamiltonian_.pq_terms) apply_offdiagonal_term(t, state, t.h * tau);
        for (const auto& t : hamiltonian_.pqqr_terms) apply_offdiagonal_term(t, state, t.h * tau);
        for (const auto& t : hamiltonian_.pqrs_terms) apply_offdiagonal_term(t, state, t.h * tau);
        return;
    }

    for (const OrderedTerm& entry : schedule_) {
        std::visit(
            [&](const auto& term) {
                using T = std::decay_t<decltype(term)>;
                if constexpr (std::is_same_v<T, PpTerm>) {
                    apply_diagonal({term}, {}, state, tau);
                } else if constexpr (std::is_same_v<T, PqqpTerm>) {
                    apply_diagonal({}, {term}, state, tau);
                } else {
                    apply_offdiagonal_term(term, state, term.h * tau);
                }
            },
            entry.term);
    }
}

void apply_trotter_step(const ClassifiedHamiltonian& h, StateVector& state,
                        const TrotterConfig& cfg) {
    TrotterStepper(h, state.space, cfg).apply(state);
}

} // namespace detqpe
