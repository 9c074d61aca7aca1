#include "detqpe/oracle.hpp"

#include <complex>

#include "detqpe/errors.hpp"

namespace detqpe::oracle {

namespace {

using detqpe::Complex;

void check_cap(const DeterminantSpace& space, std::uint64_t cap) {
    if (space.dimension > cap)
        throw InputError("oracle: dimension " + std::to_string(space.dimension) +
                         " exceeds the dense cap " + std::to_string(cap));
}

struct BasisWalker {
    const DeterminantSpace& space;
    std::vector<DetPair> dets;

    explicit BasisWalker(const DeterminantSpace& s) : space(s) {
        dets.reserve(s.dimension);
        for (std::uint64_t c1 = 0; c1 < s.dim_alpha; ++c1) {
            const Mask a = unrank_mask(c1, s.n, s.k_alpha);
            for (std::uint64_t c2 = 0; c2 < s.dim_beta; ++c2)
                dets.push_back(DetPair{a, unrank_mask(c2, s.n, s.k_beta)});
        }
    }

    std::uint64_t index_of(const DetPair& det) const {
        const ConfigIndex idx{rank_mask(det.alpha, space.n, space.k_alpha),
                              rank_mask(det.beta, space.n, space.k_beta)};
        return idx.flat(space);
    }
};

// a^+_p a_q lifted onto column `col` of the matrix, weight w.
void add_single(Eigen::MatrixXcd& m, const BasisWalker& basis, std::uint64_t col, int p, int q,
                double w, int n) {
    auto step = apply_annihilation(basis.dets[col], q, n);
    if (!step) return;
    auto done = apply_creation(step->det, p, n);
    if (!done) return;
    m(static_cast<Eigen::Index>(basis.index_of(done->det)), static_cast<Eigen::Index>(col)) +=
        w * step->sign * done->sign;
}

// a^+_p a^+_q a_s a_r lifted onto column `col`, weight w.
void add_double(Eigen::MatrixXcd& m, const BasisWalker& basis, std::uint64_t col, int p, int q,
                int r, int s, double w, int n) {
    auto hop = apply_double_excitation(basis.dets[col], p, q, r, s, n);
    if (!hop) return;
    m(static_cast<Eigen::Index>(basis.index_of(hop->det)), static_cast<Eigen::Index>(col)) +=
        w * hop->sign;
}

bool occupied_so(const DetPair& det, int so, int n) {
    return so < n ? (det.alpha >> so) & 1 : (det.beta >> (so - n)) & 1;
}

} // namespace

DenseOperator build_dense_hamiltonian(const ClassifiedHamiltonian& h,
                                      const DeterminantSpace& space, std::uint64_t dim_cap) {
    check_cap(space, dim_cap);
    if (h.n_orbitals != space.n)
        throw InputError("build_dense_hamiltonian: orbital count mismatch");
    const int n = space.n;
    const auto dim = static_cast<Eigen::Index>(space.dimension);
    BasisWalker basis(space);

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) m(c, c) = h.offset;

    for (std::uint64_t col = 0; col < space.dimension; ++col) {
        const DetPair& det = basis.dets[col];
        const auto ic = static_cast<Eigen::Index>(col);
        for (const auto& t : h.pp_terms)
            if (occupied_so(det, t.p, n)) m(ic, ic) += t.h;
        for (const auto& t : h.pqqp_terms)
            if (occupied_so(det, t.p, n) && occupied_so(det, t.q, n)) m(ic, ic) += t.h;
        for (const auto& t : h.pq_terms) {
            add_single(m, basis, col, t.p, t.q, t.h, n);
            add_single(m, basis, col, t.q, t.p, t.h, n);
        }
        for (const auto& t : h.pqqr_terms) {
            if (!occupied_so(det, t.q, n)) continue;
            add_single(m, basis, col, t.p, t.r, t.h, n);
            add_single(m, basis, col, t.r, t.p, t.h, n);
        }
        for (const auto& t : h.pqrs_terms) {
            add_double(m, basis, col, t.p, t.q, t.r, t.s, t.h, n);
            add_double(m, basis, col, t.r, t.s, t.p, t.q, t.h, n);
        }
    }
    return DenseOperator{space.dimension, std::move(m)};
}

DenseOperator build_dense_from_integrals(const IntegralSet& ints, const DeterminantSpace& space,
                                         std::uint64_t dim_cap) {
    check_cap(space, dim_cap);
    if (ints.n_orbitals != space.n)
        throw InputError("build_dense_from_integrals: orbital count mismatch");
    const int n = space.n;
    const auto dim = static_cast<Eigen::Index>(space.dimension);
    BasisWalker basis(space);

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) m(c, c) = ints.core_energy;

    const auto so = [n](int spatial, int spin) { return spatial + spin * n; };
    for (std::uint64_t col = 0; col < space.dimension; ++col) {
        for (int sigma = 0; sigma < 2; ++sigma)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const double h = ints.h(i, j);
                    if (h != 0.0) add_single(m, basis, col, so(i, sigma), so(j, sigma), h, n);
                }
        for (int sigma = 0; sigma < 2; ++sigma)
            for (int tau = 0; tau < 2; ++tau)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        for (int k = 0; k < n; ++k)
                            for (int l = 0; l < n; ++l) {
                                const double v = ints.v(i, j, k, l);
                                if (v != 0.0)
                                    add_double(m, basis, col, so(i, sigma), so(k, tau), so(j, sigma),
                                               so(l, tau), 0.5 * v, n);
                            }
    }
    return DenseOperator{space.dimension, std::move(m)};
}

namespace {

template <typename Term>
DenseOperator dense_term_impl(const Term& term, const DeterminantSpace& space) {
    ClassifiedHamiltonian h;
    h.n_orbitals = space.n;
    if constexpr (std::is_same_v<Term, PpTerm>)
        h.pp_terms.push_back(term);
    else if constexpr (std::is_same_v<Term, PqqpTerm>)
        h.pqqp_terms.push_back(term);
    else if constexpr (std::is_same_v<Term, PqTerm>)
        h.pq_terms.push_back(term);
    else if constexpr (std::is_same_v<Term, PqqrTerm>)
        h.pqqr_terms.push_back(term);
    else
        h.pqrs_terms.push_back(term);
    return build_dense_hamiltonian(h, space, space.dimension);
}

} // namespace

DenseOperator build_dense_term(const PpTerm& term, const DeterminantSpace& space) {
    return dense_term_impl(term, space);
}
DenseOperator build_dense_term(const PqqpTerm& term, const DeterminantSpace& space) {
    return dense_term_impl(term, space);
}
DenseOperator build_dense_term(const PqTerm& term, const DeterminantSpace& space) {
    return dense_term_impl(term, space);
}
DenseOperator build_dense_term(const PqqrTerm& term, const DeterminantSpace& space) {
    return dense_term_impl(term, space);
}
DenseOperator build_dense_term(const PqrsTerm& term, const DeterminantSpace& space) {
    return dense_term_impl(term, space);
}

EigenSystem exact_eigensolve(const DenseOperator& hd) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hd.entries);
    if (solver.info() != Eigen::Success) throw NumericError("exact_eigensolve failed to converge");
    return EigenSystem{solver.eigenvalues(), solver.eigenvectors()};
}

DenseOperator exact_propagator(const DenseOperator& hd, double t) {
    const EigenSystem sys = exact_eigensolve(hd);
    Eigen::VectorXcd phases(sys.values.size());
    for (Eigen::Index i = 0; i < sys.values.size(); ++i)
        phases(i) = std::polar(1.0, -sys.values(i) * t);
    Eigen::MatrixXcd u = sys.vectors * phases.asDiagonal() * sys.vectors.adjoint();
    return DenseOperator{hd.dim, std::move(u)};
}

double operator_norm(const Eigen::MatrixXcd& m) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

double trotter_error(const ClassifiedHamiltonian& h, const DeterminantSpace& space,
                     const TrotterConfig& cfg, std::uint64_t dim_cap) {
    check_cap(space, dim_cap);
    ClassifiedHamiltonian terms_only = h;
    terms_only.offset = 0.0;

    const DenseOperator hd = build_dense_hamiltonian(terms_only, space, dim_cap);
    const DenseOperator exact = exact_propagator(hd, cfg.t);

    const TrotterStepper stepper(terms_only, space, cfg);
    const DenseOperator step = lift_to_dense(stepper);

    // step^r by binary powering.
    const auto dim = static_cast<Eigen::Index>(space.dimension);
    Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::MatrixXcd base = step.entries;
    int e = cfg.r;
    while (e > 0) {
        if (e & 1) power = power * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return operator_norm(power - exact.entries);
}

DenseOperator lift_to_dense(const StepOperator& step) {
    const DeterminantSpace& space = step.space();
    const auto dim = static_cast<Eigen::Index>(space.dimension);
    Eigen::MatrixXcd m(dim, dim);
    StateVector basis_state(space);
    for (Eigen::Index col = 0; col < dim; ++col) {
        std::fill(basis_state.amps.begin(), basis_state.amps.end(), Complex{0, 0});
        basis_state.amps[static_cast<std::size_t>(col)] = Complex{1, 0};
        step.apply(basis_state);
        for (Eigen::Index row = 0; row < dim; ++row)
            m(row, col) = basis_state.amps[static_cast<std::size_t>(row)];
    }
    return DenseOperator{space.dimension, std::move(m)};
}

Ansatz eigenvector_ansatz(const EigenSystem& system, Eigen::Index which,
                          const DeterminantSpace& space) {
    if (which < 0 || which >= system.vectors.cols())
        throw InputError("eigenvector_ansatz: eigenvector index out of range");
    Ansatz ansatz;
    for (std::uint64_t c1 = 0; c1 < space.dim_alpha; ++c1) {
        const Mask a = unrank_mask(c1, space.n, space.k_alpha);
        for (std::uint64_t c2 = 0; c2 < space.dim_beta; ++c2) {
            const std::uint64_t flat = c1 * space.dim_beta + c2;
            const Complex amp = system.vectors(static_cast<Eigen::Index>(flat), which);
            if (std::abs(amp) > 0.0)
                ansatz.entries.push_back(
                    Ansatz::Entry{a, unrank_mask(c2, space.n, space.k_beta), amp});
        }
    }
    return ansatz;
}

DenseStepOperator::DenseStepOperator(DenseOperator u, const DeterminantSpace& space)
    : u_(std::move(u)), space_(space) {
    if (u_.dim != space.dimension)
        throw InputError("DenseStepOperator: operator and space dimensions differ");
}

void DenseStepOperator::apply(StateVector& state) const {
    Eigen::Map<Eigen::VectorXcd> amps(state.amps.data(),
                                      static_cast<Eigen::Index>(state.amps.size()));
    amps = u_.entries * amps;
}

} // namespace detqpe::oracle
