#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "detqpe/determinants.hpp"
#include "detqpe/hamiltonian.hpp"
#include "detqpe/integrals.hpp"
#include "detqpe/statevector.hpp"
#include "detqpe/trotter.hpp"

namespace detqpe::oracle {

inline constexpr std::uint64_t kDefaultDimCap = 4096;

/// Dense complex operator over the determinant space in flat-index order.
struct DenseOperator {
    std::uint64_t dim = 0;
    Eigen::MatrixXcd entries;
};

/// offset * I + sum of all classified terms, assembled column by column with
/// the elementary creation/annihilation kernels.
DenseOperator build_dense_hamiltonian(const ClassifiedHamiltonian& h,
                                      const DeterminantSpace& space,
                                      std::uint64_t dim_cap = kDefaultDimCap);

/// The Hamiltonian assembled straight from the integrals (one-body products
/// plus the chemists'-notation two-body sum), bypassing classification. The
/// reference side of the reconstruction contract.
DenseOperator build_dense_from_integrals(const IntegralSet& ints, const DeterminantSpace& space,
                                         std::uint64_t dim_cap = kDefaultDimCap);

/// Dense matrix of a single classified term (coefficient included, no offset).
DenseOperator build_dense_term(const PpTerm& term, const DeterminantSpace& space);
DenseOperator build_dense_term(const PqqpTerm& term, const DeterminantSpace& space);
DenseOperator build_dense_term(const PqTerm& term, const DeterminantSpace& space);
DenseOperator build_dense_term(const PqqrTerm& term, const DeterminantSpace& space);
DenseOperator build_dense_term(const PqrsTerm& term, const DeterminantSpace& space);

struct EigenSystem {
    Eigen::VectorXd values;   ///< ascending
    Eigen::MatrixXcd vectors; ///< columns match values
};

/// Spectral decomposition of a Hermitian operator.
EigenSystem exact_eigensolve(const DenseOperator& hd);

/// exp(-i * Hd * t) through the spectral decomposition.
DenseOperator exact_propagator(const DenseOperator& hd, double t);

/// Largest singular value.
double operator_norm(const Eigen::MatrixXcd& m);

/// Operator-norm distance between the lifted r-step Trotter product and the
/// exact propagator of the term part of H (the commuting offset is excluded,
/// it contributes no splitting error).
double trotter_error(const ClassifiedHamiltonian& h, const DeterminantSpace& space,
                     const TrotterConfig& cfg, std::uint64_t dim_cap = kDefaultDimCap);

/// Lift any step operator to its dense matrix by applying it to basis states.
DenseOperator lift_to_dense(const StepOperator& step);

/// Ansatz holding one eigenvector (column `which` of the system).
Ansatz eigenvector_ansatz(const EigenSystem& system, Eigen::Index which,
                          const DeterminantSpace& space);

/// Step operator backed by a dense unitary; the oracle stand-in for the
/// Trotterized step.
class DenseStepOperator final : public StepOperator {
  public:
    DenseStepOperator(DenseOperator u, const DeterminantSpace& space);

    void apply(StateVector& state) const override;
    const DeterminantSpace& space() const override { return space_; }

  private:
    DenseOperator u_;
    DeterminantSpace space_;
};

} // namespace detqpe::oracle
