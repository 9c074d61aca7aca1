#pragma once

#include <complex>
#include <variant>
#include <vector>

#include "detqpe/determinants.hpp"
#include "detqpe/hamiltonian.hpp"
#include "detqpe/statevector.hpp"

namespace detqpe {

/// Order in which terms are exponentiated within one product-formula pass.
enum class TermOrdering {
    kDefault,  ///< diagonal classes first, then pq, pqqr, pqrs in canonical-key order
    kAsParsed, ///< every term in first-occurrence order from the expansion
};

struct TrotterConfig {
    double t = 1.0; ///< total evolution time
    int r = 1;      ///< Trotter steps; each step uses angle t/r
    TermOrdering ordering = TermOrdering::kDefault;
};

/// Per-determinant phase angles of the diagonal (pp + pqqp) part: entry
/// `flat` holds sum_p h_pp n_p + sum_{p<q} h_pqqp n_p n_q for that
/// configuration.
std::vector<double> diagonal_angles(const ClassifiedHamiltonian& h, const DeterminantSpace& space);

/// Multiplies every amplitude by exp(-i * angle * theta_scale).
void apply_diagonal(const std::vector<double>& angles, StateVector& state, double theta_scale);

/// Diagonal update straight from the term lists (theta_scale = t/r).
void apply_diagonal(const std::vector<PpTerm>& pp, const std::vector<PqqpTerm>& pqqp,
                    StateVector& state, double theta_scale);

/// exp(-i * theta * X) for one off-diagonal term X (coefficient folded into
/// theta = h * t / r). Applies the 2x2 rotation with entries cos(theta) and
/// (-1)^(eta+1) i sin(theta) to every connected configuration pair.
void apply_offdiagonal_term(const PqTerm& term, StateVector& state, double theta);
void apply_offdiagonal_term(const PqqrTerm& term, StateVector& state, double theta);
void apply_offdiagonal_term(const PqrsTerm& term, StateVector& state, double theta);

/// One application of a step unitary to a restricted state vector.
class StepOperator {
  public:
    virtual ~StepOperator() = default;
    virtual void apply(StateVector& state) const = 0;
    virtual const DeterminantSpace& space() const = 0;
};

/// First-order product formula W = prod_k exp(-i H_k t/r), applied once per
/// call. The scalar offset is tracked, not applied: probabilities are
/// insensitive to it and readout adds it back arithmetically.
class TrotterStepper final : public StepOperator {
  public:
    TrotterStepper(const ClassifiedHamiltonian& h, const DeterminantSpace& space,
                   const TrotterConfig& cfg);

    void apply(StateVector& state) const override;
    const DeterminantSpace& space() const override { return space_; }

    double offset() const { return offset_; }
    double theta_scale() const { return theta_scale_; }
    const TrotterConfig& config() const { return config_; }

  private:
    struct OrderedTerm {
        std::variant<PpTerm, PqqpTerm, PqTerm, PqqrTerm, PqrsTerm> term;
        long seq;
    };

    DeterminantSpace space_;
    TrotterConfig config_;
    double theta_scale_;
    double offset_;
    ClassifiedHamiltonian hamiltonian_;
    std::vector<Complex> diagonal_phase_; ///< cached exp(-i * angle * t/r)
    std::vector<OrderedTerm> schedule_;   ///< only for kAsParsed
};

/// Convenience wrapper: one Trotter step of H applied in place.
void apply_trotter_step(const ClassifiedHamiltonian& h, StateVector& state,
                        const TrotterConfig& cfg);

} // namespace detqpe
