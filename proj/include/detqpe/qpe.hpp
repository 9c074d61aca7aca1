#pragma once

#include <cstdint>
#include <vector>

#include "detqpe/hamiltonian.hpp"
#include "detqpe/statevector.hpp"
#include "detqpe/trotter.hpp"

namespace detqpe {

enum class QpeMode { kLayered, kOverlap };

struct QpeConfig {
    int p = 10; ///< precision bits; the distribution has 2^p bins
    TrotterConfig trotter;
    QpeMode mode = QpeMode::kOverlap;
    std::uint64_t memory_budget_bytes = std::uint64_t{4} << 30; ///< layered-mode guard
    /// When set, each controlled-U application also carries the scalar
    /// offset as the phase exp(-i * offset * t/r), so the measured phase maps
    /// to the total energy. Off by default: the offset is added back
    /// arithmetically during readout instead.
    bool include_offset_phase = false;
};

/// Probability of each phase integer m in [0, 2^p).
struct PhaseDistribution {
    int p = 0;
    std::vector<double> probs;

    double sum() const;
};

/// Literal layered emulation: keeps all 2^p layers W^j psi_0 and Fourier
/// transforms across layers. `step_phase` is an extra phase angle applied
/// per W application.
PhaseDistribution run_layered(const StepOperator& w, const StateVector& psi0, int p,
                              std::uint64_t memory_budget_bytes, double step_phase = 0.0);

/// Memory-lean equivalent through the autocorrelations a(d) = <psi_0, W^d
/// psi_0>, evaluated with a length-2^(p+1) FFT. Two state vectors total.
PhaseDistribution run_overlap(const StepOperator& w, const StateVector& psi0, int p,
                              double step_phase = 0.0);

/// End-to-end drivers over the Trotterized step.
PhaseDistribution run_layered(const ClassifiedHamiltonian& h, const Ansatz& ansatz,
                              const QpeConfig& cfg);
PhaseDistribution run_overlap(const ClassifiedHamiltonian& h, const Ansatz& ansatz,
                              const QpeConfig& cfg);
PhaseDistribution run_qpe(const ClassifiedHamiltonian& h, const Ansatz& ansatz,
                          const QpeConfig& cfg);

struct MemoryEstimate {
    std::uint64_t bytes = 0;
    double reduction_factor = 0.0; ///< 2^(2n) / dimension vs an unrestricted register
};

MemoryEstimate memory_estimate(const DeterminantSpace& space, int p, QpeMode mode);

} // namespace detqpe
