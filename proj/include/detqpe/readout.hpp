#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "detqpe/qpe.hpp"

namespace detqpe {

struct Peak {
    std::uint64_t m = 0;
    double prob = 0.0;
    bool neighbors_merged = false; ///< an adjacent bin (cyclically) is also above threshold
};

/// All bins with prob >= threshold, sorted by descending probability.
std::vector<Peak> find_peaks(const PhaseDistribution& dist, double threshold);

struct EnergyEstimate {
    double energy = 0.0;   ///< Hartree, offset included
    double phase = 0.0;    ///< phi = m / 2^p in [0, 1)
    long alias_k = 0;      ///< integer winding; the phase wraps with period 2*pi*r/t
    double resolution = 0.0; ///< 2*pi*r / (t * 2^p)
};

/// E = -(2*pi*r/t) * (phi + alias_k) + offset, where offset is the scalar
/// tracked by the Trotter engine.
EnergyEstimate phase_to_energy(std::uint64_t m, int p, int r, double t, long alias_k,
                               double offset);

/// Probability-weighted mean of (energy, weight) entries.
double weighted_average(const std::vector<std::pair<double, double>>& energies_with_weights);

/// Every alias candidate whose energy lands inside [e_lo, e_hi].
std::vector<EnergyEstimate> resolve_alias(std::uint64_t m, int p, int r, double t, double e_lo,
                                          double e_hi, double offset);

} // namespace detqpe
