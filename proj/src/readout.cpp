#include "detqpe/readout.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "detqpe/errors.hpp"

namespace detqpe {

std::vector<Peak> find_peaks(const PhaseDistribution& dist, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw InputError("find_peaks: threshold must lie in (0, 1)");
    const std::uint64_t bins = dist.probs.size();
    std::vector<Peak> peaks;
    for (std::uint64_t m = 0; m < bins; ++m) {
        if (dist.probs[m] < threshold) continue;
        const std::uint64_t prev = (m + bins - 1) % bins;
        const std::uint64_t next = (m + 1) % bins;
        const bool adjacent = (bins > 1) && (dist.probs[prev] >= threshold ||
                                             dist.probs[next] >= threshold);
        peaks.push_back(Peak{m, dist.probs[m], adjacent});
    }
    std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
        if (a.prob != b.prob) return a.prob > b.prob;
        return a.m < b.m;
    });
    return peaks;
}

EnergyEstimate phase_to_energy(std::uint64_t m, int p, int r, double t, long alias_k,
                               double offset) {
    if (p < 1) throw InputError("phase_to_energy: p must be >= 1");
    if (r < 1) throw InputError("phase_to_energy: r must be >= 1");
    if (t == 0.0) throw InputError("phase_to_energy: t must be nonzero");
    const double bins = std::ldexp(1.0, p);
    if (static_cast<double>(m) >= bins) throw InputError("phase_to_energy: m out of range");
    EnergyEstimate est;
    est.phase = static_cast<double>(m) / bins;
    est.alias_k = alias_k;
    const double period = 2.0 * std::numbers::pi * r / t;
    est.resolution = period / bins;
    est.energy = -period * (est.phase + static_cast<double>(alias_k)) + offset;
    return est;
}

double weighted_average(const std::vector<std::pair<double, double>>& energies_with_weights) {
    if (energies_with_weights.empty()) throw InputError("weighted_average: no entries");
    double num = 0.0, den = 0.0;
    for (const auto& [energy, weight] : energies_with_weights) {
        if (weight <= 0.0) throw InputError("weighted_average: weights must be positive");
        num += weight * energy;
        den += weight;
    }
    return num / den;
}

std::vector<EnergyEstimate> resolve_alias(std::uint64_t m, int p, int r, double t, double e_lo,
                                          double e_hi, double offset) {
    if (!(e_lo < e_hi)) throw InputError("resolve_alias: window must satisfy lo < hi");
    const double bins = std::ldexp(1.0, p);
    const double phi = static_cast<double>(m) / bins;
    const double period = 2.0 * std::numbers::pi * r / t;
    // E in [lo, hi]  <=>  k in [(offset - hi)/period - phi, (offset - lo)/period - phi]
    const double k_min = (offset - e_hi) / period - phi;
    const double k_max = (offset - e_lo) / period - phi;
    std::vector<EnergyEstimate> out;
    for (long k = static_cast<long>(std::ceil(k_min)); k <= static_cast<long>(std::floor(k_max));
         ++k) {
        EnergyEstimate est = phase_to_energy(m, p, r, t, k, offset);
        if (est.energy >= e_lo && est.energy <= e_hi) out.push_back(est);
    }
    return out;
}

} // namespace detqpe
