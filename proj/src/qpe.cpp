#include "detqpe/qpe.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <cstring>

#include <fftw3.h>

#include "detqpe/errors.hpp"

namespace detqpe {

namespace {

constexpr double kBinClampFloor = -1e-9; ///< more negative than this is a breakdown
constexpr double kSumTolerance = 1e-6;

std::uint64_t checked_bins(int p) {
    if (p < 1 || p > 30) throw InputError("QPE precision bits must lie in [1, 30]");
    return std::uint64_t{1} << p;
}

double kahan_sum(const std::vector<double>& xs) {
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
        const double t = x - comp;
        const double next = sum + t;
        comp = (next - sum) - t;
        sum = next;
    }
    return sum;
}

// Clamp DFT noise and renormalize; beyond tolerance the run is numerically
// broken and the caller must not trust it.
void finalize_distribution(PhaseDistribution& dist) {
    for (double& p : dist.probs) {
        if (p < kBinClampFloor)
            throw NumericError("phase distribution has a significantly negative bin");
        if (p < 0.0) p = 0.0;
    }
    const double total = kahan_sum(dist.probs);
    if (std::abs(total - 1.0) > kSumTolerance)
        throw NumericError("phase distribution lost normalization: sum = " +
                           std::to_string(total));
    for (double& p : dist.probs) p /= total;
}

} // namespace

double PhaseDistribution::sum() const { return kahan_sum(probs); }

PhaseDistribution run_layered(const StepOperator& w, const StateVector& psi0, int p,
                              std::uint64_t memory_budget_bytes, double step_phase) {
    const std::uint64_t bins = checked_bins(p);
    const std::uint64_t dim = w.space().dimension;
    if (psi0.amps.size() != dim) throw InputError("run_layered: ansatz/space dimension mismatch");

    const std::uint64_t need = 16 * bins * dim + 16 * dim;
    if (need > memory_budget_bytes)
        throw InputError("layered mode needs " + std::to_string(need) +
                         " bytes, over the budget of " + std::to_string(memory_budget_bytes) +
                         "; use overlap mode");

    // layers[j * dim + x] = (W^j psi0)(x), with the per-step extra phase.
    std::vector<Complex> layers(bins * dim);
    StateVector work = psi0;
    std::memcpy(layers.data(), work.amps.data(), dim * sizeof(Complex));
    Complex accumulated_phase{1.0, 0.0};
    const Complex phase_step = std::polar(1.0, -step_phase);
    for (std::uint64_t j = 1; j < bins; ++j) {
        w.apply(work);
        accumulated_phase *= phase_step;
        Complex* row = layers.data() + j * dim;
        for (std::uint64_t x = 0; x < dim; ++x) row[x] = accumulated_phase * work.amps[x];
    }

    // DFT over the layer index for every configuration x (stride = dim).
    {
        const int n_fft = static_cast<int>(bins);
        fftw_plan plan = fftw_plan_many_dft(
            1, &n_fft, static_cast<int>(dim), reinterpret_cast<fftw_complex*>(layers.data()),
            nullptr, static_cast<int>(dim), 1, reinterpret_cast<fftw_complex*>(layers.data()),
            nullptr, static_cast<int>(dim), 1, FFTW_FORWARD, FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }

    PhaseDistribution dist{p, std::vector<double>(bins, 0.0)};
    const double scale = 1.0 / (static_cast<double>(bins) * static_cast<double>(bins));
    for (std::uint64_t m = 0; m < bins; ++m) {
        double sum = 0.0, comp = 0.0;
        const Complex* row = layers.data() + m * dim;
        for (std::uint64_t x = 0; x < dim; ++x) {
            const double term = std::norm(row[x]) - comp;
            const double next = sum + term;
            comp = (next - sum) - term;
            sum = next;
        }
        dist.probs[m] = scale * sum;
    }
    finalize_distribution(dist);
    return dist;
}

PhaseDistribution run_overlap(const StepOperator& w, const StateVector& psi0, int p,
                              double step_phase) {
    const std::uint64_t bins = checked_bins(p);
    const std::uint64_t dim = w.space().dimension;
    if (psi0.amps.size() != dim) throw InputError("run_overlap: ansatz/space dimension mismatch");

    std::vector<Complex> autocorr(bins);
    autocorr[0] = Complex{1.0, 0.0}; // normalized ansatz
    StateVector psi = psi0;
    for (std::uint64_t d = 1; d < bins; ++d) {
        w.apply(psi);
        autocorr[d] = inner_product(psi0, psi) * std::polar(1.0, -step_phase * static_cast<double>(d));
    }

    // Triangular-weighted two-sided sequence packed for a length-2N DFT:
    // index d in [0, N) holds (N-d) a(d), index 2N-d holds (N-d) conj(a(d)).
    const std::uint64_t n2 = 2 * bins;
    std::vector<Complex> padded(n2, Complex{0.0, 0.0});
    padded[0] = static_cast<double>(bins) * autocorr[0];
    for (std::uint64_t d = 1; d < bins; ++d) {
        const double weight = static_cast<double>(bins - d);
        padded[d] = weight * autocorr[d];
        padded[n2 - d] = weight * std::conj(autocorr[d]);
    }

    std::vector<Complex> spectrum(n2);
    {
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n2),
                                          reinterpret_cast<fftw_complex*>(padded.data()),
                                          reinterpret_cast<fftw_complex*>(spectrum.data()),
                                          FFTW_FORWARD, FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }

    PhaseDistribution dist{p, std::vector<double>(bins, 0.0)};
    const double scale = 1.0 / (static_cast<double>(bins) * static_cast<double>(bins));
    for (std::uint64_t m = 0; m < bins; ++m) dist.probs[m] = scale * spectrum[2 * m].real();
    finalize_distribution(dist);
    return dist;
}

namespace {

PhaseDistribution run_with_mode(const ClassifiedHamiltonian& h, const Ansatz& ansatz,
                                const QpeConfig& cfg, QpeMode mode) {
    DeterminantSpace space;
    // Electron counts come from the ansatz itself; they are validated there.
    if (ansatz.entries.empty()) throw InputError("QPE needs a non-empty ansatz");
    const int ka = std::popcount(ansatz.entries.front().alpha);
    const int kb = std::popcount(ansatz.entries.front().beta);
    space = DeterminantSpace(h.n_orbitals, ka, kb);

    const TrotterStepper stepper(h, space, cfg.trotter);
    const StateVector psi0 = ansatz.to_state(space);
    const double step_phase =
        cfg.include_offset_phase ? stepper.offset() * stepper.theta_scale() : 0.0;
    if (mode == QpeMode::kLayered)
        return run_layered(stepper, psi0, cfg.p, cfg.memory_budget_bytes, step_phase);
    return run_overlap(stepper, psi0, cfg.p, step_phase);
}

} // namespace

PhaseDistribution run_layered(const ClassifiedHamiltonian& h, const Ansatz& ansatz,
                              const QpeConfig& cfg) {
    return run_with_mode(h, ansatz, cfg, QpeMode::kLayered);
}

PhaseDistribution run_overlap(const ClassifiedHamiltonian& h, const Ansatz& ansatz,
                              const QpeConfig& cfg) {
    return run_with_mode(h, ansatz, cfg, QpeMode::kOverlap);
}

PhaseDistribution run_qpe(const ClassifiedHamiltonian& h, const Ansatz& ansatz,
                          const QpeConfig& cfg) {
    return run_with_mode(h, ansatz, cfg, cfg.mode);
}

MemoryEstimate memory_estimate(const DeterminantSpace& space, int p, QpeMode mode) {
    const std::uint64_t bins = checked_bins(p);
    MemoryEstimate est;
    if (mode == QpeMode::kLayered)
        est.bytes = 16 * bins * space.dimension + 16 * space.dimension;
    else
        est.bytes = 32 * space.dimension + 16 * 2 * bins;
    est.reduction_factor = std::ldexp(1.0, 2 * space.n) / static_cast<double>(space.dimension);
    return est;
}

} // namespace detqpe
