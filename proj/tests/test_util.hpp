#pragma once

#include <cstdlib>
#include <random>
#include <string>

#include "detqpe/hamiltonian.hpp"
#include "detqpe/integrals.hpp"
#include "detqpe/oracle.hpp"

namespace detqpe::testing {

inline std::string data_dir() {
    if (const char* env = std::getenv("DETQPE_DATA_DIR")) return env;
    return "data";
}

inline std::string data_path(const std::string& name) { return data_dir() + "/" + name; }

/// Random IntegralSet with the full index symmetry baked in.
inline IntegralSet random_integrals(std::mt19937& rng, int n, int n_alpha, int n_beta,
                                    double scale = 1.0) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    IntegralSet ints(n, n_alpha, n_beta);
    ints.core_energy = dist(rng);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q <= p; ++q) ints.set_h(p, q, dist(rng));
    for (int p = 0; p < n; ++p)
        for (int q = 0; q <= p; ++q)
            for (int r = 0; r <= p; ++r)
                for (int s = 0; s <= r; ++s) {
                    if (r == p && s > q) continue;
                    ints.set_v(p, q, r, s, dist(rng));
                }
    return ints;
}

inline double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace detqpe::testing
