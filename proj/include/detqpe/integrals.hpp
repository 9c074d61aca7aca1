#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace detqpe {

/// Spatial-orbital one- and two-electron integrals plus the scalar core
/// energy. Two-body values are chemists' notation (pq|rs) with the full
/// 8-fold permutational symmetry stored explicitly.
struct IntegralSet {
    int n_orbitals = 0;
    int n_alpha = 0;
    int n_beta = 0;
    double core_energy = 0.0;
    std::vector<double> one_body; ///< n*n, h(p,q)
    std::vector<double> two_body; ///< n^4, v(p,q,r,s) = (pq|rs)

    IntegralSet() = default;
    IntegralSet(int n_orbitals, int n_alpha, int n_beta);

    double h(int p, int q) const { return one_body[idx2(p, q)]; }
    double v(int p, int q, int r, int s) const { return two_body[idx4(p, q, r, s)]; }

    void set_h(int p, int q, double value); ///< sets both symmetric slots
    void set_v(int p, int q, int r, int s, double value); ///< sets all 8 images

    /// Checks index symmetry (1e-12) and electron-count bounds; throws on
    /// violation.
    void validate() const;

    std::size_t idx2(int p, int q) const {
        return static_cast<std::size_t>(p) * static_cast<std::size_t>(n_orbitals) +
               static_cast<std::size_t>(q);
    }
    std::size_t idx4(int p, int q, int r, int s) const {
        const auto n = static_cast<std::size_t>(n_orbitals);
        return ((static_cast<std::size_t>(p) * n + static_cast<std::size_t>(q)) * n +
                static_cast<std::size_t>(r)) *
                   n +
               static_cast<std::size_t>(s);
    }
};

/// Parse FCIDUMP text: a &FCI header naming NORB, NELEC (and optionally MS2),
/// then `value i j k l` lines with 1-based indices. `value i j 0 0` is
/// one-body, `value 0 0 0 0` the core energy, anything else two-body (ij|kl).
IntegralSet parse_fcidump(std::istream& text);
IntegralSet parse_fcidump_string(const std::string& text);
IntegralSet parse_fcidump_file(const std::string& path);

/// Canonical FCIDUMP serialization (one line per symmetry-distinct entry).
std::string serialize_fcidump(const IntegralSet& ints);

} // namespace detqpe
