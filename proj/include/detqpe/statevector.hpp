#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "detqpe/determinants.hpp"

namespace detqpe {

using Complex = std::complex<double>;

/// Complex amplitudes over the restricted determinant space, indexed by
/// flat = c1 * dim_beta + c2.
struct StateVector {
    DeterminantSpace space;
    std::vector<Complex> amps;

    StateVector() = default;
    explicit StateVector(const DeterminantSpace& space);

    double norm() const; ///< Euclidean norm, compensated summation
    void normalize();    ///< throws NumericError on a zero vector
};

/// Compensated inner product <a, b> = sum conj(a_i) b_i.
Complex inner_product(const StateVector& a, const StateVector& b);

/// Sparse starting state: a list of determinants with complex weights.
struct Ansatz {
    struct Entry {
        Mask alpha;
        Mask beta;
        Complex amplitude;
    };
    std::vector<Entry> entries;

    /// Dense normalized state over `space`; validates popcounts and
    /// duplicates against the space.
    StateVector to_state(const DeterminantSpace& space) const;

    static Ansatz single_determinant(Mask alpha, Mask beta);
    /// Lowest k_alpha / k_beta orbitals occupied.
    static Ansatz hartree_fock(const DeterminantSpace& space);
};

/// Parse ansatz text: one determinant per line, "alpha_bits beta_bits re im"
/// with bit strings written most-significant-orbital first (rightmost char is
/// orbital 0). Blank lines and lines starting with '#' are skipped.
Ansatz load_ansatz(std::istream& text, const DeterminantSpace& space);
Ansatz load_ansatz_string(const std::string& text, const DeterminantSpace& space);
Ansatz load_ansatz_file(const std::string& path, const DeterminantSpace& space);

std::string serialize_ansatz(const Ansatz& ansatz, int n_orbitals);

} // namespace detqpe
