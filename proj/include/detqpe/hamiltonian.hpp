#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "detqpe/integrals.hpp"

namespace detqpe {

// Second-quantized terms over spin orbitals in blocked order (alpha = [0, n),
// beta = [n, 2n)). Off-diagonal terms carry one real coefficient for the
// merged hermitian pair.

struct PpTerm {
    int p;
    double h; ///< h * n_p
    long seq; ///< first-occurrence order during expansion
};

struct PqqpTerm {
    int p, q; ///< p < q
    double h; ///< h * n_p n_q
    long seq;
};

struct PqTerm {
    int p, q; ///< p < q, same spin block
    double h; ///< h * (a^+_p a_q + a^+_q a_p)
    long seq;
};

struct PqqrTerm {
    int p, q, r; ///< p < r, q not in {p, r}
    double h;    ///< h * n_q (a^+_p a_r + a^+_r a_p)
    long seq;
};

struct PqrsTerm {
    int p, q, r, s; ///< p < q, r < s, (p,q) <= (r,s); spin(p)=spin(r), spin(q)=spin(s)
    double h;       ///< h * (a^+_p a^+_q a_s a_r + h.c.)
    long seq;
};

/// The Hamiltonian split into the five determinant-level update classes plus
/// a scalar offset (core energy and any folded constants).
struct ClassifiedHamiltonian {
    int n_orbitals = 0; ///< spatial orbitals; spin-orbital indices run in [0, 2n)
    double offset = 0.0;
    std::vector<PpTerm> pp_terms;
    std::vector<PqqpTerm> pqqp_terms;
    std::vector<PqTerm> pq_terms;
    std::vector<PqqrTerm> pqqr_terms;
    std::vector<PqrsTerm> pqrs_terms;

    std::size_t term_count() const {
        return pp_terms.size() + pqqp_terms.size() + pq_terms.size() + pqqr_terms.size() +
               pqrs_terms.size();
    }
    /// Sum of |h| over every term; enters the first-order Trotter bound.
    double coefficient_norm() const;
};

/// Expand spatial integrals to spin-orbital terms and classify them.
/// Hermitian partners are merged, spin-forbidden terms never appear, and
/// coefficients with |h| < drop_threshold are dropped.
ClassifiedHamiltonian expand_and_classify(const IntegralSet& ints, double drop_threshold = 1e-12);

/// JSON serialization of the term lists (debugging aid; schema in README).
std::string to_json(const ClassifiedHamiltonian& h);

} // namespace detqpe
