#include "detqpe/statevector.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "detqpe/errors.hpp"

namespace detqpe {

StateVector::StateVector(const DeterminantSpace& s) : space(s), amps(s.dimension, Complex{0, 0}) {}

namespace {

// Kahan-compensated sum of |a_i|^2.
double norm_squared(const std::vector<Complex>& amps) {
    double sum = 0.0, comp = 0.0;
    for (const Complex& a : amps) {
        const double term = std::norm(a) - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    return sum;
}

} // namespace

double StateVector::norm() const { return std::sqrt(norm_squared(amps)); }

void StateVector::normalize() {
    const double n = norm();
    if (n == 0.0) throw NumericError("cannot normalize a zero state vector");
    for (Complex& a : amps) a /= n;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
    if (a.amps.size() != b.amps.size()) throw InputError("inner_product: dimension mismatch");
    double re = 0.0, re_c = 0.0, im = 0.0, im_c = 0.0;
    for (std::size_t i = 0; i < a.amps.size(); ++i) {
        const Complex term = std::conj(a.amps[i]) * b.amps[i];
        double t = term.real() - re_c;
        double next = re + t;
        re_c = (next - re) - t;
        re = next;
        t = term.imag() - im_c;
        next = im + t;
        im_c = (next - im) - t;
        im = next;
    }
    return {re, im};
}

StateVector Ansatz::to_state(const DeterminantSpace& space) const {
    if (entries.empty()) throw InputError("ansatz has no determinants");
    StateVector state(space);
    std::set<std::pair<Mask, Mask>> seen;
    for (const Entry& e : entries) {
        if (std::popcount(e.alpha) != space.k_alpha)
            throw InputError("ansatz determinant has wrong alpha electron count");
        if (std::popcount(e.beta) != space.k_beta)
            throw InputError("ansatz determinant has wrong beta electron count");
        if (!seen.insert({e.alpha, e.beta}).second)
            throw InputError("ansatz lists a determinant twice");
        const ConfigIndex idx{rank_mask(e.alpha, space.n, space.k_alpha),
                              rank_mask(e.beta, space.n, space.k_beta)};
        state.amps[idx.flat(space)] = e.amplitude;
    }
    state.normalize();
    return state;
}

Ansatz Ansatz::single_determinant(Mask alpha, Mask beta) {
    return Ansatz{{Entry{alpha, beta, Complex{1, 0}}}};
}

Ansatz Ansatz::hartree_fock(const DeterminantSpace& space) {
    const Mask a = space.k_alpha >= 64 ? ~Mask{0} : (Mask{1} << space.k_alpha) - 1;
    const Mask b = space.k_beta >= 64 ? ~Mask{0} : (Mask{1} << space.k_beta) - 1;
    return single_determinant(a, b);
}

Ansatz load_ansatz(std::istream& text, const DeterminantSpace& space) {
    Ansatz ansatz;
    std::string line;
    long lineno = 0;
    while (std::getline(text, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r\n");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        std::string alpha_bits, beta_bits;
        double re = 0.0, im = 0.0;
        if (!(ls >> alpha_bits >> beta_bits >> re >> im))
            throw InputError("ansatz: malformed line " + std::to_string(lineno));
        ansatz.entries.push_back(Ansatz::Entry{mask_from_string(alpha_bits, space.n),
                                               mask_from_string(beta_bits, space.n),
                                               Complex{re, im}});
    }
    // Validate eagerly so errors carry through with file context.
    (void)ansatz.to_state(space);
    return ansatz;
}

Ansatz load_ansatz_string(const std::string& text, const DeterminantSpace& space) {
    std::istringstream in(text);
    return load_ansatz(in, space);
}

Ansatz load_ansatz_file(const std::string& path, const DeterminantSpace& space) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open ansatz file: " + path);
    return load_ansatz(in, space);
}

std::string serialize_ansatz(const Ansatz& ansatz, int n_orbitals) {
    std::ostringstream out;
    char buf[96];
    for (const auto& e : ansatz.entries) {
        std::snprintf(buf, sizeof(buf), " %.17g %.17g\n", e.amplitude.real(), e.amplitude.imag());
        out << mask_to_string(e.alpha, n_orbitals) << ' ' << mask_to_string(e.beta, n_orbitals)
            << buf;
    }
    return out.str();
}

} // namespace detqpe
