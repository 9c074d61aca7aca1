#include "detqpe/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>
#include <utility>

#include <nlohmann/json.hpp>

#include "detqpe/errors.hpp"

namespace detqpe {

double ClassifiedHamiltonian::coefficient_norm() const {
    double sum = 0.0;
    for (const auto& t : pp_terms) sum += std::abs(t.h);
    for (const auto& t : pqqp_terms) sum += std::abs(t.h);
    for (const auto& t : pq_terms) sum += std::abs(t.h);
    for (const auto& t : pqqr_terms) sum += std::abs(t.h);
    for (const auto& t : pqrs_terms) sum += std::abs(t.h);
    return sum;
}

namespace {

struct Accum {
    double value = 0.0;
    long seq = 0;
};

template <typename Key>
void add(std::map<Key, Accum>& bucket, const Key& key, double w, long& counter) {
    auto [it, inserted] = bucket.try_emplace(key);
    if (inserted) it->second.seq = counter++;
    it->second.value += w;
}

} // namespace

ClassifiedHamiltonian expand_and_classify(const IntegralSet& ints, double drop_threshold) {
    ints.validate();
    if (drop_threshold < 0) throw InputError("expand_and_classify: negative drop threshold");

    const int n = ints.n_orbitals;
    ClassifiedHamiltonian out;
    out.n_orbitals = n;
    out.offset = ints.core_energy;

    long counter = 0;
    std::map<int, Accum> pp;
    std::map<std::pair<int, int>, Accum> pqqp;                  // p < q
    std::map<std::pair<int, int>, Accum> pq;                    // p < q
    std::map<std::tuple<int, int, int>, Accum> pqqr;            // (q; p < r), both directions
    std::map<std::tuple<int, int, int, int>, Accum> pqrs;       // canonical, T and T^+ merged

    auto so = [n](int spatial, int spin) { return spatial + spin * n; };

    // One-body: h(i,j) a^+_{i sigma} a_{j sigma}.
    for (int spin = 0; spin < 2; ++spin)
        for (int i = 0; i < n; ++i) {
            if (ints.h(i, i) != 0.0) add(pp, so(i, spin), ints.h(i, i), counter);
            for (int j = i + 1; j < n; ++j)
                if (ints.h(i, j) != 0.0)
                    add(pq, std::make_pair(so(i, spin), so(j, spin)), ints.h(i, j), counter);
        }

    auto add_pqqr = [&](int num, int a, int b, double w) {
        // h * n_num a^+_a a_b; both directions land in one bucket and the
        // hermitian total is halved below.
        add(pqqr, std::make_tuple(num, std::min(a, b), std::max(a, b)), w, counter);
    };

    auto add_pqrs = [&](int P, int Q, int R, int S, double w) {
        // Canonicalize a^+_P a^+_Q a_S a_R: sort the creation and the
        // annihilation pair (each swap flips the sign), then fold the
        // hermitian partner (P,Q) <-> (R,S) into one bucket.
        if (P > Q) {
            std::swap(P, Q);
            w = -w;
        }
        if (R > S) {
            std::swap(R, S);
            w = -w;
        }
        if (std::make_pair(R, S) < std::make_pair(P, Q)) {
            std::swap(P, R);
            std::swap(Q, S);
        }
        add(pqrs, std::make_tuple(P, Q, R, S), w, counter);
    };

    // Two-body: (1/2) (ij|kl) a^+_{i sigma} a^+_{k tau} a_{l tau} a_{j sigma}.
    for (int sigma = 0; sigma < 2; ++sigma)
        for (int tau = 0; tau < 2; ++tau)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k)
                        for (int l = 0; l < n; ++l) {
                            const double w = 0.5 * ints.v(i, j, k, l);
                            if (w == 0.0) continue;
                            const int P = so(i, sigma);
                            const int R = so(j, sigma);
                            const int Q = so(k, tau);
                            const int S = so(l, tau);
                            if (P == Q || R == S) continue; // a^+a^+ or aa on one orbital
                            if (P == R && Q == S) {
                                add(pqqp, std::make_pair(std::min(P, Q), std::max(P, Q)), w, counter);
                            } else if (P == S && Q == R) {
                                add(pqqp, std::make_pair(std::min(P, Q), std::max(P, Q)), -w, counter);
                            } else if (P == R) {
                                add_pqqr(P, Q, S, w);
                            } else if (Q == S) {
                                add_pqqr(Q, P, R, w);
                            } else if (P == S) {
                                add_pqqr(P, Q, R, -w);
                            } else if (Q == R) {
                                add_pqqr(Q, P, S, -w);
                            } else {
                                add_pqrs(P, Q, R, S, w);
                            }
                        }

    const auto keep = [&](double h) { return std::abs(h) >= drop_threshold && h != 0.0; };
    for (const auto& [p, acc] : pp)
        if (keep(acc.value)) out.pp_terms.push_back({p, acc.value, acc.seq});
    for (const auto& [key, acc] : pqqp)
        if (keep(acc.value)) out.pqqp_terms.push_back({key.first, key.second, acc.value, acc.seq});
    for (const auto& [key, acc] : pq)
        if (keep(acc.value)) out.pq_terms.push_back({key.first, key.second, acc.value, acc.seq});
    // pqqr/pqrs buckets hold both hermitian directions; each direction carries
    // half of the accumulated value.
    for (const auto& [key, acc] : pqqr) {
        const double h = 0.5 * acc.value;
        if (keep(h))
            out.pqqr_terms.push_back({std::get<1>(key), std::get<0>(key), std::get<2>(key), h,
                                      acc.seq});
    }
    for (const auto& [key, acc] : pqrs) {
        const double h = 0.5 * acc.value;
        if (keep(h))
            out.pqrs_terms.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key),
                                      std::get<3>(key), h, acc.seq});
    }
    return out;
}

std::string to_json(const ClassifiedHamiltonian& h) {
    nlohmann::json j;
    j["n_orbitals"] = h.n_orbitals;
    j["n_spin_orbitals"] = 2 * h.n_orbitals;
    j["offset"] = h.offset;
    auto& pp = j["pp"] = nlohmann::json::array();
    for (const auto& t : h.pp_terms) pp.push_back({{"p", t.p}, {"h", t.h}});
    auto& pqqp = j["pqqp"] = nlohmann::json::array();
    for (const auto& t : h.pqqp_terms) pqqp.push_back({{"p", t.p}, {"q", t.q}, {"h", t.h}});
    auto& pq = j["pq"] = nlohmann::json::array();
    for (const auto& t : h.pq_terms) pq.push_back({{"p", t.p}, {"q", t.q}, {"h", t.h}});
    auto& pqqr = j["pqqr"] = nlohmann::json::array();
    for (const auto& t : h.pqqr_terms)
        pqqr.push_back({{"p", t.p}, {"q", t.q}, {"r", t.r}, {"h", t.h}});
    auto& pqrs = j["pqrs"] = nlohmann::json::array();
    for (const auto& t : h.pqrs_terms)
        pqrs.push_back({{"p", t.p}, {"q", t.q}, {"r", t.r}, {"s", t.s}, {"h", t.h}});
    return j.dump(2);
}

} // namespace detqpe
