#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "detqpe/errors.hpp"
#include "detqpe/hamiltonian.hpp"
#include "detqpe/integrals.hpp"
#include "detqpe/oracle.hpp"
#include "test_util.hpp"

using namespace detqpe;
using detqpe::testing::data_path;
using detqpe::testing::max_abs_diff;
using detqpe::testing::random_integrals;

TEST_CASE("fcidump header and core-only file") {
    const auto ints = parse_fcidump_string("&FCI NORB=2,NELEC=2,MS2=0,\n&END\n0.5 0 0 0 0\n");
    CHECK(ints.n_orbitals == 2);
    CHECK(ints.n_alpha == 1);
    CHECK(ints.n_beta == 1);
    CHECK(ints.core_energy == doctest::Approx(0.5));
    for (double h : ints.one_body) CHECK(h == 0.0);
    for (double v : ints.two_body) CHECK(v == 0.0);
}

TEST_CASE("two-body entries expand to all 8 permutations") {
    const auto ints =
        parse_fcidump_string("&FCI NORB=2,NELEC=2,MS2=0,\n&END\n0.1813 1 2 1 2\n");
    const int idx[8][4] = {{0, 1, 0, 1}, {1, 0, 0, 1}, {0, 1, 1, 0}, {1, 0, 1, 0},
                           {0, 1, 0, 1}, {1, 0, 0, 1}, {0, 1, 1, 0}, {1, 0, 1, 0}};
    for (const auto& q : idx) CHECK(ints.v(q[0], q[1], q[2], q[3]) == doctest::Approx(0.1813));
    CHECK(ints.v(0, 0, 0, 0) == 0.0);
}

TEST_CASE("fcidump error paths") {
    CHECK_THROWS_AS(parse_fcidump_string("NORB=2\n0.5 0 0 0 0\n"), InputError); // no &FCI
    CHECK_THROWS_AS(parse_fcidump_string("&FCI NELEC=2,\n&END\n"), InputError); // no NORB
    CHECK_THROWS_AS(parse_fcidump_string("&FCI NORB=2,NELEC=2,MS2=1,\n&END\n"),
                    InputError); // odd NELEC+MS2
    CHECK_THROWS_AS(parse_fcidump_string("&FCI NORB=2,NELEC=2,MS2=0,\n&END\n1.0 3 1 0 0\n"),
                    InputError); // index out of range
    CHECK_THROWS_AS(parse_fcidump_string("&FCI NORB=2,NELEC=2,MS2=0,\n&END\nnope 1 1 0 0\n"),
                    InputError); // malformed entry
    // conflicting duplicates: the same slot set twice beyond 1e-10
    CHECK_THROWS_AS(
        parse_fcidump_string("&FCI NORB=2,NELEC=2,MS2=0,\n&END\n1.0 1 2 0 0\n1.1 2 1 0 0\n"),
        InputError);
    // agreeing duplicates pass
    CHECK_NOTHROW(
        parse_fcidump_string("&FCI NORB=2,NELEC=2,MS2=0,\n&END\n1.0 1 2 0 0\n1.0 2 1 0 0\n"));
    // electron counts must stay physical
    CHECK_THROWS_AS(parse_fcidump_string("&FCI NORB=2,NELEC=6,MS2=0,\n&END\n"), InputError);
    CHECK_THROWS_AS(parse_fcidump_string("&FCI NORB=2,NELEC=2,MS2=2,\n&END\n"), InputError);
}

TEST_CASE("classify: zero integrals leave only the offset") {
    IntegralSet ints(3, 1, 1);
    ints.core_energy = 0.7;
    const auto h = expand_and_classify(ints);
    CHECK(h.offset == doctest::Approx(0.7));
    CHECK(h.term_count() == 0);
}

TEST_CASE("classify: single diagonal one-body entry gives two pp terms") {
    IntegralSet ints(3, 1, 1);
    ints.set_h(0, 0, -1.25);
    const auto h = expand_and_classify(ints);
    REQUIRE(h.pp_terms.size() == 2);
    CHECK(h.pp_terms[0].p == 0);
    CHECK(h.pp_terms[0].h == doctest::Approx(-1.25));
    CHECK(h.pp_terms[1].p == 3); // beta partner at p = n
    CHECK(h.pp_terms[1].h == doctest::Approx(-1.25));
    CHECK(h.pqqp_terms.empty());
    CHECK(h.pq_terms.empty());
    CHECK(h.pqqr_terms.empty());
    CHECK(h.pqrs_terms.empty());
}

TEST_CASE("reconstruction contract: classified terms rebuild the integral Hamiltonian") {
    std::mt19937 rng(7001);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const int ka = 1 + static_cast<int>(rng() % n);
        const int kb = 1 + static_cast<int>(rng() % n);
        const auto ints = random_integrals(rng, n, ka, kb);
        const auto h = expand_and_classify(ints);
        const DeterminantSpace space(n, ka, kb);
        const auto via_terms = oracle::build_dense_hamiltonian(h, space);
        const auto direct = oracle::build_dense_from_integrals(ints, space);
        CHECK(max_abs_diff(via_terms.entries, direct.entries) < 1e-12);
    }
}

TEST_CASE("classified lists are duplicate-free under canonical keys") {
    std::mt19937 rng(7002);
    const auto ints = random_integrals(rng, 4, 2, 2);
    const auto h = expand_and_classify(ints);
    const int n_so = 2 * h.n_orbitals;

    std::set<int> pp;
    for (const auto& t : h.pp_terms) {
        CHECK(t.p >= 0);
        CHECK(t.p < n_so);
        CHECK(pp.insert(t.p).second);
    }
    std::set<std::pair<int, int>> pqqp;
    for (const auto& t : h.pqqp_terms) {
        CHECK(t.p < t.q);
        CHECK(pqqp.insert({t.p, t.q}).second);
    }
    std::set<std::pair<int, int>> pq;
    for (const auto& t : h.pq_terms) {
        CHECK(t.p < t.q);
        CHECK((t.p < h.n_orbitals) == (t.q < h.n_orbitals)); // same spin block
        CHECK(pq.insert({t.p, t.q}).second);
    }
    std::set<std::tuple<int, int, int>> pqqr;
    for (const auto& t : h.pqqr_terms) {
        CHECK(t.p < t.r);
        CHECK(t.q != t.p);
        CHECK(t.q != t.r);
        CHECK((t.p < h.n_orbitals) == (t.r < h.n_orbitals));
        CHECK(pqqr.insert({t.p, t.q, t.r}).second);
    }
    std::set<std::tuple<int, int, int, int>> pqrs;
    for (const auto& t : h.pqrs_terms) {
        CHECK(t.p < t.q);
        CHECK(t.r < t.s);
        CHECK(std::make_pair(t.p, t.q) <= std::make_pair(t.r, t.s));
        CHECK((t.p < h.n_orbitals) == (t.r < h.n_orbitals));
        CHECK((t.q < h.n_orbitals) == (t.s < h.n_orbitals));
        CHECK(pqrs.insert({t.p, t.q, t.r, t.s}).second);
    }
}

TEST_CASE("drop threshold removes small couplings only") {
    IntegralSet ints(2, 1, 1);
    ints.set_h(0, 0, -1.0);
    ints.set_h(0, 1, 1e-14);
    const auto strict = expand_and_classify(ints, 1e-12);
    CHECK(strict.pq_terms.empty());
    CHECK(strict.pp_terms.size() == 2);
    const auto keep_all = expand_and_classify(ints, 0.0);
    CHECK(keep_all.pq_terms.size() == 2);
}

TEST_CASE("serialize/parse round trip preserves the dense Hamiltonian") {
    std::mt19937 rng(7003);
    const auto ints = random_integrals(rng, 3, 2, 1);
    const auto reparsed = parse_fcidump_string(serialize_fcidump(ints));
    CHECK(reparsed.n_alpha == ints.n_alpha);
    CHECK(reparsed.n_beta == ints.n_beta);
    const DeterminantSpace space(3, 2, 1);
    const auto a = oracle::build_dense_hamiltonian(expand_and_classify(ints), space);
    const auto b = oracle::build_dense_hamiltonian(expand_and_classify(reparsed), space);
    CHECK(max_abs_diff(a.entries, b.entries) < 1e-12);
}

TEST_CASE("H2 fixture: FCI ground energy agrees between both dense routes") {
    const auto ints = parse_fcidump_file(data_path("h2_sto3g.fcidump"));
    CHECK(ints.n_orbitals == 2);
    CHECK(ints.n_alpha == 1);
    CHECK(ints.n_beta == 1);
    const DeterminantSpace space(2, 1, 1);
    const auto via_terms = oracle::build_dense_hamiltonian(expand_and_classify(ints), space);
    const auto direct = oracle::build_dense_from_integrals(ints, space);
    CHECK(max_abs_diff(via_terms.entries, direct.entries) < 1e-12);
    const auto system = oracle::exact_eigensolve(via_terms);
    const auto reference = oracle::exact_eigensolve(direct);
    CHECK(system.values(0) == doctest::Approx(reference.values(0)).epsilon(1e-12));
    // a bound state below the bare core repulsion
    CHECK(system.values(0) < 0.0);
}

TEST_CASE("json dump carries every term class") {
    std::mt19937 rng(7004);
    const auto h = expand_and_classify(random_integrals(rng, 3, 2, 1));
    const std::string json = to_json(h);
    for (const char* key : {"\"offset\"", "\"pp\"", "\"pqqp\"", "\"pq\"", "\"pqqr\"", "\"pqrs\""})
        CHECK(json.find(key) != std::string::npos);
}
