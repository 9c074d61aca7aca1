#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <set>
#include <vector>

#include "detqpe/determinants.hpp"
#include "detqpe/errors.hpp"
#include "detqpe/oracle.hpp"

using namespace detqpe;

TEST_CASE("dimension matches binomial products") {
    CHECK(dimension(1, 1, 0) == 1);
    CHECK(dimension(4, 2, 2) == 36);
    CHECK(dimension(15, 5, 5) == 9018009); // ~119x below the 2^30 unrestricted register
    CHECK(dimension(2, 1, 1) == 4);
    CHECK_THROWS_AS(dimension(4, 5, 1), InputError);
}

TEST_CASE("rank follows lexicographic subset order") {
    CHECK(rank_mask(0b0011, 4, 2) == 0); // {0,1}
    CHECK(rank_mask(0b0110, 4, 2) == 3); // {1,2}, after {0,1},{0,2},{0,3}
    CHECK(rank_mask(0b1100, 4, 2) == 5); // {2,3} is last
    CHECK_THROWS_AS(rank_mask(0b0111, 4, 2), InputError);
    CHECK_THROWS_AS(unrank_mask(6, 4, 2), InputError);
}

TEST_CASE("rank and unrank are inverse and monotone") {
    for (int n = 1; n <= 12; ++n) {
        for (int k = 0; k <= n; ++k) {
            const std::uint64_t count = binomial(n, k);
            std::vector<Mask> masks;
            for (std::uint64_t i = 0; i < count; ++i) {
                const Mask m = unrank_mask(i, n, k);
                CHECK(std::popcount(m) == k);
                CHECK(rank_mask(m, n, k) == i);
                masks.push_back(m);
            }
            // lex order over subsets-as-sorted-tuples is monotone in the rank
            for (std::size_t i = 1; i < masks.size(); ++i) {
                std::vector<int> a, b;
                for (int bit = 0; bit < n; ++bit) {
                    if (masks[i - 1] >> bit & 1) a.push_back(bit);
                    if (masks[i] >> bit & 1) b.push_back(bit);
                }
                CHECK(a < b);
            }
        }
    }
}

TEST_CASE("parity_between counts interior occupations") {
    CHECK(parity_between(0b1011, 0, 3) == 1);
    CHECK(parity_between(0b0101, 1, 2) == 0);
    CHECK(parity_between(0b0011, 0, 2) == 1);
    CHECK(parity_between(0b0011, 2, 0) == 1); // symmetric in the endpoints
}

TEST_CASE("single excitation kernel") {
    SUBCASE("shift with no interior electron") {
        auto res = apply_single_excitation(0b101, 1, 2); // {0,2}, p=1, r=2
        REQUIRE(res);
        CHECK(res->mask == 0b011);
        CHECK(res->sign == +1);
    }
    SUBCASE("interior electron flips the sign") {
        auto res = apply_single_excitation(0b011, 2, 0); // {0,1}, p=2, r=0
        REQUIRE(res);
        CHECK(res->mask == 0b110);
        CHECK(res->sign == -1);
    }
    SUBCASE("annihilating an empty orbital gives null") {
        CHECK(!apply_single_excitation(0b011, 1, 2));
    }
    SUBCASE("p equals r acts as the number operator") {
        auto res = apply_single_excitation(0b011, 1, 1);
        REQUIRE(res);
        CHECK(res->mask == 0b011);
        CHECK(res->sign == +1);
        CHECK(!apply_single_excitation(0b011, 2, 2));
    }
    SUBCASE("creating on an occupied orbital gives null") {
        CHECK(!apply_single_excitation(0b011, 0, 1));
    }
}

TEST_CASE("double excitation on determinant pairs") {
    const int n = 4;
    SUBCASE("same-spin double excitation reaches {2,3}") {
        auto res = apply_double_excitation(DetPair{0b0011, 0}, 2, 3, 0, 1, n);
        REQUIRE(res);
        CHECK(res->det.alpha == 0b1100);
        CHECK(res->det.beta == 0);
    }
    SUBCASE("annihilating the same orbital twice gives null") {
        CHECK(!apply_double_excitation(DetPair{0b0011, 0b0001}, 2, 3, 0, 0, n));
    }
    SUBCASE("cross-block sign factorizes into per-block signs") {
        // p,r alpha; q,s beta: total sign must equal the product of the
        // within-block single-excitation signs.
        for (Mask a = 0; a < 16; ++a)
            for (Mask b = 0; b < 16; ++b)
                for (int p = 0; p < n; ++p)
                    for (int r = 0; r < n; ++r)
                        for (int lq = 0; lq < n; ++lq)
                            for (int ls = 0; ls < n; ++ls) {
                                if (p == r || lq == ls) continue;
                                auto total =
                                    apply_double_excitation(DetPair{a, b}, p, n + lq, r, n + ls, n);
                                auto sa = apply_single_excitation(a, p, r);
                                auto sb = apply_single_excitation(b, lq, ls);
                                if (!sa || !sb) {
                                    CHECK(!total);
                                    continue;
                                }
                                REQUIRE(total);
                                CHECK(total->det.alpha == sa->mask);
                                CHECK(total->det.beta == sb->mask);
                                CHECK(total->sign == sa->sign * sb->sign);
                            }
    }
}

TEST_CASE("creation and annihilation anticommute") {
    // a_i a_j = -a_j a_i and the creation analog, witnessed on every
    // determinant pair with n <= 6 orbitals per spin.
    const int n = 6;
    for (Mask a = 0; a < (Mask{1} << n); ++a) {
        const DetPair det{a, (~a) & ((Mask{1} << n) - 1)};
        for (int i = 0; i < 2 * n; ++i)
            for (int j = 0; j < 2 * n; ++j) {
                if (i == j) continue;
                auto ij = apply_annihilation(det, j, n);
                std::optional<PairExcitation> lhs;
                if (ij) {
                    lhs = apply_annihilation(ij->det, i, n);
                    if (lhs) lhs->sign *= ij->sign;
                }
                auto ji = apply_annihilation(det, i, n);
                std::optional<PairExcitation> rhs;
                if (ji) {
                    rhs = apply_annihilation(ji->det, j, n);
                    if (rhs) rhs->sign *= ji->sign;
                }
                CHECK(lhs.has_value() == rhs.has_value());
                if (lhs && rhs) {
                    CHECK(lhs->det == rhs->det);
                    CHECK(lhs->sign == -rhs->sign);
                }

                auto cij = apply_creation(det, j, n);
                std::optional<PairExcitation> clhs;
                if (cij) {
                    clhs = apply_creation(cij->det, i, n);
                    if (clhs) clhs->sign *= cij->sign;
                }
                auto cji = apply_creation(det, i, n);
                std::optional<PairExcitation> crhs;
                if (cji) {
                    crhs = apply_creation(cji->det, j, n);
                    if (crhs) crhs->sign *= cji->sign;
                }
                CHECK(clhs.has_value() == crhs.has_value());
                if (clhs && crhs) {
                    CHECK(clhs->det == crhs->det);
                    CHECK(clhs->sign == -crhs->sign);
                }
            }
    }
}

TEST_CASE("mixed anticommutator a_p a_q^+ + a_q^+ a_p = delta_pq") {
    const int n = 4;
    for (Mask a = 0; a < (Mask{1} << n); ++a) {
        const DetPair det{a, a ^ 0b1010};
        for (int p = 0; p < 2 * n; ++p)
            for (int q = 0; q < 2 * n; ++q) {
                // accumulate both orderings applied to |det> as sparse results
                auto term = [&](bool create_first) -> std::optional<PairExcitation> {
                    auto first = create_first ? apply_creation(det, q, n)
                                              : apply_annihilation(det, p, n);
                    if (!first) return std::nullopt;
                    auto second = create_first ? apply_annihilation(first->det, p, n)
                                               : apply_creation(first->det, q, n);
                    if (!second) return std::nullopt;
                    return PairExcitation{second->det, first->sign * second->sign};
                };
                const auto ap_aqd = term(true);  // a_p a_q^+
                const auto aqd_ap = term(false); // a_q^+ a_p
                int total_on_det = 0;
                if (ap_aqd && ap_aqd->det == det) total_on_det += ap_aqd->sign;
                if (aqd_ap && aqd_ap->det == det) total_on_det += aqd_ap->sign;
                CHECK(total_on_det == (p == q ? 1 : 0));
                // off-determinant components must cancel
                if (ap_aqd && aqd_ap && ap_aqd->det == aqd_ap->det && ap_aqd->det != det)
                    CHECK(ap_aqd->sign == -aqd_ap->sign);
            }
    }
}

TEST_CASE("occupation strings round-trip, orbital 0 rightmost") {
    CHECK(mask_to_string(0b0101, 4) == "0101");
    CHECK(mask_from_string("0101", 4) == 0b0101);
    CHECK(mask_to_string(0b1, 3) == "001");
    CHECK_THROWS_AS(mask_from_string("012", 3), InputError);
    CHECK_THROWS_AS(mask_from_string("01", 3), InputError);
}

TEST_CASE("free-submask enumeration covers exactly the pattern space") {
    std::set<Mask> seen;
    for_each_free_submask(6, 0b010010, 2, [&](Mask m) {
        CHECK((m & 0b010010) == 0);
        CHECK(std::popcount(m) == 2);
        CHECK(seen.insert(m).second);
    });
    CHECK(seen.size() == binomial(4, 2));

    int empties = 0;
    for_each_free_submask(4, 0b1111, 0, [&](Mask m) {
        CHECK(m == 0);
        ++empties;
    });
    CHECK(empties == 1);

    int none = 0;
    for_each_free_submask(4, 0b1111, 1, [&](Mask) { ++none; });
    CHECK(none == 0);
}
