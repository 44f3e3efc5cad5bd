#include "doctest.h"

#include <algorithm>
#include <functional>

#include "hoftrace/errors.hpp"
#include "hoftrace/flux.hpp"

using namespace hoftrace;

namespace {

// Nested-loop oracle: every (k, ell) vector with entries bounded by half_n.
std::vector<PartitionTerm> brute_force_terms(int half_n, int q, bool allow_k) {
    const int m = q / 2;
    std::vector<PartitionTerm> out;
    const int k_max = allow_k ? half_n : 0;
    for (int k = 0; k <= k_max; ++k) {
        std::vector<int> ell(m, 0);
        std::function<void(int)> rec = [&](int idx) {
            if (idx == m) {
                PartitionTerm t{k, ell};
                if (t.weighted_half_n(q) == half_n) out.push_back(t);
                return;
            }
            for (int l = 0; l <= half_n; ++l) {
                ell[idx] = l;
                rec(idx + 1);
            }
        };
        rec(0);
    }
    return out;
}

// Partitions of n into parts no larger than m, by the standard coin DP.
long long partition_count(int n, int m) {
    std::vector<long long> ways(n + 1, 0);
    ways[0] = 1;
    for (int part = 1; part <= m; ++part)
        for (int v = part; v <= n; ++v) ways[v] += ways[v - part];
    return ways[n];
}

bool lex_less(const PartitionTerm& a, const PartitionTerm& b) {
    if (a.k != b.k) return a.k < b.k;
    return a.ell < b.ell;
}

}  // namespace

TEST_CASE("make_flux reduces and canonicalizes") {
    CHECK(make_flux(1, 3).p() == 1);
    CHECK(make_flux(1, 3).q() == 3);
    CHECK(make_flux(2, 4) == make_flux(1, 2));
    CHECK(make_flux(4, 4).p() == 0);
    CHECK(make_flux(4, 4).q() == 1);
    CHECK(make_flux(0, 7) == make_flux(0, 1));
    CHECK(make_flux(7, 5) == make_flux(2, 5));
    CHECK(make_flux(-1, 3) == make_flux(2, 3));
    CHECK(make_flux(1, 4).half_q() == 2);
    CHECK_THROWS_AS(make_flux(1, 0), InvalidFlux);
    CHECK_THROWS_AS(make_flux(1, -3), InvalidFlux);
}

TEST_CASE("coupling tilde is the q-fold product") {
    Coupling c(3.0);
    CHECK(c.tilde(0) == 1.0);
    CHECK(c.tilde(3) == 1.5 * 1.5 * 1.5);
    CHECK(Coupling(2.0).tilde(17) == 1.0);
    CHECK_THROWS_AS(Coupling(0.0), DomainError);
    CHECK_THROWS_AS(Coupling(-1.0), DomainError);
}

TEST_CASE("enumerate_partition_terms examples") {
    auto t = enumerate_partition_terms(2, 3, true);
    REQUIRE(t.size() == 1);
    CHECK(t[0] == PartitionTerm{0, {2}});

    t = enumerate_partition_terms(2, 2, true);
    REQUIRE(t.size() == 2);
    CHECK(t[0] == PartitionTerm{0, {2}});
    CHECK(t[1] == PartitionTerm{1, {0}});

    t = enumerate_partition_terms(0, 5, true);
    REQUIRE(t.size() == 1);
    CHECK(t[0] == PartitionTerm{0, {0, 0}});

    // zero flux: no ell slots, only the k = half_n term
    t = enumerate_partition_terms(3, 1, true);
    REQUIRE(t.size() == 1);
    CHECK(t[0] == PartitionTerm{3, {}});
    CHECK(enumerate_partition_terms(3, 1, false).empty());
}

TEST_CASE("enumeration matches brute force and is lexicographic") {
    for (int q = 1; q <= 8; ++q) {
        for (int half_n = 0; half_n <= 12; ++half_n) {
            for (bool allow_k : {false, true}) {
                auto got = enumerate_partition_terms(half_n, q, allow_k);
                auto want = brute_force_terms(half_n, q, allow_k);
                std::sort(want.begin(), want.end(), lex_less);
                CAPTURE(q);
                CAPTURE(half_n);
                CHECK(got == want);
                CHECK(std::is_sorted(got.begin(), got.end(), lex_less));
                for (const auto& term : got) CHECK(term.weighted_half_n(q) == half_n);
            }
            if (q >= 2)
                CHECK(static_cast<long long>(enumerate_partition_terms(half_n, q, false).size()) ==
                      partition_count(half_n, q / 2));
        }
    }
}

TEST_CASE("multinomial_weight examples") {
    CHECK(multinomial_weight({0, {2}}) == ExactRational(1, 2));
    CHECK(multinomial_weight({1, {0}}) == ExactRational(1, 2));
    // 2!/(1! 1!) / 2 = 1
    CHECK(multinomial_weight({0, {1, 1}}) == ExactRational(1));
    // parts = 1 + 2 + 2 = 5: 5!/(1! 2! 2!) / 5 = 30 / 5 = 6
    CHECK(multinomial_weight({1, {1, 2}}) == ExactRational(6));
    CHECK_THROWS_AS(multinomial_weight({0, {0, 0}}), DegenerateTerm);
    CHECK_THROWS_AS(multinomial_weight({0, {}}), DegenerateTerm);
}

TEST_CASE("multinomial_weight properties") {
    for (int m = 1; m <= 20; ++m)
        for (int slot = 0; slot < 4; ++slot) {
            PartitionTerm t{0, std::vector<int>(4, 0)};
            t.ell[slot] = m;
            CHECK(multinomial_weight(t) == ExactRational(1, m));
        }
    for (int q = 2; q <= 8; ++q)
        for (int half_n = 1; half_n <= 12; ++half_n)
            for (const auto& t : enumerate_partition_terms(half_n, q, true)) {
                const auto w = multinomial_weight(t);
                CHECK(w > 0);
                // weight * parts is an integer multinomial coefficient
                const ExactRational scaled = w * t.parts();
                CHECK(denominator(scaled) == 1);
            }
}

TEST_CASE("binomials stay exact past 64 bits") {
    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(5, 7) == 0);
    const BigInt big = binomial(100, 50);
    CHECK(big.str() == "100891344545564193334812497256");
    CHECK(factorial(25).str() == "15511210043330985984000000");
}
