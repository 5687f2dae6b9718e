#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "chevunip/root_system.hpp"

using namespace chevunip;

TEST_CASE("G2 enumeration is pinned by the commutator relations") {
    const auto& rs = root_system('G', 2);
    REQUIRE(rs.num_roots() == 6);
    CHECK(rs.root(3) == std::vector<int>{1, 1});
    CHECK(rs.root(4) == std::vector<int>{1, 2});
    CHECK(rs.root(5) == std::vector<int>{1, 3});
    CHECK(rs.root(6) == std::vector<int>{2, 3});
    CHECK(rs.root_sum(1, 2) == 3);
    CHECK(rs.root_sum(2, 4) == 5);
    CHECK(rs.root_sum(1, 5) == 6);
    CHECK(rs.root_sum(3, 4) == 6);
    CHECK_FALSE(rs.root_sum(6, 1));
    CHECK(rs.bad_primes() == std::set<int>{2, 3});
    // alpha_1 long, alpha_2 short
    CHECK(rs.length_sq(1) > rs.length_sq(2));
}

TEST_CASE("small rank counts and simple invariants") {
    CHECK(root_system('A', 1).num_roots() == 1);
    CHECK(root_system('A', 3).num_roots() == 6);
    CHECK(root_system('B', 2).num_roots() == 4);
    CHECK(root_system('B', 3).num_roots() == 9);
    CHECK(root_system('C', 4).num_roots() == 16);
    CHECK(root_system('D', 4).num_roots() == 12);
    CHECK(root_system('D', 5).num_roots() == 20);
    CHECK(root_system('F', 4).num_roots() == 24);
    CHECK(root_system('E', 6).num_roots() == 36);
    CHECK(root_system('E', 7).num_roots() == 63);
    CHECK(root_system('E', 8).num_roots() == 120);
    CHECK_THROWS_AS(root_system('D', 3), ConfigError);
    CHECK_THROWS_AS(root_system('E', 9), ConfigError);
}

TEST_CASE("every non-simple positive root splits off a simple root") {
    for (auto [t, n] : std::vector<std::pair<char, int>>{
             {'A', 4}, {'B', 4}, {'C', 3}, {'D', 5}, {'G', 2}, {'F', 4}, {'E', 6}, {'E', 7}, {'E', 8}}) {
        const auto& rs = root_system(t, n);
        for (int i = rs.rank() + 1; i <= rs.num_roots(); ++i) {
            bool found = false;
            for (int s = 1; s <= rs.rank() && !found; ++s) {
                auto c = rs.root(i);
                c[static_cast<size_t>(s - 1)] -= 1;
                bool nonneg = true;
                for (int v : c) nonneg = nonneg && v >= 0;
                if (nonneg && rs.index_of(c)) found = true;
            }
            CHECK(found);
        }
        // coefficients bounded by the highest root's
        const auto& top = rs.root(rs.highest_root());
        for (int i = 1; i <= rs.num_roots(); ++i)
            for (int k = 0; k < rs.rank(); ++k)
                CHECK(rs.root(i)[static_cast<size_t>(k)] <= top[static_cast<size_t>(k)]);
    }
}

TEST_CASE("bad primes match the bad-prime table") {
    CHECK(root_system('A', 5).bad_primes().empty());
    CHECK(root_system('B', 3).bad_primes() == std::set<int>{2});
    CHECK(root_system('C', 4).bad_primes() == std::set<int>{2});
    CHECK(root_system('D', 4).bad_primes() == std::set<int>{2});
    CHECK(root_system('D', 5).bad_primes() == std::set<int>{2});
    CHECK(root_system('G', 2).bad_primes() == std::set<int>{2, 3});
    CHECK(root_system('F', 4).bad_primes() == std::set<int>{2, 3});
    CHECK(root_system('E', 6).bad_primes() == std::set<int>{2, 3});
    CHECK(root_system('E', 7).bad_primes() == std::set<int>{2, 3});
    CHECK(root_system('E', 8).bad_primes() == std::set<int>{2, 3, 5});
}

TEST_CASE("B2 and D4 index pins") {
    const auto& b2 = root_system('B', 2);
    CHECK(b2.root(3) == std::vector<int>{1, 1});
    CHECK(b2.root(4) == std::vector<int>{1, 2});
    CHECK(b2.root_sum(2, 3) == 4);

    const auto& d4 = root_system('D', 4);
    // central node is 3; heights pin the layer indices
    CHECK(d4.root(5) == std::vector<int>{1, 0, 1, 0});
    CHECK(d4.root(6) == std::vector<int>{0, 1, 1, 0});
    CHECK(d4.root(7) == std::vector<int>{0, 0, 1, 1});
    CHECK(d4.root(8) == std::vector<int>{1, 1, 1, 0});
    CHECK(d4.root(9) == std::vector<int>{1, 0, 1, 1});
    CHECK(d4.root(10) == std::vector<int>{0, 1, 1, 1});
    CHECK(d4.root(11) == std::vector<int>{1, 1, 1, 1});
    CHECK(d4.root(12) == std::vector<int>{1, 1, 2, 1});
    CHECK(d4.is_normal_in({11, 12}, d4.all_roots_set()));
    CHECK_FALSE(d4.is_normal_in({11}, d4.all_roots_set()));
}

TEST_CASE("pattern and normality basics") {
    const auto& g2 = root_system('G', 2);
    CHECK_FALSE(g2.is_pattern({1, 2}));
    CHECK(g2.is_pattern({3, 4, 5, 6}));
    CHECK(g2.is_normal_in(g2.all_roots_set(), g2.all_roots_set()));
    CHECK(g2.is_normal_in({5, 6}, g2.all_roots_set()));
    CHECK_FALSE(g2.is_normal_in({4, 6}, g2.all_roots_set())); // alpha_4+alpha_2=alpha_5
    CHECK(g2.upward_closure({}).empty());
    CHECK_THROWS_AS(g2.is_normal_in({1, 2, 3}, {1, 2}), ArgumentError);
}

TEST_CASE("B_n / C_n quotients leave the {n-1, n, 2n-1, 3n-2} copy of B2") {
    for (char t : {'B', 'C'}) {
        for (int n : {3, 4}) {
            const auto& rs = root_system(t, n);
            std::set<int> gens;
            for (int i = 1; i <= n - 2; ++i) gens.insert(i);
            auto N = rs.upward_closure(gens);
            CHECK(rs.is_normal_in(N, rs.all_roots_set()));
            std::set<int> quotient;
            for (int i = 1; i <= rs.num_roots(); ++i)
                if (!N.count(i)) quotient.insert(i);
            CHECK(quotient == std::set<int>{n - 1, n, 2 * n - 1, 3 * n - 2});
        }
    }
}

TEST_CASE("D_n quotient is the D4 copy on the first four nodes") {
    for (int n : {5, 6}) {
        const auto& rs = root_system('D', n);
        std::set<int> gens;
        for (int i = 5; i <= n; ++i) gens.insert(i);
        auto N = rs.upward_closure(gens);
        CHECK(rs.is_normal_in(N, rs.all_roots_set()));
        std::set<int> quotient;
        for (int i = 1; i <= rs.num_roots(); ++i)
            if (!N.count(i)) quotient.insert(i);
        CHECK(quotient == std::set<int>{1, 2, 3, 4, n + 1, n + 2, n + 3, 2 * n, 2 * n + 1,
                                        2 * n + 2, 3 * n - 1, 4 * n - 3});
    }
}

TEST_CASE("F4 pins: B2 quotient for p=2 and the height layers for p=3") {
    const auto& rs = root_system('F', 4);
    auto N2 = rs.upward_closure({1, 4});
    CHECK(rs.is_normal_in(N2, rs.all_roots_set()));
    std::set<int> q2;
    for (int i = 1; i <= 24; ++i)
        if (!N2.count(i)) q2.insert(i);
    CHECK(q2 == std::set<int>{2, 3, 6, 9});
    // the B2 copy: alpha_2 + alpha_3 = alpha_6, alpha_2 + 2 alpha_3 = alpha_9
    CHECK(rs.root_sum(2, 3) == 6);
    CHECK(rs.root_sum(3, 6) == 9);

    // heights >= 5 are exactly 14..24
    for (int i = 1; i <= 24; ++i) CHECK((rs.height(i) >= 5) == (i >= 14));
    // height-4 layer is 11,12,13; alpha_6 = 0110
    CHECK(rs.height(11) == 4);
    CHECK(rs.height(13) == 4);
    CHECK(rs.root(6) == std::vector<int>{0, 1, 1, 0});
    std::set<int> N3;
    for (int i = 14; i <= 24; ++i) N3.insert(i);
    CHECK(rs.is_normal_in(N3, rs.all_roots_set()));
}

TEST_CASE("E6 pins") {
    const auto& rs = root_system('E', 6);
    CHECK(rs.root(8) == std::vector<int>{0, 1, 0, 1, 0, 0});
    CHECK(rs.root(9) == std::vector<int>{0, 0, 1, 1, 0, 0});
    CHECK(rs.root(10) == std::vector<int>{0, 0, 0, 1, 1, 0});
    CHECK(rs.root(7) == std::vector<int>{1, 0, 1, 0, 0, 0});
    CHECK(rs.root(11) == std::vector<int>{0, 0, 0, 0, 1, 1});
    // height-4 layer 17..21, N = heights >= 5 = 22..36
    for (int i = 1; i <= 36; ++i) {
        CHECK((rs.height(i) == 4) == (i >= 17 && i <= 21));
        CHECK((rs.height(i) >= 5) == (i >= 22));
    }
    std::set<int> N;
    for (int i = 22; i <= 36; ++i) N.insert(i);
    CHECK(rs.is_normal_in(N, rs.all_roots_set()));

    // the p=2 quotient by up-closure of {1,6} is a 12-root D4 copy
    auto N2 = rs.upward_closure({1, 6});
    CHECK(N2.size() == 24);
    CHECK(rs.is_normal_in(N2, rs.all_roots_set()));
    std::set<int> q;
    for (int i = 1; i <= 36; ++i)
        if (!N2.count(i)) q.insert(i);
    CHECK(q == std::set<int>{2, 3, 4, 5, 8, 9, 10, 13, 14, 15, 19, 24});
}

TEST_CASE("E7 and E8 pins") {
    const auto& e7 = root_system('E', 7);
    // D4 copy inside E7
    auto n7 = e7.upward_closure({1, 6, 7});
    std::set<int> q7;
    for (int i = 1; i <= 63; ++i)
        if (!n7.count(i)) q7.insert(i);
    CHECK(q7 == std::set<int>{2, 3, 4, 5, 9, 10, 11, 15, 16, 17, 22, 28});
    // E6 copy inside E7 (p=3 inflation): complement of up{7}
    auto m7 = e7.upward_closure({7});
    CHECK(m7.size() == 63 - 36);
    CHECK(e7.is_normal_in(m7, e7.all_roots_set()));

    const auto& e8 = root_system('E', 8);
    auto n8 = e8.upward_closure({1, 6, 7, 8});
    std::set<int> q8;
    for (int i = 1; i <= 120; ++i)
        if (!n8.count(i)) q8.insert(i);
    CHECK(q8 == std::set<int>{2, 3, 4, 5, 10, 11, 12, 17, 18, 19, 25, 32});
    auto m8 = e8.upward_closure({7, 8});
    CHECK(m8.size() == 120 - 36);

    // p=5 layers: heights <= 5 give 36 roots, height 6 is 37..43
    for (int i = 1; i <= 120; ++i) {
        CHECK((e8.height(i) <= 5) == (i <= 36));
        CHECK((e8.height(i) == 6) == (i >= 37 && i <= 43));
        CHECK((e8.height(i) >= 7) == (i >= 44));
    }
    std::set<int> N5;
    for (int i = 44; i <= 120; ++i) N5.insert(i);
    CHECK(e8.is_normal_in(N5, e8.all_roots_set()));
    // alpha_12 = alpha_4 + alpha_5, alpha_13 = alpha_5 + alpha_6
    CHECK(e8.root(12) == std::vector<int>{0, 0, 0, 1, 1, 0, 0, 0});
    CHECK(e8.root(13) == std::vector<int>{0, 0, 0, 0, 1, 1, 0, 0});
}
