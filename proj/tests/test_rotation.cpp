#include <doctest.h>

#include <smp/error.hpp>
#include <smp/rotation.hpp>

#include "generators.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

#include <random>

using namespace smp;

namespace {

using Pairs = std::vector<std::pair<int, int>>;

// Precedence from stable matchings alone: a before b iff every matching that eliminates b eliminates a.
std::vector<std::vector<char>> precedence_oracle(const Instance& I, const RotationDigraph& dg)
{
    const auto all = oracle::stable_matchings(I);
    const int r = dg.size();
    std::vector<std::vector<char>> before(r, std::vector<char>(r, 0));
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
            if (a == b) continue;
            bool implied = true;
            for (const auto& mu : all)
                if (oracle::eliminated(I, dg.rotations[b].pairs, mu) && !oracle::eliminated(I, dg.rotations[a].pairs, mu))
                    implied = false;
            before[a][b] = implied;
        }
    return before;
}

} // namespace

TEST_CASE("rotations of the example")
{
    const Instance I = parse_instance(read_data("example.sm"));
    const RotationDigraph dg = rotation_digraph(I);
    REQUIRE(dg.size() == 3);
    CHECK(dg.rotations[0].pairs == Pairs{{0, 0}, {1, 1}});
    CHECK(dg.rotations[1].pairs == Pairs{{2, 2}, {3, 3}});
    CHECK(dg.rotations[2].pairs == Pairs{{0, 1}, {2, 3}});
    CHECK(format_rotation(I, dg.rotations[2]) == "(m1,w2)(m3,w4)");

    // Rule 1 via (m1,w2) and (m3,w4); Rule 2 via (m4,w2) and (m1,w3).
    CHECK(dg.edges == std::vector<RotationEdge>{{0, 1, Rule2}, {0, 2, Rule1}, {1, 2, Rule1 | Rule2}});
    CHECK(transitive_closure(dg.dag()) == Dag(3, {{0, 1}, {0, 2}, {1, 2}}));
    CHECK(rotation_digraph_dot(I, dg).find("r2 -> r3 [rule=12]") != std::string::npos);
}

TEST_CASE("downsets and matchings of the example correspond")
{
    const Instance I = parse_instance(read_data("example.sm"));
    const RotationDigraph dg = rotation_digraph(I);
    const std::vector<Pairs> table{
        {{0, 0}, {1, 1}, {2, 2}, {3, 3}},
        {{0, 1}, {1, 0}, {2, 2}, {3, 3}},
        {{0, 1}, {1, 0}, {2, 3}, {3, 2}},
        {{0, 3}, {1, 0}, {2, 1}, {3, 2}},
    };
    const std::vector<std::vector<int>> downsets{{}, {0}, {0, 1}, {0, 1, 2}};
    for (size_t i = 0; i < table.size(); ++i) {
        const Matching mu = Matching::from_pairs(4, 4, table[i]);
        CHECK(matching_from_downset(I, dg, downsets[i]) == mu);
        CHECK(downset_from_matching(I, dg, mu) == downsets[i]);
    }
    CHECK_THROWS_AS(matching_from_downset(I, dg, {1}), ValidationError);
}

TEST_CASE("eliminating a rotation that is not exposed fails")
{
    const Instance I = parse_instance(read_data("example.sm"));
    const RotationDigraph dg = rotation_digraph(I);
    CHECK_THROWS_AS(eliminate(I, dg.man_optimal, dg.rotations[2]), ValidationError);
    CHECK(eliminate(I, dg.man_optimal, dg.rotations[0]) == matching_from_downset(I, dg, {0}));
}

TEST_CASE("digraph closure equals precedence derived from all stable matchings")
{
    std::mt19937_64 rng(23);
    for (int t = 0; t < 120; ++t) {
        const Instance I = t % 2 ? gen::random_complete(2 + t % 6, rng) : gen::random_banded(3 + t % 5, 2.5, rng);
        const RotationDigraph dg = rotation_digraph(I);
        const auto before = precedence_oracle(I, dg);
        const auto reach = reachability(dg.dag());
        for (int a = 0; a < dg.size(); ++a)
            for (int b = 0; b < dg.size(); ++b)
                if (a != b) CHECK(static_cast<bool>(before[a][b]) == reach[a].test(b));

        const auto all = oracle::stable_matchings(I);
        CHECK(all == all_stable_matchings_bruteforce(I));
        CHECK(oracle::count_downsets(dg.dag()) == all.size());
        for (const auto& mu : all) CHECK(matching_from_downset(I, dg, downset_from_matching(I, dg, mu)) == mu);
        for (const auto& e : dg.edges) CHECK(e.from < e.to);
    }
}

TEST_CASE("incomplete lists")
{
    std::mt19937_64 rng(29);
    std::bernoulli_distribution keep(0.7);
    for (int t = 0; t < 60; ++t) {
        const int n = 2 + t % 5;
        const Instance C = gen::random_complete(n, rng);
        std::vector<std::vector<char>> ok(n, std::vector<char>(n));
        for (auto& row : ok)
            for (auto& x : row) x = keep(rng);
        std::vector<std::vector<int>> men(n), women(n);
        for (int m = 0; m < n; ++m)
            for (int w : C.man(m))
                if (ok[m][w]) men[m].push_back(w);
        for (int w = 0; w < n; ++w)
            for (int m : C.woman(w))
                if (ok[m][w]) women[w].push_back(m);
        const Instance I(men, women);
        const RotationDigraph dg = rotation_digraph(I);
        CHECK(oracle::count_downsets(dg.dag()) == oracle::stable_matchings(I).size());
    }
}

TEST_CASE("listed examples: exposure and elimination on the example")
{
    const Instance I = parse_instance(read_data("example.sm"));
    const RotationDigraph dg = rotation_digraph(I);
    const Matching mu0 = dg.man_optimal;
    const Matching mu1 = matching_from_downset(I, dg, {0});
    const Matching mu2 = matching_from_downset(I, dg, {0, 1});
    const Matching mu3 = matching_from_downset(I, dg, {0, 1, 2});
    CHECK(mu3 == gale_shapley(I, Orientation::WomanOptimal));

    // rho2 waits on rho1: m4 prefers w2, and w2 prefers m4 to m2 until rho1 fires.
    const auto at0 = exposed_rotations(I, mu0);
    REQUIRE(at0.size() == 1);
    CHECK(at0[0].pairs == Pairs{{0, 0}, {1, 1}});
    const Matching early = Matching::from_pairs(4, 4, {{0, 0}, {1, 1}, {2, 3}, {3, 2}});
    const auto bp = blocking_pairs(I, early);
    CHECK(std::find(bp.begin(), bp.end(), std::pair<int, int>{3, 1}) != bp.end());
    const auto at1 = exposed_rotations(I, mu1);
    REQUIRE(at1.size() == 1);
    CHECK(at1[0].pairs == Pairs{{2, 2}, {3, 3}});
    CHECK(exposed_rotations(I, mu3).empty());
    const auto at2 = exposed_rotations(I, mu2);
    REQUIRE(at2.size() == 1);
    CHECK(at2[0].pairs == Pairs{{0, 1}, {2, 3}});

    CHECK(eliminate(I, mu0, dg.rotations[0]) == mu1);
    CHECK(mu1 == Matching::from_pairs(4, 4, {{0, 1}, {1, 0}, {2, 2}, {3, 3}}));
    CHECK(eliminate(I, mu2, dg.rotations[2]) == mu3);
    CHECK_THROWS_AS(eliminate(I, mu1, dg.rotations[0]), ValidationError);
    CHECK(matching_from_downset(I, dg, {}) == mu0);
    CHECK(downset_from_matching(I, dg, mu0).empty());
    std::vector<Matching> expected{mu0, mu1, mu2, mu3};
    std::sort(expected.begin(), expected.end());
    CHECK(all_stable_matchings_bruteforce(I) == expected);
}

TEST_CASE("listed examples: small instances")
{
    const Instance master({{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}, {{2, 0, 1}, {2, 0, 1}, {2, 0, 1}});
    CHECK(rotation_digraph(master).size() == 0);
    CHECK(all_stable_matchings_bruteforce(master).size() == 1);
    const Instance identity({{0, 1}, {1, 0}}, {{0, 1}, {1, 0}});
    CHECK(all_stable_matchings_bruteforce(identity).size() == 1);
    // Each man's first choice ranks him last: man- and woman-optimal differ.
    const Instance opposed({{0, 1}, {1, 0}}, {{1, 0}, {0, 1}});
    const auto both = all_stable_matchings_bruteforce(opposed);
    CHECK(both.size() == 2);
    for (const auto& mu : both) CHECK(blocking_pairs(opposed, mu).empty());
}
