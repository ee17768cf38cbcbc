#include <doctest.h>

#include <smp/error.hpp>
#include <smp/instance.hpp>

#include "generators.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

#include <random>

using namespace smp;

TEST_CASE("example instance parses and formats back unchanged")
{
    const Instance I = parse_instance(read_data("example.sm"));
    CHECK(I.n_men() == 4);
    CHECK(I.complete());
    CHECK(I.man_rank(1, 3) == 2);
    CHECK(I.woman_rank(3, 1) == 4);
    CHECK(parse_instance(format_instance(I)) == I);
}

TEST_CASE("labelled instances keep their labels through a round trip")
{
    const Instance I({{0, 1}, {1, 0}}, {{1, 0}, {0, 1}}, {"m[1,1]", "m[2,1]"}, {"w[1,1]", "w[2,1]"});
    const std::string text = format_instance(I);
    CHECK(text.find("m[2,1]: w[2,1] w[1,1]") != std::string::npos);
    const Instance J = parse_instance(text);
    CHECK(J == I);
    CHECK(J.label(Side::Woman, 1) == "w[2,1]");
}

TEST_CASE("parse errors carry line numbers")
{
    CHECK_THROWS_AS(parse_instance("m1: w1\n"), ParseError);
    CHECK_THROWS_WITH_AS(parse_instance("SM 1 1\nm1: w1 w1\nw1: m1\n"), doctest::Contains("line 2"), ParseError);
    CHECK_THROWS_AS(parse_instance("SM 1 1\nm1: w2\nw1: m1\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("SM 2 2\nm1: w1\nw1:\n"), ParseError);   // inconsistent
    CHECK_THROWS_AS(parse_instance("SM 1 1\nm1: m1\nw1: m1\n"), ParseError);  // wrong side
}

TEST_CASE("inconsistent lists are rejected at construction")
{
    CHECK_THROWS_AS(Instance({{0}}, {{}}), ValidationError);
    CHECK_THROWS_AS(Instance({{1}}, {{0}}), ValidationError);
}

TEST_CASE("man- and woman-optimal matchings of the example")
{
    const Instance I = parse_instance(read_data("example.sm"));
    const Matching mu0 = gale_shapley(I, Orientation::ManOptimal);
    const Matching muz = gale_shapley(I, Orientation::WomanOptimal);
    CHECK(mu0.wife == std::vector<int>{0, 1, 2, 3});
    CHECK(muz.wife == std::vector<int>{3, 0, 1, 2});
    CHECK(is_stable(I, mu0));
    // m4 and w2 block: he ranks her 2nd, she prefers him to m2.
    const Matching bad = Matching::from_pairs(4, 4, {{0, 0}, {1, 1}, {2, 3}, {3, 2}});
    CHECK(blocking_pairs(I, bad) == std::vector<std::pair<int, int>>{{3, 1}});
    CHECK_FALSE(is_stable(I, bad));
}

TEST_CASE("Gale-Shapley is stable, queue-order independent and extremal")
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 60; ++t) {
        const Instance I = gen::random_complete(1 + t % 6, rng);
        const auto all = oracle::stable_matchings(I);
        const Matching a = gale_shapley(I, Orientation::ManOptimal);
        CHECK(a == gale_shapley(I, Orientation::ManOptimal, true));
        CHECK(is_stable(I, a));
        const Matching z = gale_shapley(I, Orientation::WomanOptimal);
        for (const auto& mu : all)
            for (int m = 0; m < I.n_men(); ++m) {
                CHECK(I.man_rank(m, a.wife[m]) <= I.man_rank(m, mu.wife[m]));
                CHECK(I.man_rank(m, z.wife[m]) >= I.man_rank(m, mu.wife[m]));
            }
    }
}

TEST_CASE("range bounds minrank and maxrank of every agent")
{
    std::mt19937_64 rng(3);
    for (int t = 0; t < 40; ++t) {
        const Instance I = gen::random_banded(2 + t % 9, 1.0 + t % 4, rng);
        const RangeProfile r = compute_range(I);
        int k = 0;
        for (Side s : {Side::Man, Side::Woman})
            for (int a = 0; a < I.size(s); ++a) {
                int lo = I.size(s), hi = 1;
                for (int b = 0; b < I.size(other(s)); ++b) {
                    lo = std::min(lo, I.rank(other(s), b, a));
                    hi = std::max(hi, I.rank(other(s), b, a));
                }
                CHECK(r.orank(s, a) == lo);
                CHECK(r.maxrank(s, a) == hi);
                k = std::max(k, hi - lo + 1);
            }
        CHECK(r.k == k);
    }
}

TEST_CASE("symmetric shortlists keep exactly the stable matchings")
{
    std::mt19937_64 rng(5);
    for (int t = 0; t < 40; ++t) {
        const Instance I = gen::random_complete(2 + t % 5, rng);
        const Instance S = symmetric_shortlists(I);
        CHECK(oracle::stable_matchings(S) == oracle::stable_matchings(I));
    }
}

TEST_CASE("completion appends missing agents in index order")
{
    const Instance I({{1}, {0}}, {{1}, {0}});
    const Instance C = complete_preferences(I);
    CHECK(C.man(0) == std::vector<int>{1, 0});
    CHECK(C.woman(1) == std::vector<int>{0, 1});
    CHECK_THROWS_AS(complete_preferences(Instance({{0}}, {{0}, {}})), ValidationError);
}

TEST_CASE("listed examples: parsing, blocking pairs and optimal matchings")
{
    const Instance empty = parse_instance("SM 0 0\n");
    CHECK(empty.n_men() == 0);
    CHECK(empty.n_women() == 0);

    // Both men rank w2 first, both women rank m1 first.
    const Instance I({{1, 0}, {1, 0}}, {{0, 1}, {0, 1}});
    const Matching id = Matching::from_pairs(2, 2, {{0, 0}, {1, 1}});
    const auto bp = blocking_pairs(I, id);
    CHECK(std::find(bp.begin(), bp.end(), std::pair<int, int>{0, 1}) != bp.end());
    CHECK(blocking_pairs(I, Matching(2, 2)).size() == 4);

    const Instance mutual({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, {{0, 2, 1}, {1, 0, 2}, {2, 1, 0}});
    for (Orientation o : {Orientation::ManOptimal, Orientation::WomanOptimal})
        CHECK(gale_shapley(mutual, o).wife == std::vector<int>{0, 1, 2});
}

TEST_CASE("listed examples: range profiles")
{
    const Instance I = parse_instance(read_data("example.sm"));
    const RangeProfile r = compute_range(I);
    CHECK(r.orank(Side::Woman, 0) == 1);
    CHECK(r.maxrank(Side::Woman, 0) == 4);
    const Instance master({{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}, {{2, 0, 1}, {2, 0, 1}, {2, 0, 1}});
    CHECK(compute_range(master).k == 1);
}

TEST_CASE("listed examples: shortlists and completion")
{
    const Instance I = parse_instance(read_data("example.sm"));
    const Instance S = symmetric_shortlists(I);
    CHECK(S.man(1) == std::vector<int>{1, 0});
    CHECK(S.woman(0) == std::vector<int>{1, 0});
    const Instance master({{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}, {{2, 0, 1}, {2, 0, 1}, {2, 0, 1}});
    for (int a = 0; a < 3; ++a) {
        CHECK(symmetric_shortlists(master).man(a).size() == 1);
        CHECK(symmetric_shortlists(master).woman(a).size() == 1);
    }
    CHECK(complete_preferences(I) == I);
    CHECK(oracle::stable_matchings(complete_preferences(S)) == oracle::stable_matchings(I));
}
