#include <doctest.h>

#include <smp/decomposition.hpp>
#include <smp/error.hpp>
#include <smp/realize.hpp>
#include <smp/rotation.hpp>

#include "generators.hpp"
#include "golden.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

#include <random>
#include <set>

using namespace smp;

using golden::reprint;

TEST_CASE("generic construction reproduces the running example table")
{
    const std::string rows = read_data("fig2.txt");
    CHECK(reprint(realize_generic(parse_dag(read_data("fig2.dag"))), rows) == rows);
}

TEST_CASE("bounded construction reproduces its table")
{
    const std::string rows = read_data("fig3.txt");
    const Instance I = realize_bounded3(parse_dag(read_data("fig2.dag")));
    CHECK(reprint(I, rows) == rows);
    for (Side s : {Side::Man, Side::Woman})
        for (int a = 0; a < I.size(s); ++a) CHECK(I.prefs(s, a).size() <= 3);
}

TEST_CASE("list construction reproduces its table and master lists")
{
    const std::string rows = read_data("fig4.txt");
    const ListRealization L = realize_list2inf(parse_dag(read_data("fig4.dag")));
    CHECK(L.relabel == std::vector<int>{0, 1, 2, 3});
    CHECK(reprint(L.core, rows, &L) == rows);
    for (int m = 0; m < L.inst.n_men(); ++m)
        CHECK(L.inst.man(m) == (L.group[m] == 1 ? L.master1 : L.master2));
    CHECK(L.inst.complete());
}

TEST_CASE("bitonic color orders")
{
    CHECK(bitonic_sequence(3, 7) == std::vector<int>{3, 5, 7, 6, 4});
    CHECK(bitonic_sequence(2, 6) == std::vector<int>{2, 4, 6, 5, 3});
    CHECK(bitonic_sequence(1, 4) == std::vector<int>{1, 3, 4, 2});
    CHECK(bitonic_sequence(1, 2) == std::vector<int>{1, 2});
    for (int a = 1; a < 6; ++a)
        for (int b = a + 1; b < 14; ++b) {
            const auto s = bitonic_sequence(a, b);
            CHECK(s.size() == static_cast<size_t>(b - a + 1));
            for (size_t i = 0; i < s.size(); ++i) CHECK(std::abs(s[i] - s[(i + 1) % s.size()]) <= 2);
        }

    const Dag H = parse_dag(read_data("fig5.dag"));
    const ColorPlan plan = range_plan(H, parse_decomposition(read_data("fig5.pd")));
    CHECK(golden::color_orders(plan) == read_data("fig5_bitonic.txt"));
}

TEST_CASE("constructions realize small posets")
{
    std::mt19937_64 rng(41);
    for (int t = 0; t < 40; ++t) {
        const Dag P = gen::random_dag(1 + t % 6, 0.4, rng);
        CHECK(check_realization(P, realize_generic(P)));
        CHECK(check_realization(P, realize_complete(P)));
        CHECK(check_realization(P, realize_bounded3(P)));
        CHECK(check_realization(P, realize_list2inf(P).inst));
        CHECK(check_realization(P, realize_list2inf(P, ListSide::Women).inst));
        const Dag R = transitive_reduction(P);
        CHECK(check_realization(P, realize_range(R, pathwidth_exact_tiny(R).second)));
    }
}

TEST_CASE("colored input is used as given")
{
    const Dag P(3, {{0, 1}, {1, 2}}, {5, 5});
    const Instance I = realize_generic(P);
    CHECK(check_realization(P, I));
    CHECK(I.n_men() == 6);
}

TEST_CASE("realization check rejects the wrong poset")
{
    const Dag chain(3, {{0, 1}, {1, 2}});
    const Dag vee(3, {{0, 1}, {0, 2}});
    CHECK_FALSE(check_realization(vee, realize_generic(chain)));
    CHECK_THROWS_AS(check_realization(chain, parse_instance(read_data("example.sm"))), ValidationError);
}

TEST_CASE("list construction for women and for relabelled inputs")
{
    const Dag P(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    const ListRealization L = realize_list2inf(P, ListSide::Women);
    for (int w = 0; w < L.inst.n_women(); ++w)
        CHECK(L.inst.woman(w) == (L.group[w] == 1 ? L.master1 : L.master2));
    for (auto [u, v] : P.edges()) CHECK(L.relabel[u] > L.relabel[v]);
}

TEST_CASE("attribute profiles rank by descending value")
{
    auto point = [](int x, int y) {
        AttributeProfile a;
        a.point = {x, y};
        a.weights = {1, 1};
        a.constant = 0;
        return a;
    };
    const std::vector<AttributeProfile> men{point(2, 3), point(3, 1), point(1, 1), point(4, 2)};
    const std::vector<AttributeProfile> women{point(0, 0), point(1, 0), point(0, 2), point(5, 5)};
    const Instance I = evaluate_profiles(men, women);
    CHECK(I.woman(0) == std::vector<int>{3, 0, 1, 2});
    std::vector<AttributeProfile> tied = women;
    tied[1].point = {0, 2};
    CHECK_THROWS_AS(evaluate_profiles(men, tied), ValidationError);
}

TEST_CASE("six-attribute profiles reproduce the instance and survive the sidecar")
{
    const Dag P = parse_dag(read_data("fig2.dag"));
    const AttributeRealization r = realize_attr6(P);
    CHECK(evaluate_profiles(r.men, r.women) == r.inst);
    CHECK(r.men[0].point.size() == 6);
    const AttributeRealization back = parse_profiles(format_profiles(r), r.inst.n_men(), r.inst.n_women());
    CHECK(evaluate_profiles(back.men, back.women) == r.inst);
    CHECK(check_realization(P, r.inst));
    CHECK_THROWS_AS(parse_profiles("point m9: 1/2\n", 2, 2), ParseError);
}

TEST_CASE("range construction stays within its bound")
{
    const Dag H = parse_dag(read_data("fig5.dag"));
    const PathDecomposition X = parse_decomposition(read_data("fig5.pd"));
    const Instance I = realize_range(H, X);
    CHECK(I.complete());
    CHECK(compute_range(I).k <= 9 * (X.width() + 2));
    CHECK(check_realization(H, I));
}

TEST_CASE("construction input validation")
{
    const Dag H(2, {{0, 1}});
    CHECK_THROWS_AS(construct_instance(H, {{1}, {{1}, {1, 2}}}), ValidationError);
    CHECK_THROWS_AS(construct_instance(H, {{3}, {{1, 2}, {1, 2}}}), ValidationError);
    CHECK_THROWS_AS(construct_instance(H, {{}, {{1, 2}, {1, 2}}}), ValidationError);
    CHECK_THROWS_AS(range_plan(H, PathDecomposition{{{0, 1}}}), ValidationError);
}

TEST_CASE("listed examples: sizes of small realizations")
{
    const Instance one = realize_generic(Dag(1));
    CHECK(one.n_men() == 2);
    CHECK(one.n_women() == 2);
    const RotationDigraph dg = rotation_digraph(one);
    REQUIRE(dg.size() == 1);
    CHECK(dg.rotations[0].pairs.size() == 2);

    const Dag fig2 = parse_dag(read_data("fig2.dag"));
    CHECK(realize_complete(fig2).n_men() == 8);
    CHECK(realize_complete(Dag(0)).n_men() == 0);
    const Instance chain = realize_complete(Dag(3, {{0, 1}, {1, 2}}));
    CHECK(chain.n_men() == 6);
    CHECK(chain.complete());
    CHECK(oracle::stable_matchings(chain).size() == 4);

    const Instance anti = realize_bounded3(Dag(3));
    for (int a = 0; a < anti.n_men(); ++a) {
        CHECK(anti.man(a).size() == 2);
        CHECK(anti.woman(a).size() == 2);
    }
}

TEST_CASE("listed examples: profiles and list groups")
{
    // Two agents with one weight vector must rank every candidate the same way.
    AttributeProfile p1{{1, 2, 3, 4, 5, 6}, {1, 0, 2, 0, 1, 3}, 0};
    AttributeProfile p2{{6, 5, 4, 3, 2, 1}, {1, 0, 2, 0, 1, 3}, 0};
    AttributeProfile q1{{1, 1, 1, 1, 1, 1}, {1, 2, 3, 4, 5, 6}, 0};
    AttributeProfile q2{{2, 0, 1, 0, 0, 0}, {6, 5, 4, 3, 2, 1}, 0};
    const Instance I = evaluate_profiles({p1, p2}, {q1, q2});
    CHECK(I.man(0) == I.man(1));
    CHECK(I.woman(0) != I.woman(1));

    const AttributeRealization single = realize_attr6(Dag(1));
    CHECK(check_realization(Dag(1), single.inst));
    CHECK(evaluate_profiles(single.men, single.women) == single.inst);

    const ListRealization lists = realize_list2inf(Dag(3));
    std::set<std::vector<int>> distinct;
    for (int m = 0; m < lists.inst.n_men(); ++m) distinct.insert(lists.inst.man(m));
    CHECK(distinct.size() == 2);
}

TEST_CASE("listed examples: range of a one-vertex realization")
{
    const Dag g(1);
    const Instance I = realize_range(g, {{{0}, {}}});
    CHECK(check_realization(g, I));
    CHECK(compute_range(I).k <= 18);
}
