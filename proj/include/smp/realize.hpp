#pragma once

#include <smp/decomposition.hpp>
#include <smp/instance.hpp>
#include <smp/poset.hpp>

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace smp {

// edge_color[i] colors H.edges()[i]; order[v] is the cyclic order of C_v (at least two colors).
struct ColorPlan {
    std::vector<int> edge_color;
    std::vector<std::vector<int>> order;
};

// Colors of edges at v, plus the smallest of {1,2} not yet present while |C_v| < 2. Sorted.
std::vector<std::vector<int>> padded_color_sets(const Dag& H, const std::vector<int>& edge_color);
ColorPlan ascending_plan(const Dag& H, std::vector<int> edge_color);

/**
 * One man m[c,v] and one woman w[c,v] per v and c in C_v, indexed in
 * lexicographic (c,v) order and labelled accordingly.
 *
 *   m[c,v]: w[c,v], then w[c,u] for each c-colored edge (u,v) by ascending u, then w[c+,v]
 *   w[c,u]: m[c-,u], then m[c,v] for each c-colored edge (u,v) by ascending v, then m[c,u]
 *
 * where c+ and c- are the neighbours of c in the cyclic order of C_v. H is used as given.
 */
Instance construct_instance(const Dag& H, const ColorPlan& plan);

// The realize_* entry points reduce H transitively first.
Instance realize_generic(const Dag& H);   // H's own colors if present, else all 1
Instance realize_complete(const Dag& H);  // generic, then lists completed ascending
Instance realize_bounded3(const Dag& H);  // distinct color per edge; lists have length <= 3

// phi(x) = constant + sum_k weights[k] * x[k]; an agent ranks the other side by descending phi.
struct AttributeProfile {
    std::vector<mpq_class> point;
    std::vector<mpq_class> weights;
    mpq_class constant;
};

struct AttributeRealization {
    Instance inst;
    std::vector<AttributeProfile> men, women;
};

mpq_class evaluate(const AttributeProfile& judge, const AttributeProfile& judged);
// Complete instance; throws ValidationError when some agent sees a tie.
Instance evaluate_profiles(const std::vector<AttributeProfile>& men, const std::vector<AttributeProfile>& women);

// Points on the moment curve in dimension 6; each agent's top three match its padded bounded list.
AttributeRealization realize_attr6(const Dag& H);

std::string format_profiles(const AttributeRealization& r);
// Profile sidecar for an instance with n_men men and n_women women.
AttributeRealization parse_profiles(std::string_view text, int n_men, int n_women);

enum class ListSide { Men, Women };

struct ListRealization {
    Instance inst;
    Instance core;                  // the construction before the master lists are imposed
    ListSide side = ListSide::Men;
    std::vector<int> master1, master2;  // agents of the other side
    std::vector<int> group;         // 1 or 2 for every agent on the listed side
    std::vector<int> relabel;       // relabel[v] = vertex id used for colors, with u > v on every edge
};

// Agents of the listed side follow one of two master lists; the other side's lists are arbitrary.
ListRealization realize_list2inf(const Dag& H, ListSide side = ListSide::Men);

// a, a+2, ... up to b, then the remaining values of [a,b] descending.
std::vector<int> bitonic_sequence(int a, int b);

// Colors and cyclic orders from a nice path decomposition of H (1-based bag indices).
ColorPlan range_plan(const Dag& H, const PathDecomposition& X);
// Complete instance with range at most 9(w+2) for a decomposition of width w.
Instance realize_range(const Dag& H, const PathDecomposition& X);

} // namespace smp
