#pragma once

#include <smp/instance.hpp>
#include <smp/poset.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace smp {

/**
 * Cyclic exchange (m_0,w_0),...,(m_{l-1},w_{l-1}): eliminating it sends m_i
 * to w_{i+1}. Canonical form starts at the smallest man index.
 */
struct Rotation {
    int id = -1;
    std::vector<std::pair<int, int>> pairs;
    std::string label;

    bool same_cycle(const Rotation& o) const { return pairs == o.pairs; }
};

enum RuleTag : unsigned { Rule1 = 1u, Rule2 = 2u };

struct RotationEdge {
    int from, to;
    unsigned rules;  // RuleTag bits; parallel Rule 1 / Rule 2 edges are merged
    bool operator==(const RotationEdge&) const = default;
};

/**
 * Rotations are numbered in elimination order from the man-optimal matching,
 * which is a topological order of the digraph. Its closure is the rotation poset.
 */
struct RotationDigraph {
    std::vector<Rotation> rotations;
    std::vector<RotationEdge> edges;  // sorted by (from, to)
    Matching man_optimal;
    // (m, w) -> id of the rotation that moves m to w.
    std::map<std::pair<int, int>, int> moved_to;

    int size() const { return static_cast<int>(rotations.size()); }
    Dag dag() const;
};

std::vector<Rotation> exposed_rotations(const Instance& inst, const Matching& mu);
Matching eliminate(const Instance& inst, const Matching& mu, const Rotation& rho);
RotationDigraph rotation_digraph(const Instance& inst);

// Z lists rotation ids and must be ancestor-closed.
Matching matching_from_downset(const Instance& inst, const RotationDigraph& dg, const std::vector<int>& Z);
std::vector<int> downset_from_matching(const Instance& inst, const RotationDigraph& dg, const Matching& mu);

// DFS over exposed rotations from the man-optimal matching. Result sorted.
std::vector<Matching> all_stable_matchings_bruteforce(const Instance& inst, int max_agents = 8,
                                                      long long max_count = 1'000'000);

std::string format_rotation(const Instance& inst, const Rotation& rho);
std::string rotation_digraph_dot(const Instance& inst, const RotationDigraph& dg);

} // namespace smp
