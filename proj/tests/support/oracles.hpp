#pragma once

// Brute-force counterparts of the library's algorithms. None of them calls the
// rotation digraph, the downset DP, or the extent decomposition.

#include <smp/instance.hpp>
#include <smp/poset.hpp>

#include <cstdint>
#include <vector>

namespace oracle {

// Subsets of V checked for closure one by one. p <= 22.
std::uint64_t count_downsets(const smp::Dag& g);

// Every matching over acceptable pairs, filtered by the blocking-pair test. Sorted.
std::vector<smp::Matching> stable_matchings(const smp::Instance& inst);

// Vertex separation minimized over all layouts (p <= 9).
int pathwidth(const smp::Dag& g);

// rotation eliminated in mu: its first man sits at or below the woman it sends him to.
bool eliminated(const smp::Instance& inst, const std::vector<std::pair<int, int>>& rotation, const smp::Matching& mu);

// Lower (upper=false) or upper median of the sorted partner ranks of agent a across all stable matchings.
int median_partner_rank(const smp::Instance& inst, const std::vector<smp::Matching>& all, smp::Side s, int a,
                        bool upper);

} // namespace oracle
