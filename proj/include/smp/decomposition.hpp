#pragma once

#include <smp/instance.hpp>
#include <smp/poset.hpp>
#include <smp/rotation.hpp>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace smp {

// Bags are sorted vertex lists. Nice: implicit empty X_0, exactly one insertion
// or removal per step, 2|V| bags, last bag empty.
struct PathDecomposition {
    std::vector<std::vector<int>> bags;

    int length() const { return static_cast<int>(bags.size()); }
    int width() const;
    bool operator==(const PathDecomposition&) const = default;
};

// Empty string when X is a path decomposition of g's undirected version; otherwise the first violation.
std::string decomposition_problem(const Dag& g, const PathDecomposition& X);
bool validate_decomposition(const Dag& g, const PathDecomposition& X);
bool is_nice(const PathDecomposition& X, int vertex_count);

PathDecomposition to_nice(const Dag& g, const PathDecomposition& X);
// Bags intersected with keep, then re-niced over the kept vertices (original ids).
PathDecomposition induced_decomposition(const PathDecomposition& X, const std::vector<int>& keep);

struct Extent {
    int lo, hi;
    bool operator==(const Extent&) const = default;
};

Extent extent_of(const Rotation& rho, const RangeProfile& profile);

struct ExtentDecomposition {
    RotationDigraph digraph;
    RangeProfile profile;
    std::vector<Extent> extents;   // by rotation id, unclipped
    PathDecomposition raw;          // X_i = {rho : i in ext(rho)}, i = 1..n
    PathDecomposition nice;
};

ExtentDecomposition construct_path_decomposition(const Instance& inst);

// Optimal width by branch-and-bound over vertex layouts (vertex separation number).
std::pair<int, PathDecomposition> pathwidth_exact_tiny(const Dag& g, int max_p = 12);

PathDecomposition parse_decomposition(std::string_view text);
std::string format_decomposition(const PathDecomposition& X);

} // namespace smp
