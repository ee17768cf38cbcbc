#pragma once

#include <smp/decomposition.hpp>
#include <smp/poset.hpp>

#include <gmpxx.h>

#include <functional>
#include <map>
#include <random>
#include <vector>

namespace smp {

using BigCount = mpz_class;

// Called after each bag step with the step index (1-based), the vertices seen so
// far, and the table total. The total equals the number of downsets of the
// subgraph induced by the seen vertices.
using DpObserver = std::function<void(int, const std::vector<int>&, const BigCount&)>;

/**
 * Number of downsets of g via a dynamic program over a nice path decomposition.
 * Table entries are indexed by bitmasks over bag slots; a vertex keeps its slot
 * from insertion to removal. Throws CapExceeded when the width exceeds max_width.
 */
BigCount count_downsets(const Dag& g, const PathDecomposition& X, int max_width = 30,
                        const DpObserver& observe = {});

// Same table, but only vertices that appear in X count; edges to absent vertices are ignored.
BigCount count_downsets_present(const Dag& g, const PathDecomposition& X, int max_width = 30,
                                const DpObserver& observe = {});

// Both include v itself.
std::vector<int> descendants(const Dag& g, int v);
std::vector<int> ancestors(const Dag& g, int v);

// Uniform on [0, n) by rejection over whole 64-bit words of rng. n > 0.
BigCount uniform_below(const BigCount& n, std::mt19937_64& rng);

/**
 * Uniform downsets. Vertices are decided in topological order; v joins with
 * probability down(H - v) / (down(H - v) + down(H - desc(v))), where H is the
 * still-undecided part. Counts are cached per undecided set.
 */
class DownsetSampler {
public:
    DownsetSampler(Dag g, PathDecomposition X, int max_width = 30);

    const BigCount& total() const { return total_; }
    std::vector<int> draw(std::mt19937_64& rng);

private:
    const BigCount& count_alive(const std::vector<char>& alive);

    Dag g_;
    PathDecomposition X_;
    int max_width_;
    BigCount total_;
    std::map<std::vector<char>, BigCount> cache_;
};

std::vector<int> sample_downset(const Dag& g, const PathDecomposition& X, std::mt19937_64& rng);

} // namespace smp
