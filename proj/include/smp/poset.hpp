#pragma once

#include <smp/instance.hpp>

#include <boost/dynamic_bitset.hpp>

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace smp {

/**
 * Directed acyclic graph on vertices 0..p-1 (files use 1..p).
 *
 * Edges are kept sorted lexicographically and duplicate-free. An edge (u,v)
 * means u precedes v. colors()[i] is the color of edges()[i], or 0 when the
 * graph carries no coloring. Construction rejects cycles and self-loops.
 */
class Dag {
public:
    Dag() = default;
    explicit Dag(int p, std::vector<std::pair<int, int>> edges = {}, std::vector<int> colors = {});

    int size() const { return p_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& colors() const { return colors_; }
    bool colored() const;
    // Index of (u,v) in edges(), or -1.
    int edge_index(int u, int v) const;

    const std::vector<int>& out(int v) const { return out_[v]; }
    const std::vector<int>& in(int v) const { return in_[v]; }
    const std::vector<int>& topological_order() const { return topo_; }

    bool operator==(const Dag& o) const { return p_ == o.p_ && edges_ == o.edges_; }

private:
    int p_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<int> colors_;
    std::vector<std::vector<int>> out_, in_;
    std::vector<int> topo_;
};

using Bitset = boost::dynamic_bitset<>;

// reach[u][v] set iff a nonempty path u -> v exists.
std::vector<Bitset> reachability(const Dag& g);

Dag transitive_closure(const Dag& g);
// Colors of surviving edges are kept.
Dag transitive_reduction(const Dag& g);

// Z is a list of vertices; true iff every predecessor of a member is a member.
bool is_downset(const Dag& g, const std::vector<int>& Z);

// Visits every downset once (members sorted). Throws CapExceeded after max_count visits.
void for_each_downset(const Dag& g, const std::function<void(const std::vector<int>&)>& visit,
                      long long max_count = 1'000'000);
std::vector<std::vector<int>> enumerate_downsets_bruteforce(const Dag& g, int max_p = 20);

// Induced subgraph on keep (sorted); vertex i of the result is keep[i].
Dag induced_subgraph(const Dag& g, const std::vector<int>& keep);

bool poset_isomorphic_small(const Dag& P, const Dag& Q, int max_p = 10);

/**
 * True iff inst realizes P through its construction labels: every rotation's
 * agents carry labels m[c,v]/w[c,v] with one common v, v -> rotation is a
 * bijection onto P's vertices, and the two transitive closures coincide.
 * Throws ValidationError when labels are missing or ambiguous.
 */
bool check_realization(const Dag& P, const Instance& inst);

// Vertex index (0-based) encoded in a construction label "m[c,v]" / "w[c,v]", or -1.
int label_vertex(const std::string& label);
int label_color(const std::string& label);

Dag parse_dag(std::string_view text);
std::string format_dag(const Dag& g);
std::string dag_to_dot(const Dag& g);

} // namespace smp
