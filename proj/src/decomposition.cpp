#include <smp/decomposition.hpp>
#include <smp/error.hpp>

#include <algorithm>
#include <charconv>
#include <climits>
#include <functional>
#include <sstream>
#include <unordered_map>

namespace smp {

int PathDecomposition::width() const
{
    size_t big = 0;
    for (const auto& b : bags) big = std::max(big, b.size());
    return big == 0 ? 0 : static_cast<int>(big) - 1;
}

std::string decomposition_problem(const Dag& g, const PathDecomposition& X)
{
    const int p = g.size();
    std::vector<int> first(p, -1), last(p, -1), count(p, 0);
    for (int i = 0; i < X.length(); ++i) {
        const auto& bag = X.bags[i];
        for (size_t j = 0; j < bag.size(); ++j) {
            const int v = bag[j];
            if (v < 0 || v >= p) return "bag " + std::to_string(i + 1) + " names an unknown vertex";
            if (j > 0 && bag[j - 1] >= v) return "bag " + std::to_string(i + 1) + " is not a sorted set";
            if (first[v] < 0) first[v] = i;
            last[v] = i;
            ++count[v];
        }
    }
    for (int v = 0; v < p; ++v) {
        if (first[v] < 0) return "vertex " + std::to_string(v + 1) + " is in no bag";
        if (count[v] != last[v] - first[v] + 1)
            return "bags containing vertex " + std::to_string(v + 1) + " are not contiguous";
    }
    for (auto [u, v] : g.edges())
        if (std::max(first[u], first[v]) > std::min(last[u], last[v]))
            return "edge (" + std::to_string(u + 1) + "," + std::to_string(v + 1) + ") is in no bag";
    return "";
}

bool validate_decomposition(const Dag& g, const PathDecomposition& X)
{
    return decomposition_problem(g, X).empty();
}

bool is_nice(const PathDecomposition& X, int vertex_count)
{
    if (X.length() != 2 * vertex_count) return false;
    std::vector<int> prev;
    for (const auto& bag : X.bags) {
        std::vector<int> diff;
        std::set_symmetric_difference(prev.begin(), prev.end(), bag.begin(), bag.end(), std::back_inserter(diff));
        if (diff.size() != 1) return false;
        prev = bag;
    }
    return prev.empty();
}

namespace {

// Assumes every vertex occupies a contiguous run of bags.
PathDecomposition nice_from_runs(const PathDecomposition& X)
{
    PathDecomposition out;
    std::vector<int> cur;
    auto emit_transition = [&](const std::vector<int>& next) {
        std::vector<int> gone, fresh;
        std::set_difference(cur.begin(), cur.end(), next.begin(), next.end(), std::back_inserter(gone));
        std::set_difference(next.begin(), next.end(), cur.begin(), cur.end(), std::back_inserter(fresh));
        for (int v : gone) {
            cur.erase(std::find(cur.begin(), cur.end(), v));
            out.bags.push_back(cur);
        }
        for (int v : fresh) {
            cur.insert(std::upper_bound(cur.begin(), cur.end(), v), v);
            out.bags.push_back(cur);
        }
    };
    for (const auto& bag : X.bags) emit_transition(bag);
    emit_transition({});
    return out;
}

} // namespace

PathDecomposition to_nice(const Dag& g, const PathDecomposition& X)
{
    if (auto why = decomposition_problem(g, X); !why.empty()) throw ValidationError("invalid path decomposition: " + why);
    return nice_from_runs(X);
}

PathDecomposition induced_decomposition(const PathDecomposition& X, const std::vector<int>& keep)
{
    std::vector<int> k = keep;
    std::sort(k.begin(), k.end());
    PathDecomposition cut;
    for (const auto& bag : X.bags) {
        std::vector<int> b;
        std::set_intersection(bag.begin(), bag.end(), k.begin(), k.end(), std::back_inserter(b));
        cut.bags.push_back(std::move(b));
    }
    return nice_from_runs(cut);
}

Extent extent_of(const Rotation& rho, const RangeProfile& profile)
{
    int lo = INT_MAX, hi = INT_MIN;
    for (auto [m, w] : rho.pairs) {
        for (int r : {profile.orank_men[m], profile.orank_women[w]}) {
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
    }
    return {lo - 2 * profile.k + 1, hi + 2 * profile.k - 1};
}

ExtentDecomposition construct_path_decomposition(const Instance& inst)
{
    ExtentDecomposition d;
    d.profile = compute_range(inst);
    d.digraph = rotation_digraph(inst);
    const int n = inst.n_men();
    if (d.digraph.size() == 0) return d;
    d.raw.bags.assign(n, {});
    for (const auto& rho : d.digraph.rotations) {
        const Extent e = extent_of(rho, d.profile);
        d.extents.push_back(e);
        for (int i = std::max(1, e.lo); i <= std::min(n, e.hi); ++i) d.raw.bags[i - 1].push_back(rho.id);
    }
    d.nice = to_nice(d.digraph.dag(), d.raw);
    return d;
}

std::pair<int, PathDecomposition> pathwidth_exact_tiny(const Dag& g, int max_p)
{
    const int p = g.size();
    if (p > max_p) throw CapExceeded("exact pathwidth capped at " + std::to_string(max_p) + " vertices");
    if (p > 24) throw CapExceeded("exact pathwidth supports at most 24 vertices");
    std::vector<unsigned> adj(p, 0);
    for (auto [u, v] : g.edges()) {
        adj[u] |= 1u << v;
        adj[v] |= 1u << u;
    }
    const unsigned full = p == 0 ? 0u : (p == 32 ? ~0u : (1u << p) - 1);
    auto boundary = [&](unsigned S) {
        int c = 0;
        for (unsigned r = S; r; r &= r - 1) {
            const int u = __builtin_ctz(r);
            if (adj[u] & ~S) ++c;
        }
        return c;
    };

    // best_at[S]: smallest prefix cost seen for a layout whose prefix set is S.
    std::unordered_map<unsigned, int> best_at;
    int best = p;  // trivial upper bound p-1 is attained by any layout; start one above
    std::vector<int> layout, best_layout;
    for (int v = 0; v < p; ++v) best_layout.push_back(v);
    {
        int c = 0;
        unsigned S = 0;
        for (int v = 0; v < p; ++v) { S |= 1u << v; c = std::max(c, boundary(S)); }
        best = c;
    }
    std::function<void(unsigned, int)> rec = [&](unsigned S, int cost) {
        if (cost >= best) return;
        if (S == full) {
            best = cost;
            best_layout = layout;
            return;
        }
        if (auto it = best_at.find(S); it != best_at.end() && it->second <= cost) return;
        best_at[S] = cost;
        for (int v = 0; v < p; ++v) {
            if (S >> v & 1u) continue;
            const unsigned T = S | 1u << v;
            layout.push_back(v);
            rec(T, std::max(cost, boundary(T)));
            layout.pop_back();
        }
    };
    rec(0, 0);

    PathDecomposition X;
    unsigned prefix = 0;
    for (int v : best_layout) {
        std::vector<int> bag{v};
        for (unsigned r = prefix; r; r &= r - 1) {
            const int u = __builtin_ctz(r);
            if (adj[u] & ~prefix) bag.push_back(u);
        }
        std::sort(bag.begin(), bag.end());
        X.bags.push_back(std::move(bag));
        prefix |= 1u << v;
    }
    return {best, to_nice(g, X)};
}

PathDecomposition parse_decomposition(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0, expected = -1;
    PathDecomposition X;
    while (std::getline(in, line)) {
        ++lineno;
        const bool comment_only = line.find_first_not_of(" \t\r") != std::string::npos &&
                                  line[line.find_first_not_of(" \t\r")] == '#';
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (expected < 0) {
            if (tok.empty()) continue;
            if (tok.size() != 2 || tok[0] != "PD") throw ParseError("expected header 'PD <numBags>'", lineno);
            auto [p, ec] = std::from_chars(tok[1].data(), tok[1].data() + tok[1].size(), expected);
            if (ec != std::errc() || expected < 0) throw ParseError("bad bag count", lineno);
            continue;
        }
        if (comment_only) continue;
        if (X.length() == expected) {
            if (!tok.empty()) throw ParseError("more bags than the header declares", lineno);
            continue;
        }
        std::vector<int> bag;
        for (const auto& t : tok) {
            int v;
            auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
            if (ec != std::errc() || p != t.data() + t.size() || v < 1) throw ParseError("bad vertex id '" + t + "'", lineno);
            bag.push_back(v - 1);
        }
        std::sort(bag.begin(), bag.end());
        if (std::adjacent_find(bag.begin(), bag.end()) != bag.end()) throw ParseError("vertex repeated in a bag", lineno);
        X.bags.push_back(std::move(bag));
    }
    if (expected < 0) throw ParseError("missing header 'PD <numBags>'");
    // A missing trailing empty line still denotes an empty bag.
    while (X.length() < expected) X.bags.emplace_back();
    return X;
}

std::string format_decomposition(const PathDecomposition& X)
{
    std::string out = "PD " + std::to_string(X.length()) + "\n";
    for (const auto& bag : X.bags) {
        for (size_t i = 0; i < bag.size(); ++i) out += (i ? " " : "") + std::to_string(bag[i] + 1);
        out += "\n";
    }
    return out;
}

} // namespace smp
