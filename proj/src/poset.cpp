#include <smp/poset.hpp>
#include <smp/error.hpp>

#include <algorithm>
#include <charconv>
#include <map>
#include <queue>
#include <sstream>

namespace smp {

Dag::Dag(int p, std::vector<std::pair<int, int>> edges, std::vector<int> colors) : p_(p)
{
    if (p < 0) throw ValidationError("negative vertex count");
    if (!colors.empty() && colors.size() != edges.size()) throw ValidationError("color count does not match edge count");
    if (colors.empty()) colors.assign(edges.size(), 0);
    std::vector<std::pair<std::pair<int, int>, int>> ec;
    for (size_t i = 0; i < edges.size(); ++i) {
        auto [u, v] = edges[i];
        if (u < 0 || u >= p || v < 0 || v >= p) throw ValidationError("edge endpoint out of range");
        if (u == v) throw ValidationError("self-loop at vertex " + std::to_string(u + 1));
        if (colors[i] < 0) throw ValidationError("negative edge color");
        ec.push_back({edges[i], colors[i]});
    }
    std::sort(ec.begin(), ec.end());
    for (size_t i = 0; i < ec.size(); ++i) {
        if (i > 0 && ec[i].first == ec[i - 1].first) {
            if (ec[i].second != ec[i - 1].second)
                throw ValidationError("edge (" + std::to_string(ec[i].first.first + 1) + "," +
                                      std::to_string(ec[i].first.second + 1) + ") given twice with different colors");
            continue;
        }
        edges_.push_back(ec[i].first);
        colors_.push_back(ec[i].second);
    }
    out_.assign(p, {});
    in_.assign(p, {});
    for (auto [u, v] : edges_) {
        out_[u].push_back(v);
        in_[v].push_back(u);
    }
    // Kahn with a min-heap: deterministic, smallest available vertex first.
    std::vector<int> indeg(p);
    for (int v = 0; v < p; ++v) indeg[v] = static_cast<int>(in_[v].size());
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (int v = 0; v < p; ++v)
        if (indeg[v] == 0) ready.push(v);
    while (!ready.empty()) {
        int v = ready.top();
        ready.pop();
        topo_.push_back(v);
        for (int w : out_[v])
            if (--indeg[w] == 0) ready.push(w);
    }
    if (static_cast<int>(topo_.size()) != p) throw ValidationError("graph has a directed cycle");
}

bool Dag::colored() const
{
    return !colors_.empty() && std::all_of(colors_.begin(), colors_.end(), [](int c) { return c > 0; });
}

int Dag::edge_index(int u, int v) const
{
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(u, v));
    return it != edges_.end() && *it == std::make_pair(u, v) ? static_cast<int>(it - edges_.begin()) : -1;
}

std::vector<Bitset> reachability(const Dag& g)
{
    const int p = g.size();
    std::vector<Bitset> reach(p, Bitset(p));
    const auto& topo = g.topological_order();
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        const int u = *it;
        for (int v : g.out(u)) {
            reach[u].set(v);
            reach[u] |= reach[v];
        }
    }
    return reach;
}

Dag transitive_closure(const Dag& g)
{
    auto reach = reachability(g);
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < g.size(); ++u)
        for (auto v = reach[u].find_first(); v != Bitset::npos; v = reach[u].find_next(v))
            e.emplace_back(u, static_cast<int>(v));
    return Dag(g.size(), std::move(e));
}

Dag transitive_reduction(const Dag& g)
{
    auto reach = reachability(g);
    std::vector<std::pair<int, int>> e;
    std::vector<int> c;
    for (size_t i = 0; i < g.edges().size(); ++i) {
        auto [u, v] = g.edges()[i];
        bool implied = false;
        for (int x : g.out(u))
            if (x != v && reach[x].test(v)) { implied = true; break; }
        if (!implied) {
            e.push_back({u, v});
            c.push_back(g.colors()[i]);
        }
    }
    return Dag(g.size(), std::move(e), std::move(c));
}

bool is_downset(const Dag& g, const std::vector<int>& Z)
{
    std::vector<char> in(g.size(), 0);
    for (int z : Z) {
        if (z < 0 || z >= g.size()) throw ValidationError("vertex out of range");
        in[z] = 1;
    }
    for (auto [u, v] : g.edges())
        if (in[v] && !in[u]) return false;
    return true;
}

void for_each_downset(const Dag& g, const std::function<void(const std::vector<int>&)>& visit, long long max_count)
{
    // Decide vertices in topological order; a vertex may join only when all its predecessors did.
    const auto& order = g.topological_order();
    const int p = g.size();
    std::vector<char> in(p, 0);
    std::vector<int> members;
    long long count = 0;
    std::function<void(int)> rec = [&](int i) {
        if (i == p) {
            if (++count > max_count) throw CapExceeded("more than " + std::to_string(max_count) + " downsets");
            auto sorted = members;
            std::sort(sorted.begin(), sorted.end());
            visit(sorted);
            return;
        }
        const int v = order[i];
        rec(i + 1);
        if (std::all_of(g.in(v).begin(), g.in(v).end(), [&](int u) { return in[u] != 0; })) {
            in[v] = 1;
            members.push_back(v);
            rec(i + 1);
            members.pop_back();
            in[v] = 0;
        }
    };
    rec(0);
}

std::vector<std::vector<int>> enumerate_downsets_bruteforce(const Dag& g, int max_p)
{
    if (g.size() > max_p) throw CapExceeded("downset enumeration capped at " + std::to_string(max_p) + " vertices");
    std::vector<std::vector<int>> out;
    for_each_downset(g, [&](const std::vector<int>& z) { out.push_back(z); }, 1LL << 40);
    return out;
}

Dag induced_subgraph(const Dag& g, const std::vector<int>& keep)
{
    std::vector<int> pos(g.size(), -1);
    for (size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> e;
    std::vector<int> c;
    for (size_t i = 0; i < g.edges().size(); ++i) {
        auto [u, v] = g.edges()[i];
        if (pos[u] >= 0 && pos[v] >= 0) {
            e.push_back({pos[u], pos[v]});
            c.push_back(g.colors()[i]);
        }
    }
    return Dag(static_cast<int>(keep.size()), std::move(e), std::move(c));
}

bool poset_isomorphic_small(const Dag& P, const Dag& Q, int max_p)
{
    if (P.size() > max_p || Q.size() > max_p)
        throw CapExceeded("isomorphism test capped at " + std::to_string(max_p) + " vertices");
    if (P.size() != Q.size()) return false;
    const int p = P.size();
    auto rp = reachability(P), rq = reachability(Q);
    auto signature = [](const std::vector<Bitset>& r, int v) {
        int up = 0;
        for (const auto& row : r) up += row.test(v);
        return std::make_pair(up, static_cast<int>(r[v].count()));
    };
    std::vector<std::pair<int, int>> sp(p), sq(p);
    for (int v = 0; v < p; ++v) {
        sp[v] = signature(rp, v);
        sq[v] = signature(rq, v);
    }
    {
        auto a = sp, b = sq;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return false;
    }
    std::vector<int> map(p, -1);
    std::vector<char> used(p, 0);
    std::function<bool(int)> rec = [&](int v) {
        if (v == p) return true;
        for (int w = 0; w < p; ++w) {
            if (used[w] || sq[w] != sp[v]) continue;
            bool ok = true;
            for (int u = 0; u < v && ok; ++u)
                ok = rp[u].test(v) == rq[map[u]].test(w) && rp[v].test(u) == rq[w].test(map[u]);
            if (!ok) continue;
            map[v] = w;
            used[w] = 1;
            if (rec(v + 1)) return true;
            used[w] = 0;
        }
        return false;
    };
    return rec(0);
}

namespace {

// Parses "m[c,v]" / "w[c,v]" into (c, v) with v 1-based; false otherwise.
bool parse_label(const std::string& s, int& c, int& v)
{
    if (s.size() < 6 || (s[0] != 'm' && s[0] != 'w') || s[1] != '[' || s.back() != ']') return false;
    auto comma = s.find(',');
    if (comma == std::string::npos) return false;
    const char* b = s.data();
    auto r1 = std::from_chars(b + 2, b + comma, c);
    auto r2 = std::from_chars(b + comma + 1, b + s.size() - 1, v);
    return r1.ec == std::errc() && r1.ptr == b + comma && r2.ec == std::errc() && r2.ptr == b + s.size() - 1;
}

} // namespace

int label_vertex(const std::string& label)
{
    int c, v;
    return parse_label(label, c, v) ? v - 1 : -1;
}

int label_color(const std::string& label)
{
    int c, v;
    return parse_label(label, c, v) ? c : -1;
}

Dag parse_dag(std::string_view text)
{
    int p = -1, q = -1;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> colors;
    bool any_color = false, any_plain = false;
    int lineno = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        auto num = [&](const std::string& s) {
            int x;
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
            if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError("expected an integer, got '" + s + "'", lineno);
            return x;
        };
        if (p < 0) {
            if (tok.size() != 3 || tok[0] != "DAG") throw ParseError("expected header 'DAG <p> <q>'", lineno);
            p = num(tok[1]);
            q = num(tok[2]);
            if (p < 0 || q < 0) throw ParseError("negative size in header", lineno);
            continue;
        }
        if (tok.size() != 2 && tok.size() != 3) throw ParseError("expected 'u v [color]'", lineno);
        const int u = num(tok[0]), v = num(tok[1]);
        if (u < 1 || u > p || v < 1 || v > p) throw ParseError("vertex out of range 1.." + std::to_string(p), lineno);
        int c = 0;
        if (tok.size() == 3) {
            c = num(tok[2]);
            if (c < 1) throw ParseError("colors are positive integers", lineno);
            any_color = true;
        } else {
            any_plain = true;
        }
        edges.emplace_back(u - 1, v - 1);
        colors.push_back(c);
    }
    if (p < 0) throw ParseError("missing header 'DAG <p> <q>'");
    if (static_cast<int>(edges.size()) != q)
        throw ParseError("header declares " + std::to_string(q) + " edges, found " + std::to_string(edges.size()));
    if (any_color && any_plain) throw ParseError("either every edge carries a color or none does");
    try {
        return Dag(p, std::move(edges), std::move(colors));
    } catch (const ValidationError& e) {
        throw ParseError(e.what());
    }
}

std::string format_dag(const Dag& g)
{
    std::string out = "DAG " + std::to_string(g.size()) + " " + std::to_string(g.edges().size()) + "\n";
    for (size_t i = 0; i < g.edges().size(); ++i) {
        auto [u, v] = g.edges()[i];
        out += std::to_string(u + 1) + " " + std::to_string(v + 1);
        if (g.colors()[i] > 0) out += " " + std::to_string(g.colors()[i]);
        out += "\n";
    }
    return out;
}

std::string dag_to_dot(const Dag& g)
{
    std::string out = "digraph poset {\n";
    for (int v = 0; v < g.size(); ++v) out += "  v" + std::to_string(v + 1) + " [label=\"" + std::to_string(v + 1) + "\"];\n";
    for (size_t i = 0; i < g.edges().size(); ++i) {
        auto [u, v] = g.edges()[i];
        out += "  v" + std::to_string(u + 1) + " -> v" + std::to_string(v + 1);
        if (g.colors()[i] > 0) out += " [label=\"" + std::to_string(g.colors()[i]) + "\", phi=" + std::to_string(g.colors()[i]) + "]";
        out += ";\n";
    }
    return out + "}\n";
}

} // namespace smp
