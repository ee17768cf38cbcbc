#include <smp/rotation.hpp>
#include <smp/error.hpp>

#include <algorithm>
#include <functional>
#include <set>

namespace smp {

Dag RotationDigraph::dag() const
{
    std::vector<std::pair<int, int>> e;
    for (const auto& x : edges) e.emplace_back(x.from, x.to);
    return Dag(size(), std::move(e));
}

std::vector<Rotation> exposed_rotations(const Instance& inst, const Matching& mu)
{
    if (!is_stable(inst, mu)) throw ValidationError("matching is not stable");
    const int n = inst.n_men();
    // succ[m] = husband of the first woman after mu(m) on m's list who prefers m to her partner.
    std::vector<int> succ(n, -1);
    for (int m = 0; m < n; ++m) {
        if (mu.wife[m] < 0) continue;
        const auto& list = inst.man(m);
        for (int i = inst.man_rank(m, mu.wife[m]); i < static_cast<int>(list.size()); ++i) {
            const int w = list[i], h = mu.husband[w];
            if (h < 0) break;  // an unmatched woman who accepts m would block any move past her
            if (inst.woman_rank(w, m) < inst.woman_rank(w, h)) {
                succ[m] = h;
                break;
            }
        }
    }
    std::vector<Rotation> out;
    std::vector<int> state(n, 0);  // 0 unvisited, 1 on current walk, 2 done
    for (int s = 0; s < n; ++s) {
        std::vector<int> walk;
        int m = s;
        while (m >= 0 && state[m] == 0) {
            state[m] = 1;
            walk.push_back(m);
            m = succ[m];
        }
        if (m >= 0 && state[m] == 1) {
            auto start = std::find(walk.begin(), walk.end(), m);
            std::vector<int> cyc(start, walk.end());
            std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
            Rotation r;
            for (int x : cyc) r.pairs.emplace_back(x, mu.wife[x]);
            out.push_back(std::move(r));
        }
        for (int x : walk) state[x] = 2;
    }
    std::sort(out.begin(), out.end(), [](const Rotation& a, const Rotation& b) { return a.pairs < b.pairs; });
    return out;
}

namespace {

void apply_rotation(Matching& mu, const Rotation& rho)
{
    const int l = static_cast<int>(rho.pairs.size());
    for (int i = 0; i < l; ++i) mu.pair(rho.pairs[i].first, rho.pairs[(i + 1) % l].second);
}

std::string rotation_label(const Instance& inst, const Rotation& rho)
{
    int v = -2;
    for (auto [m, w] : rho.pairs) {
        const int x = label_vertex(inst.label(Side::Man, m));
        if (x < 0 || (v != -2 && x != v)) return "";
        v = x;
    }
    return v >= 0 ? "rho[" + std::to_string(v + 1) + "]" : "";
}

} // namespace

Matching eliminate(const Instance& inst, const Matching& mu, const Rotation& rho)
{
    auto ex = exposed_rotations(inst, mu);
    if (std::none_of(ex.begin(), ex.end(), [&](const Rotation& r) { return r.same_cycle(rho); }))
        throw ValidationError("rotation " + format_rotation(inst, rho) + " is not exposed");
    Matching out = mu;
    apply_rotation(out, rho);
    return out;
}

RotationDigraph rotation_digraph(const Instance& inst)
{
    RotationDigraph dg;
    dg.man_optimal = gale_shapley(inst, Orientation::ManOptimal);

    struct Move { int rot, from, to; };  // a woman's partner changes from -> to
    std::vector<std::vector<Move>> woman_moves(inst.n_women());
    std::set<std::pair<int, int>> in_rotation;

    Matching mu = dg.man_optimal;
    for (;;) {
        auto ex = exposed_rotations(inst, mu);
        if (ex.empty()) break;
        Rotation rho = std::move(ex.front());
        rho.id = dg.size();
        rho.label = rotation_label(inst, rho);
        const int l = static_cast<int>(rho.pairs.size());
        for (int i = 0; i < l; ++i) {
            auto [m, w] = rho.pairs[i];
            const auto [next_m, next_w] = rho.pairs[(i + 1) % l];
            in_rotation.insert({m, w});
            dg.moved_to[{m, next_w}] = rho.id;
            woman_moves[next_w].push_back({rho.id, next_m, m});
        }
        apply_rotation(mu, rho);
        dg.rotations.push_back(std::move(rho));
    }

    std::map<std::pair<int, int>, unsigned> tags;
    for (const auto& rho : dg.rotations) {
        const int l = static_cast<int>(rho.pairs.size());
        for (int i = 0; i < l; ++i) {
            auto [m, w] = rho.pairs[i];
            // Rule 1: the rotation that brought m to w precedes rho.
            if (auto it = dg.moved_to.find({m, w}); it != dg.moved_to.end()) tags[{it->second, rho.id}] |= Rule1;
            // Rule 2: women strictly between w_i and w_{i+1} on m's list, paired with m in no rotation.
            const int lo = inst.man_rank(m, w), hi = inst.man_rank(m, rho.pairs[(i + 1) % l].second);
            for (int r = lo + 1; r < hi; ++r) {
                const int x = inst.man(m)[r - 1];
                if (in_rotation.count({m, x})) continue;
                const int rm = inst.woman_rank(x, m);
                for (const auto& mv : woman_moves[x]) {
                    if (inst.woman_rank(x, mv.to) < rm && rm < inst.woman_rank(x, mv.from)) {
                        if (mv.rot != rho.id) tags[{mv.rot, rho.id}] |= Rule2;
                        break;
                    }
                }
            }
        }
    }
    for (auto [e, t] : tags) dg.edges.push_back({e.first, e.second, t});
    return dg;
}

Matching matching_from_downset(const Instance& inst, const RotationDigraph& dg, const std::vector<int>& Z)
{
    for (int z : Z)
        if (z < 0 || z >= dg.size()) throw ValidationError("rotation id out of range");
    std::vector<char> in(dg.size(), 0);
    for (int z : Z) in[z] = 1;
    for (const auto& e : dg.edges)
        if (in[e.to] && !in[e.from])
            throw ValidationError("not a downset: rotation " + std::to_string(e.from + 1) + " precedes rotation " +
                                  std::to_string(e.to + 1));
    (void)inst;
    Matching mu = dg.man_optimal;
    for (int id = 0; id < dg.size(); ++id)
        if (in[id]) apply_rotation(mu, dg.rotations[id]);
    return mu;
}

std::vector<int> downset_from_matching(const Instance& inst, const RotationDigraph& dg, const Matching& mu)
{
    if (!is_stable(inst, mu)) throw ValidationError("matching is not stable");
    // rho is eliminated iff its first man sits at or below his target w_1.
    std::vector<int> Z;
    for (const auto& rho : dg.rotations) {
        const int m = rho.pairs[0].first, target = rho.pairs[1 % rho.pairs.size()].second;
        if (mu.wife[m] >= 0 && inst.man_rank(m, mu.wife[m]) >= inst.man_rank(m, target)) Z.push_back(rho.id);
    }
    if (!(matching_from_downset(inst, dg, Z) == mu))
        throw ValidationError("matching is not reachable from the man-optimal matching");
    return Z;
}

std::vector<Matching> all_stable_matchings_bruteforce(const Instance& inst, int max_agents, long long max_count)
{
    if (std::max(inst.n_men(), inst.n_women()) > max_agents)
        throw CapExceeded("brute-force enumeration capped at " + std::to_string(max_agents) + " agents per side");
    std::set<Matching> seen;
    std::function<void(const Matching&)> dfs = [&](const Matching& mu) {
        if (!seen.insert(mu).second) return;
        if (static_cast<long long>(seen.size()) > max_count)
            throw CapExceeded("more than " + std::to_string(max_count) + " stable matchings");
        for (const auto& rho : exposed_rotations(inst, mu)) {
            Matching next = mu;
            apply_rotation(next, rho);
            dfs(next);
        }
    };
    dfs(gale_shapley(inst, Orientation::ManOptimal));
    return {seen.begin(), seen.end()};
}

std::string format_rotation(const Instance& inst, const Rotation& rho)
{
    std::string out;
    for (auto [m, w] : rho.pairs) out += "(" + inst.name(Side::Man, m) + "," + inst.name(Side::Woman, w) + ")";
    return out;
}

std::string rotation_digraph_dot(const Instance& inst, const RotationDigraph& dg)
{
    std::string out = "digraph rotations {\n";
    for (const auto& r : dg.rotations)
        out += "  r" + std::to_string(r.id + 1) + " [label=\"" + format_rotation(inst, r) + "\"];\n";
    for (const auto& e : dg.edges) {
        std::string rule = (e.rules & Rule1 ? "1" : "") + std::string(e.rules & Rule2 ? "2" : "");
        out += "  r" + std::to_string(e.from + 1) + " -> r" + std::to_string(e.to + 1) + " [rule=" + rule + "];\n";
    }
    return out + "}\n";
}

} // namespace smp
