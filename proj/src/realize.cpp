#include <smp/realize.hpp>
#include <smp/error.hpp>

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace smp {

namespace {

std::string agent_label(char side, int c, int v) { return std::string(1, side) + "[" + std::to_string(c) + "," + std::to_string(v + 1) + "]"; }

// (c,v) pairs in lexicographic order; the same index serves for m[c,v] and w[c,v].
struct AgentTable {
    std::vector<std::pair<int, int>> cv;
    std::map<std::pair<int, int>, int> index;

    explicit AgentTable(const std::vector<std::vector<int>>& order)
    {
        for (int v = 0; v < static_cast<int>(order.size()); ++v)
            for (int c : order[v]) cv.emplace_back(c, v);
        std::sort(cv.begin(), cv.end());
        for (int i = 0; i < static_cast<int>(cv.size()); ++i) index[cv[i]] = i;
    }
    int at(int c, int v) const { return index.at({c, v}); }
    int size() const { return static_cast<int>(cv.size()); }
};

std::vector<int> all_ones(const Dag& H) { return std::vector<int>(H.edges().size(), 1); }

} // namespace

std::vector<std::vector<int>> padded_color_sets(const Dag& H, const std::vector<int>& edge_color)
{
    if (edge_color.size() != H.edges().size()) throw ValidationError("one color per edge is required");
    std::vector<std::set<int>> C(H.size());
    for (size_t i = 0; i < H.edges().size(); ++i) {
        if (edge_color[i] < 1) throw ValidationError("edge colors must be positive");
        C[H.edges()[i].first].insert(edge_color[i]);
        C[H.edges()[i].second].insert(edge_color[i]);
    }
    std::vector<std::vector<int>> out;
    for (auto& s : C) {
        for (int pad : {1, 2})
            if (s.size() < 2) s.insert(pad);
        out.emplace_back(s.begin(), s.end());
    }
    return out;
}

ColorPlan ascending_plan(const Dag& H, std::vector<int> edge_color)
{
    auto order = padded_color_sets(H, edge_color);
    return {std::move(edge_color), std::move(order)};
}

Instance construct_instance(const Dag& H, const ColorPlan& plan)
{
    const int p = H.size();
    if (plan.edge_color.size() != H.edges().size()) throw ValidationError("one color per edge is required");
    if (static_cast<int>(plan.order.size()) != p) throw ValidationError("one cyclic color order per vertex is required");
    for (int v = 0; v < p; ++v) {
        std::set<int> s(plan.order[v].begin(), plan.order[v].end());
        if (s.size() != plan.order[v].size() || s.size() < 2)
            throw ValidationError("color order of vertex " + std::to_string(v + 1) + " needs at least two distinct colors");
    }
    for (size_t i = 0; i < H.edges().size(); ++i) {
        const int c = plan.edge_color[i];
        for (int x : {H.edges()[i].first, H.edges()[i].second})
            if (std::find(plan.order[x].begin(), plan.order[x].end(), c) == plan.order[x].end())
                throw ValidationError("color " + std::to_string(c) + " missing at vertex " + std::to_string(x + 1));
    }

    const AgentTable T(plan.order);
    const int n = T.size();
    std::vector<std::vector<int>> men(n), women(n);
    std::vector<std::string> ml(n), wl(n);

    // Middle blocks: (c, v) -> sources u; (c, u) -> targets v. Sets keep them ascending.
    std::map<std::pair<int, int>, std::set<int>> into, outof;
    for (size_t i = 0; i < H.edges().size(); ++i) {
        auto [u, v] = H.edges()[i];
        const int c = plan.edge_color[i];
        into[{c, v}].insert(u);
        outof[{c, u}].insert(v);
    }
    for (int v = 0; v < p; ++v) {
        const auto& pi = plan.order[v];
        const int l = static_cast<int>(pi.size());
        for (int j = 0; j < l; ++j) {
            const int c = pi[j], next = pi[(j + 1) % l], prev = pi[(j + l - 1) % l];
            const int a = T.at(c, v);
            ml[a] = agent_label('m', c, v);
            wl[a] = agent_label('w', c, v);
            auto& lm = men[a];
            lm.push_back(T.at(c, v));
            if (auto it = into.find({c, v}); it != into.end())
                for (int u : it->second) lm.push_back(T.at(c, u));
            lm.push_back(T.at(next, v));
            auto& lw = women[a];
            lw.push_back(T.at(prev, v));
            if (auto it = outof.find({c, v}); it != outof.end())
                for (int t : it->second) lw.push_back(T.at(c, t));
            lw.push_back(T.at(c, v));
        }
    }
    return Instance(std::move(men), std::move(women), std::move(ml), std::move(wl));
}

Instance realize_generic(const Dag& H)
{
    const Dag R = transitive_reduction(H);
    return construct_instance(R, ascending_plan(R, R.colored() ? R.colors() : all_ones(R)));
}

Instance realize_complete(const Dag& H)
{
    const Dag R = transitive_reduction(H);
    const Instance I = construct_instance(R, ascending_plan(R, all_ones(R)));
    const Instance C = complete_preferences(I);
    return Instance(C.all_prefs(Side::Man), C.all_prefs(Side::Woman), I.labels(Side::Man), I.labels(Side::Woman));
}

Instance realize_bounded3(const Dag& H)
{
    const Dag R = transitive_reduction(H);
    std::vector<int> colors(R.edges().size());
    for (size_t i = 0; i < colors.size(); ++i) colors[i] = static_cast<int>(i) + 1;
    return construct_instance(R, ascending_plan(R, std::move(colors)));
}

// ---------------------------------------------------------------------------

mpq_class evaluate(const AttributeProfile& judge, const AttributeProfile& judged)
{
    if (judge.weights.size() != judged.point.size()) throw ValidationError("profile dimensions differ");
    mpq_class s = judge.constant;
    for (size_t k = 0; k < judge.weights.size(); ++k) s += judge.weights[k] * judged.point[k];
    return s;
}

namespace {

std::vector<std::vector<int>> rank_by_profiles(const std::vector<AttributeProfile>& judges,
                                               const std::vector<AttributeProfile>& judged, char side)
{
    std::vector<std::vector<int>> lists;
    for (size_t a = 0; a < judges.size(); ++a) {
        std::vector<std::pair<mpq_class, int>> scored;
        for (size_t b = 0; b < judged.size(); ++b) scored.emplace_back(evaluate(judges[a], judged[b]), static_cast<int>(b));
        std::sort(scored.begin(), scored.end(), [](const auto& x, const auto& y) {
            return x.first != y.first ? x.first > y.first : x.second < y.second;
        });
        for (size_t i = 1; i < scored.size(); ++i)
            if (scored[i].first == scored[i - 1].first)
                throw ValidationError(std::string(1, side) + std::to_string(a + 1) + " values two agents equally");
        std::vector<int> l;
        for (auto& [val, b] : scored) l.push_back(b);
        lists.push_back(std::move(l));
    }
    return lists;
}

// Coefficients (constant first) of prod_j (t - r_j)^2.
std::vector<mpq_class> squared_roots_poly(const std::vector<mpq_class>& roots)
{
    std::vector<mpq_class> poly{1};
    for (const auto& r : roots)
        for (int twice = 0; twice < 2; ++twice) {
            std::vector<mpq_class> next(poly.size() + 1, 0);
            for (size_t i = 0; i < poly.size(); ++i) {
                next[i + 1] += poly[i];
                next[i] -= r * poly[i];
            }
            poly = std::move(next);
        }
    return poly;
}

} // namespace

Instance evaluate_profiles(const std::vector<AttributeProfile>& men, const std::vector<AttributeProfile>& women)
{
    return Instance(rank_by_profiles(men, women, 'm'), rank_by_profiles(women, men, 'w'));
}

AttributeRealization realize_attr6(const Dag& H)
{
    constexpr int dim = 6;
    const Instance B = realize_bounded3(H);
    const int n = B.n_men();
    if (n == 0) return {B, {}, {}};
    const int top = std::min(3, n);
    const mpq_class n2 = mpq_class(n) * n;
    const std::vector<mpq_class> delta{0, 1 / (4 * n2 * n2), 1 / (2 * n2)};

    auto moment_point = [&](int i) {
        std::vector<mpq_class> x(dim);
        mpq_class t = i + 1, pw = 1;
        for (int k = 0; k < dim; ++k) x[k] = pw *= t;
        return x;
    };
    auto padded = [&](const std::vector<int>& list) {
        std::vector<int> l(list.begin(), list.begin() + std::min<int>(top, list.size()));
        for (int b = 0; static_cast<int>(l.size()) < top; ++b)
            if (std::find(l.begin(), l.end(), b) == l.end()) l.push_back(b);
        return l;
    };
    auto profiles = [&](Side s) {
        std::vector<AttributeProfile> out(n);
        for (int a = 0; a < n; ++a) {
            out[a].point = moment_point(a);
            const auto l = padded(B.prefs(s, a));
            std::vector<mpq_class> roots;
            for (size_t j = 0; j < l.size(); ++j) roots.push_back(mpq_class(l[j] + 1) - delta[j]);
            // phi(moment(t)) = -q(t), with q minimal at the preferred agents in order.
            auto q = squared_roots_poly(roots);
            q.resize(dim + 1, 0);
            out[a].constant = -q[0];
            for (int k = 0; k < dim; ++k) out[a].weights.push_back(-q[k + 1]);
        }
        return out;
    };

    AttributeRealization r;
    r.men = profiles(Side::Man);
    r.women = profiles(Side::Woman);
    const Instance E = evaluate_profiles(r.men, r.women);
    for (Side s : {Side::Man, Side::Woman})
        for (int a = 0; a < n; ++a) {
            const auto l = padded(B.prefs(s, a));
            if (!std::equal(l.begin(), l.end(), E.prefs(s, a).begin()))
                throw std::logic_error("attribute profile does not reproduce the bounded list of " + B.name(s, a));
        }
    r.inst = Instance(E.all_prefs(Side::Man), E.all_prefs(Side::Woman), B.labels(Side::Man), B.labels(Side::Woman));
    return r;
}

std::string format_profiles(const AttributeRealization& r)
{
    std::ostringstream out;
    auto q = [](const mpq_class& x) { return x.get_num().get_str() + "/" + x.get_den().get_str(); };
    auto emit = [&](char side, const std::vector<AttributeProfile>& ps) {
        for (size_t a = 0; a < ps.size(); ++a) {
            out << "point " << side << a + 1 << ":";
            for (const auto& x : ps[a].point) out << ' ' << q(x);
            out << "\nweights " << side << a + 1 << ":";
            for (const auto& x : ps[a].weights) out << ' ' << q(x);
            out << ' ' << q(ps[a].constant) << '\n';
        }
    };
    out << "# point: coordinates; weights: coefficients then constant\n";
    emit('m', r.men);
    emit('w', r.women);
    return out.str();
}

AttributeRealization parse_profiles(std::string_view text, int n_men, int n_women)
{
    AttributeRealization r;
    r.men.resize(n_men);
    r.women.resize(n_women);
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        std::string kind, who;
        if (!(ls >> kind)) continue;
        if (!(ls >> who) || who.size() < 3 || who.back() != ':' || (who[0] != 'm' && who[0] != 'w'))
            throw ParseError("expected 'point|weights m<i>|w<j>:'", lineno);
        int idx;
        try {
            idx = std::stoi(who.substr(1, who.size() - 2)) - 1;
        } catch (const std::exception&) {
            throw ParseError("bad agent name '" + who + "'", lineno);
        }
        auto& side = who[0] == 'm' ? r.men : r.women;
        if (idx < 0 || idx >= static_cast<int>(side.size())) throw ParseError("agent out of range", lineno);
        std::vector<mpq_class> vals;
        for (std::string t; ls >> t;) {
            try {
                mpq_class x(t);
                x.canonicalize();
                vals.push_back(x);
            } catch (const std::exception&) {
                throw ParseError("bad rational '" + t + "'", lineno);
            }
        }
        if (kind == "point") {
            side[idx].point = std::move(vals);
        } else if (kind == "weights") {
            if (vals.empty()) throw ParseError("weights need a constant term", lineno);
            side[idx].constant = vals.back();
            vals.pop_back();
            side[idx].weights = std::move(vals);
        } else {
            throw ParseError("unknown record '" + kind + "'", lineno);
        }
    }
    return r;
}

// ---------------------------------------------------------------------------

namespace {

// Kahn's algorithm taking the largest available source; the i-th emitted vertex becomes p-1-i.
std::vector<int> descending_relabel(const Dag& H)
{
    const int p = H.size();
    std::vector<int> indeg(p, 0), label(p, -1);
    for (auto [u, v] : H.edges()) ++indeg[v];
    std::priority_queue<int> ready;
    for (int v = 0; v < p; ++v)
        if (indeg[v] == 0) ready.push(v);
    int next = p - 1;
    while (!ready.empty()) {
        const int v = ready.top();
        ready.pop();
        label[v] = next--;
        for (int w : H.out(v))
            if (--indeg[w] == 0) ready.push(w);
    }
    return label;
}

} // namespace

ListRealization realize_list2inf(const Dag& H, ListSide side)
{
    const Dag R = transitive_reduction(H);
    const int p = R.size();
    ListRealization out;
    out.side = side;
    out.relabel = descending_relabel(R);

    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : R.edges()) edges.emplace_back(out.relabel[u], out.relabel[v]);
    const Dag G(p, edges);
    std::vector<int> colors;
    for (auto [u, v] : G.edges()) colors.push_back(u + 1);
    ColorPlan plan = ascending_plan(G, colors);
    for (auto& c : plan.order)
        if (std::find(c.begin(), c.end(), p + 1) == c.end()) c.push_back(p + 1);
    const Instance core = construct_instance(G, plan);
    const AgentTable T(plan.order);
    const int n = T.size();

    // Labels carry the original vertex, colors stay in the relabelled numbering.
    std::vector<int> original(p);
    for (int v = 0; v < p; ++v) original[out.relabel[v]] = v;
    std::vector<std::string> ml(n), wl(n);
    for (int a = 0; a < n; ++a) {
        auto [c, v] = T.cv[a];
        ml[a] = agent_label('m', c, original[v]);
        wl[a] = agent_label('w', c, original[v]);
    }
    out.core = Instance(core.all_prefs(Side::Man), core.all_prefs(Side::Woman), ml, wl);

    for (int a = 0; a < n; ++a) out.master1.push_back(a);
    for (int a = 0; a < n; ++a)
        if (T.cv[a].first == p + 1) out.master2.push_back(a);
    for (int a = 0; a < n; ++a)
        if (T.cv[a].first != p + 1) out.master2.push_back(a);

    const Side listed = side == ListSide::Men ? Side::Man : Side::Woman;
    out.group.assign(n, 1);
    for (int a = 0; a < n; ++a) {
        auto [c, v] = T.cv[a];
        const bool second = listed == Side::Man ? c == p + 1 : c == plan.order[v].front();
        if (second) out.group[a] = 2;
    }
    std::vector<std::vector<int>> lists[2] = {core.all_prefs(Side::Man), core.all_prefs(Side::Woman)};
    const int li = listed == Side::Man ? 0 : 1;
    for (int a = 0; a < n; ++a) lists[li][a] = out.group[a] == 1 ? out.master1 : out.master2;
    for (auto& l : lists[1 - li]) {
        std::vector<char> has(n, 0);
        for (int b : l) has[b] = 1;
        for (int b = 0; b < n; ++b)
            if (!has[b]) l.push_back(b);
    }
    out.inst = Instance(std::move(lists[0]), std::move(lists[1]), ml, wl);
    return out;
}

// ---------------------------------------------------------------------------

std::vector<int> bitonic_sequence(int a, int b)
{
    if (a > b) throw ValidationError("empty color interval");
    std::vector<int> s;
    for (int c = a; c <= b; c += 2) s.push_back(c);
    for (int c = (b - a) % 2 == 0 ? b - 1 : b; c > a; c -= 2) s.push_back(c);
    return s;
}

ColorPlan range_plan(const Dag& H, const PathDecomposition& X)
{
    const int p = H.size();
    if (auto why = decomposition_problem(H, X); !why.empty()) throw ValidationError("invalid path decomposition: " + why);
    if (!is_nice(X, p)) throw ValidationError("path decomposition is not nice");
    std::vector<int> first(p, 0), last(p, 0);
    for (int i = 0; i < X.length(); ++i)
        for (int v : X.bags[i]) {
            if (!first[v]) first[v] = i + 1;
            last[v] = i + 1;
        }
    ColorPlan plan;
    for (auto [u, v] : H.edges()) plan.edge_color.push_back(std::max(first[u], first[v]));
    for (int v = 0; v < p; ++v) plan.order.push_back(bitonic_sequence(first[v], last[v] + 1));
    return plan;
}

Instance realize_range(const Dag& H, const PathDecomposition& X)
{
    const Dag R = transitive_reduction(H);
    const ColorPlan plan = range_plan(R, X);
    const Instance I1 = construct_instance(R, plan);
    const AgentTable T(plan.order);
    const int n = T.size();

    // Agents of each color block, ascending by index.
    const int colors = X.length();
    std::vector<std::vector<int>> block(colors + 2);
    for (int a = 0; a < n; ++a) block[T.cv[a].first].push_back(a);

    auto widen = [&](const std::vector<int>& base, int i) {
        std::vector<int> l;
        for (int j = 1; j <= i - 3; ++j) l.insert(l.end(), block[j].begin(), block[j].end());
        std::vector<char> has(n, 0);
        for (int b : base) has[b] = 1;
        std::vector<int> mid = base;
        for (int j = std::max(1, i - 2); j <= std::min(colors, i + 2); ++j)
            for (int b : block[j])
                if (!has[b]) mid.push_back(b);
        l.insert(l.end(), mid.begin(), mid.end());
        for (int j = i + 3; j <= colors; ++j) l.insert(l.end(), block[j].begin(), block[j].end());
        return l;
    };
    std::vector<std::vector<int>> men(n), women(n);
    for (int a = 0; a < n; ++a) {
        men[a] = widen(I1.man(a), T.cv[a].first);
        women[a] = widen(I1.woman(a), T.cv[a].first);
    }
    return Instance(std::move(men), std::move(women), I1.labels(Side::Man), I1.labels(Side::Woman));
}

} // namespace smp
