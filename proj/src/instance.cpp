#include <smp/instance.hpp>
#include <smp/error.hpp>

#include <algorithm>
#include <charconv>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace smp {

Instance::Instance(std::vector<std::vector<int>> men, std::vector<std::vector<int>> women,
                   std::vector<std::string> men_labels, std::vector<std::string> women_labels)
{
    prefs_[0] = std::move(men);
    prefs_[1] = std::move(women);
    labels_[0] = std::move(men_labels);
    labels_[1] = std::move(women_labels);
    for (int s = 0; s < 2; ++s) {
        const int own = static_cast<int>(prefs_[s].size());
        const int opp = static_cast<int>(prefs_[1 - s].size());
        if (labels_[s].empty()) labels_[s].assign(own, "");
        if (static_cast<int>(labels_[s].size()) != own)
            throw ValidationError("label count does not match agent count");
        rank_[s].assign(own, std::vector<int>(opp, 0));
        for (int a = 0; a < own; ++a) {
            const auto& list = prefs_[s][a];
            for (int pos = 0; pos < static_cast<int>(list.size()); ++pos) {
                const int b = list[pos];
                if (b < 0 || b >= opp)
                    throw ValidationError("preference entry out of range for " + name(s == 0 ? Side::Man : Side::Woman, a));
                if (rank_[s][a][b] != 0)
                    throw ValidationError("duplicate entry in list of " + name(s == 0 ? Side::Man : Side::Woman, a));
                rank_[s][a][b] = pos + 1;
            }
        }
    }
    for (int m = 0; m < n_men(); ++m)
        for (int w = 0; w < n_women(); ++w)
            if ((rank_[0][m][w] != 0) != (rank_[1][w][m] != 0)) {
                const bool man_lists = rank_[0][m][w] != 0;
                throw ValidationError("inconsistent lists: " +
                                      (man_lists ? name(Side::Man, m) + " lists " + name(Side::Woman, w) + " but not vice versa"
                                                 : name(Side::Woman, w) + " lists " + name(Side::Man, m) + " but not vice versa"));
            }
}

bool Instance::complete() const
{
    for (const auto& l : prefs_[0])
        if (static_cast<int>(l.size()) != n_women()) return false;
    for (const auto& l : prefs_[1])
        if (static_cast<int>(l.size()) != n_men()) return false;
    return true;
}

bool Instance::labelled() const
{
    for (int s = 0; s < 2; ++s)
        for (const auto& l : labels_[s])
            if (l.empty()) return false;
    return n_men() + n_women() > 0;
}

std::string Instance::name(Side s, int a) const
{
    const auto& l = labels_[idx(s)];
    if (a < static_cast<int>(l.size()) && !l[a].empty()) return l[a];
    return (s == Side::Man ? "m" : "w") + std::to_string(a + 1);
}

Matching Matching::from_pairs(int n_men, int n_women, const std::vector<std::pair<int, int>>& pairs)
{
    Matching mu(n_men, n_women);
    for (auto [m, w] : pairs) {
        if (m < 0 || m >= n_men || w < 0 || w >= n_women) throw ValidationError("matching pair out of range");
        if (mu.wife[m] != -1 || mu.husband[w] != -1) throw ValidationError("agent matched twice");
        mu.pair(m, w);
    }
    return mu;
}

std::vector<std::pair<int, int>> Matching::pairs() const
{
    std::vector<std::pair<int, int>> out;
    for (int m = 0; m < static_cast<int>(wife.size()); ++m)
        if (wife[m] >= 0) out.emplace_back(m, wife[m]);
    return out;
}

int Matching::size() const
{
    return static_cast<int>(std::count_if(wife.begin(), wife.end(), [](int w) { return w >= 0; }));
}

// ---------------------------------------------------------------------------
// File format

namespace {

std::vector<std::string> split_ws(std::string_view s)
{
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

bool parse_int(std::string_view s, int& out)
{
    if (s.empty()) return false;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

struct AgentLine {
    std::string head;
    std::vector<std::string> names;
    int line;
};

bool uses_labels(const Instance& inst) { return inst.labelled(); }

std::string agent_name(const Instance& inst, Side s, int a, bool labels)
{
    if (labels) return inst.name(s, a);
    return (s == Side::Man ? "m" : "w") + std::to_string(a + 1);
}

std::string agent_line(const Instance& inst, Side s, int a, bool labels)
{
    std::string out = agent_name(inst, s, a, labels) + ":";
    for (int b : inst.prefs(s, a)) out += " " + agent_name(inst, other(s), b, labels);
    return out;
}

} // namespace

Instance parse_instance(std::string_view text)
{
    int n[2] = {-1, -1};
    std::vector<AgentLine> lines[2];
    int lineno = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view raw = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++lineno;
        if (auto h = raw.find('#'); h != std::string_view::npos) raw = raw.substr(0, h);
        auto toks = split_ws(raw);
        if (toks.empty()) continue;
        if (n[0] < 0) {
            if (toks.size() != 3 || toks[0] != "SM" || !parse_int(toks[1], n[0]) || !parse_int(toks[2], n[1]) ||
                n[0] < 0 || n[1] < 0)
                throw ParseError("expected header 'SM <nMen> <nWomen>'", lineno);
            continue;
        }
        auto colon = raw.find(':');
        if (colon == std::string_view::npos) throw ParseError("expected '<agent>: <list>'", lineno);
        auto head = split_ws(raw.substr(0, colon));
        if (head.size() != 1) throw ParseError("expected a single agent name before ':'", lineno);
        const char c = head[0][0];
        if (c != 'm' && c != 'w') throw ParseError("agent names start with 'm' or 'w': " + head[0], lineno);
        lines[c == 'm' ? 0 : 1].push_back({head[0], split_ws(raw.substr(colon + 1)), lineno});
    }
    if (n[0] < 0) throw ParseError("missing header 'SM <nMen> <nWomen>'");

    // Resolve heads: "m<i>" names index i-1, anything else is a label taking its line position.
    std::unordered_map<std::string, int> by_name[2];
    std::vector<int> line_of[2];
    std::vector<std::string> labels[2];
    for (int s = 0; s < 2; ++s) {
        if (static_cast<int>(lines[s].size()) > n[s])
            throw ParseError(std::string("more ") + (s == 0 ? "men" : "women") + " lines than the header declares",
                             lines[s][n[s]].line);
        line_of[s].assign(n[s], -1);
        labels[s].assign(n[s], "");
        for (int i = 0; i < static_cast<int>(lines[s].size()); ++i) {
            const auto& L = lines[s][i];
            int idx = -1;
            if (int v; parse_int(std::string_view(L.head).substr(1), v)) {
                if (v < 1 || v > n[s]) throw ParseError("agent index out of range: " + L.head, L.line);
                idx = v - 1;
            } else {
                idx = i;
                labels[s][idx] = L.head;
            }
            if (line_of[s][idx] != -1 || by_name[s].count(L.head))
                throw ParseError("duplicate agent line: " + L.head, L.line);
            line_of[s][idx] = i;
            by_name[s][L.head] = idx;
        }
    }

    std::vector<std::vector<int>> prefs[2];
    for (int s = 0; s < 2; ++s) {
        prefs[s].assign(n[s], {});
        const char want = s == 0 ? 'w' : 'm';
        for (int a = 0; a < n[s]; ++a) {
            if (line_of[s][a] < 0) continue;
            const auto& L = lines[s][line_of[s][a]];
            std::vector<char> seen(n[1 - s], 0);
            for (const auto& nm : L.names) {
                if (nm[0] != want) throw ParseError("wrong side in list of " + L.head + ": " + nm, L.line);
                int b = -1;
                if (auto it = by_name[1 - s].find(nm); it != by_name[1 - s].end()) {
                    b = it->second;
                } else if (int v; parse_int(std::string_view(nm).substr(1), v) && v >= 1 && v <= n[1 - s]) {
                    b = v - 1;
                } else {
                    throw ParseError("unknown agent in list of " + L.head + ": " + nm, L.line);
                }
                if (seen[b]) throw ParseError("duplicate entry in list of " + L.head + ": " + nm, L.line);
                seen[b] = 1;
                prefs[s][a].push_back(b);
            }
        }
    }
    try {
        return Instance(std::move(prefs[0]), std::move(prefs[1]), std::move(labels[0]), std::move(labels[1]));
    } catch (const ValidationError& e) {
        throw ParseError(e.what());
    }
}

std::string format_agent(const Instance& inst, Side s, int a)
{
    return agent_line(inst, s, a, uses_labels(inst));
}

std::string format_instance(const Instance& inst)
{
    const bool labels = uses_labels(inst);
    std::string out = "SM " + std::to_string(inst.n_men()) + " " + std::to_string(inst.n_women()) + "\n";
    for (Side s : {Side::Man, Side::Woman})
        for (int a = 0; a < inst.size(s); ++a) out += agent_line(inst, s, a, labels) + "\n";
    return out;
}

std::string format_matching(const Instance& inst, const Matching& mu)
{
    const bool labels = uses_labels(inst);
    std::string out;
    for (auto [m, w] : mu.pairs())
        out += agent_name(inst, Side::Man, m, labels) + " " + agent_name(inst, Side::Woman, w, labels) + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Stability

namespace {

void check_matching_shape(const Instance& inst, const Matching& mu)
{
    if (static_cast<int>(mu.wife.size()) != inst.n_men() || static_cast<int>(mu.husband.size()) != inst.n_women())
        throw ValidationError("matching size does not match instance");
    for (int m = 0; m < inst.n_men(); ++m) {
        const int w = mu.wife[m];
        if (w < 0) continue;
        if (w >= inst.n_women() || mu.husband[w] != m) throw ValidationError("matching arrays disagree");
        if (!inst.acceptable(m, w))
            throw ValidationError("pair (" + inst.name(Side::Man, m) + ", " + inst.name(Side::Woman, w) +
                                  ") is not mutually acceptable");
    }
    for (int w = 0; w < inst.n_women(); ++w)
        if (mu.husband[w] >= 0 && mu.wife[mu.husband[w]] != w) throw ValidationError("matching arrays disagree");
}

} // namespace

std::vector<std::pair<int, int>> blocking_pairs(const Instance& inst, const Matching& mu)
{
    check_matching_shape(inst, mu);
    std::vector<std::pair<int, int>> out;
    for (int m = 0; m < inst.n_men(); ++m) {
        const auto& list = inst.man(m);
        const int limit = mu.wife[m] < 0 ? static_cast<int>(list.size()) : inst.man_rank(m, mu.wife[m]) - 1;
        for (int i = 0; i < limit; ++i) {
            const int w = list[i];
            const int h = mu.husband[w];
            if (h < 0 || inst.woman_rank(w, m) < inst.woman_rank(w, h)) out.emplace_back(m, w);
        }
    }
    return out;
}

bool is_stable(const Instance& inst, const Matching& mu)
{
    return blocking_pairs(inst, mu).empty();
}

Matching gale_shapley(const Instance& inst, Orientation o, bool reverse_queue)
{
    const Side P = o == Orientation::ManOptimal ? Side::Man : Side::Woman;
    const Side R = other(P);
    const int np = inst.size(P), nr = inst.size(R);
    std::vector<int> next(np, 0), partner_of_p(np, -1), partner_of_r(nr, -1);
    std::deque<int> free;
    for (int a = 0; a < np; ++a) free.push_back(a);
    while (!free.empty()) {
        int a;
        if (reverse_queue) { a = free.back(); free.pop_back(); }
        else { a = free.front(); free.pop_front(); }
        const auto& list = inst.prefs(P, a);
        while (next[a] < static_cast<int>(list.size())) {
            const int b = list[next[a]++];
            const int cur = partner_of_r[b];
            if (cur < 0 || inst.rank(R, b, a) < inst.rank(R, b, cur)) {
                partner_of_r[b] = a;
                partner_of_p[a] = b;
                if (cur >= 0) {
                    partner_of_p[cur] = -1;
                    if (reverse_queue) free.push_back(cur); else free.push_front(cur);
                }
                break;
            }
        }
    }
    Matching mu(inst.n_men(), inst.n_women());
    for (int a = 0; a < np; ++a)
        if (partner_of_p[a] >= 0) {
            if (P == Side::Man) mu.pair(a, partner_of_p[a]);
            else mu.pair(partner_of_p[a], a);
        }
    return mu;
}

RangeProfile compute_range(const Instance& inst)
{
    if (!inst.complete()) throw ValidationError("compute_range requires a complete instance");
    RangeProfile r;
    r.orank_men.assign(inst.n_men(), 0);
    r.maxrank_men.assign(inst.n_men(), 0);
    r.orank_women.assign(inst.n_women(), 0);
    r.maxrank_women.assign(inst.n_women(), 0);
    r.k = 1;
    for (Side s : {Side::Man, Side::Woman}) {
        auto& lo = s == Side::Man ? r.orank_men : r.orank_women;
        auto& hi = s == Side::Man ? r.maxrank_men : r.maxrank_women;
        for (int a = 0; a < inst.size(s); ++a) {
            int mn = inst.size(other(s)) + 1, mx = 0;
            for (int b = 0; b < inst.size(other(s)); ++b) {
                const int rk = inst.rank(other(s), b, a);
                mn = std::min(mn, rk);
                mx = std::max(mx, rk);
            }
            lo[a] = mn;
            hi[a] = mx;
            r.k = std::max(r.k, mx - mn + 1);
        }
    }
    return r;
}

Instance symmetric_shortlists(const Instance& inst)
{
    const Matching m0 = gale_shapley(inst, Orientation::ManOptimal);
    const Matching mz = gale_shapley(inst, Orientation::WomanOptimal);
    // A man's window runs from his man-optimal to his woman-optimal partner; a woman's the other way.
    auto in_man_window = [&](int m, int w) {
        if (m0.wife[m] < 0) return false;
        const int r = inst.man_rank(m, w);
        return r != 0 && r >= inst.man_rank(m, m0.wife[m]) && r <= inst.man_rank(m, mz.wife[m]);
    };
    auto in_woman_window = [&](int w, int m) {
        if (mz.husband[w] < 0) return false;
        const int r = inst.woman_rank(w, m);
        return r != 0 && r >= inst.woman_rank(w, mz.husband[w]) && r <= inst.woman_rank(w, m0.husband[w]);
    };
    std::vector<std::vector<int>> men(inst.n_men()), women(inst.n_women());
    for (int m = 0; m < inst.n_men(); ++m)
        for (int w : inst.man(m))
            if (in_man_window(m, w) && in_woman_window(w, m)) men[m].push_back(w);
    for (int w = 0; w < inst.n_women(); ++w)
        for (int m : inst.woman(w))
            if (in_man_window(m, w) && in_woman_window(w, m)) women[w].push_back(m);
    return Instance(std::move(men), std::move(women), inst.labels(Side::Man), inst.labels(Side::Woman));
}

Instance complete_preferences(const Instance& inst)
{
    if (inst.n_men() != inst.n_women()) throw ValidationError("completion needs as many men as women");
    std::vector<std::vector<int>> lists[2];
    for (Side s : {Side::Man, Side::Woman}) {
        auto& out = lists[s == Side::Man ? 0 : 1];
        for (int a = 0; a < inst.size(s); ++a) {
            auto l = inst.prefs(s, a);
            for (int b = 0; b < inst.size(other(s)); ++b)
                if (inst.rank(s, a, b) == 0) l.push_back(b);
            out.push_back(std::move(l));
        }
    }
    return Instance(std::move(lists[0]), std::move(lists[1]), inst.labels(Side::Man), inst.labels(Side::Woman));
}

} // namespace smp
