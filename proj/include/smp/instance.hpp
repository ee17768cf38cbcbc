#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace smp {

enum class Side { Man, Woman };

inline Side other(Side s) { return s == Side::Man ? Side::Woman : Side::Man; }

struct AgentId {
    Side side;
    int index;
    bool operator==(const AgentId&) const = default;
};

/**
 * A stable marriage instance with strict, possibly incomplete preference lists.
 *
 * Indices are 0-based; ranks are 1-based positions and 0 means "not acceptable".
 * Lists are mutually consistent: b is on a's list exactly when a is on b's.
 * Labels are optional construction names such as "m[2,5]"; an empty label
 * means the agent prints as m<i>/w<j>.
 */
class Instance {
public:
    Instance() = default;
    Instance(std::vector<std::vector<int>> men, std::vector<std::vector<int>> women,
             std::vector<std::string> men_labels = {}, std::vector<std::string> women_labels = {});

    int n_men() const { return static_cast<int>(prefs_[0].size()); }
    int n_women() const { return static_cast<int>(prefs_[1].size()); }
    int size(Side s) const { return s == Side::Man ? n_men() : n_women(); }

    const std::vector<int>& prefs(Side s, int a) const { return prefs_[idx(s)][a]; }
    const std::vector<int>& man(int m) const { return prefs_[0][m]; }
    const std::vector<int>& woman(int w) const { return prefs_[1][w]; }
    const std::vector<std::vector<int>>& all_prefs(Side s) const { return prefs_[idx(s)]; }

    // P_a(b): 1-based position of b in a's list, 0 if b is unacceptable to a.
    int rank(Side s, int a, int b) const { return rank_[idx(s)][a][b]; }
    int man_rank(int m, int w) const { return rank_[0][m][w]; }
    int woman_rank(int w, int m) const { return rank_[1][w][m]; }

    bool acceptable(int m, int w) const { return rank_[0][m][w] != 0; }
    bool complete() const;

    bool labelled() const;
    // Label if present, otherwise "m<i+1>" / "w<j+1>".
    std::string name(Side s, int a) const;
    const std::string& label(Side s, int a) const { return labels_[idx(s)][a]; }
    const std::vector<std::string>& labels(Side s) const { return labels_[idx(s)]; }

    bool operator==(const Instance& o) const { return prefs_[0] == o.prefs_[0] && prefs_[1] == o.prefs_[1]; }

private:
    static int idx(Side s) { return s == Side::Man ? 0 : 1; }
    std::vector<std::vector<int>> prefs_[2];
    std::vector<std::vector<int>> rank_[2];
    std::vector<std::string> labels_[2];
};

/**
 * wife[m] = -1 and husband[w] = -1 mark unmatched agents.
 */
struct Matching {
    std::vector<int> wife;
    std::vector<int> husband;

    Matching() = default;
    Matching(int n_men, int n_women) : wife(n_men, -1), husband(n_women, -1) {}
    static Matching from_pairs(int n_men, int n_women, const std::vector<std::pair<int, int>>& pairs);

    void pair(int m, int w) { wife[m] = w; husband[w] = m; }
    std::vector<std::pair<int, int>> pairs() const;
    int size() const;

    bool operator==(const Matching& o) const { return wife == o.wife && husband == o.husband; }
    bool operator<(const Matching& o) const { return wife < o.wife; }
};

struct RangeProfile {
    int k = 0;
    std::vector<int> orank_men, orank_women;      // minrank
    std::vector<int> maxrank_men, maxrank_women;

    int orank(Side s, int a) const { return s == Side::Man ? orank_men[a] : orank_women[a]; }
    int maxrank(Side s, int a) const { return s == Side::Man ? maxrank_men[a] : maxrank_women[a]; }
};

enum class Orientation { ManOptimal, WomanOptimal };

Instance parse_instance(std::string_view text);
std::string format_instance(const Instance& inst);
// One "name: name name ..." line, without newline.
std::string format_agent(const Instance& inst, Side s, int a);
std::string format_matching(const Instance& inst, const Matching& mu);

std::vector<std::pair<int, int>> blocking_pairs(const Instance& inst, const Matching& mu);
bool is_stable(const Instance& inst, const Matching& mu);

// reverse_queue processes free proposers LIFO instead of FIFO; the result is identical.
Matching gale_shapley(const Instance& inst, Orientation o, bool reverse_queue = false);

RangeProfile compute_range(const Instance& inst);

Instance symmetric_shortlists(const Instance& inst);

// Appends missing agents at the end of every list, ascending by index.
Instance complete_preferences(const Instance& inst);

} // namespace smp
