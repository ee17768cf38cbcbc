#include <smp/fair.hpp>
#include <smp/error.hpp>

#include <algorithm>

namespace smp {

namespace {

ExtentDecomposition checked_decomposition(const Instance& inst)
{
    if (!inst.complete()) throw ValidationError("instance must be complete");
    return construct_path_decomposition(inst);
}

} // namespace

BigCount count_stable_matchings(const Instance& inst, int max_width)
{
    const auto d = checked_decomposition(inst);
    if (d.digraph.size() == 0) return 1;
    return count_downsets(d.digraph.dag(), d.nice, max_width);
}

StableMatchingSampler::StableMatchingSampler(const Instance& inst, int max_width)
    : inst_(inst), dec_(checked_decomposition(inst)),
      sampler_(std::make_unique<DownsetSampler>(dec_.digraph.dag(), dec_.nice, max_width))
{
}

Matching StableMatchingSampler::draw(std::mt19937_64& rng)
{
    return matching_from_downset(inst_, dec_.digraph, sampler_->draw(rng));
}

Matching sample_stable_matching(const Instance& inst, std::mt19937_64& rng)
{
    StableMatchingSampler s(inst);
    return s.draw(rng);
}

MedianResult median_stable_matching(const Instance& inst, bool upper, int max_width)
{
    const auto d = checked_decomposition(inst);
    const Dag g = d.digraph.dag();
    MedianResult r;
    r.total = g.size() == 0 ? BigCount(1) : count_downsets(g, d.nice, max_width);
    for (int rho = 0; rho < g.size(); ++rho) {
        // Downsets containing rho are downsets of G minus Anc(rho), joined with Anc(rho).
        const auto anc = ancestors(g, rho);
        std::vector<int> keep;
        for (int v = 0; v < g.size(); ++v)
            if (!std::binary_search(anc.begin(), anc.end(), v)) keep.push_back(v);
        r.containing.push_back(count_downsets_present(g, induced_decomposition(d.nice, keep), max_width));
    }
    const BigCount& N = r.total;
    for (int rho = 0; rho < g.size(); ++rho) {
        const BigCount twice = 2 * r.containing[rho];
        if (twice > N || (upper && twice == N)) r.downset.push_back(rho);
    }
    r.matching = matching_from_downset(inst, d.digraph, r.downset);
    return r;
}

FairnessScores fairness_scores(const Instance& inst, const Matching& mu)
{
    FairnessScores s;
    for (int m = 0; m < inst.n_men(); ++m) {
        if (mu.wife[m] < 0) continue;
        s.men += inst.man_rank(m, mu.wife[m]);
        s.women += inst.woman_rank(mu.wife[m], m);
    }
    return s;
}

namespace {

template <typename Score>
FairResult best_downset(const Instance& inst, long long max_count, Score score)
{
    const auto dg = rotation_digraph(inst);
    FairResult best;
    bool have = false;
    for_each_downset(
        dg.dag(),
        [&](const std::vector<int>& Z) {
            ++best.examined;
            Matching mu = matching_from_downset(inst, dg, Z);
            const FairnessScores s = fairness_scores(inst, mu);
            if (!have || score(s) < score(best.scores) || (score(s) == score(best.scores) && Z < best.downset)) {
                best.matching = std::move(mu);
                best.downset = Z;
                best.scores = s;
                have = true;
            }
        },
        max_count);
    return best;
}

} // namespace

FairResult sex_equal_bruteforce(const Instance& inst, long long max_count)
{
    return best_downset(inst, max_count, [](const FairnessScores& s) { return s.sex_equality(); });
}

FairResult balanced_bruteforce(const Instance& inst, long long max_count)
{
    return best_downset(inst, max_count, [](const FairnessScores& s) { return s.balance(); });
}

} // namespace smp
