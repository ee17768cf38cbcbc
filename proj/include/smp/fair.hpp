#pragma once

#include <smp/decomposition.hpp>
#include <smp/downset_dp.hpp>
#include <smp/instance.hpp>
#include <smp/rotation.hpp>

#include <memory>
#include <random>
#include <vector>

namespace smp {

// Number of stable matchings of a complete instance, through the extent decomposition.
BigCount count_stable_matchings(const Instance& inst, int max_width = 30);

class StableMatchingSampler {
public:
    explicit StableMatchingSampler(const Instance& inst, int max_width = 30);

    const BigCount& total() const { return sampler_->total(); }
    const ExtentDecomposition& decomposition() const { return dec_; }
    Matching draw(std::mt19937_64& rng);

private:
    const Instance& inst_;
    ExtentDecomposition dec_;
    std::unique_ptr<DownsetSampler> sampler_;
};

Matching sample_stable_matching(const Instance& inst, std::mt19937_64& rng);

struct MedianResult {
    Matching matching;
    std::vector<int> downset;          // rotation ids
    BigCount total;                    // N, the number of stable matchings
    std::vector<BigCount> containing;  // by rotation id: downsets that contain it
};

/**
 * Median stable matching: the downset of rotations contained in more than half
 * of all downsets. For even N this is the lower median; upper also admits
 * rotations in exactly half.
 */
MedianResult median_stable_matching(const Instance& inst, bool upper = false, int max_width = 30);

// Ranks are 1-based. sex_equality = |men - women|, balance = max(men, women).
struct FairnessScores {
    long long men = 0, women = 0;
    long long sex_equality() const { return men > women ? men - women : women - men; }
    long long balance() const { return men > women ? men : women; }
};

FairnessScores fairness_scores(const Instance& inst, const Matching& mu);

struct FairResult {
    Matching matching;
    std::vector<int> downset;
    FairnessScores scores;
    long long examined = 0;
};

// Exhaustive over downsets of the rotation digraph; ties go to the lexicographically least downset.
FairResult sex_equal_bruteforce(const Instance& inst, long long max_count = 1'000'000);
FairResult balanced_bruteforce(const Instance& inst, long long max_count = 1'000'000);

} // namespace smp
