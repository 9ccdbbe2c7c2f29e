#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "memetrace/diffusion.hpp"
#include "memetrace/record.hpp"

namespace memetrace::features {

inline constexpr std::size_t kFeatureCount = 13;

// Canonical feature order. Everything here is computed from delivery
// structure and timing, never from what the text says.
enum FeatureIdx : std::size_t {
    kLogNTweets = 0,         // log10(1 + posts)
    kLogNUsers,              // log10(1 + distinct posting users)
    kRtFraction,             // retweet posts / posts
    kRootsFrac,              // roots / posting users
    kMaxOutdegFrac,          // max out-degree / edges
    kGiniOutdeg,             // concentration of out-degree
    kLccFrac,                // largest weak component / nodes
    kLogPeakRate,            // log10(1 + max posts per 60 s bin)
    kBurstiness,             // (sigma - mu)/(sigma + mu) of inter-post gaps
    kDupTextFrac,            // near-duplicate fraction of texts
    kLogMeanAccountAgeDays,  // log10(1 + mean author age in days)
    kNewAccountFrac,         // authors younger than 30 days
    kMentionTargetFrac,      // posts mentioning not-yet-active users
};

extern const std::array<std::string, kFeatureCount> kFeatureNames;

struct MemeFeatureVector {
    std::array<double, kFeatureCount> values{};

    double operator[](std::size_t i) const { return values[i]; }
    double& operator[](std::size_t i) { return values[i]; }

    bool operator==(const MemeFeatureVector&) const = default;
};

// Population scaling statistics. A zero standard deviation is stored as 1 so
// degenerate features scale to 0 instead of infinity.
struct FeatureStats {
    std::array<double, kFeatureCount> mean{};
    std::array<double, kFeatureCount> stddev{};
};

// Gini coefficient of non-negative values; 0 when the mean is 0. Uses the
// sorted O(n log n) form, which equals sum_ij |x_i - x_j| / (2 n^2 mu).
// Throws Error(empty_input) for an empty list.
double gini(const std::vector<double>& values);

// Interval-dispersion statistic of sorted timestamps: (sigma - mu) /
// (sigma + mu) with population sigma. Fewer than 3 timestamps -> 0; three or
// more all-identical timestamps -> 1.
double burstiness(const std::vector<ingest::Timestamp>& timestamps);

// Max number of timestamps falling into one [first + k*bin, first + (k+1)*bin)
// window; 0 for empty input.
std::size_t peak_rate(const std::vector<ingest::Timestamp>& timestamps,
                      std::int64_t bin_s = 60);

// Fraction of texts explained away by near-duplicate clustering: texts are
// normalized (lowercased, URLs and @-tokens stripped, '#' removed), 3-word
// shingle sets are linked at Jaccard >= 0.5, and the result is
// 1 - clusters/texts. Pairwise comparison is capped at the first
// pairwise_cap texts; the remainder count as singletons.
inline constexpr std::size_t kDupPairwiseCap = 2000;
double near_duplicate_fraction(const std::vector<std::string>& texts,
                               std::size_t pairwise_cap = kDupPairwiseCap);

inline constexpr std::int64_t kNewAccountHorizonS = 30 * 86400;

// The full 13-feature vector for one meme. posts must be the meme's posts in
// stream order and net must be built from them. Stub nodes are excluded from
// user counts and account-age features. Throws Error(insufficient_data) for
// fewer than 2 posts.
MemeFeatureVector compute_features(const diffusion::DiffusionNetwork& net,
                                   const std::vector<ingest::TweetRecord>& posts,
                                   std::int64_t new_account_horizon_s = kNewAccountHorizonS);

// Population mean/stddev per feature (population variance, not sample).
// Throws Error(insufficient_data) for fewer than 2 vectors.
FeatureStats zscore_fit(const std::vector<MemeFeatureVector>& vectors);

std::array<double, kFeatureCount> zscore_apply(const MemeFeatureVector& v,
                                               const FeatureStats& s);

} // namespace memetrace::features
