#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "memetrace/classify.hpp"
#include "memetrace/meme.hpp"
#include "memetrace/record.hpp"

namespace memetrace::sim {

using NodeId = std::int64_t;

// Directed follow graph: adjacency[v] lists the accounts v follows, sorted.
// Information flows the other way, followee -> follower.
struct SocialGraph {
    std::size_t n = 0;
    std::vector<std::vector<NodeId>> adjacency;

    // follower lists (inverse adjacency), sorted per node
    std::vector<std::vector<NodeId>> followers() const;
};

// Organic cascade parameters: a preferential-attachment substrate plus either
// a fractional-threshold or an independent-cascade adoption process.
struct OrganicSpec {
    std::size_t graph_n = 1000;
    std::size_t ba_m = 3;
    enum class Model { threshold, cascade };
    Model model = Model::threshold;
    double p = 0.05;              // cascade activation probability
    double theta_max = 1.0;       // thresholds drawn uniform in (0, theta_max]
    std::size_t n_seeds = 3;
    double mean_delay_s = 600.0;  // exponential post delay along the tree
    double originality_q = 0.15;  // adopter posts an original, not a retweet
    std::uint64_t seed = 0;
};

// Astroturf campaign parameters. Defaults reproduce a distributed injector
// burst: nine week-old accounts, 929 posts inside 8280 s, each post
// mentioning previously-interested users who may rebroadcast it.
struct CampaignSpec {
    std::size_t n_injectors = 9;
    std::size_t total_tweets = 929;
    std::int64_t duration_s = 8280;
    std::int64_t injector_age_s = 7 * 86400;
    std::vector<ingest::UserId> target_pool;
    double retweet_prob = 0.10;
    double retweet_delay_mean_s = 300.0;
    std::size_t mentions_per_tweet = 1;
    std::string text_template = "the truth they are hiding about the candidate read it here {}";
    std::uint64_t seed = 0;
};

// label per generated meme key; covers every meme a generator emitted
using GroundTruth = std::map<meme::MemeId, classify::Label>;

struct Dataset {
    std::vector<ingest::TweetRecord> records; // sorted by (created_at, tweet_id)
    GroundTruth labels;
};

// Preferential attachment: an m-node clique plus n-m nodes each following m
// distinct existing nodes chosen proportional to degree. Edge count is
// m(m-1)/2 + (n-m)m. Throws Error(invalid_params) unless n > m >= 1.
SocialGraph gen_graph_ba(std::size_t n, std::size_t m, std::uint64_t seed);

// Independent cascade in synchronous rounds: every newly adopted node gets
// one chance to activate each of its followers with probability p. Returns
// node -> adoption round, seeds at round 0. Throws Error(invalid_seeds).
std::map<NodeId, std::size_t> run_ic(const SocialGraph& g, const std::vector<NodeId>& seeds,
                                     double p, std::uint64_t rng_seed);

// Deterministic fractional-threshold adoption: v adopts once the adopted
// fraction of its followees reaches thresholds[v]; nodes with no followees
// adopt only if seeded. Returns the fixed point, sorted. Throws
// Error(invalid_seeds) / Error(missing_threshold).
std::vector<NodeId> run_threshold(const SocialGraph& g, const std::vector<NodeId>& seeds,
                                  const std::vector<double>& thresholds);

// One organic meme: the cascade's adopters each emit one post (seeds and a
// originality_q share post originals, the rest retweet an already-adopted
// followee) with exponential delays along the adoption tree. Deterministic
// given spec.seed.
std::vector<ingest::TweetRecord> gen_organic(const OrganicSpec& spec, const std::string& meme_key,
                                             ingest::Timestamp t0);

// One astroturf campaign: total_tweets posts split round-robin over the
// injectors at uniform times inside the window, near-duplicate texts, each
// post mentioning fresh targets who independently retweet it with
// probability retweet_prob. Deterministic given spec.seed.
std::vector<ingest::TweetRecord> gen_campaign(const CampaignSpec& spec, const std::string& meme_key,
                                              ingest::Timestamp t0);

// A full labeled stream: n_organic organic memes plus the given campaigns,
// with campaign target pools drawn from the organic participants, merged,
// time-sorted and renumbered with globally unique tweet ids.
Dataset gen_dataset(std::size_t n_organic, const std::vector<CampaignSpec>& campaigns,
                    std::uint64_t global_seed, const OrganicSpec& organic_base = OrganicSpec{});

// Campaign spec file: a JSON list of CampaignSpec objects; omitted fields
// take the defaults above. Throws Error(io_error) / Error(schema_violation).
std::vector<CampaignSpec> load_campaign_specs(const std::string& path);

} // namespace memetrace::sim
