#include "memetrace/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <tuple>

#include "json.hpp"

#include "memetrace/error.hpp"
#include "memetrace/rng.hpp"

namespace memetrace::sim {

using ingest::Timestamp;
using ingest::TweetRecord;
using ingest::UserId;

namespace {

constexpr Timestamp kYear = 365LL * 86400;
constexpr Timestamp kMaxAccountAgeS = 3 * kYear;     // oldest simulated account
constexpr Timestamp kMinAccountAgeS = 60LL * 86400;  // youngest organic account

const char* kVocabulary[] = {
    "about",  "after",  "again", "always", "because", "before", "better",  "change",
    "could",  "debate", "every", "found",  "friend",  "going",  "group",   "heard",
    "happen", "issue",  "just",  "know",   "later",   "leader", "little",  "local",
    "maybe",  "meeting","might", "morning","never",   "night",  "nothing", "other",
    "people", "phone",  "plan",  "point",  "press",   "question","radio",  "rally",
    "read",   "really", "report","right",  "said",    "school", "share",   "show",
    "speech", "start",  "still", "story",  "street",  "their",  "thing",   "think",
    "today",  "town",   "vote",  "watch",  "water",   "where",  "while",   "world",
};
constexpr std::size_t kVocabularySize = sizeof(kVocabulary) / sizeof(kVocabulary[0]);

std::string random_words(Rng& rng, std::size_t lo, std::size_t hi) {
    std::size_t count = lo + static_cast<std::size_t>(rng.below(hi - lo + 1));
    std::string out;
    for (std::size_t i = 0; i < count; ++i) {
        if (i) out += ' ';
        out += kVocabulary[rng.below(kVocabularySize)];
    }
    return out;
}

std::string jitter_token(Rng& rng) {
    std::string tok = "x";
    for (int i = 0; i < 6; ++i) tok += static_cast<char>('a' + rng.below(26));
    return tok;
}

Timestamp positive_delay(Rng& rng, double mean_s) {
    double d = rng.exponential(mean_s);
    auto r = static_cast<Timestamp>(std::llround(d));
    return std::max<Timestamp>(1, r);
}

void sort_by_time(std::vector<TweetRecord>& records) {
    std::sort(records.begin(), records.end(), [](const TweetRecord& a, const TweetRecord& b) {
        return std::tie(a.created_at, a.tweet_id) < std::tie(b.created_at, b.tweet_id);
    });
}

// Synchronous fractional-threshold rounds; shared by run_threshold (set view)
// and gen_organic (round view for parent selection).
std::map<NodeId, std::size_t> threshold_rounds(const SocialGraph& g,
                                               const std::vector<NodeId>& seeds,
                                               const std::vector<double>& thresholds) {
    std::map<NodeId, std::size_t> round_of;
    for (NodeId s : seeds) round_of[s] = 0;

    std::size_t round = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        ++round;
        std::vector<NodeId> next;
        for (std::size_t v = 0; v < g.n; ++v) {
            NodeId node = static_cast<NodeId>(v);
            if (round_of.contains(node)) continue;
            const auto& followees = g.adjacency[v];
            if (followees.empty()) continue; // adopts only if seeded
            std::size_t adopted = 0;
            for (NodeId u : followees) adopted += round_of.contains(u) ? 1 : 0;
            double frac = static_cast<double>(adopted) / static_cast<double>(followees.size());
            if (frac >= thresholds[v]) next.push_back(node);
        }
        for (NodeId v : next) {
            round_of[v] = round;
            changed = true;
        }
    }
    return round_of;
}

void check_seeds(const SocialGraph& g, const std::vector<NodeId>& seeds) {
    if (seeds.empty()) fail(Errc::invalid_seeds, "seed set is empty");
    for (NodeId s : seeds)
        if (s < 0 || static_cast<std::size_t>(s) >= g.n)
            fail(Errc::invalid_seeds, "seed " + std::to_string(s) + " outside graph");
}

} // namespace

std::vector<std::vector<NodeId>> SocialGraph::followers() const {
    std::vector<std::vector<NodeId>> out(n);
    for (std::size_t v = 0; v < n; ++v)
        for (NodeId u : adjacency[v]) out[static_cast<std::size_t>(u)].push_back(static_cast<NodeId>(v));
    for (auto& list : out) std::sort(list.begin(), list.end());
    return out;
}

SocialGraph gen_graph_ba(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (m < 1 || n <= m) fail(Errc::invalid_params, "preferential attachment needs n > m >= 1");

    SocialGraph g;
    g.n = n;
    g.adjacency.resize(n);

    // Degree-proportional sampling pool: every edge contributes both of its
    // endpoints once.
    std::vector<NodeId> pool;
    for (std::size_t j = 1; j < m; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            g.adjacency[j].push_back(static_cast<NodeId>(i)); // later node follows earlier
            pool.push_back(static_cast<NodeId>(i));
            pool.push_back(static_cast<NodeId>(j));
        }
    }

    Rng rng(seed);
    for (std::size_t v = m; v < n; ++v) {
        std::set<NodeId> targets;
        while (targets.size() < m) {
            NodeId pick;
            if (pool.empty()) {
                pick = static_cast<NodeId>(rng.below(v)); // degree-0 start (m == 1)
            } else {
                pick = pool[rng.below(pool.size())];
            }
            targets.insert(pick);
        }
        for (NodeId t : targets) {
            g.adjacency[v].push_back(t);
            pool.push_back(t);
            pool.push_back(static_cast<NodeId>(v));
        }
    }
    for (auto& list : g.adjacency) std::sort(list.begin(), list.end());
    return g;
}

std::map<NodeId, std::size_t> run_ic(const SocialGraph& g, const std::vector<NodeId>& seeds,
                                     double p, std::uint64_t rng_seed) {
    check_seeds(g, seeds);
    if (p < 0.0 || p > 1.0) fail(Errc::invalid_params, "activation probability outside [0,1]");

    const auto followers = g.followers();
    Rng rng(rng_seed);

    std::map<NodeId, std::size_t> round_of;
    std::vector<NodeId> frontier;
    for (NodeId s : seeds)
        if (round_of.emplace(s, 0).second) frontier.push_back(s);
    std::sort(frontier.begin(), frontier.end());

    std::size_t round = 0;
    while (!frontier.empty()) {
        ++round;
        std::vector<NodeId> next;
        for (NodeId u : frontier) {
            for (NodeId f : followers[static_cast<std::size_t>(u)]) {
                if (round_of.contains(f)) continue; // one chance only ever matters here
                if (rng.bernoulli(p)) {
                    round_of[f] = round;
                    next.push_back(f);
                }
            }
        }
        std::sort(next.begin(), next.end());
        frontier = std::move(next);
    }
    return round_of;
}

std::vector<NodeId> run_threshold(const SocialGraph& g, const std::vector<NodeId>& seeds,
                                  const std::vector<double>& thresholds) {
    check_seeds(g, seeds);
    if (thresholds.size() != g.n)
        fail(Errc::missing_threshold, "need one threshold per node");

    auto round_of = threshold_rounds(g, seeds, thresholds);
    std::vector<NodeId> adopters;
    adopters.reserve(round_of.size());
    for (const auto& [node, round] : round_of) adopters.push_back(node);
    return adopters; // map iteration is already sorted
}

std::vector<TweetRecord> gen_organic(const OrganicSpec& spec, const std::string& meme_key,
                                     Timestamp t0) {
    if (spec.p < 0.0 || spec.p > 1.0 || spec.originality_q < 0.0 || spec.originality_q > 1.0)
        fail(Errc::invalid_params, "probabilities outside [0,1]");
    if (spec.theta_max <= 0.0 || spec.theta_max > 1.0)
        fail(Errc::invalid_params, "theta_max outside (0,1]");
    if (spec.n_seeds < 1 || spec.n_seeds > spec.graph_n)
        fail(Errc::invalid_params, "seed count outside [1, graph_n]");
    if (spec.mean_delay_s <= 0.0) fail(Errc::invalid_params, "mean delay must be positive");

    const SocialGraph g = gen_graph_ba(spec.graph_n, spec.ba_m, derive_seed(spec.seed, "graph"));

    Rng rng(derive_seed(spec.seed, "organic"));
    std::vector<NodeId> all_nodes(spec.graph_n);
    for (std::size_t v = 0; v < spec.graph_n; ++v) all_nodes[v] = static_cast<NodeId>(v);
    const std::vector<NodeId> seeds = rng.sample(all_nodes, spec.n_seeds);

    std::map<NodeId, std::size_t> round_of;
    if (spec.model == OrganicSpec::Model::threshold) {
        std::vector<double> thresholds(spec.graph_n);
        for (auto& th : thresholds) th = spec.theta_max * (1.0 - rng.uniform01()); // (0, max]
        round_of = threshold_rounds(g, seeds, thresholds);
    } else {
        round_of = run_ic(g, seeds, spec.p, derive_seed(spec.seed, "cascade"));
    }

    // Adopters post once each, processed in (round, node) order so that every
    // parent post already exists.
    std::vector<std::pair<std::size_t, NodeId>> order;
    order.reserve(round_of.size());
    for (const auto& [node, round] : round_of) order.emplace_back(round, node);
    std::sort(order.begin(), order.end());

    std::map<NodeId, std::size_t> post_of; // adopter -> index into records
    std::vector<TweetRecord> records;
    records.reserve(order.size());

    for (const auto& [round, node] : order) {
        TweetRecord r;
        r.tweet_id = static_cast<ingest::TweetId>(records.size() + 1);
        r.author_id = node;
        r.hashtags = {meme_key};

        if (round == 0) {
            r.created_at = t0;
            r.text = random_words(rng, 6, 12);
        } else {
            std::vector<NodeId> parents;
            for (NodeId u : g.adjacency[static_cast<std::size_t>(node)]) {
                auto it = round_of.find(u);
                if (it != round_of.end() && it->second < round) parents.push_back(u);
            }
            const TweetRecord* parent =
                parents.empty() ? nullptr
                                : &records[post_of.at(parents[rng.below(parents.size())])];
            const Timestamp anchor = parent ? parent->created_at : t0;
            r.created_at = anchor + positive_delay(rng, spec.mean_delay_s);
            if (parent == nullptr || rng.bernoulli(spec.originality_q)) {
                r.text = random_words(rng, 6, 12);
            } else {
                r.retweet_of_tweet_id = parent->tweet_id;
                r.retweet_of_user_id = parent->author_id;
                r.text = "rt @" + std::to_string(parent->author_id) + ": " + parent->text;
            }
        }
        r.author_created_at =
            t0 - rng.range(kMinAccountAgeS, kMaxAccountAgeS); // uniform in [t0-3y, t0-60d]
        post_of[node] = records.size();
        records.push_back(std::move(r));
    }

    sort_by_time(records);
    return records;
}

std::vector<TweetRecord> gen_campaign(const CampaignSpec& spec, const std::string& meme_key,
                                      Timestamp t0) {
    if (spec.n_injectors < 1) fail(Errc::invalid_params, "need at least one injector");
    if (spec.total_tweets < spec.n_injectors)
        fail(Errc::invalid_params, "total_tweets below n_injectors");
    if (spec.duration_s < 1) fail(Errc::invalid_params, "duration must be at least 1 s");
    if (spec.target_pool.empty()) fail(Errc::invalid_params, "target pool is empty");
    if (spec.mentions_per_tweet > spec.target_pool.size())
        fail(Errc::invalid_params, "mentions_per_tweet exceeds target pool");
    if (spec.retweet_prob < 0.0 || spec.retweet_prob > 1.0)
        fail(Errc::invalid_params, "retweet_prob outside [0,1]");
    if (spec.retweet_delay_mean_s <= 0.0)
        fail(Errc::invalid_params, "retweet delay mean must be positive");
    if (spec.injector_age_s < 0) fail(Errc::invalid_params, "injector age must be non-negative");

    Rng rng(derive_seed(spec.seed, "campaign"));

    // Fake accounts occupy an id block derived from the seed, far above the
    // simulated organic population.
    const UserId injector_base =
        1'000'000'000 + static_cast<UserId>(SplitMix64(spec.seed).next() % 1'000'000) * 1'000;

    std::vector<Timestamp> times(spec.total_tweets);
    for (auto& t : times) t = t0 + static_cast<Timestamp>(rng.below(spec.duration_s));
    std::sort(times.begin(), times.end());

    std::vector<TweetRecord> records;
    records.reserve(spec.total_tweets * (1 + spec.mentions_per_tweet) / 2);
    std::map<UserId, Timestamp> target_created;
    ingest::TweetId next_retweet_id = static_cast<ingest::TweetId>(spec.total_tweets) + 1;

    for (std::size_t j = 0; j < spec.total_tweets; ++j) {
        TweetRecord post;
        post.tweet_id = static_cast<ingest::TweetId>(j + 1);
        post.author_id = injector_base + static_cast<UserId>(j % spec.n_injectors);
        post.created_at = times[j];
        post.author_created_at = t0 - spec.injector_age_s;
        post.urls = {meme_key};
        post.mentions = rng.sample(spec.target_pool, spec.mentions_per_tweet);
        std::sort(post.mentions.begin(), post.mentions.end());

        std::string text = spec.text_template;
        const std::string token = jitter_token(rng);
        if (auto pos = text.find("{}"); pos != std::string::npos) {
            text.replace(pos, 2, token);
        } else {
            text += " " + token;
        }
        post.text = text;

        for (UserId target : post.mentions) {
            if (!rng.bernoulli(spec.retweet_prob)) continue;
            TweetRecord rt;
            rt.tweet_id = next_retweet_id++;
            rt.author_id = target;
            rt.created_at = post.created_at + positive_delay(rng, spec.retweet_delay_mean_s);
            rt.retweet_of_tweet_id = post.tweet_id;
            rt.retweet_of_user_id = post.author_id;
            rt.text = "rt @" + std::to_string(post.author_id) + ": " + post.text;
            rt.urls = post.urls;
            rt.hashtags = post.hashtags;
            auto [it, inserted] = target_created.try_emplace(target, 0);
            if (inserted) it->second = t0 - rng.range(kMinAccountAgeS, kMaxAccountAgeS);
            rt.author_created_at = it->second;
            records.push_back(std::move(rt));
        }
        records.push_back(std::move(post));
    }

    sort_by_time(records);
    return records;
}

Dataset gen_dataset(std::size_t n_organic, const std::vector<CampaignSpec>& campaigns,
                    std::uint64_t global_seed, const OrganicSpec& organic_base) {
    Rng rng(derive_seed(global_seed, "dataset"));
    const Timestamp base_t0 = 1'288'000'000;   // fixed epoch anchor for all datasets
    constexpr std::uint64_t kStartWindowS = 30ULL * 86400; // meme start times spread over a month

    struct Batch {
        std::vector<TweetRecord> records;
    };
    std::vector<Batch> batches;
    Dataset out;

    std::set<UserId> participants_set;
    for (std::size_t i = 0; i < n_organic; ++i) {
        char key[32];
        std::snprintf(key, sizeof(key), "organic%04zu", i);
        OrganicSpec spec = organic_base;
        spec.seed = derive_seed(global_seed, key);
        const Timestamp t0 = base_t0 + static_cast<Timestamp>(rng.below(kStartWindowS));
        Batch b;
        b.records = gen_organic(spec, key, t0);
        for (const auto& r : b.records) participants_set.insert(r.author_id);
        batches.push_back(std::move(b));
        out.labels[meme::MemeId{meme::MemeKind::hashtag, key}] = classify::Label::organic;
    }

    std::vector<UserId> participants(participants_set.begin(), participants_set.end());
    if (participants.empty()) {
        // No organic population to target: fall back to synthetic bystanders.
        for (UserId u = 500'000'000; u < 500'000'500; ++u) participants.push_back(u);
    }

    for (std::size_t i = 0; i < campaigns.size(); ++i) {
        char key[64];
        std::snprintf(key, sizeof(key), "http://campaign-%02zu.example/expose", i);
        CampaignSpec spec = campaigns[i];
        if (spec.seed == 0) spec.seed = derive_seed(global_seed, key);
        if (spec.target_pool.empty())
            spec.target_pool = rng.sample(participants, std::min<std::size_t>(500, participants.size()));
        std::sort(spec.target_pool.begin(), spec.target_pool.end());
        const Timestamp t0 = base_t0 + static_cast<Timestamp>(rng.below(kStartWindowS));
        Batch b;
        b.records = gen_campaign(spec, key, t0);
        batches.push_back(std::move(b));
        out.labels[meme::MemeId{meme::MemeKind::url, key}] = classify::Label::truthy;
    }

    // Merge, time-sort, renumber globally and remap retweet provenance
    // (references never cross batches).
    struct Slot {
        Timestamp ts;
        std::size_t batch;
        ingest::TweetId old_id;
        std::size_t index;
        bool operator<(const Slot& other) const {
            return std::tie(ts, batch, old_id) < std::tie(other.ts, other.batch, other.old_id);
        }
    };
    std::vector<Slot> slots;
    for (std::size_t b = 0; b < batches.size(); ++b)
        for (std::size_t k = 0; k < batches[b].records.size(); ++k)
            slots.push_back(Slot{batches[b].records[k].created_at, b,
                                 batches[b].records[k].tweet_id, k});
    std::sort(slots.begin(), slots.end());

    std::vector<std::map<ingest::TweetId, ingest::TweetId>> remap(batches.size());
    for (std::size_t pos = 0; pos < slots.size(); ++pos)
        remap[slots[pos].batch][slots[pos].old_id] = static_cast<ingest::TweetId>(pos + 1);

    out.records.reserve(slots.size());
    for (const auto& slot : slots) {
        TweetRecord r = std::move(batches[slot.batch].records[slot.index]);
        r.tweet_id = remap[slot.batch].at(r.tweet_id);
        if (r.retweet_of_tweet_id)
            r.retweet_of_tweet_id = remap[slot.batch].at(*r.retweet_of_tweet_id);
        out.records.push_back(std::move(r));
    }
    return out;
}

std::vector<CampaignSpec> load_campaign_specs(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::io_error, "cannot open " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error&) {
        fail(Errc::schema_violation, "campaign spec file is not valid JSON: " + path);
    }
    if (!doc.is_array()) fail(Errc::schema_violation, "campaign spec file must hold a JSON list");

    static const std::set<std::string> known = {
        "n_injectors",     "total_tweets",       "duration_s",
        "injector_age_s",  "target_pool",        "retweet_prob",
        "retweet_delay_mean_s", "mentions_per_tweet", "text_template",
        "seed",
    };

    std::vector<CampaignSpec> specs;
    for (const auto& obj : doc) {
        if (!obj.is_object()) fail(Errc::schema_violation, "campaign spec must be an object");
        for (const auto& [key, value] : obj.items())
            if (!known.contains(key))
                fail(Errc::schema_violation, "unknown campaign spec field '" + key + "'");

        CampaignSpec s;
        try {
            if (obj.contains("n_injectors")) s.n_injectors = obj["n_injectors"].get<std::size_t>();
            if (obj.contains("total_tweets")) s.total_tweets = obj["total_tweets"].get<std::size_t>();
            if (obj.contains("duration_s")) s.duration_s = obj["duration_s"].get<std::int64_t>();
            if (obj.contains("injector_age_s"))
                s.injector_age_s = obj["injector_age_s"].get<std::int64_t>();
            if (obj.contains("target_pool"))
                s.target_pool = obj["target_pool"].get<std::vector<UserId>>();
            if (obj.contains("retweet_prob")) s.retweet_prob = obj["retweet_prob"].get<double>();
            if (obj.contains("retweet_delay_mean_s"))
                s.retweet_delay_mean_s = obj["retweet_delay_mean_s"].get<double>();
            if (obj.contains("mentions_per_tweet"))
                s.mentions_per_tweet = obj["mentions_per_tweet"].get<std::size_t>();
            if (obj.contains("text_template"))
                s.text_template = obj["text_template"].get<std::string>();
            if (obj.contains("seed")) s.seed = obj["seed"].get<std::uint64_t>();
        } catch (const nlohmann::json::exception& e) {
            fail(Errc::schema_violation, std::string("bad campaign spec value: ") + e.what());
        }
        specs.push_back(std::move(s));
    }
    return specs;
}

} // namespace memetrace::sim
