// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Every tolerance is pinned here, not configurable.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "memetrace/classify.hpp"
#include "memetrace/cli.hpp"
#include "memetrace/diffusion.hpp"
#include "memetrace/error.hpp"
#include "memetrace/features.hpp"
#include "memetrace/meme.hpp"
#include "memetrace/record.hpp"
#include "memetrace/rng.hpp"
#include "memetrace/simulate.hpp"

using namespace memetrace;
using classify::MemeFeatureVector;
using features::kFeatureCount;
using ingest::TweetRecord;
using sim::NodeId;
using sim::SocialGraph;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

double now_s() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// features of every labeled meme, in label order
std::vector<std::pair<meme::MemeId, MemeFeatureVector>>
labeled_features(const sim::Dataset& data) {
    auto index = meme::build_index(data.records);
    std::vector<std::pair<meme::MemeId, MemeFeatureVector>> out;
    for (const auto& [id, label] : data.labels) {
        const auto* refs = index.find(id);
        if (refs == nullptr || !meme::MemeIndex::analyzable(*refs)) continue;
        std::vector<TweetRecord> posts;
        posts.reserve(refs->size());
        for (const auto& ref : *refs) posts.push_back(data.records[ref.stream_pos]);
        auto net = diffusion::build_network(id, posts);
        out.emplace_back(id, features::compute_features(net, posts));
    }
    return out;
}

// ---------------------------------------------------------------------------
// 1. twitter-bomb replay: the rule detector ranks the default campaign first
//    among the labeled memes in >= 19/20 seeded runs, each under 10 s
// ---------------------------------------------------------------------------
Outcome criterion_bomb_replay() {
    int hits = 0;
    double worst_s = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const double t_start = now_s();
        sim::Dataset data = sim::gen_dataset(50, {sim::CampaignSpec{}}, seed);
        auto rows = labeled_features(data);

        std::vector<MemeFeatureVector> vectors;
        for (const auto& [id, v] : rows) vectors.push_back(v);
        auto stats = features::zscore_fit(vectors);

        double best_score = -1.0;
        meme::MemeId best;
        for (const auto& [id, v] : rows) {
            double score = classify::rule_score(v, stats);
            if (score > best_score) {
                best_score = score;
                best = id;
            }
        }
        hits += best.kind == meme::MemeKind::url ? 1 : 0;
        worst_s = std::max(worst_s, now_s() - t_start);
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "campaign ranked first in %d/20 runs, slowest run %.2f s",
                  hits, worst_s);
    return {hits >= 19 && worst_s < 10.0, buf};
}

// ---------------------------------------------------------------------------
// 2. trained separability: 100 organic + 100 randomized campaigns,
//    160/40 split, held-out ROC-AUC >= 0.95 with the default TrainConfig
// ---------------------------------------------------------------------------
Outcome criterion_trained_separability() {
    Rng rng(20260809);
    std::vector<sim::CampaignSpec> campaigns(100);
    for (auto& c : campaigns) {
        c.n_injectors = 3 + rng.below(13);
        c.total_tweets = std::max<std::size_t>(c.n_injectors, 120 + rng.below(1080));
        c.duration_s = 900 + static_cast<std::int64_t>(rng.below(13500));
        c.injector_age_s = 86400 * (1 + static_cast<std::int64_t>(rng.below(25)));
        c.retweet_prob = rng.uniform(0.0, 0.3);
        c.retweet_delay_mean_s = rng.uniform(120.0, 900.0);
        c.mentions_per_tweet = 1 + rng.below(2);
    }
    sim::Dataset data = sim::gen_dataset(100, campaigns, 424242);
    auto rows = labeled_features(data);

    std::vector<classify::LabeledVector> pos, neg;
    for (const auto& [id, v] : rows) {
        if (data.labels.at(id) == classify::Label::truthy) {
            pos.push_back({v, 1});
        } else {
            neg.push_back({v, 0});
        }
    }
    if (pos.size() != 100 || neg.size() != 100) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "expected 100+100 analyzable memes, got %zu+%zu",
                      pos.size(), neg.size());
        return {false, buf};
    }

    // deterministic stratified 160/40 split
    auto shuffle = [&rng](std::vector<classify::LabeledVector>& xs) {
        for (std::size_t i = xs.size(); i > 1; --i)
            std::swap(xs[i - 1], xs[rng.below(i)]);
    };
    shuffle(pos);
    shuffle(neg);
    std::vector<classify::LabeledVector> train_set, test_set;
    for (std::size_t i = 0; i < 100; ++i) {
        (i < 80 ? train_set : test_set).push_back(pos[i]);
        (i < 80 ? train_set : test_set).push_back(neg[i]);
    }

    classify::ClassifierModel model = classify::train(train_set, classify::TrainConfig{});

    std::vector<double> pos_scores, neg_scores;
    for (const auto& ex : test_set)
        (ex.label ? pos_scores : neg_scores).push_back(classify::predict(model, ex.v));
    double auc = 0.0;
    for (double p : pos_scores)
        for (double n : neg_scores) auc += p > n ? 1.0 : (p == n ? 0.5 : 0.0);
    auc /= static_cast<double>(pos_scores.size() * neg_scores.size());

    char buf[96];
    std::snprintf(buf, sizeof(buf), "held-out ROC-AUC %.4f on 40 memes (need >= 0.95)", auc);
    return {auc >= 0.95, buf};
}

// ---------------------------------------------------------------------------
// 3. gradient oracle: analytic gradients vs central finite differences,
//    h = 1e-6, max relative error < 1e-5 over 100 random instances
// ---------------------------------------------------------------------------
// Per instance the full (w, b) gradient is compared against its central
// finite difference by relative L2 norm, ||a - fd|| / (||a|| + ||fd||).
Outcome criterion_gradients() {
    Rng rng(3333);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        classify::ClassifierModel m;
        m.stats.mean.fill(0.0);
        m.stats.stddev.fill(1.0);
        for (auto& w : m.weights) w = rng.uniform(-1.0, 1.0);
        m.bias = rng.uniform(-1.0, 1.0);
        const double lambda = trial % 2 == 0 ? 1e-3 : 0.0;

        std::vector<classify::LabeledVector> data(1 + rng.below(20));
        for (auto& ex : data) {
            for (auto& x : ex.v.values) x = rng.uniform(-2.0, 2.0);
            ex.label = rng.bernoulli(0.5) ? 1 : 0;
        }

        auto lg = classify::loss_and_grad(m, data, lambda);
        const double h = 1e-6;
        double diff_sq = 0.0, analytic_sq = 0.0, fd_sq = 0.0;
        for (std::size_t i = 0; i <= kFeatureCount; ++i) {
            classify::ClassifierModel up = m, down = m;
            double analytic;
            if (i < kFeatureCount) {
                up.weights[i] += h;
                down.weights[i] -= h;
                analytic = lg.grad_w[i];
            } else {
                up.bias += h;
                down.bias -= h;
                analytic = lg.grad_b;
            }
            const double fd = (classify::loss_and_grad(up, data, lambda).loss -
                               classify::loss_and_grad(down, data, lambda).loss) /
                              (2.0 * h);
            diff_sq += (analytic - fd) * (analytic - fd);
            analytic_sq += analytic * analytic;
            fd_sq += fd * fd;
        }
        const double rel =
            std::sqrt(diff_sq) / std::max(std::sqrt(analytic_sq) + std::sqrt(fd_sq), 1e-12);
        worst = std::max(worst, rel);
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "max relative error %.3e over 100 instances (need < 1e-5)",
                  worst);
    return {worst < 1e-5, buf};
}

// ---------------------------------------------------------------------------
// 4. cascade oracles: p=1 equals BFS on 50 random graphs; line-graph Monte
//    Carlo matches exhaustive edge enumeration within +-0.02
// ---------------------------------------------------------------------------
SocialGraph random_graph(Rng& rng, std::size_t max_n) {
    SocialGraph g;
    g.n = 2 + rng.below(max_n - 1);
    g.adjacency.resize(g.n);
    for (std::size_t v = 0; v < g.n; ++v)
        for (std::size_t u = 0; u < g.n; ++u)
            if (u != v && rng.bernoulli(3.0 / static_cast<double>(g.n)))
                g.adjacency[v].push_back(static_cast<NodeId>(u));
    return g;
}

Outcome criterion_cascade_oracles() {
    Rng rng(4444);
    int bfs_matches = 0;
    for (int trial = 0; trial < 50; ++trial) {
        SocialGraph g = random_graph(rng, 200);
        std::vector<NodeId> seeds = {static_cast<NodeId>(rng.below(g.n))};
        auto adopted = sim::run_ic(g, seeds, 1.0, rng.next_u64());

        auto followers = g.followers();
        std::set<NodeId> reach(seeds.begin(), seeds.end());
        std::vector<NodeId> queue(seeds.begin(), seeds.end());
        while (!queue.empty()) {
            NodeId u = queue.back();
            queue.pop_back();
            for (NodeId f : followers[static_cast<std::size_t>(u)])
                if (reach.insert(f).second) queue.push_back(f);
        }
        std::set<NodeId> got;
        for (const auto& [node, round] : adopted) got.insert(node);
        bfs_matches += got == reach ? 1 : 0;
    }

    // 4-node line: 1 follows 0, 2 follows 1, 3 follows 2; seed {0}, far node 3
    SocialGraph line;
    line.n = 4;
    line.adjacency = {{}, {0}, {1}, {2}};
    const double p = 0.5;

    // exhaustive enumeration over live/dead states of the 3 info-flow edges
    struct Edge {
        NodeId from, to;
    };
    std::vector<Edge> edges;
    for (std::size_t v = 0; v < line.n; ++v)
        for (NodeId u : line.adjacency[v]) edges.push_back({u, static_cast<NodeId>(v)});
    double exact = 0.0;
    for (std::size_t mask = 0; mask < (1u << edges.size()); ++mask) {
        double prob = 1.0;
        std::vector<std::vector<NodeId>> live(line.n);
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (mask & (1u << e)) {
                prob *= p;
                live[static_cast<std::size_t>(edges[e].from)].push_back(edges[e].to);
            } else {
                prob *= 1.0 - p;
            }
        }
        std::set<NodeId> reach = {0};
        std::vector<NodeId> queue = {0};
        while (!queue.empty()) {
            NodeId u = queue.back();
            queue.pop_back();
            for (NodeId w : live[static_cast<std::size_t>(u)])
                if (reach.insert(w).second) queue.push_back(w);
        }
        if (reach.contains(3)) exact += prob;
    }

    int far_hits = 0;
    const int trials = 20000;
    for (int t = 0; t < trials; ++t) {
        auto adopted = sim::run_ic(line, {0}, p, derive_seed(987654321, static_cast<std::uint64_t>(t)));
        far_hits += adopted.contains(3) ? 1 : 0;
    }
    const double mc = static_cast<double>(far_hits) / trials;

    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "BFS match %d/50; line-graph MC %.4f vs exact %.4f (tol 0.02)", bfs_matches,
                  mc, exact);
    return {bfs_matches == 50 && std::abs(mc - exact) <= 0.02, buf};
}

// ---------------------------------------------------------------------------
// 5. threshold oracles: fixed point equals brute force on 200 random graphs
//    (<= 10 nodes); enlarging the seed set never shrinks adoption (100 runs)
// ---------------------------------------------------------------------------
Outcome criterion_threshold_oracles() {
    Rng rng(5555);
    int fixed_point_matches = 0;
    for (int trial = 0; trial < 200; ++trial) {
        SocialGraph g = random_graph(rng, 10);
        std::vector<double> thresholds(g.n);
        for (auto& th : thresholds) th = rng.uniform01();
        std::vector<NodeId> seeds = {static_cast<NodeId>(rng.below(g.n))};

        auto got = sim::run_threshold(g, seeds, thresholds);

        std::set<NodeId> adopted(seeds.begin(), seeds.end());
        while (true) {
            std::set<NodeId> next = adopted;
            for (std::size_t v = 0; v < g.n; ++v) {
                NodeId node = static_cast<NodeId>(v);
                if (adopted.contains(node) || g.adjacency[v].empty()) continue;
                std::size_t have = 0;
                for (NodeId u : g.adjacency[v]) have += adopted.contains(u) ? 1 : 0;
                if (static_cast<double>(have) / static_cast<double>(g.adjacency[v].size()) >=
                    thresholds[v])
                    next.insert(node);
            }
            if (next == adopted) break;
            adopted = std::move(next);
        }
        fixed_point_matches +=
            std::set<NodeId>(got.begin(), got.end()) == adopted ? 1 : 0;
    }

    int monotone = 0;
    for (int trial = 0; trial < 100; ++trial) {
        SocialGraph g = random_graph(rng, 10);
        std::vector<double> thresholds(g.n);
        for (auto& th : thresholds) th = rng.uniform01();
        std::vector<NodeId> small = {static_cast<NodeId>(rng.below(g.n))};
        std::vector<NodeId> large = small;
        large.push_back(static_cast<NodeId>(rng.below(g.n)));
        auto a = sim::run_threshold(g, small, thresholds);
        auto b = sim::run_threshold(g, large, thresholds);
        monotone += std::includes(b.begin(), b.end(), a.begin(), a.end()) ? 1 : 0;
    }

    char buf[96];
    std::snprintf(buf, sizeof(buf), "fixed point %d/200, monotone %d/100", fixed_point_matches,
                  monotone);
    return {fixed_point_matches == 200 && monotone == 100, buf};
}

// ---------------------------------------------------------------------------
// 6. gini oracle: sorted form equals the pairwise formula on 200 random
//    inputs (tol 1e-12); gini([0,0,0,4]) = 0.75 exactly
// ---------------------------------------------------------------------------
Outcome criterion_gini() {
    Rng rng(6666);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> xs(1 + rng.below(50));
        for (auto& x : xs) x = rng.bernoulli(0.25) ? 0.0 : rng.uniform(0.0, 20.0);

        double mean = 0.0;
        for (double x : xs) mean += x;
        mean /= static_cast<double>(xs.size());
        double pairwise = 0.0;
        if (mean > 0.0) {
            for (double a : xs)
                for (double b : xs) pairwise += std::abs(a - b);
            const double n = static_cast<double>(xs.size());
            pairwise /= 2.0 * n * n * mean;
        }
        worst = std::max(worst, std::abs(features::gini(xs) - pairwise));
    }
    const bool exact = features::gini({0, 0, 0, 4}) == 0.75;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "max |sorted - pairwise| %.2e, gini([0,0,0,4])==0.75 %s",
                  worst, exact ? "yes" : "no");
    return {worst <= 1e-12 && exact, buf};
}

// ---------------------------------------------------------------------------
// 7. content-blindness: a bijective token renaming over all post texts
//    leaves the features CSV and the verdict file byte-identical
// ---------------------------------------------------------------------------
std::string rename_tokens(const std::string& text, std::map<std::string, std::string>& mapping,
                          std::size_t& counter) {
    std::istringstream is(text);
    std::string tok, out;
    while (is >> tok) {
        if (!out.empty()) out += ' ';
        if (tok.find("://") != std::string::npos || tok.rfind("www.", 0) == 0 ||
            tok.front() == '@') {
            out += tok; // URLs and mention markers stay in their class
            continue;
        }
        std::string marker;
        std::string body = tok;
        if (tok.front() == '#') {
            marker = "#";
            body = tok.substr(1);
        }
        std::string key = body;
        for (char& c : key)
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        auto [it, inserted] = mapping.try_emplace(key, "");
        if (inserted) it->second = "w" + std::to_string(counter++);
        out += marker + it->second;
    }
    return out;
}

Outcome criterion_content_blindness() {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "memetrace_acceptance_blind";
    fs::create_directories(dir);

    sim::Dataset data = sim::gen_dataset(30, {sim::CampaignSpec{}}, 777);

    auto write_stream = [](const std::string& path, const std::vector<TweetRecord>& records) {
        std::ofstream out(path, std::ios::binary);
        for (const auto& r : records) out << ingest::serialize_record(r) << "\n";
    };
    const std::string plain = (dir / "plain.jsonl").string();
    write_stream(plain, data.records);

    std::map<std::string, std::string> mapping;
    std::size_t counter = 0;
    std::vector<TweetRecord> renamed = data.records;
    for (auto& r : renamed) r.text = rename_tokens(r.text, mapping, counter);
    const std::string blind = (dir / "blind.jsonl").string();
    write_stream(blind, renamed);

    const std::string feats_a = (dir / "a.csv").string();
    const std::string feats_b = (dir / "b.csv").string();
    const std::string verd_a = (dir / "a.json").string();
    const std::string verd_b = (dir / "b.json").string();
    bool ok = cli::run({"features", "--in", plain, "--out", feats_a}) == 0 &&
              cli::run({"features", "--in", blind, "--out", feats_b}) == 0 &&
              cli::run({"detect", "--features", feats_a, "--out", verd_a}) == 0 &&
              cli::run({"detect", "--features", feats_b, "--out", verd_b}) == 0;

    const bool features_equal = slurp(feats_a) == slurp(feats_b);
    const bool verdicts_equal = slurp(verd_a) == slurp(verd_b);
    fs::remove_all(dir);

    char buf[96];
    std::snprintf(buf, sizeof(buf), "features identical: %s, verdicts identical: %s",
                  features_equal ? "yes" : "no", verdicts_equal ? "yes" : "no");
    return {ok && features_equal && verdicts_equal, buf};
}

// ---------------------------------------------------------------------------
// 8. determinism and round-trip: the simulate->features->detect pipeline is
//    byte-stable across reruns; 1000 random records survive serialize/parse
// ---------------------------------------------------------------------------
TweetRecord random_record(Rng& rng, std::int64_t id) {
    TweetRecord r;
    r.tweet_id = id;
    r.author_id = static_cast<std::int64_t>(rng.below(1000));
    r.created_at = 1'000'000 + static_cast<std::int64_t>(rng.below(1'000'000));
    r.author_created_at = r.created_at - static_cast<std::int64_t>(rng.below(100'000'000));
    const char* texts[] = {"plain words", "emoji \xE2\x9C\x93 text", "rt @9: fwd",
                           "quoted \"string\" with, commas"};
    r.text = texts[rng.below(4)];
    if (rng.bernoulli(0.5)) {
        r.retweet_of_tweet_id = static_cast<std::int64_t>(rng.below(10000));
        r.retweet_of_user_id = static_cast<std::int64_t>(rng.below(1000));
    }
    for (std::size_t i = rng.below(3); i > 0; --i)
        r.mentions.push_back(static_cast<std::int64_t>(rng.below(1000)));
    for (std::size_t i = rng.below(3); i > 0; --i) r.hashtags.push_back("tag" + std::to_string(rng.below(50)));
    if (rng.bernoulli(0.4)) r.urls.push_back("http://example.com/" + std::to_string(rng.below(99)));
    return r;
}

Outcome criterion_determinism_roundtrip() {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "memetrace_acceptance_det";
    fs::create_directories(dir);

    auto pipeline = [&dir](const std::string& tag) {
        const std::string stream = (dir / (tag + ".jsonl")).string();
        const std::string feats = (dir / (tag + ".csv")).string();
        const std::string verd = (dir / (tag + ".json")).string();
        const std::string labels = (dir / (tag + ".labels.csv")).string();
        bool ok =
            cli::run({"simulate", "--organic", "20", "--seed", "31337", "--out", stream,
                      "--labels", labels}) == 0 &&
            cli::run({"features", "--in", stream, "--out", feats}) == 0 &&
            cli::run({"detect", "--features", feats, "--out", verd}) == 0;
        return std::tuple(ok, slurp(stream) + slurp(labels), slurp(feats), slurp(verd));
    };
    auto [ok_a, stream_a, feats_a, verd_a] = pipeline("one");
    auto [ok_b, stream_b, feats_b, verd_b] = pipeline("two");
    const bool stable = ok_a && ok_b && stream_a == stream_b && feats_a == feats_b &&
                        verd_a == verd_b;
    fs::remove_all(dir);

    Rng rng(8888);
    int round_trips = 0;
    for (int i = 0; i < 1000; ++i) {
        TweetRecord r = random_record(rng, i + 1);
        round_trips += ingest::parse_record(ingest::serialize_record(r)) == r ? 1 : 0;
    }

    char buf[96];
    std::snprintf(buf, sizeof(buf), "pipeline byte-stable: %s, round-trips %d/1000",
                  stable ? "yes" : "no", round_trips);
    return {stable && round_trips == 1000, buf};
}

// ---------------------------------------------------------------------------
// 9. graph accounting: retweet edges + unresolved + dropped self-retweets
//    equals the retweet post count, on 100 random synthetic memes
// ---------------------------------------------------------------------------
Outcome criterion_graph_accounting() {
    Rng rng(9999);
    const meme::MemeId id{meme::MemeKind::hashtag, "gop"};
    int matches = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<TweetRecord> posts;
        std::int64_t next_id = 1;
        const std::size_t n = 2 + rng.below(60);
        for (std::size_t i = 0; i < n; ++i) {
            TweetRecord p;
            p.tweet_id = next_id;
            p.author_id = static_cast<std::int64_t>(rng.below(15));
            p.created_at = static_cast<std::int64_t>(10 * i);
            p.text = "t";
            p.hashtags = {"gop"};
            switch (rng.below(5)) {
            case 0:
                p.retweet_of_tweet_id = 1 + static_cast<std::int64_t>(rng.below(next_id));
                p.retweet_of_user_id = static_cast<std::int64_t>(rng.below(20));
                break;
            case 1: // guaranteed self-retweet
                p.retweet_of_tweet_id = 1 + static_cast<std::int64_t>(rng.below(next_id));
                p.retweet_of_user_id = p.author_id;
                break;
            case 2: // provenance user unknown
                p.retweet_of_tweet_id = 1 + static_cast<std::int64_t>(rng.below(next_id));
                break;
            default:
                break;
            }
            posts.push_back(std::move(p));
            ++next_id;
        }

        auto net = diffusion::build_network(id, posts);

        // independent recount straight from the raw posts
        std::size_t retweet_posts = 0, dropped_self = 0;
        for (const auto& p : posts) {
            if (!p.is_retweet()) continue;
            ++retweet_posts;
            if (p.retweet_of_user_id && *p.retweet_of_user_id == p.author_id) ++dropped_self;
        }
        std::size_t retweet_edges = 0;
        for (const auto& e : net.edges)
            retweet_edges += e.kind == diffusion::EdgeKind::retweet ? 1 : 0;

        matches += retweet_edges + net.n_unresolved_retweets + dropped_self == retweet_posts
                       ? 1
                       : 0;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "identity held on %d/100 memes", matches);
    return {matches == 100, buf};
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        Outcome (*fn)();
    };
    const Criterion criteria[] = {
        {"twitter-bomb replay detection", criterion_bomb_replay},
        {"trained-classifier separability", criterion_trained_separability},
        {"gradient oracle", criterion_gradients},
        {"cascade oracles", criterion_cascade_oracles},
        {"threshold-model oracles", criterion_threshold_oracles},
        {"gini oracle", criterion_gini},
        {"content-blindness", criterion_content_blindness},
        {"determinism and round-trip", criterion_determinism_roundtrip},
        {"graph accounting", criterion_graph_accounting},
    };

    int failures = 0;
    int index = 0;
    for (const auto& c : criteria) {
        ++index;
        Outcome result{false, "exception"};
        try {
            result = c.fn();
        } catch (const std::exception& e) {
            result.detail = std::string("exception: ") + e.what();
        }
        std::printf("%s  %d. %s: %s\n", result.pass ? "PASS" : "FAIL", index, c.name,
                    result.detail.c_str());
        std::fflush(stdout);
        failures += result.pass ? 0 : 1;
    }
    if (failures) std::printf("%d of 9 criteria failed\n", failures);
    else std::printf("all 9 criteria passed\n");
    return failures == 0 ? 0 : 1;
}
