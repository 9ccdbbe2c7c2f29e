#include "memetrace/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "memetrace/error.hpp"
#include "memetrace/rng.hpp"

namespace memetrace::features {

using ingest::Timestamp;
using ingest::TweetRecord;
using ingest::UserId;

const std::array<std::string, kFeatureCount> kFeatureNames = {
    "log_n_tweets",
    "log_n_users",
    "rt_fraction",
    "roots_frac",
    "max_outdeg_frac",
    "gini_outdeg",
    "lcc_frac",
    "log_peak_rate",
    "burstiness",
    "dup_text_frac",
    "log_mean_account_age_days",
    "new_account_frac",
    "mention_target_frac",
};

double gini(const std::vector<double>& values) {
    if (values.empty()) fail(Errc::empty_input, "gini of empty list");
    double total = std::accumulate(values.begin(), values.end(), 0.0);
    if (total <= 0.0) return 0.0;

    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    // sum_ij |x_i - x_j| = 2 * sum_k (2k - n - 1) x_(k), k 1-based ascending
    double weighted = 0.0;
    for (std::size_t k = 0; k < sorted.size(); ++k)
        weighted += (2.0 * static_cast<double>(k + 1) - n - 1.0) * sorted[k];
    return weighted / (n * total);
}

double burstiness(const std::vector<Timestamp>& timestamps) {
    if (timestamps.size() < 3) return 0.0;

    std::vector<double> gaps(timestamps.size() - 1);
    for (std::size_t i = 0; i + 1 < timestamps.size(); ++i)
        gaps[i] = static_cast<double>(timestamps[i + 1] - timestamps[i]);

    double mu = std::accumulate(gaps.begin(), gaps.end(), 0.0) / static_cast<double>(gaps.size());
    double var = 0.0;
    for (double g : gaps) var += (g - mu) * (g - mu);
    var /= static_cast<double>(gaps.size());
    double sigma = std::sqrt(var);

    if (sigma + mu == 0.0) return 1.0; // all gaps zero: extreme burst
    return (sigma - mu) / (sigma + mu);
}

std::size_t peak_rate(const std::vector<Timestamp>& timestamps, std::int64_t bin_s) {
    if (timestamps.empty()) return 0;
    if (bin_s <= 0) fail(Errc::invalid_params, "bin width must be positive");
    const Timestamp first = timestamps.front();
    std::unordered_map<std::int64_t, std::size_t> bins;
    std::size_t best = 0;
    for (Timestamp t : timestamps) {
        std::size_t c = ++bins[(t - first) / bin_s];
        best = std::max(best, c);
    }
    return best;
}

namespace {

bool is_url_token(const std::string& tok) {
    return tok.find("://") != std::string::npos || tok.rfind("www.", 0) == 0;
}

// lowercase (ASCII, locale-independent), drop URL and @ tokens, drop '#'
// characters, split on whitespace
std::vector<std::string> normalize_tokens(const std::string& text) {
    std::string lowered;
    lowered.reserve(text.size());
    for (char c : text)
        lowered += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;

    std::vector<std::string> tokens;
    std::istringstream is(lowered);
    std::string tok;
    while (is >> tok) {
        if (tok.empty() || tok.front() == '@' || is_url_token(tok)) continue;
        std::string cleaned;
        for (char c : tok)
            if (c != '#') cleaned += c;
        if (!cleaned.empty()) tokens.push_back(std::move(cleaned));
    }
    return tokens;
}

// Shingles are kept as sorted 64-bit hashes; set relations between hashed
// shingles match the string sets except under hash collision.
std::vector<std::uint64_t> shingle_set(const std::vector<std::string>& tokens) {
    std::vector<std::uint64_t> shingles;
    if (tokens.size() < 3) {
        for (const auto& t : tokens) shingles.push_back(fnv1a64(t));
    } else {
        for (std::size_t i = 0; i + 2 < tokens.size(); ++i)
            shingles.push_back(fnv1a64(tokens[i] + " " + tokens[i + 1] + " " + tokens[i + 2]));
    }
    std::sort(shingles.begin(), shingles.end());
    shingles.erase(std::unique(shingles.begin(), shingles.end()), shingles.end());
    return shingles;
}

double jaccard(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    if (a.empty() && b.empty()) return 1.0; // two empty texts are duplicates
    std::size_t inter = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++inter;
            ++ia;
            ++ib;
        }
    }
    std::size_t uni = a.size() + b.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

} // namespace

double near_duplicate_fraction(const std::vector<std::string>& texts,
                               std::size_t pairwise_cap) {
    if (texts.empty()) fail(Errc::empty_input, "no texts");

    const std::size_t n = texts.size();
    const std::size_t m = std::min(n, pairwise_cap);

    std::vector<std::vector<std::uint64_t>> shingles(m);
    for (std::size_t i = 0; i < m; ++i) shingles[i] = shingle_set(normalize_tokens(texts[i]));

    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };

    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (find(i) == find(j)) continue;
            if (jaccard(shingles[i], shingles[j]) >= 0.5)
                parent[std::max(find(i), find(j))] = std::min(find(i), find(j));
        }
    }

    std::set<std::size_t> clusters;
    for (std::size_t i = 0; i < n; ++i) clusters.insert(find(i));
    return 1.0 - static_cast<double>(clusters.size()) / static_cast<double>(n);
}

MemeFeatureVector compute_features(const diffusion::DiffusionNetwork& net,
                                   const std::vector<TweetRecord>& posts,
                                   std::int64_t new_account_horizon_s) {
    if (posts.size() < 2) fail(Errc::insufficient_data, "meme has fewer than 2 posts");

    const double n_posts = static_cast<double>(posts.size());
    MemeFeatureVector f;

    std::size_t n_users = 0;
    for (const auto& [user, info] : net.nodes)
        if (!info.is_stub) ++n_users;

    f[kLogNTweets] = std::log10(1.0 + n_posts);
    f[kLogNUsers] = std::log10(1.0 + static_cast<double>(n_users));

    std::size_t n_retweets = 0;
    for (const auto& p : posts) n_retweets += p.is_retweet() ? 1 : 0;
    f[kRtFraction] = static_cast<double>(n_retweets) / n_posts;

    f[kRootsFrac] = static_cast<double>(net.roots.size()) /
                    std::max<double>(1.0, static_cast<double>(n_users));

    std::map<UserId, std::size_t> outdeg;
    for (const auto& [user, info] : net.nodes) outdeg[user] = 0;
    for (const auto& e : net.edges) ++outdeg[e.from_user];
    std::size_t max_out = 0;
    std::vector<double> outdeg_values;
    outdeg_values.reserve(outdeg.size());
    for (const auto& [user, d] : outdeg) {
        max_out = std::max(max_out, d);
        outdeg_values.push_back(static_cast<double>(d));
    }
    f[kMaxOutdegFrac] = static_cast<double>(max_out) /
                        std::max<double>(1.0, static_cast<double>(net.edges.size()));
    f[kGiniOutdeg] = outdeg_values.empty() ? 0.0 : gini(outdeg_values);

    auto components = diffusion::weak_components(net);
    std::size_t lcc = 0;
    for (const auto& comp : components) lcc = std::max(lcc, comp.size());
    f[kLccFrac] = static_cast<double>(lcc) /
                  std::max<double>(1.0, static_cast<double>(net.nodes.size()));

    std::vector<Timestamp> times;
    times.reserve(posts.size());
    for (const auto& p : posts) times.push_back(p.created_at);
    f[kLogPeakRate] = std::log10(1.0 + static_cast<double>(peak_rate(times)));
    f[kBurstiness] = burstiness(times);

    std::vector<std::string> texts;
    texts.reserve(posts.size());
    for (const auto& p : posts) texts.push_back(p.text);
    f[kDupTextFrac] = near_duplicate_fraction(texts);

    // account-age features use each author's first record in stream order
    const Timestamp first_ts = posts.front().created_at;
    std::map<UserId, Timestamp> author_created;
    for (const auto& p : posts) author_created.try_emplace(p.author_id, p.author_created_at);

    double age_sum_days = 0.0;
    std::size_t n_new = 0;
    for (const auto& [user, created] : author_created) {
        const auto age_s = first_ts - created;
        age_sum_days += static_cast<double>(std::max<Timestamp>(0, age_s)) / 86400.0;
        if (age_s < new_account_horizon_s) ++n_new;
    }
    const double n_authors = static_cast<double>(author_created.size());
    f[kLogMeanAccountAgeDays] = std::log10(1.0 + age_sum_days / n_authors);
    f[kNewAccountFrac] = static_cast<double>(n_new) / n_authors;

    // posts mentioning somebody with no strictly earlier meme post
    std::set<UserId> has_posted;
    std::size_t n_outward = 0;
    for (const auto& p : posts) {
        bool outward = false;
        for (UserId target : p.mentions) {
            if (!has_posted.contains(target)) {
                outward = true;
                break;
            }
        }
        n_outward += outward ? 1 : 0;
        has_posted.insert(p.author_id);
    }
    f[kMentionTargetFrac] = static_cast<double>(n_outward) / n_posts;

    return f;
}

FeatureStats zscore_fit(const std::vector<MemeFeatureVector>& vectors) {
    if (vectors.size() < 2) fail(Errc::insufficient_data, "need at least 2 vectors to fit stats");

    FeatureStats s;
    const double n = static_cast<double>(vectors.size());
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        double mean = 0.0;
        for (const auto& v : vectors) mean += v[i];
        mean /= n;
        double var = 0.0;
        for (const auto& v : vectors) var += (v[i] - mean) * (v[i] - mean);
        var /= n;
        s.mean[i] = mean;
        double sd = std::sqrt(var);
        s.stddev[i] = sd == 0.0 ? 1.0 : sd;
    }
    return s;
}

std::array<double, kFeatureCount> zscore_apply(const MemeFeatureVector& v, const FeatureStats& s) {
    std::array<double, kFeatureCount> out{};
    for (std::size_t i = 0; i < kFeatureCount; ++i) out[i] = (v[i] - s.mean[i]) / s.stddev[i];
    return out;
}

} // namespace memetrace::features
