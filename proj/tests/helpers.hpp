#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "memetrace/error.hpp"
#include "memetrace/record.hpp"
#include "memetrace/rng.hpp"

namespace testutil {

using memetrace::Rng;
using memetrace::ingest::TweetRecord;

// Scratch directory removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        base_ = std::filesystem::temp_directory_path() /
                ("memetrace_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::create_directories(base_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(base_, ec);
    }
    std::string path(const std::string& name) const { return (base_ / name).string(); }

private:
    std::filesystem::path base_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// A structurally valid random record: optional retweet provenance, small
// pools of tags/urls/mentions so random streams share memes, occasional
// non-ASCII text.
inline TweetRecord random_record(Rng& rng, std::int64_t tweet_id) {
    static const char* kTags[] = {"gop", "rally", "vote2010", "breaking"};
    static const char* kUrls[] = {"http://example.com/a", "https://news.example.org/story?id=7"};

    TweetRecord r;
    r.tweet_id = tweet_id;
    r.author_id = static_cast<std::int64_t>(rng.below(50));
    r.created_at = 1'288'000'000 + static_cast<std::int64_t>(rng.below(100'000));
    r.author_created_at = r.created_at - 1 - static_cast<std::int64_t>(rng.below(100'000'000));
    switch (rng.below(4)) {
    case 0: r.text = "plain words only here"; break;
    case 1: r.text = "check http://x.com/page?a=1 and #tag now"; break;
    case 2: r.text = "naïve café — ütf8 ✓ text"; break;
    default: r.text = "rt @" + std::to_string(rng.below(50)) + ": echoed words"; break;
    }
    if (rng.bernoulli(0.4)) {
        r.retweet_of_tweet_id = static_cast<std::int64_t>(rng.below(1000));
        r.retweet_of_user_id = static_cast<std::int64_t>(rng.below(50));
    }
    std::size_t n_tags = rng.below(3);
    for (std::size_t i = 0; i < n_tags; ++i) r.hashtags.push_back(kTags[rng.below(4)]);
    if (rng.bernoulli(0.3)) r.urls.push_back(kUrls[rng.below(2)]);
    std::size_t n_mentions = rng.below(3);
    for (std::size_t i = 0; i < n_mentions; ++i)
        r.mentions.push_back(static_cast<std::int64_t>(rng.below(50)));
    return r;
}

} // namespace testutil
