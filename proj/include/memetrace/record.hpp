#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace memetrace::ingest {

using UserId = std::int64_t;
using TweetId = std::int64_t;
using Timestamp = std::int64_t; // epoch seconds, UTC

// One microblog post. Retweet provenance is the explicit diffusion marker:
// retweet_of_* identify the post and author this record rebroadcasts.
// Invariants: both retweet fields set or both unset; created_at >=
// author_created_at; hashtags lowercase without '#'; mentions are user ids.
struct TweetRecord {
    TweetId tweet_id = 0;
    UserId author_id = 0;
    Timestamp created_at = 0;
    std::string text;
    std::optional<TweetId> retweet_of_tweet_id;
    std::optional<UserId> retweet_of_user_id;
    std::vector<UserId> mentions;
    std::vector<std::string> hashtags;
    std::vector<std::string> urls;
    Timestamp author_created_at = 0;

    bool is_retweet() const {
        return retweet_of_tweet_id.has_value() || retweet_of_user_id.has_value();
    }

    bool operator==(const TweetRecord&) const = default;
};

// Tally of one load_stream pass. n_records counts successfully parsed lines
// (duplicates included; the returned list is n_records - n_duplicate_ids
// long), so n_rejected + n_records = lines read.
struct StreamReport {
    std::size_t n_records = 0;
    std::size_t n_rejected = 0;
    std::size_t n_duplicate_ids = 0;
    std::size_t n_order_violations = 0;
    Timestamp first_ts = 0;
    Timestamp last_ts = 0;
};

struct LoadResult {
    std::vector<TweetRecord> records; // sorted by (created_at, tweet_id)
    StreamReport report;
};

// Parses one JSONL line. Throws Error(malformed_line) when the line is not
// valid JSON, Error(schema_violation) on missing/ill-typed fields, a
// half-set retweet pair, or created_at < author_created_at. Hashtags are
// canonicalized (leading '#' stripped, lowercased).
TweetRecord parse_record(const std::string& line);

// Canonical JSONL form: alphabetical keys, retweet keys omitted when absent.
// parse_record(serialize_record(r)) == r for every valid record.
std::string serialize_record(const TweetRecord& r);

// Reads a JSONL file. Malformed lines are counted and skipped, duplicate
// tweet_ids keep the first occurrence in file order. Output is sorted by
// (created_at, tweet_id). Throws Error(io_error) only for file-level
// failures.
LoadResult load_stream(const std::string& path);

} // namespace memetrace::ingest
