#include "memetrace/record.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include "json.hpp"

#include "memetrace/error.hpp"

namespace memetrace::ingest {

namespace {

using nlohmann::json;

std::int64_t require_int(const json& obj, const char* key, bool non_negative = true) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(Errc::schema_violation, std::string("missing field ") + key);
    if (!it->is_number_integer() && !it->is_number_unsigned())
        fail(Errc::schema_violation, std::string(key) + " must be an integer");
    std::int64_t v = it->get<std::int64_t>();
    if (non_negative && v < 0)
        fail(Errc::schema_violation, std::string(key) + " must be non-negative");
    return v;
}

// ASCII-only: canonical keys must not depend on the process locale
std::string lowercase(std::string s) {
    for (char& c : s)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return s;
}

} // namespace

TweetRecord parse_record(const std::string& line) {
    json obj;
    try {
        obj = json::parse(line);
    } catch (const json::parse_error&) {
        fail(Errc::malformed_line, "not valid record syntax");
    }
    if (!obj.is_object()) fail(Errc::malformed_line, "record is not an object");

    TweetRecord r;
    r.tweet_id = require_int(obj, "tweet_id");
    r.author_id = require_int(obj, "author_id");
    r.created_at = require_int(obj, "created_at", false);
    r.author_created_at = require_int(obj, "author_created_at", false);
    if (r.created_at < r.author_created_at)
        fail(Errc::schema_violation, "created_at precedes author_created_at");

    auto text_it = obj.find("text");
    if (text_it == obj.end() || !text_it->is_string())
        fail(Errc::schema_violation, "missing or non-string text");
    r.text = text_it->get<std::string>();

    bool has_rt_tweet = obj.contains("retweet_of_tweet_id") && !obj["retweet_of_tweet_id"].is_null();
    bool has_rt_user = obj.contains("retweet_of_user_id") && !obj["retweet_of_user_id"].is_null();
    if (has_rt_tweet != has_rt_user)
        fail(Errc::schema_violation, "retweet provenance pair incomplete");
    if (has_rt_tweet) {
        r.retweet_of_tweet_id = require_int(obj, "retweet_of_tweet_id");
        r.retweet_of_user_id = require_int(obj, "retweet_of_user_id");
    }

    auto list_it = obj.find("mentions");
    if (list_it == obj.end() || !list_it->is_array())
        fail(Errc::schema_violation, "missing or non-array mentions");
    for (const auto& m : *list_it) {
        if (!m.is_number_integer() && !m.is_number_unsigned())
            fail(Errc::schema_violation, "mentions must contain user ids");
        std::int64_t id = m.get<std::int64_t>();
        if (id < 0) fail(Errc::schema_violation, "mention id must be non-negative");
        r.mentions.push_back(id);
    }

    auto tags_it = obj.find("hashtags");
    if (tags_it == obj.end() || !tags_it->is_array())
        fail(Errc::schema_violation, "missing or non-array hashtags");
    for (const auto& t : *tags_it) {
        if (!t.is_string()) fail(Errc::schema_violation, "hashtags must be strings");
        std::string tag = t.get<std::string>();
        if (!tag.empty() && tag.front() == '#') tag.erase(tag.begin());
        r.hashtags.push_back(lowercase(std::move(tag)));
    }

    auto urls_it = obj.find("urls");
    if (urls_it == obj.end() || !urls_it->is_array())
        fail(Errc::schema_violation, "missing or non-array urls");
    for (const auto& u : *urls_it) {
        if (!u.is_string()) fail(Errc::schema_violation, "urls must be strings");
        r.urls.push_back(u.get<std::string>());
    }

    return r;
}

std::string serialize_record(const TweetRecord& r) {
    // nlohmann's default object keeps keys in alphabetical order, which is
    // exactly the canonical key order of the line format.
    json obj;
    obj["author_created_at"] = r.author_created_at;
    obj["author_id"] = r.author_id;
    obj["created_at"] = r.created_at;
    obj["hashtags"] = r.hashtags;
    obj["mentions"] = r.mentions;
    if (r.retweet_of_tweet_id) obj["retweet_of_tweet_id"] = *r.retweet_of_tweet_id;
    if (r.retweet_of_user_id) obj["retweet_of_user_id"] = *r.retweet_of_user_id;
    obj["text"] = r.text;
    obj["tweet_id"] = r.tweet_id;
    obj["urls"] = r.urls;
    return obj.dump();
}

LoadResult load_stream(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::io_error, "cannot open " + path);

    LoadResult out;
    std::unordered_set<std::int64_t> seen_ids;
    bool have_prev = false;
    std::pair<Timestamp, TweetId> prev_key{};

    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        TweetRecord r;
        try {
            r = parse_record(line);
        } catch (const Error&) {
            ++out.report.n_rejected;
            continue;
        }
        ++out.report.n_records;
        std::pair<Timestamp, TweetId> key{r.created_at, r.tweet_id};
        if (have_prev && key < prev_key) ++out.report.n_order_violations;
        prev_key = key;
        have_prev = true;
        if (!seen_ids.insert(r.tweet_id).second) {
            ++out.report.n_duplicate_ids;
            continue; // first occurrence wins
        }
        out.records.push_back(std::move(r));
    }
    if (in.bad()) fail(Errc::io_error, "read failure on " + path);

    std::sort(out.records.begin(), out.records.end(),
              [](const TweetRecord& a, const TweetRecord& b) {
                  return std::tie(a.created_at, a.tweet_id) < std::tie(b.created_at, b.tweet_id);
              });
    if (!out.records.empty()) {
        out.report.first_ts = out.records.front().created_at;
        out.report.last_ts = out.records.back().created_at;
    }
    return out;
}

} // namespace memetrace::ingest
