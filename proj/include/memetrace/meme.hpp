#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "memetrace/record.hpp"

namespace memetrace::meme {

enum class MemeKind { hashtag, url, mention };

const char* kind_name(MemeKind k);
MemeKind kind_from_name(const std::string& name); // throws invalid_params

// A trackable unit of information: a lowercase hashtag, a normalized URL, or
// the decimal id of a mentioned user.
struct MemeId {
    MemeKind kind = MemeKind::hashtag;
    std::string key;

    auto operator<=>(const MemeId&) const = default;
};

std::string to_string(const MemeId& id);

// One occurrence of a meme in the stream.
struct MemeRef {
    ingest::TweetId tweet_id = 0;
    ingest::Timestamp created_at = 0;
    std::size_t stream_pos = 0; // index into the loaded (sorted) stream

    auto operator<=>(const MemeRef&) const = default;
};

// Per-meme time-ordered occurrence lists. A meme is analyzable downstream
// only when it appears in at least two posts.
class MemeIndex {
public:
    void add(const MemeId& id, const MemeRef& ref) { entries_[id].push_back(ref); }

    const std::map<MemeId, std::vector<MemeRef>>& entries() const { return entries_; }

    const std::vector<MemeRef>* find(const MemeId& id) const {
        auto it = entries_.find(id);
        return it == entries_.end() ? nullptr : &it->second;
    }

    static bool analyzable(const std::vector<MemeRef>& refs) { return refs.size() >= 2; }

private:
    std::map<MemeId, std::vector<MemeRef>> entries_;
};

// Canonicalizes a URL so equal links compare equal across posts: scheme and
// host lowercased, fragment dropped, default http/https ports dropped, a
// bare "/" path dropped. Query strings and path case are preserved (tracking
// parameters can distinguish campaign links). Throws Error(invalid_url) when
// no scheme/host can be parsed.
std::string normalize_url(const std::string& raw);

// All memes carried by one record; unnormalizable URLs are skipped.
std::set<MemeId> extract_memes(const ingest::TweetRecord& r);

// Index over a load_stream-ordered stream. Per-meme lists inherit stream
// order, hence are sorted by (created_at, tweet_id).
MemeIndex build_index(const std::vector<ingest::TweetRecord>& stream);

} // namespace memetrace::meme
