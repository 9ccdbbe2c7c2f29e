#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "memetrace/meme.hpp"
#include "memetrace/record.hpp"

namespace memetrace::diffusion {

enum class EdgeKind { retweet, mention };

// One observed propagation event, oriented in the direction information
// moved: retweet edges run origin -> rebroadcaster, mention edges run
// author -> mentioned user.
struct DiffusionEdge {
    ingest::UserId from_user = 0;
    ingest::UserId to_user = 0;
    EdgeKind kind = EdgeKind::retweet;
    ingest::Timestamp ts = 0;
    ingest::TweetId via_tweet = 0;

    auto operator<=>(const DiffusionEdge&) const = default;
};

// Activity summary for one user inside one meme's network. is_stub marks
// users referenced by provenance or mentions but absent from the meme's
// captured posts; for stubs first_ts/last_ts span the referencing events and
// n_tweets is 0.
struct NodeInfo {
    ingest::Timestamp first_ts = 0;
    ingest::Timestamp last_ts = 0;
    std::size_t n_tweets = 0;
    bool is_stub = false;
};

// Per-meme directed diffusion graph. Repeated identical edges are kept as
// distinct events: multiplicity carries burst signal.
struct DiffusionNetwork {
    meme::MemeId meme;
    std::map<ingest::UserId, NodeInfo> nodes;
    std::vector<DiffusionEdge> edges;
    std::set<ingest::UserId> roots; // users whose first meme post is original
    std::size_t n_unresolved_retweets = 0;
};

// Builds the network from the meme's time-ordered posts. Self-retweets and
// self-mentions are dropped; a retweet whose origin never posted the meme
// gets a stub node; a retweet record with no provenance user id at all is
// counted in n_unresolved_retweets. Throws Error(meme_mismatch) if a post
// does not carry the meme.
DiffusionNetwork build_network(const meme::MemeId& id,
                               const std::vector<ingest::TweetRecord>& posts);

// Connected components ignoring edge direction; isolated nodes are
// singletons. Components and their members are sorted.
std::vector<std::vector<ingest::UserId>> weak_components(const DiffusionNetwork& net);

// Deterministic DOT rendering: nodes and edges sorted, retweet edges solid,
// mention edges dashed, stub nodes boxed.
std::string to_dot(const DiffusionNetwork& net);

} // namespace memetrace::diffusion
