#include "memetrace/diffusion.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "memetrace/error.hpp"

namespace memetrace::diffusion {

using ingest::TweetRecord;
using ingest::UserId;

DiffusionNetwork build_network(const meme::MemeId& id,
                               const std::vector<TweetRecord>& posts) {
    DiffusionNetwork net;
    net.meme = id;

    // First pass: authors and their posting spans. Stub status depends on
    // whether a user authored any meme post anywhere in the list, so edges
    // wait for the second pass.
    for (const auto& post : posts) {
        if (!meme::extract_memes(post).contains(id))
            fail(Errc::meme_mismatch, "post " + std::to_string(post.tweet_id) +
                                          " does not carry " + meme::to_string(id));
        auto [it, inserted] = net.nodes.try_emplace(
            post.author_id, NodeInfo{post.created_at, post.created_at, 1, false});
        if (!inserted) {
            it->second.first_ts = std::min(it->second.first_ts, post.created_at);
            it->second.last_ts = std::max(it->second.last_ts, post.created_at);
            ++it->second.n_tweets;
        } else if (!post.is_retweet()) {
            // first meme post of this user is an original
            net.roots.insert(post.author_id);
        }
    }

    auto touch_stub = [&net](UserId user, ingest::Timestamp ts) {
        auto [it, inserted] = net.nodes.try_emplace(user, NodeInfo{ts, ts, 0, true});
        if (!inserted && it->second.is_stub) {
            it->second.first_ts = std::min(it->second.first_ts, ts);
            it->second.last_ts = std::max(it->second.last_ts, ts);
        }
    };

    for (const auto& post : posts) {
        if (post.is_retweet()) {
            if (!post.retweet_of_user_id) {
                ++net.n_unresolved_retweets;
            } else if (*post.retweet_of_user_id != post.author_id) {
                UserId origin = *post.retweet_of_user_id;
                touch_stub(origin, post.created_at);
                net.edges.push_back(DiffusionEdge{origin, post.author_id, EdgeKind::retweet,
                                                  post.created_at, post.tweet_id});
            }
            // self-retweets are dropped
        }
        for (UserId target : post.mentions) {
            if (target == post.author_id) continue;
            touch_stub(target, post.created_at);
            net.edges.push_back(DiffusionEdge{post.author_id, target, EdgeKind::mention,
                                              post.created_at, post.tweet_id});
        }
    }
    return net;
}

std::vector<std::vector<UserId>> weak_components(const DiffusionNetwork& net) {
    std::vector<UserId> ids;
    ids.reserve(net.nodes.size());
    for (const auto& [user, info] : net.nodes) ids.push_back(user);

    std::vector<std::size_t> parent(ids.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    auto unite = [&](std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };

    auto index_of = [&ids](UserId user) {
        return static_cast<std::size_t>(
            std::lower_bound(ids.begin(), ids.end(), user) - ids.begin());
    };
    for (const auto& e : net.edges) unite(index_of(e.from_user), index_of(e.to_user));

    std::map<std::size_t, std::vector<UserId>> groups;
    for (std::size_t i = 0; i < ids.size(); ++i) groups[find(i)].push_back(ids[i]);

    std::vector<std::vector<UserId>> out;
    out.reserve(groups.size());
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    return out;
}

std::string to_dot(const DiffusionNetwork& net) {
    std::ostringstream os;
    os << "digraph diffusion {\n";
    for (const auto& [user, info] : net.nodes) {
        os << "  \"" << user << "\" [label=\"" << user << "\"";
        if (info.is_stub) os << ", shape=box";
        os << "];\n";
    }
    std::vector<DiffusionEdge> edges = net.edges;
    std::sort(edges.begin(), edges.end());
    for (const auto& e : edges) {
        os << "  \"" << e.from_user << "\" -> \"" << e.to_user << "\" [style="
           << (e.kind == EdgeKind::retweet ? "solid" : "dashed") << "];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace memetrace::diffusion
