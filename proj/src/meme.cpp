#include "memetrace/meme.hpp"

#include "memetrace/error.hpp"

namespace memetrace::meme {

namespace {

// ASCII-only classification and folding: URL canonicalization must not
// depend on the process locale.
bool ascii_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool ascii_digit(char c) { return c >= '0' && c <= '9'; }

std::string lowercase(std::string s) {
    for (char& c : s)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return s;
}

bool valid_scheme(const std::string& s) {
    if (s.empty() || !ascii_alpha(s.front())) return false;
    for (char c : s) {
        if (!ascii_alpha(c) && !ascii_digit(c) && c != '+' && c != '-' && c != '.') return false;
    }
    return true;
}

} // namespace

const char* kind_name(MemeKind k) {
    switch (k) {
    case MemeKind::hashtag: return "hashtag";
    case MemeKind::url: return "url";
    case MemeKind::mention: return "mention";
    }
    return "?";
}

MemeKind kind_from_name(const std::string& name) {
    if (name == "hashtag") return MemeKind::hashtag;
    if (name == "url") return MemeKind::url;
    if (name == "mention") return MemeKind::mention;
    fail(Errc::invalid_params, "unknown meme kind '" + name + "'");
}

std::string to_string(const MemeId& id) {
    return std::string(kind_name(id.kind)) + ":" + id.key;
}

std::string normalize_url(const std::string& raw) {
    if (raw.empty()) fail(Errc::invalid_url, "empty url");

    std::size_t scheme_end = raw.find("://");
    if (scheme_end == std::string::npos) fail(Errc::invalid_url, "no scheme: " + raw);
    std::string scheme = raw.substr(0, scheme_end);
    if (!valid_scheme(scheme)) fail(Errc::invalid_url, "bad scheme: " + raw);
    scheme = lowercase(scheme);

    std::size_t rest_start = scheme_end + 3;
    std::size_t authority_end = raw.find_first_of("/?#", rest_start);
    if (authority_end == std::string::npos) authority_end = raw.size();
    std::string authority = raw.substr(rest_start, authority_end - rest_start);

    std::string userinfo;
    std::size_t at = authority.rfind('@');
    if (at != std::string::npos) {
        userinfo = authority.substr(0, at + 1); // kept verbatim, '@' included
        authority = authority.substr(at + 1);
    }

    std::string host;
    std::string port;
    if (!authority.empty() && authority.front() == '[') {
        std::size_t close = authority.find(']');
        if (close == std::string::npos) fail(Errc::invalid_url, "unterminated IPv6 host: " + raw);
        host = authority.substr(0, close + 1);
        std::string tail = authority.substr(close + 1);
        if (!tail.empty()) {
            if (tail.front() != ':') fail(Errc::invalid_url, "junk after IPv6 host: " + raw);
            port = tail.substr(1);
        }
    } else {
        std::size_t colon = authority.rfind(':');
        if (colon != std::string::npos) {
            host = authority.substr(0, colon);
            port = authority.substr(colon + 1);
        } else {
            host = authority;
        }
    }
    if (host.empty()) fail(Errc::invalid_url, "no host: " + raw);
    host = lowercase(host);

    if (!port.empty()) {
        for (char c : port)
            if (!ascii_digit(c)) fail(Errc::invalid_url, "non-numeric port: " + raw);
        long port_num;
        try {
            port_num = std::stol(port);
        } catch (const std::out_of_range&) {
            fail(Errc::invalid_url, "port out of range: " + raw);
        }
        if ((scheme == "http" && port_num == 80) || (scheme == "https" && port_num == 443))
            port.clear();
    }

    std::string path;
    std::string query;
    if (authority_end < raw.size() && raw[authority_end] != '#') {
        std::size_t frag = raw.find('#', authority_end);
        std::size_t tail_end = frag == std::string::npos ? raw.size() : frag;
        std::size_t q = raw.find('?', authority_end);
        if (q != std::string::npos && q < tail_end) {
            path = raw.substr(authority_end, q - authority_end);
            query = raw.substr(q, tail_end - q); // '?' included, verbatim
        } else {
            path = raw.substr(authority_end, tail_end - authority_end);
        }
    }
    if (path == "/") path.clear();

    std::string out = scheme + "://" + userinfo + host;
    if (!port.empty()) out += ":" + port;
    out += path;
    out += query;
    return out;
}

std::set<MemeId> extract_memes(const ingest::TweetRecord& r) {
    std::set<MemeId> out;
    for (const auto& tag : r.hashtags) {
        if (tag.empty()) continue;
        out.insert(MemeId{MemeKind::hashtag, tag});
    }
    for (const auto& raw : r.urls) {
        try {
            out.insert(MemeId{MemeKind::url, normalize_url(raw)});
        } catch (const Error&) {
            // unnormalizable URLs carry no trackable identity
        }
    }
    for (auto uid : r.mentions) {
        out.insert(MemeId{MemeKind::mention, std::to_string(uid)});
    }
    return out;
}

MemeIndex build_index(const std::vector<ingest::TweetRecord>& stream) {
    MemeIndex index;
    for (std::size_t pos = 0; pos < stream.size(); ++pos) {
        const auto& r = stream[pos];
        for (const auto& id : extract_memes(r)) {
            index.add(id, MemeRef{r.tweet_id, r.created_at, pos});
        }
    }
    return index;
}

} // namespace memetrace::meme
