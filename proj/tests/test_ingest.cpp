#include "doctest.h"

#include <algorithm>

#include "helpers.hpp"
#include "memetrace/error.hpp"
#include "memetrace/record.hpp"
#include "memetrace/rng.hpp"

using namespace memetrace;
using namespace memetrace::ingest;
using testutil::TempDir;

namespace {

const char* kFullLine =
    R"({"author_created_at":100,"author_id":7,"created_at":5000,"hashtags":["gop"],)"
    R"("mentions":[3,9],"retweet_of_tweet_id":41,"retweet_of_user_id":3,)"
    R"("text":"rt @3: hello","tweet_id":42,"urls":["http://x.com"]})";

} // namespace

TEST_CASE("parse_record reads a full line with retweet provenance") {
    TweetRecord r = parse_record(kFullLine);
    CHECK(r.tweet_id == 42);
    CHECK(r.author_id == 7);
    CHECK(r.created_at == 5000);
    CHECK(r.author_created_at == 100);
    REQUIRE(r.retweet_of_tweet_id.has_value());
    REQUIRE(r.retweet_of_user_id.has_value());
    CHECK(*r.retweet_of_tweet_id == 41);
    CHECK(*r.retweet_of_user_id == 3);
    CHECK(r.mentions == std::vector<std::int64_t>{3, 9});
    CHECK(r.hashtags == std::vector<std::string>{"gop"});
    CHECK(r.text == "rt @3: hello");
}

TEST_CASE("parse_record rejects bad lines") {
    CHECK_THROWS_AS(parse_record("not json at all"), Error);
    CHECK_THROWS_AS(parse_record("[1,2,3]"), Error);

    // missing author_id
    CHECK_THROWS_WITH_AS(
        parse_record(R"({"author_created_at":0,"created_at":1,"hashtags":[],"mentions":[],)"
                     R"("text":"x","tweet_id":1,"urls":[]})"),
        doctest::Contains("SchemaViolation"), Error);

    // retweet pair incomplete
    CHECK_THROWS_WITH_AS(
        parse_record(R"({"author_created_at":0,"author_id":2,"created_at":1,"hashtags":[],)"
                     R"("mentions":[],"retweet_of_tweet_id":9,"text":"x","tweet_id":1,"urls":[]})"),
        doctest::Contains("SchemaViolation"), Error);

    // created_at before account creation
    CHECK_THROWS_WITH_AS(
        parse_record(R"({"author_created_at":10,"author_id":2,"created_at":1,"hashtags":[],)"
                     R"("mentions":[],"text":"x","tweet_id":1,"urls":[]})"),
        doctest::Contains("SchemaViolation"), Error);

    CHECK_THROWS_WITH_AS(
        parse_record(R"({"author_created_at":0,"author_id":-2,"created_at":1,"hashtags":[],)"
                     R"("mentions":[],"text":"x","tweet_id":1,"urls":[]})"),
        doctest::Contains("SchemaViolation"), Error);
}

TEST_CASE("parse_record canonicalizes hashtags") {
    TweetRecord r = parse_record(
        R"({"author_created_at":0,"author_id":2,"created_at":1,"hashtags":["#GOP","Tea"],)"
        R"("mentions":[],"text":"x","tweet_id":1,"urls":[]})");
    CHECK(r.hashtags == std::vector<std::string>{"gop", "tea"});
}

TEST_CASE("serialize_record round-trips exactly") {
    TweetRecord r = parse_record(kFullLine);
    CHECK(parse_record(serialize_record(r)) == r);

    SUBCASE("empty lists") {
        TweetRecord bare;
        bare.tweet_id = 1;
        bare.author_id = 2;
        bare.created_at = 10;
        bare.author_created_at = 3;
        bare.text = "plain";
        std::string line = serialize_record(bare);
        CHECK(line.find("retweet") == std::string::npos);
        CHECK(parse_record(line) == bare);
    }

    SUBCASE("non-ASCII text survives byte-exact") {
        TweetRecord r2;
        r2.tweet_id = 5;
        r2.author_id = 6;
        r2.created_at = 20;
        r2.author_created_at = 10;
        r2.text = "voté — naïve ✓ \xF0\x9F\x94\xA5";
        CHECK(parse_record(serialize_record(r2)).text == r2.text);
    }
}

TEST_CASE("serialize_record emits alphabetical keys") {
    TweetRecord r = parse_record(kFullLine);
    std::string line = serialize_record(r);
    const char* keys[] = {"author_created_at", "author_id",          "created_at",
                          "hashtags",          "mentions",           "retweet_of_tweet_id",
                          "retweet_of_user_id","text",               "tweet_id",
                          "urls"};
    std::size_t prev = 0;
    for (const char* key : keys) {
        auto pos = line.find(std::string("\"") + key + "\":");
        REQUIRE(pos != std::string::npos);
        CHECK(pos >= prev);
        prev = pos;
    }
}

TEST_CASE("random records survive serialize/parse round-trip") {
    Rng rng(2024);
    for (int i = 0; i < 200; ++i) {
        TweetRecord r = testutil::random_record(rng, i + 1);
        CAPTURE(serialize_record(r));
        CHECK(parse_record(serialize_record(r)) == r);
    }
}

TEST_CASE("load_stream sorts, deduplicates and reports") {
    TempDir dir("ingest");

    SUBCASE("shuffled timestamps come back ordered") {
        TweetRecord a, b, c;
        a.tweet_id = 1; a.author_id = 1; a.created_at = 300; a.text = "a";
        b.tweet_id = 2; b.author_id = 2; b.created_at = 100; b.text = "b";
        c.tweet_id = 3; c.author_id = 3; c.created_at = 200; c.text = "c";
        std::string path = dir.path("shuffled.jsonl");
        testutil::write_file(path, serialize_record(a) + "\n" + serialize_record(b) + "\n" +
                                       serialize_record(c) + "\n");
        LoadResult lr = load_stream(path);
        REQUIRE(lr.records.size() == 3);
        CHECK(lr.records[0].tweet_id == 2);
        CHECK(lr.records[1].tweet_id == 3);
        CHECK(lr.records[2].tweet_id == 1);
        CHECK(lr.report.n_order_violations > 0);
        CHECK(lr.report.first_ts == 100);
        CHECK(lr.report.last_ts == 300);
    }

    SUBCASE("duplicate tweet ids keep the first occurrence") {
        TweetRecord a;
        a.tweet_id = 1; a.author_id = 1; a.created_at = 100; a.text = "first";
        TweetRecord dup = a;
        dup.text = "second";
        dup.created_at = 50; // earlier in time but later in file: still dropped
        std::string path = dir.path("dup.jsonl");
        testutil::write_file(path, serialize_record(a) + "\n" + serialize_record(dup) + "\n");
        LoadResult lr = load_stream(path);
        REQUIRE(lr.records.size() == 1);
        CHECK(lr.records[0].text == "first");
        CHECK(lr.report.n_duplicate_ids == 1);
        CHECK(lr.report.n_records == 2);
        CHECK(lr.report.n_rejected == 0);
    }

    SUBCASE("malformed lines are counted, not fatal") {
        TweetRecord a, b;
        a.tweet_id = 1; a.author_id = 1; a.created_at = 100; a.text = "a";
        b.tweet_id = 2; b.author_id = 2; b.created_at = 200; b.text = "b";
        std::string path = dir.path("mixed.jsonl");
        testutil::write_file(path, serialize_record(a) + "\n{{{garbage\n" + serialize_record(b) +
                                       "\n");
        LoadResult lr = load_stream(path);
        CHECK(lr.records.size() == 2);
        CHECK(lr.report.n_rejected == 1);
        CHECK(lr.report.n_records == 2);
    }

    SUBCASE("missing file is an IoError") {
        CHECK_THROWS_WITH_AS(load_stream(dir.path("nope.jsonl")), doctest::Contains("IoError"),
                             Error);
    }
}

TEST_CASE("load_stream is deterministic and monotone on random files") {
    TempDir dir("ingest_prop");
    Rng rng(99);
    std::string content;
    for (int i = 0; i < 120; ++i) {
        // duplicate ids on purpose
        content += serialize_record(testutil::random_record(rng, 1 + rng.below(100))) + "\n";
    }
    std::string path = dir.path("rand.jsonl");
    testutil::write_file(path, content);

    LoadResult one = load_stream(path);
    LoadResult two = load_stream(path);
    CHECK(one.records == two.records);
    CHECK(one.report.n_records == two.report.n_records);
    CHECK(one.report.n_records + one.report.n_rejected == 120);

    for (std::size_t i = 0; i + 1 < one.records.size(); ++i) {
        auto key = std::pair(one.records[i].created_at, one.records[i].tweet_id);
        auto next = std::pair(one.records[i + 1].created_at, one.records[i + 1].tweet_id);
        CHECK(key <= next);
    }
}
