#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include <topicbench/errors.hpp>
#include <topicbench/ingest.hpp>

#include "helpers.hpp"

namespace tb = topicbench;

TEST_SUITE("ingest") {

TEST_CASE("well-formed records parse with defaults filled in") {
    std::istringstream in(
        R"({"id":"m1","user":"alice","ts":100,"text":"hi #Go","hashtags":["#Go"],"mentions":["bob"],"urls":2})"
        "\n"
        R"({"id":"m2","user":"bob","ts":200,"retweet_of":"m1"})"
        "\n");
    auto [messages, report] = tb::parse_messages(in);
    REQUIRE(messages.size() == 2);
    CHECK(report.messages_ok == 2);
    CHECK(report.messages_rejected == 0);
    CHECK(report.users == 2);
    CHECK(report.topics == 1);
    CHECK(report.hashtag_fraction == 0.5);

    CHECK(messages[0].hashtags == std::vector<std::string>{"go"});
    CHECK(messages[0].mentions == std::vector<tb::UserId>{"bob"});
    CHECK(messages[0].urls == 2);
    CHECK_FALSE(messages[0].retweet_of.has_value());

    CHECK(messages[1].text.empty());
    CHECK(messages[1].urls == 0);
    REQUIRE(messages[1].retweet_of.has_value());
    CHECK(*messages[1].retweet_of == "m1");
}

TEST_CASE("each malformation is rejected under its own reason") {
    std::istringstream in(
        "\n"                                                      // empty_line
        "{not json\n"                                             // bad_json
        R"({"user":"u","ts":1})"
        "\n"  // missing_id
        R"({"id":"a","ts":1})"
        "\n"  // missing_user
        R"({"id":"b","user":"u"})"
        "\n"  // missing_timestamp
        R"({"id":"c","user":"u","ts":-5})"
        "\n"  // bad_timestamp
        R"({"id":"d","user":"u","ts":1,"urls":-1})"
        "\n"  // bad_field
        R"({"id":"e","user":"u","ts":1})"
        "\n"
        R"({"id":"e","user":"u","ts":2})"
        "\n");  // duplicate_id
    auto [messages, report] = tb::parse_messages(in);
    CHECK(messages.size() == 1);
    CHECK(report.messages_ok == 1);
    CHECK(report.messages_rejected == 8);
    CHECK(report.reject_reasons.at("empty_line") == 1);
    CHECK(report.reject_reasons.at("bad_json") == 1);
    CHECK(report.reject_reasons.at("missing_id") == 1);
    CHECK(report.reject_reasons.at("missing_user") == 1);
    CHECK(report.reject_reasons.at("missing_timestamp") == 1);
    CHECK(report.reject_reasons.at("bad_timestamp") == 1);
    CHECK(report.reject_reasons.at("bad_field") == 1);
    CHECK(report.reject_reasons.at("duplicate_id") == 1);
}

TEST_CASE("language filter keeps listed languages and rejects missing lang") {
    tb::ParseOptions options;
    options.allowed_languages = std::set<std::string>{"en"};
    std::istringstream in(
        R"({"id":"a","user":"u","ts":1,"lang":"en"})"
        "\n"
        R"({"id":"b","user":"u","ts":2,"lang":"de"})"
        "\n"
        R"({"id":"c","user":"u","ts":3})"
        "\n");
    auto [messages, report] = tb::parse_messages(in, options);
    CHECK(messages.size() == 1);
    CHECK(messages[0].id == "a");
    CHECK(report.reject_reasons.at("language") == 2);
}

TEST_CASE("hashtags are normalized and deduplicated per message") {
    std::istringstream in(
        R"({"id":"a","user":"u","ts":1,"hashtags":["#Mix","mix","#other","#"]})"
        "\n");
    auto [messages, report] = tb::parse_messages(in);
    REQUIRE(messages.size() == 1);
    CHECK(messages[0].hashtags == std::vector<std::string>{"mix", "other"});
    CHECK(report.topics == 2);
}

TEST_CASE("normalize_hashtag strips one pound sign and lowercases ASCII") {
    CHECK(tb::normalize_hashtag("#Tag") == "tag");
    CHECK(tb::normalize_hashtag("Tag") == "tag");
    CHECK(tb::normalize_hashtag("##two") == "#two");
    CHECK(tb::normalize_hashtag("#") == "");
    CHECK(tb::normalize_hashtag("") == "");
    CHECK(tb::normalize_hashtag("#MiXeD123") == "mixed123");
}

TEST_CASE("parse_messages_file on a missing path is an input error") {
    testutil::ScratchDir dir("ingest_missing");
    CHECK_THROWS_AS((void)tb::parse_messages_file(dir.file("absent.jsonl")), tb::InputError);
}

TEST_CASE("follower files skip comments and count anomalies") {
    std::istringstream in(
        "# a comment\n"
        "a\tb\n"
        "a\tb\n"    // duplicate
        "c\tc\n"    // self loop
        "broken\n"  // no tab
        "x\ty\tz\n"  // too many fields
        "\n"
        "b\ta\n");
    tb::FollowerFileStats stats;
    tb::FollowerGraph graph = tb::parse_followers(in, &stats);
    CHECK(stats.edges == 2);
    CHECK(stats.duplicates == 1);
    CHECK(stats.self_loops == 1);
    CHECK(stats.malformed == 2);
    CHECK(graph.follows("a", "b"));
    CHECK(graph.follows("b", "a"));
    CHECK_FALSE(graph.follows("c", "c"));
}

TEST_CASE("build_interaction_graph counts mention occurrences") {
    std::vector<tb::Message> messages;
    auto m1 = testutil::msg("m1", "alice", 0);
    m1.mentions = {"bob", "bob", "alice"};  // self-mention dropped
    auto m2 = testutil::msg("m2", "carol", 1);
    m2.mentions = {"bob"};
    messages.push_back(m1);
    messages.push_back(m2);

    const tb::InteractionGraph graph = tb::build_interaction_graph(messages);
    CHECK(graph.weight("bob", "alice") == 2);
    CHECK(graph.weight("bob", "carol") == 1);
    CHECK(graph.weight("alice", "alice") == 0);
    CHECK(graph.nodes == std::set<tb::UserId>{"alice", "bob", "carol"});
}

TEST_CASE("extract_topics applies the count floor and keeps the sort order") {
    std::vector<tb::Message> messages;
    messages.push_back(testutil::msg("m1", "u1", 0, "", {"big"}));
    messages.push_back(testutil::msg("m2", "u2", 1, "", {"big"}));
    messages.push_back(testutil::msg("m3", "u3", 2, "", {"big", "small"}));
    messages.push_back(testutil::msg("m4", "u4", 3, "", {"mid"}));
    messages.push_back(testutil::msg("m5", "u5", 4, "", {"mid"}));

    CHECK(tb::extract_topics(messages, 1) == std::vector<std::string>{"big", "mid", "small"});
    CHECK(tb::extract_topics(messages, 2) == std::vector<std::string>{"big", "mid"});
    CHECK(tb::extract_topics(messages, 4).empty());
    CHECK_THROWS_AS((void)tb::extract_topics(messages, 0), tb::InputError);
}

}  // TEST_SUITE
