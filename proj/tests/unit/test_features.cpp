#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <topicbench/core.hpp>
#include <topicbench/errors.hpp>
#include <topicbench/features.hpp>
#include <topicbench/text.hpp>

#include "helpers.hpp"

namespace tb = topicbench;
using testutil::msg;

namespace {

tb::TopicSnapshot snapshot_of(std::set<tb::UserId> users,
                              std::map<std::pair<tb::UserId, tb::UserId>, std::int64_t> edges) {
    tb::TopicSnapshot snap;
    snap.topic = "t";
    snap.bucket = 0;
    snap.users = std::move(users);
    snap.edges = std::move(edges);
    snap.messages = {"placeholder"};  // non-empty so the snapshot is not skipped
    return snap;
}

}  // namespace

TEST_SUITE("features") {

TEST_CASE("the schema exposes 34 features over 68 dimensions") {
    const tb::FeatureSchema& schema = tb::FeatureSchema::standard();
    CHECK(schema.dimension_count() == tb::kFeatureDims);
    CHECK(schema.dimension_count() == 68);
    CHECK(schema.features().size() == 34);
    CHECK(schema.dimension_names().size() == 68);

    std::map<std::string, std::size_t> per_category;
    std::size_t dims_total = 0;
    for (const auto& feature : schema.features()) {
        ++per_category[feature.category];
        dims_total += feature.dims;
    }
    CHECK(dims_total == 68);
    CHECK(per_category.at("content") == 4);
    CHECK(per_category.at("user") == 3);
    CHECK(per_category.at("hashtag") == 6);
    CHECK(per_category.at("network") == 9);
    CHECK(per_category.at("meme") == 8);
    CHECK(per_category.at("timeseries") == 4);

    const tb::FeatureSchema::Feature* topic_vec = schema.find_feature("topic_vector");
    REQUIRE(topic_vec != nullptr);
    CHECK(topic_vec->dims == tb::kTopicVectorDims);
    const tb::FeatureSchema::Feature* exposure = schema.find_feature("exposure_vector");
    REQUIRE(exposure != nullptr);
    CHECK(exposure->dims == tb::kExposureVectorDims);
    CHECK(schema.find_feature("absent") == nullptr);

    REQUIRE(schema.dimension_index("mean_degree").has_value());
    CHECK(schema.dimension_names()[*schema.dimension_index("mean_degree")] == "mean_degree");
    CHECK_FALSE(schema.dimension_index("absent").has_value());
}

TEST_CASE("column_hash is order-sensitive") {
    CHECK(tb::column_hash({"a", "b"}) != tb::column_hash({"b", "a"}));
    CHECK(tb::column_hash({"a", "b"}) == tb::column_hash({"a", "b"}));
    CHECK(tb::column_hash({"ab"}) != tb::column_hash({"a", "b"}));
    CHECK(tb::FeatureSchema::standard().hash() ==
          tb::column_hash(tb::FeatureSchema::standard().dimension_names()));
}

TEST_CASE("content features count emoticons, signals and sentiment means") {
    std::vector<tb::Message> messages;
    messages.push_back(msg("m1", "u1", 0, "Goooood!!!! :)", {"t"}));
    const tb::Dataset dataset = testutil::dataset_of(std::move(messages));
    const tb::TopicSnapshot snap = tb::topic_snapshot(dataset, "t", 0);

    const tb::ContentFeatures out = tb::content_features(dataset, snap, tb::SentimentLexicon{});
    CHECK(out.emoticons == 1.0);
    CHECK(out.special_signals == 2.0);
    CHECK(out.sentiment_positive == 0.0);
    CHECK(out.sentiment_negative == 0.0);
}

TEST_CASE("sentiment means average per message") {
    std::vector<tb::Message> messages;
    messages.push_back(msg("m1", "u1", 0, "good good", {"t"}));
    messages.push_back(msg("m2", "u2", 0, "bad", {"t"}));
    const tb::Dataset dataset = testutil::dataset_of(std::move(messages));
    const tb::TopicSnapshot snap = tb::topic_snapshot(dataset, "t", 0);

    tb::SentimentLexicon lexicon;
    lexicon.scores["good"] = 2.0;
    lexicon.scores["bad"] = -3.0;
    const tb::ContentFeatures out = tb::content_features(dataset, snap, lexicon);
    CHECK(out.sentiment_positive == 2.0);
    CHECK(out.sentiment_negative == -1.5);
}

TEST_CASE("user features average pagerank and follower counts") {
    tb::TopicSnapshot snap = snapshot_of({"a", "b"}, {});
    tb::FollowerGraph followers;
    followers.add_follow("x", "a");
    followers.add_follow("y", "a");
    followers.add_follow("x", "b");
    std::map<tb::UserId, double> pagerank{{"a", 0.6}, {"b", 0.2}, {"other", 0.2}};

    const tb::UserFeatures out = tb::user_features(snap, followers, pagerank);
    CHECK(out.mean_activity == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(out.max_followers == 2.0);
    CHECK(out.mean_followers == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("kl clarity of a self-identical distribution is zero") {
    tb::CorpusStats corpus;
    corpus.word_counts = {{"a", 3}, {"b", 1}};
    corpus.total_tokens = 4;
    const std::map<std::string, std::int64_t> topic{{"a", 3}, {"b", 1}};
    CHECK(tb::kl_clarity(topic, corpus) == 0.0);
}

TEST_CASE("kl clarity of a concentrated subset is ln 2") {
    // topic puts all mass on "a"; the collection splits evenly over {a, b}
    tb::CorpusStats corpus;
    corpus.word_counts = {{"a", 1}, {"b", 1}};
    corpus.total_tokens = 2;
    const std::map<std::string, std::int64_t> topic{{"a", 1}};
    CHECK(tb::kl_clarity(topic, corpus) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("kl clarity smooths when the topic has out-of-collection words") {
    tb::CorpusStats corpus;
    corpus.word_counts = {{"a", 1}};
    corpus.total_tokens = 1;
    const std::map<std::string, std::int64_t> topic{{"c", 1}};
    // Add-one over the union {a, c}: p = (2/3, 1/3), q = (1/3, 2/3).
    const double expected = (2.0 / 3.0) * std::log((2.0 / 3.0) / (1.0 / 3.0)) +
                            (1.0 / 3.0) * std::log((1.0 / 3.0) / (2.0 / 3.0));
    CHECK(tb::kl_clarity(topic, corpus) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(tb::kl_clarity(topic, corpus) >= 0.0);
}

TEST_CASE("hashtag features: tag shape and wordlist segmentation") {
    std::vector<tb::Message> messages;
    messages.push_back(msg("m1", "u1", 0, "come to the show", {"livemusic"}));
    const tb::Dataset dataset = testutil::dataset_of(std::move(messages));
    const tb::TopicSnapshot snap = tb::topic_snapshot(dataset, "livemusic", 0);
    const tb::CorpusStats corpus = tb::CorpusStats::from_messages(dataset.messages());

    tb::Wordlist wordlist;
    wordlist.add("live");
    wordlist.add("music");
    const tb::HashtagFeatures out = tb::hashtag_features(dataset, snap, corpus, wordlist);
    CHECK(out.tag_length == 9.0);
    CHECK(out.word_count == 2.0);
    CHECK(out.has_digit == 0.0);
    CHECK(out.multi_tag_fraction == 0.0);
    // The topic's messages are the whole corpus, so both clarities vanish.
    CHECK(out.clarity == 0.0);
    CHECK(out.extended_clarity == 0.0);
}

TEST_CASE("hashtag features: digits and boundary fallback") {
    std::vector<tb::Message> messages;
    messages.push_back(msg("m1", "u1", 0, "countdown", {"top10", "other"}));
    const tb::Dataset dataset = testutil::dataset_of(std::move(messages));
    const tb::TopicSnapshot snap = tb::topic_snapshot(dataset, "top10", 0);
    const tb::CorpusStats corpus = tb::CorpusStats::from_messages(dataset.messages());

    const tb::HashtagFeatures out = tb::hashtag_features(dataset, snap, corpus, tb::Wordlist{});
    CHECK(out.tag_length == 5.0);
    CHECK(out.has_digit == 1.0);
    CHECK(out.word_count == 2.0);
    CHECK(out.multi_tag_fraction == 1.0);  // the one message carries two tags
}

TEST_CASE("network features on a triangle") {
    const tb::TopicSnapshot snap =
        snapshot_of({"a", "b", "c"}, {{{"a", "b"}, 1}, {{"b", "c"}, 1}, {{"c", "a"}, 1}});
    const tb::NetworkFeatures out = tb::network_features(snap, tb::FollowerGraph{});
    CHECK(out.mean_degree == 2.0);
    CHECK(out.density == 1.0);
    CHECK(out.node_count == 3.0);
    CHECK(out.degree_entropy == 0.0);
    CHECK(out.component_fraction == 1.0 / 3.0);
    CHECK(out.mean_edge_weight == 1.0);
    CHECK(out.triangle_fraction == 0.5);
    CHECK(out.border_user_count == 0.0);
}

TEST_CASE("network features on a three-node path") {
    const tb::TopicSnapshot snap =
        snapshot_of({"a", "b", "c"}, {{{"a", "b"}, 1}, {{"b", "c"}, 1}});
    const tb::NetworkFeatures out = tb::network_features(snap, tb::FollowerGraph{});
    CHECK(out.mean_degree == 4.0 / 3.0);
    CHECK(out.density == 2.0 / 3.0);
    CHECK(out.triangle_fraction == 0.0);
    const double expected_entropy =
        -((2.0 / 3.0) * std::log(2.0 / 3.0) + (1.0 / 3.0) * std::log(1.0 / 3.0));
    CHECK(out.degree_entropy == expected_entropy);
    CHECK(out.component_fraction == 1.0 / 3.0);
}

TEST_CASE("parallel directed edges merge with summed weights") {
    const tb::TopicSnapshot snap = snapshot_of({"a", "b"}, {{{"a", "b"}, 2}, {{"b", "a"}, 3}});
    const tb::NetworkFeatures out = tb::network_features(snap, tb::FollowerGraph{});
    CHECK(out.mean_degree == 1.0);       // one undirected edge over two nodes
    CHECK(out.mean_edge_weight == 5.0);  // 2 + 3 merged
    CHECK(out.density == 1.0);
    CHECK(out.component_fraction == 0.5);
}

TEST_CASE("border users and the exposure histogram") {
    tb::FollowerGraph followers;
    followers.add_follow("outsider", "a");
    followers.add_follow("outsider", "b");
    followers.add_follow("a", "b");  // inside the snapshot: not border
    const tb::TopicSnapshot snap = snapshot_of({"a", "b"}, {});

    const std::set<tb::UserId> border = tb::border_users(snap, followers);
    CHECK(border == std::set<tb::UserId>{"outsider"});

    const tb::NetworkFeatures out = tb::network_features(snap, followers);
    CHECK(out.border_user_count == 1.0);
    CHECK(out.exposure[0] == 0.0);
    CHECK(out.exposure[1] == 1.0);  // follows two snapshot users -> second bin
    for (std::size_t i = 2; i < tb::kExposureVectorDims; ++i) CHECK(out.exposure[i] == 0.0);
}

TEST_CASE("exposure counts above fifteen pool into the last bin") {
    std::set<tb::UserId> users;
    tb::FollowerGraph followers;
    for (int i = 0; i < 20; ++i) {
        const std::string member = "m" + std::to_string(i);
        users.insert(member);
        followers.add_follow("heavy", member);
    }
    const tb::TopicSnapshot snap = snapshot_of(users, {});
    const tb::NetworkFeatures out = tb::network_features(snap, followers);
    CHECK(out.border_user_count == 1.0);
    CHECK(out.exposure[tb::kExposureVectorDims - 1] == 1.0);
}

TEST_CASE("exposure histogram total equals the border user count") {
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 50; ++trial) {
        std::set<tb::UserId> users;
        const int n = 2 + static_cast<int>(gen() % 4);
        for (int i = 0; i < n; ++i) users.insert("m" + std::to_string(i));
        tb::FollowerGraph followers;
        const int outsiders = static_cast<int>(gen() % 5);
        for (int o = 0; o < outsiders; ++o) {
            const int links = 1 + static_cast<int>(gen() % n);
            for (int l = 0; l < links; ++l) {
                followers.add_follow("o" + std::to_string(o), "m" + std::to_string(l));
            }
        }
        const tb::TopicSnapshot snap = snapshot_of(users, {});
        const tb::NetworkFeatures out = tb::network_features(snap, followers);
        double histogram_total = 0.0;
        for (double v : out.exposure) histogram_total += v;
        CHECK(histogram_total == out.border_user_count);
    }
}

TEST_CASE("triangle fraction stays within [0, 1/2]") {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 3 + static_cast<int>(gen() % 5);
        std::set<tb::UserId> users;
        for (int i = 0; i < n; ++i) users.insert("u" + std::to_string(i));
        std::map<std::pair<tb::UserId, tb::UserId>, std::int64_t> edges;
        const int tries = static_cast<int>(gen() % (2 * n));
        for (int e = 0; e < tries; ++e) {
            const int a = static_cast<int>(gen() % n);
            const int b = static_cast<int>(gen() % n);
            if (a == b) continue;
            edges[{"u" + std::to_string(a), "u" + std::to_string(b)}] += 1;
        }
        const tb::NetworkFeatures out = tb::network_features(snapshot_of(users, edges),
                                                            tb::FollowerGraph{});
        CHECK(out.triangle_fraction >= 0.0);
        CHECK(out.triangle_fraction <= 0.5);
        CHECK(out.density >= 0.0);
        CHECK(out.density <= 1.0);
        CHECK(out.component_fraction > 0.0);
        CHECK(out.component_fraction <= 1.0);
    }
}

TEST_CASE("meme features over a mixed bucket") {
    std::vector<tb::Message> messages;
    auto m1 = msg("m1", "u1", 0, "first", {"t"});
    m1.mentions = {"u2"};
    auto m2 = msg("m2", "u2", 10, "second", {"t"});
    m2.mentions = {"u1"};
    auto m3 = msg("m3", "u3", 20, "third", {"t"});
    m3.retweet_of = "m1";
    auto m4 = msg("m4", "u1", 30, "fourth", {"t"});
    m4.urls = 1;
    messages.push_back(m1);
    messages.push_back(m2);
    messages.push_back(m3);
    messages.push_back(m4);
    // Three more untagged posters bring the bucket's active users to six.
    messages.push_back(msg("m5", "u4", 40, "noise"));
    messages.push_back(msg("m6", "u5", 50, "noise"));
    messages.push_back(msg("m7", "u6", 60, "noise"));

    const tb::Dataset dataset = testutil::dataset_of(std::move(messages));
    const tb::TopicSnapshot snap = tb::topic_snapshot(dataset, "t", 0);
    const tb::MemeFeatures out = tb::meme_features(dataset, snap);
    CHECK(out.user_count == 3.0);
    CHECK(out.user_fraction == 0.5);
    CHECK(out.mention_count == 2.0);
    CHECK(out.mention_fraction == 0.5);
    CHECK(out.retweet_count == 1.0);
    CHECK(out.retweet_fraction == 0.25);
    CHECK(out.message_count == 4.0);
    CHECK(out.url_fraction == 0.25);
}

TEST_CASE("time-series fits: constant, linear and singleton windows") {
    const std::vector<std::int64_t> constant{5, 5, 5, 5, 5};
    const tb::TimeSeriesFeatures a = tb::timeseries_features(constant);
    CHECK(a.fit_mean == doctest::Approx(5.0).epsilon(1e-9));
    CHECK(a.fit_std == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(a.derivative_mean == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(a.derivative_std == doctest::Approx(0.0).epsilon(1e-9));

    const std::vector<std::int64_t> linear{1, 2, 3, 4, 5};
    const tb::TimeSeriesFeatures b = tb::timeseries_features(linear);
    CHECK(b.fit_mean == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(b.fit_std == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
    CHECK(b.derivative_mean == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(b.derivative_std == doctest::Approx(0.0).epsilon(1e-9));

    const std::vector<std::int64_t> singleton{7};
    const tb::TimeSeriesFeatures c = tb::timeseries_features(singleton);
    CHECK(c.fit_mean == 7.0);
    CHECK(c.fit_std == 0.0);
    CHECK(c.derivative_mean == 0.0);
    CHECK(c.derivative_std == 0.0);

    CHECK_THROWS_AS((void)tb::timeseries_features(std::vector<std::int64_t>{}), tb::InputError);
}

TEST_CASE("feature rows are finite, schema-shaped and worker-count independent") {
    std::vector<tb::Message> messages;
    for (int i = 0; i < 12; ++i) {
        auto m = msg("m" + std::to_string(i), "u" + std::to_string(i % 4),
                     i * 3600, "hello world number " + std::to_string(i),
                     {i % 2 == 0 ? "even" : "odd"});
        if (i % 3 == 0) m.mentions = {"u" + std::to_string((i + 1) % 4)};
        messages.push_back(std::move(m));
    }
    tb::FollowerGraph followers;
    followers.add_follow("u1", "u0");
    followers.add_follow("u2", "u0");
    const tb::Dataset dataset(std::move(messages), std::move(followers));

    tb::FeatureConfig config;
    config.window = 1;
    config.seed = 3;
    config.lda.fit_iterations = 20;
    config.lda.infer_iterations = 10;

    config.workers = 1;
    const tb::FeatureMatrix one = tb::feature_matrix(dataset, {"even", "odd"}, 0, config);
    config.workers = 2;
    const tb::FeatureMatrix two = tb::feature_matrix(dataset, {"even", "odd"}, 0, config);

    REQUIRE(one.rows.size() == 2);
    CHECK(one.column_names == tb::FeatureSchema::standard().dimension_names());
    CHECK(one.schema_hash() == tb::FeatureSchema::standard().hash());
    for (const auto& row : one.rows) {
        REQUIRE(row.values.size() == tb::kFeatureDims);
        for (double v : row.values) CHECK(std::isfinite(v));
    }
    REQUIRE(two.rows.size() == 2);
    for (std::size_t r = 0; r < one.rows.size(); ++r) {
        CHECK(one.rows[r].topic == two.rows[r].topic);
        CHECK(one.rows[r].values == two.rows[r].values);
    }
}

TEST_CASE("an extractor rejects malformed configuration") {
    const tb::Dataset dataset = testutil::dataset_of({msg("m1", "u1", 0, "hi", {"t"})});
    tb::FeatureConfig bad_window;
    bad_window.window = 0;
    CHECK_THROWS_AS(tb::FeatureExtractor(dataset, bad_window), tb::InputError);

    tb::FeatureConfig bad_topics;
    bad_topics.lda.topics = 10;
    CHECK_THROWS_AS(tb::FeatureExtractor(dataset, bad_topics), tb::InputError);
}

}  // TEST_SUITE
