#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "topicbench/core.hpp"
#include "topicbench/lda.hpp"
#include "topicbench/pagerank.hpp"
#include "topicbench/text.hpp"

namespace topicbench {

inline constexpr std::size_t kTopicVectorDims = 20;
inline constexpr std::size_t kExposureVectorDims = 15;
inline constexpr std::size_t kFeatureDims = 68;

// The 68-dimension layout: 34 named features in 6 categories, with the
// sentiment pair, the topic vector and the exposure vector expanded into
// their component dimensions.
class FeatureSchema {
public:
    struct Feature {
        std::string name;      // e.g. "topic_vector"
        std::string category;  // content | user | hashtag | network | meme | timeseries
        std::size_t offset;    // first dimension index
        std::size_t dims;
    };

    static const FeatureSchema& standard();

    const std::vector<std::string>& dimension_names() const { return dimension_names_; }
    const std::vector<Feature>& features() const { return features_; }
    std::size_t dimension_count() const { return dimension_names_.size(); }
    std::uint64_t hash() const { return hash_; }
    std::optional<std::size_t> dimension_index(const std::string& name) const;
    const Feature* find_feature(const std::string& name) const;

private:
    FeatureSchema();

    std::vector<std::string> dimension_names_;
    std::vector<Feature> features_;
    std::uint64_t hash_ = 0;
};

std::uint64_t column_hash(const std::vector<std::string>& column_names);

struct FeatureRow {
    std::string topic;
    std::int64_t bucket = 0;
    std::vector<double> values;
};

struct FeatureMatrix {
    std::vector<std::string> column_names;
    std::vector<FeatureRow> rows;

    std::uint64_t schema_hash() const { return column_hash(column_names); }
    std::vector<std::vector<double>> values() const;
};

// Corpus-level word statistics backing the clarity features.
struct CorpusStats {
    std::map<std::string, std::int64_t> word_counts;
    std::int64_t total_tokens = 0;

    static CorpusStats from_messages(const std::vector<Message>& messages);
    void add_tokens(const std::vector<std::string>& tokens);
};

// KL(topic || collection), natural log. When the topic's support is contained
// in the collection's, the raw distributions are compared directly; otherwise
// both sides get add-one smoothing over the union vocabulary.
double kl_clarity(const std::map<std::string, std::int64_t>& topic_word_counts,
                  const CorpusStats& collection);

struct ContentFeatures {
    double emoticons = 0;
    double special_signals = 0;
    double sentiment_positive = 0;
    double sentiment_negative = 0;
};

struct UserFeatures {
    double mean_activity = 0;   // mean pagerank over snapshot users
    double max_followers = 0;
    double mean_followers = 0;
};

struct HashtagFeatures {
    double tag_length = 0;
    double multi_tag_fraction = 0;
    double clarity = 0;
    double extended_clarity = 0;
    double has_digit = 0;
    double word_count = 1;
};

struct NetworkFeatures {
    double mean_degree = 0;
    double density = 0;
    double node_count = 0;
    double degree_entropy = 0;
    double border_user_count = 0;
    std::array<double, kExposureVectorDims> exposure{};
    double component_fraction = 0;
    double mean_edge_weight = 0;
    double triangle_fraction = 0;
};

struct MemeFeatures {
    double user_count = 0;
    double user_fraction = 0;
    double mention_count = 0;
    double mention_fraction = 0;
    double retweet_count = 0;
    double retweet_fraction = 0;
    double message_count = 0;
    double url_fraction = 0;
};

struct TimeSeriesFeatures {
    double fit_mean = 0;
    double fit_std = 0;
    double derivative_mean = 0;
    double derivative_std = 0;
};

ContentFeatures content_features(const Dataset& dataset, const TopicSnapshot& snapshot,
                                 const SentimentLexicon& lexicon);

UserFeatures user_features(const TopicSnapshot& snapshot, const FollowerGraph& followers,
                           const std::map<UserId, double>& pagerank_scores);

HashtagFeatures hashtag_features(const Dataset& dataset, const TopicSnapshot& snapshot,
                                 const CorpusStats& corpus_stats, const Wordlist& wordlist);

// Users outside the snapshot who follow at least one snapshot user.
std::set<UserId> border_users(const TopicSnapshot& snapshot, const FollowerGraph& followers);

// Computed on the simple undirected weighted projection of the snapshot's
// interaction edges (parallel directed edges merged, weights summed).
NetworkFeatures network_features(const TopicSnapshot& snapshot, const FollowerGraph& followers);

MemeFeatures meme_features(const Dataset& dataset, const TopicSnapshot& snapshot);

// Least-squares polynomial of degree min(3, W-1) over (i, counts[i]); mean and
// population std of the fitted values and of |p'(i)| at i = 0..W-1.
TimeSeriesFeatures timeseries_features(std::span<const std::int64_t> window_counts);

struct FeatureConfig {
    std::int64_t window = 5;  // trailing buckets feeding the time-series features
    LdaConfig lda;
    PagerankConfig pagerank;
    SentimentLexicon lexicon;
    Wordlist wordlist;
    std::uint64_t seed = 1;
    int workers = 0;  // 0 = hardware concurrency
};

// Precomputes the shared state (corpus stats, topic model, pagerank) once,
// then extracts rows. Row extraction is pure and parallel across topics;
// output is independent of worker count.
class FeatureExtractor {
public:
    FeatureExtractor(const Dataset& dataset, FeatureConfig config);

    FeatureRow row(const std::string& topic, std::int64_t bucket) const;
    FeatureMatrix matrix(const std::vector<std::string>& topics, std::int64_t bucket) const;

    const TopicModel& topic_model() const { return *model_; }
    const std::map<UserId, double>& pagerank_scores() const { return pagerank_; }
    const CorpusStats& corpus_stats() const { return corpus_stats_; }

private:
    const Dataset& dataset_;
    FeatureConfig config_;
    CorpusStats corpus_stats_;
    std::unique_ptr<TopicModel> model_;  // absent when the corpus has no tokens
    std::map<UserId, double> pagerank_;
};

FeatureMatrix feature_matrix(const Dataset& dataset, const std::vector<std::string>& topics,
                             std::int64_t bucket, const FeatureConfig& config);

}  // namespace topicbench
