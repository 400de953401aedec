#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace topicbench {

struct LdaConfig {
    int topics = 20;
    double alpha = 0.1;   // document-topic prior
    double beta = 0.01;   // topic-word prior
    int fit_iterations = 150;
    int infer_iterations = 30;
    std::uint64_t seed = 1;
};

// Latent Dirichlet Allocation trained by collapsed Gibbs sampling. The trained
// model is frozen; inference folds a new document in by sampling its token
// assignments against the fixed topic-word counts. Both paths are fully
// deterministic given the config seed (inference additionally takes a stream
// salt so parallel callers stay scheduling-independent).
class TopicModel {
public:
    static TopicModel fit(const std::vector<std::vector<std::string>>& documents,
                          const LdaConfig& config);

    // Topic distribution of the token list; sums to 1. A document with no
    // in-vocabulary token gets the uniform vector.
    std::vector<double> infer(const std::vector<std::string>& tokens,
                              std::uint64_t stream_salt = 0) const;

    int topic_count() const { return config_.topics; }
    const LdaConfig& config() const { return config_; }
    std::size_t vocabulary_size() const { return vocabulary_.size(); }
    const std::vector<std::string>& vocabulary() const { return vocabulary_; }

    // P(word | topic) over the vocabulary, smoothed by beta; sums to 1.
    std::vector<double> topic_word_distribution(int topic) const;

private:
    TopicModel() = default;

    LdaConfig config_;
    std::vector<std::string> vocabulary_;
    std::map<std::string, std::size_t> word_index_;
    std::vector<std::int32_t> topic_word_counts_;  // [topic * V + word]
    std::vector<std::int64_t> topic_totals_;       // [topic]
};

}  // namespace topicbench
