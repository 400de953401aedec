#include "topicbench/lda.hpp"

#include <random>

#include "topicbench/errors.hpp"
#include "topicbench/rng.hpp"

namespace topicbench {

namespace {

// Draws a topic index from unnormalized cumulative weights.
int sample_from_cumulative(const std::vector<double>& cumulative, std::mt19937_64& gen) {
    const double total = cumulative.back();
    const double u = uniform_double(gen) * total;
    // K is small (tens); linear scan is fine and branch-predictable.
    for (std::size_t k = 0; k + 1 < cumulative.size(); ++k) {
        if (u < cumulative[k]) return static_cast<int>(k);
    }
    return static_cast<int>(cumulative.size() - 1);
}

}  // namespace

TopicModel TopicModel::fit(const std::vector<std::vector<std::string>>& documents,
                           const LdaConfig& config) {
    if (config.topics < 1) throw InputError("LDA topic count must be >= 1");
    if (config.alpha <= 0 || config.beta <= 0) throw InputError("LDA priors must be positive");
    if (config.fit_iterations < 1 || config.infer_iterations < 1) {
        throw InputError("LDA iteration counts must be >= 1");
    }

    TopicModel model;
    model.config_ = config;
    for (const auto& doc : documents) {
        for (const auto& word : doc) {
            if (model.word_index_.emplace(word, 0).second) {
                // placeholder index; assigned after the map is complete
            }
        }
    }
    if (model.word_index_.empty()) throw InputError("LDA corpus has an empty vocabulary");

    std::size_t v = 0;
    model.vocabulary_.reserve(model.word_index_.size());
    for (auto& [word, idx] : model.word_index_) {
        idx = v++;
        model.vocabulary_.push_back(word);
    }

    const int K = config.topics;
    const std::size_t V = model.vocabulary_.size();
    model.topic_word_counts_.assign(static_cast<std::size_t>(K) * V, 0);
    model.topic_totals_.assign(static_cast<std::size_t>(K), 0);

    // Flattened corpus with per-document extents.
    std::vector<std::int32_t> token_word;
    std::vector<std::int32_t> token_topic;
    std::vector<std::size_t> doc_begin(documents.size() + 1, 0);
    for (std::size_t d = 0; d < documents.size(); ++d) {
        for (const auto& word : documents[d]) {
            token_word.push_back(static_cast<std::int32_t>(model.word_index_.at(word)));
        }
        doc_begin[d + 1] = token_word.size();
    }
    token_topic.resize(token_word.size());

    std::vector<std::int32_t> doc_topic_counts(documents.size() * static_cast<std::size_t>(K), 0);

    std::mt19937_64 gen(config.seed);
    for (std::size_t d = 0; d < documents.size(); ++d) {
        for (std::size_t t = doc_begin[d]; t < doc_begin[d + 1]; ++t) {
            int k = static_cast<int>(uniform_below(gen, static_cast<std::uint64_t>(K)));
            token_topic[t] = k;
            ++doc_topic_counts[d * K + k];
            ++model.topic_word_counts_[static_cast<std::size_t>(k) * V + token_word[t]];
            ++model.topic_totals_[k];
        }
    }

    const double alpha = config.alpha;
    const double beta = config.beta;
    const double beta_sum = beta * static_cast<double>(V);
    std::vector<double> cumulative(static_cast<std::size_t>(K));

    for (int iter = 0; iter < config.fit_iterations; ++iter) {
        for (std::size_t d = 0; d < documents.size(); ++d) {
            std::int32_t* dtc = &doc_topic_counts[d * K];
            for (std::size_t t = doc_begin[d]; t < doc_begin[d + 1]; ++t) {
                const std::int32_t w = token_word[t];
                const int old_k = token_topic[t];
                --dtc[old_k];
                --model.topic_word_counts_[static_cast<std::size_t>(old_k) * V + w];
                --model.topic_totals_[old_k];

                double cum = 0.0;
                for (int k = 0; k < K; ++k) {
                    const double word_part =
                        (model.topic_word_counts_[static_cast<std::size_t>(k) * V + w] + beta) /
                        (static_cast<double>(model.topic_totals_[k]) + beta_sum);
                    cum += (dtc[k] + alpha) * word_part;
                    cumulative[static_cast<std::size_t>(k)] = cum;
                }
                const int new_k = sample_from_cumulative(cumulative, gen);

                token_topic[t] = new_k;
                ++dtc[new_k];
                ++model.topic_word_counts_[static_cast<std::size_t>(new_k) * V + w];
                ++model.topic_totals_[new_k];
            }
        }
    }
    return model;
}

std::vector<double> TopicModel::infer(const std::vector<std::string>& tokens,
                                      std::uint64_t stream_salt) const {
    const int K = config_.topics;
    const std::size_t V = vocabulary_.size();
    std::vector<double> distribution(static_cast<std::size_t>(K),
                                     1.0 / static_cast<double>(K));

    std::vector<std::int32_t> token_word;
    token_word.reserve(tokens.size());
    for (const auto& word : tokens) {
        auto it = word_index_.find(word);
        if (it != word_index_.end()) token_word.push_back(static_cast<std::int32_t>(it->second));
    }
    if (token_word.empty()) return distribution;  // uniform fallback

    std::mt19937_64 gen(mix_seed(config_.seed, stream_salt));
    std::vector<std::int32_t> token_topic(token_word.size());
    std::vector<std::int32_t> doc_topic(static_cast<std::size_t>(K), 0);
    for (std::size_t t = 0; t < token_word.size(); ++t) {
        int k = static_cast<int>(uniform_below(gen, static_cast<std::uint64_t>(K)));
        token_topic[t] = k;
        ++doc_topic[static_cast<std::size_t>(k)];
    }

    const double alpha = config_.alpha;
    const double beta = config_.beta;
    const double beta_sum = beta * static_cast<double>(V);
    std::vector<double> cumulative(static_cast<std::size_t>(K));

    // Model counts stay frozen; only this document's assignments move.
    for (int iter = 0; iter < config_.infer_iterations; ++iter) {
        for (std::size_t t = 0; t < token_word.size(); ++t) {
            const std::int32_t w = token_word[t];
            const int old_k = token_topic[t];
            --doc_topic[static_cast<std::size_t>(old_k)];

            double cum = 0.0;
            for (int k = 0; k < K; ++k) {
                const double word_part =
                    (topic_word_counts_[static_cast<std::size_t>(k) * V + w] + beta) /
                    (static_cast<double>(topic_totals_[k]) + beta_sum);
                cum += (doc_topic[static_cast<std::size_t>(k)] + alpha) * word_part;
                cumulative[static_cast<std::size_t>(k)] = cum;
            }
            const int new_k = sample_from_cumulative(cumulative, gen);
            token_topic[t] = new_k;
            ++doc_topic[static_cast<std::size_t>(new_k)];
        }
    }

    const double denom =
        static_cast<double>(token_word.size()) + alpha * static_cast<double>(K);
    for (int k = 0; k < K; ++k) {
        distribution[static_cast<std::size_t>(k)] =
            (doc_topic[static_cast<std::size_t>(k)] + alpha) / denom;
    }
    return distribution;
}

std::vector<double> TopicModel::topic_word_distribution(int topic) const {
    if (topic < 0 || topic >= config_.topics) throw InputError("topic index out of range");
    const std::size_t V = vocabulary_.size();
    std::vector<double> dist(V);
    const double beta = config_.beta;
    const double denom = static_cast<double>(topic_totals_[topic]) + beta * static_cast<double>(V);
    for (std::size_t w = 0; w < V; ++w) {
        dist[w] = (topic_word_counts_[static_cast<std::size_t>(topic) * V + w] + beta) / denom;
    }
    return dist;
}

}  // namespace topicbench
