#include "topicbench/features.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

#include "topicbench/errors.hpp"
#include "topicbench/io.hpp"
#include "topicbench/parallel.hpp"
#include "topicbench/rng.hpp"

namespace topicbench {

namespace {

std::string two_digit(std::size_t i) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%02zu", i);
    return buf;
}

double population_std(std::span<const double> values, double mean) {
    if (values.empty()) return 0.0;
    double acc = 0.0;
    for (double v : values) acc += (v - mean) * (v - mean);
    return std::sqrt(acc / static_cast<double>(values.size()));
}

double mean_of(std::span<const double> values) {
    if (values.empty()) return 0.0;
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc / static_cast<double>(values.size());
}

}  // namespace

FeatureSchema::FeatureSchema() {
    auto add = [this](const std::string& name, const std::string& category,
                      std::vector<std::string> dims) {
        Feature f;
        f.name = name;
        f.category = category;
        f.offset = dimension_names_.size();
        f.dims = dims.size();
        features_.push_back(f);
        for (auto& d : dims) dimension_names_.push_back(std::move(d));
    };
    auto scalar = [&add](const std::string& name, const std::string& category) {
        add(name, category, {name});
    };

    scalar("num_emoticons", "content");
    scalar("num_special_signals", "content");
    add("sentiment", "content", {"sentiment_positive", "sentiment_negative"});
    {
        std::vector<std::string> dims;
        for (std::size_t i = 1; i <= kTopicVectorDims; ++i)
            dims.push_back("topic_vector_" + two_digit(i));
        add("topic_vector", "content", std::move(dims));
    }

    scalar("mean_user_activity", "user");
    scalar("max_followers", "user");
    scalar("mean_followers", "user");

    scalar("tag_length", "hashtag");
    scalar("multi_tag_fraction", "hashtag");
    scalar("clarity", "hashtag");
    scalar("extended_clarity", "hashtag");
    scalar("tag_has_digit", "hashtag");
    scalar("tag_word_count", "hashtag");

    scalar("mean_degree", "network");
    scalar("graph_density", "network");
    scalar("node_count", "network");
    scalar("degree_entropy", "network");
    scalar("border_user_count", "network");
    {
        std::vector<std::string> dims;
        for (std::size_t i = 1; i <= kExposureVectorDims; ++i)
            dims.push_back("exposure_" + two_digit(i));
        add("exposure_vector", "network", std::move(dims));
    }
    scalar("component_fraction", "network");
    scalar("mean_edge_weight", "network");
    scalar("triangle_fraction", "network");

    scalar("user_count", "meme");
    scalar("active_user_fraction", "meme");
    scalar("mention_count", "meme");
    scalar("mention_fraction", "meme");
    scalar("retweet_count", "meme");
    scalar("retweet_fraction", "meme");
    scalar("message_count", "meme");
    scalar("url_fraction", "meme");

    scalar("ts_fit_mean", "timeseries");
    scalar("ts_fit_std", "timeseries");
    scalar("ts_deriv_mean", "timeseries");
    scalar("ts_deriv_std", "timeseries");

    if (dimension_names_.size() != kFeatureDims) {
        throw InvariantError("feature schema dimension count mismatch");
    }
    hash_ = column_hash(dimension_names_);
}

const FeatureSchema& FeatureSchema::standard() {
    static const FeatureSchema schema;
    return schema;
}

std::optional<std::size_t> FeatureSchema::dimension_index(const std::string& name) const {
    auto it = std::find(dimension_names_.begin(), dimension_names_.end(), name);
    if (it == dimension_names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - dimension_names_.begin());
}

const FeatureSchema::Feature* FeatureSchema::find_feature(const std::string& name) const {
    for (const auto& f : features_) {
        if (f.name == name) return &f;
    }
    return nullptr;
}

std::uint64_t column_hash(const std::vector<std::string>& column_names) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& name : column_names) {
        h = fnv1a64_extend(h, name);
        h = fnv1a64_extend(h, ",");
    }
    return h;
}

std::vector<std::vector<double>> FeatureMatrix::values() const {
    std::vector<std::vector<double>> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.values);
    return out;
}

void CorpusStats::add_tokens(const std::vector<std::string>& tokens) {
    for (const auto& t : tokens) {
        ++word_counts[t];
        ++total_tokens;
    }
}

CorpusStats CorpusStats::from_messages(const std::vector<Message>& messages) {
    CorpusStats stats;
    for (const auto& m : messages) stats.add_tokens(tokenize(m.text));
    return stats;
}

double kl_clarity(const std::map<std::string, std::int64_t>& topic_word_counts,
                  const CorpusStats& collection) {
    std::int64_t topic_total = 0;
    bool subset = true;
    for (const auto& [word, count] : topic_word_counts) {
        if (count <= 0) continue;
        topic_total += count;
        auto it = collection.word_counts.find(word);
        if (it == collection.word_counts.end() || it->second <= 0) subset = false;
    }
    if (topic_total == 0 || collection.total_tokens == 0) return 0.0;

    double kl = 0.0;
    if (subset) {
        for (const auto& [word, count] : topic_word_counts) {
            if (count <= 0) continue;
            double p = static_cast<double>(count) / static_cast<double>(topic_total);
            double q = static_cast<double>(collection.word_counts.at(word)) /
                       static_cast<double>(collection.total_tokens);
            kl += p * std::log(p / q);
        }
    } else {
        // add-one smoothing over the union vocabulary
        std::map<std::string, std::int64_t> union_vocab;
        for (const auto& [word, count] : topic_word_counts) {
            if (count > 0) union_vocab.emplace(word, 0);
        }
        for (const auto& [word, count] : collection.word_counts) {
            if (count > 0) union_vocab.emplace(word, 0);
        }
        const double v = static_cast<double>(union_vocab.size());
        const double p_denom = static_cast<double>(topic_total) + v;
        const double q_denom = static_cast<double>(collection.total_tokens) + v;
        for (const auto& [word, _] : union_vocab) {
            auto pt = topic_word_counts.find(word);
            auto qt = collection.word_counts.find(word);
            double pc = pt == topic_word_counts.end() ? 0.0 : static_cast<double>(pt->second);
            double qc = qt == collection.word_counts.end() ? 0.0 : static_cast<double>(qt->second);
            double p = (pc + 1.0) / p_denom;
            double q = (qc + 1.0) / q_denom;
            kl += p * std::log(p / q);
        }
    }
    return std::max(kl, 0.0);
}

ContentFeatures content_features(const Dataset& dataset, const TopicSnapshot& snapshot,
                                 const SentimentLexicon& lexicon) {
    ContentFeatures out;
    if (snapshot.empty()) return out;
    double pos_sum = 0.0, neg_sum = 0.0;
    for (const auto& id : snapshot.messages) {
        const Message* m = dataset.find_message(id);
        if (m == nullptr) throw InvariantError("snapshot references unknown message " + id);
        out.emoticons += static_cast<double>(count_emoticons(m->text));
        out.special_signals += static_cast<double>(count_special_signals(m->text));
        SentimentSums sums = sentiment_sums(m->text, lexicon);
        pos_sum += sums.positive;
        neg_sum += sums.negative;
    }
    const double n = static_cast<double>(snapshot.messages.size());
    out.sentiment_positive = pos_sum / n;
    out.sentiment_negative = neg_sum / n;
    return out;
}

UserFeatures user_features(const TopicSnapshot& snapshot, const FollowerGraph& followers,
                           const std::map<UserId, double>& pagerank_scores) {
    UserFeatures out;
    if (snapshot.users.empty()) return out;
    double activity = 0.0;
    double follower_sum = 0.0;
    double follower_max = 0.0;
    for (const auto& u : snapshot.users) {
        auto it = pagerank_scores.find(u);
        if (it != pagerank_scores.end()) activity += it->second;
        double fc = static_cast<double>(followers.follower_count(u));
        follower_sum += fc;
        follower_max = std::max(follower_max, fc);
    }
    const double n = static_cast<double>(snapshot.users.size());
    out.mean_activity = activity / n;
    out.max_followers = follower_max;
    out.mean_followers = follower_sum / n;
    return out;
}

HashtagFeatures hashtag_features(const Dataset& dataset, const TopicSnapshot& snapshot,
                                 const CorpusStats& corpus_stats, const Wordlist& wordlist) {
    HashtagFeatures out;
    out.tag_length = static_cast<double>(snapshot.topic.size());
    out.has_digit = contains_digit(snapshot.topic) ? 1.0 : 0.0;
    out.word_count = static_cast<double>(hashtag_word_count(snapshot.topic, wordlist));
    if (snapshot.empty()) return out;

    std::size_t multi = 0;
    std::map<std::string, std::int64_t> topic_words;
    for (const auto& id : snapshot.messages) {
        const Message* m = dataset.find_message(id);
        if (m == nullptr) throw InvariantError("snapshot references unknown message " + id);
        if (m->hashtags.size() > 1) ++multi;
        for (const auto& token : tokenize(m->text)) ++topic_words[token];
    }
    out.multi_tag_fraction =
        static_cast<double>(multi) / static_cast<double>(snapshot.messages.size());
    out.clarity = kl_clarity(topic_words, corpus_stats);

    // extended set: everything posted in this bucket by the snapshot's users
    std::map<std::string, std::int64_t> extended_words;
    auto bucket_it = dataset.buckets().find(snapshot.bucket);
    if (bucket_it != dataset.buckets().end()) {
        for (std::size_t idx : bucket_it->second) {
            const Message& m = dataset.messages()[idx];
            if (snapshot.users.count(m.author) == 0) continue;
            for (const auto& token : tokenize(m.text)) ++extended_words[token];
        }
    }
    out.extended_clarity = kl_clarity(extended_words, corpus_stats);
    return out;
}

std::set<UserId> border_users(const TopicSnapshot& snapshot, const FollowerGraph& followers) {
    std::set<UserId> border;
    for (const auto& member : snapshot.users) {
        auto it = followers.followers.find(member);
        if (it == followers.followers.end()) continue;
        for (const auto& candidate : it->second) {
            if (snapshot.users.count(candidate) == 0) border.insert(candidate);
        }
    }
    return border;
}

NetworkFeatures network_features(const TopicSnapshot& snapshot, const FollowerGraph& followers) {
    NetworkFeatures out;
    const std::size_t n = snapshot.users.size();
    if (n == 0) return out;
    out.node_count = static_cast<double>(n);

    std::vector<UserId> users(snapshot.users.begin(), snapshot.users.end());
    std::unordered_map<std::string_view, std::size_t> index;
    index.reserve(n);
    for (std::size_t i = 0; i < n; ++i) index.emplace(users[i], i);

    // simple undirected projection: merge the two directions, sum weights
    std::map<std::pair<std::size_t, std::size_t>, std::int64_t> merged;
    for (const auto& [key, w] : snapshot.edges) {
        auto a = index.find(key.first);
        auto b = index.find(key.second);
        if (a == index.end() || b == index.end()) {
            throw InvariantError("snapshot edge endpoint outside snapshot users");
        }
        if (a->second == b->second) continue;
        auto lo = std::min(a->second, b->second);
        auto hi = std::max(a->second, b->second);
        merged[{lo, hi}] += w;
    }

    std::vector<std::vector<std::size_t>> adjacency(n);
    double weight_sum = 0.0;
    for (const auto& [key, w] : merged) {
        adjacency[key.first].push_back(key.second);
        adjacency[key.second].push_back(key.first);
        weight_sum += static_cast<double>(w);
    }
    for (auto& neighbors : adjacency) std::sort(neighbors.begin(), neighbors.end());

    const double edge_count = static_cast<double>(merged.size());
    const double nd = static_cast<double>(n);
    out.mean_degree = n > 0 ? 2.0 * edge_count / nd : 0.0;
    out.density = n > 1 ? edge_count / (nd * (nd - 1.0) / 2.0) : 0.0;
    out.mean_edge_weight = merged.empty() ? 0.0 : weight_sum / edge_count;

    // entropy of the empirical degree distribution
    std::map<std::size_t, std::size_t> degree_counts;
    for (const auto& neighbors : adjacency) ++degree_counts[neighbors.size()];
    double entropy = 0.0;
    for (const auto& [_, count] : degree_counts) {
        double p = static_cast<double>(count) / nd;
        entropy -= p * std::log(p);
    }
    out.degree_entropy = entropy;

    // connected components by BFS; isolated users count as components
    std::vector<char> visited(n, 0);
    std::size_t components = 0;
    std::deque<std::size_t> queue;
    for (std::size_t start = 0; start < n; ++start) {
        if (visited[start]) continue;
        ++components;
        visited[start] = 1;
        queue.push_back(start);
        while (!queue.empty()) {
            std::size_t u = queue.front();
            queue.pop_front();
            for (std::size_t v : adjacency[u]) {
                if (!visited[v]) {
                    visited[v] = 1;
                    queue.push_back(v);
                }
            }
        }
    }
    out.component_fraction = static_cast<double>(components) / nd;

    // triangles: for each edge (u, v) with u < v, intersect sorted neighbor
    // lists above v so each triangle is counted once
    std::size_t triangles = 0;
    for (const auto& [key, _] : merged) {
        const auto& nu = adjacency[key.first];
        const auto& nv = adjacency[key.second];
        auto iu = std::upper_bound(nu.begin(), nu.end(), key.second);
        auto iv = std::upper_bound(nv.begin(), nv.end(), key.second);
        while (iu != nu.end() && iv != nv.end()) {
            if (*iu < *iv) {
                ++iu;
            } else if (*iv < *iu) {
                ++iv;
            } else {
                ++triangles;
                ++iu;
                ++iv;
            }
        }
    }
    if (n >= 3) {
        out.triangle_fraction =
            static_cast<double>(triangles) / (nd * (nd - 1.0) * (nd - 2.0) / 3.0);
    }

    // border users and their exposure histogram
    std::map<UserId, std::size_t> exposure_counts;
    for (const auto& member : snapshot.users) {
        auto it = followers.followers.find(member);
        if (it == followers.followers.end()) continue;
        for (const auto& candidate : it->second) {
            if (snapshot.users.count(candidate) == 0) ++exposure_counts[candidate];
        }
    }
    out.border_user_count = static_cast<double>(exposure_counts.size());
    for (const auto& [_, followed] : exposure_counts) {
        std::size_t bin = std::min(followed, kExposureVectorDims);  // >= 15 pools into the last
        out.exposure[bin - 1] += 1.0;
    }
    return out;
}

MemeFeatures meme_features(const Dataset& dataset, const TopicSnapshot& snapshot) {
    MemeFeatures out;
    if (snapshot.empty()) return out;
    out.user_count = static_cast<double>(snapshot.users.size());
    const auto& active = dataset.active_users(snapshot.bucket);
    out.user_fraction =
        active.empty() ? 0.0 : out.user_count / static_cast<double>(active.size());

    std::size_t with_mention = 0, retweets = 0, with_url = 0;
    for (const auto& id : snapshot.messages) {
        const Message* m = dataset.find_message(id);
        if (m == nullptr) throw InvariantError("snapshot references unknown message " + id);
        if (!m->mentions.empty()) ++with_mention;
        if (m->retweet_of) ++retweets;
        if (m->urls > 0) ++with_url;
    }
    const double n = static_cast<double>(snapshot.messages.size());
    out.mention_count = static_cast<double>(with_mention);
    out.mention_fraction = out.mention_count / n;
    out.retweet_count = static_cast<double>(retweets);
    out.retweet_fraction = out.retweet_count / n;
    out.message_count = n;
    out.url_fraction = static_cast<double>(with_url) / n;
    return out;
}

namespace {

// Least-squares polynomial coefficients (ascending degree) via the normal
// equations; degree + 1 unknowns, solved with partial-pivot elimination.
std::vector<double> polyfit(std::span<const std::int64_t> y, int degree) {
    const int terms = degree + 1;
    const std::size_t w = y.size();
    std::vector<double> moments(static_cast<std::size_t>(2 * degree + 1), 0.0);
    std::vector<double> rhs(static_cast<std::size_t>(terms), 0.0);
    for (std::size_t i = 0; i < w; ++i) {
        double xp = 1.0;
        const double x = static_cast<double>(i);
        const double yi = static_cast<double>(y[i]);
        for (int p = 0; p <= 2 * degree; ++p) {
            moments[static_cast<std::size_t>(p)] += xp;
            if (p < terms) rhs[static_cast<std::size_t>(p)] += xp * yi;
            xp *= x;
        }
    }
    std::vector<std::vector<double>> a(static_cast<std::size_t>(terms),
                                       std::vector<double>(static_cast<std::size_t>(terms)));
    for (int r = 0; r < terms; ++r) {
        for (int c = 0; c < terms; ++c) a[r][c] = moments[static_cast<std::size_t>(r + c)];
    }
    // gaussian elimination with partial pivoting
    std::vector<double> b = rhs;
    for (int col = 0; col < terms; ++col) {
        int pivot = col;
        for (int r = col + 1; r < terms; ++r) {
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        }
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        if (a[col][col] == 0.0) continue;  // rank-deficient; coefficient stays 0
        for (int r = col + 1; r < terms; ++r) {
            double factor = a[r][col] / a[col][col];
            for (int c = col; c < terms; ++c) a[r][c] -= factor * a[col][c];
            b[r] -= factor * b[col];
        }
    }
    std::vector<double> coeffs(static_cast<std::size_t>(terms), 0.0);
    for (int r = terms - 1; r >= 0; --r) {
        if (a[r][r] == 0.0) continue;
        double acc = b[r];
        for (int c = r + 1; c < terms; ++c) acc -= a[r][c] * coeffs[static_cast<std::size_t>(c)];
        coeffs[static_cast<std::size_t>(r)] = acc / a[r][r];
    }
    return coeffs;
}

}  // namespace

TimeSeriesFeatures timeseries_features(std::span<const std::int64_t> window_counts) {
    if (window_counts.empty()) throw InputError("time-series window must be non-empty");
    const int degree = static_cast<int>(std::min<std::size_t>(3, window_counts.size() - 1));
    std::vector<double> coeffs = polyfit(window_counts, degree);

    std::vector<double> fitted(window_counts.size());
    std::vector<double> derivative(window_counts.size());
    for (std::size_t i = 0; i < window_counts.size(); ++i) {
        const double x = static_cast<double>(i);
        double value = 0.0, slope = 0.0, xp = 1.0;
        for (std::size_t p = 0; p < coeffs.size(); ++p) {
            value += coeffs[p] * xp;
            if (p + 1 < coeffs.size()) slope += coeffs[p + 1] * static_cast<double>(p + 1) * xp;
            xp *= x;
        }
        fitted[i] = value;
        derivative[i] = std::fabs(slope);
    }

    TimeSeriesFeatures out;
    out.fit_mean = mean_of(fitted);
    out.fit_std = population_std(fitted, out.fit_mean);
    out.derivative_mean = mean_of(derivative);
    out.derivative_std = population_std(derivative, out.derivative_mean);
    return out;
}

FeatureExtractor::FeatureExtractor(const Dataset& dataset, FeatureConfig config)
    : dataset_(dataset), config_(std::move(config)) {
    if (config_.window < 1) throw InputError("feature window must be >= 1");
    if (config_.lda.topics != static_cast<int>(kTopicVectorDims)) {
        throw InputError("topic vector is fixed at 20 dimensions");
    }
    corpus_stats_ = CorpusStats::from_messages(dataset_.messages());

    config_.lda.seed = mix_seed(config_.seed, 0x6c6461ULL);
    if (corpus_stats_.total_tokens > 0) {
        std::vector<std::vector<std::string>> documents;
        documents.reserve(dataset_.messages().size());
        for (const auto& m : dataset_.messages()) documents.push_back(tokenize(m.text));
        model_ = std::make_unique<TopicModel>(TopicModel::fit(documents, config_.lda));
    }
    pagerank_ = pagerank(dataset_.interaction_graph(), config_.pagerank);
}

FeatureRow FeatureExtractor::row(const std::string& topic, std::int64_t bucket) const {
    const FeatureSchema& schema = FeatureSchema::standard();
    FeatureRow out;
    out.topic = topic;
    out.bucket = bucket;
    out.values.reserve(schema.dimension_count());

    TopicSnapshot snapshot = topic_snapshot(dataset_, topic, bucket);

    ContentFeatures content = content_features(dataset_, snapshot, config_.lexicon);
    out.values.push_back(content.emoticons);
    out.values.push_back(content.special_signals);
    out.values.push_back(content.sentiment_positive);
    out.values.push_back(content.sentiment_negative);

    std::vector<double> topic_vec(kTopicVectorDims, 1.0 / static_cast<double>(kTopicVectorDims));
    if (model_) {
        std::vector<std::string> tokens;
        for (const auto& id : snapshot.messages) {
            const Message* m = dataset_.find_message(id);
            for (auto& t : tokenize(m->text)) tokens.push_back(std::move(t));
        }
        topic_vec = model_->infer(tokens, fnv1a64(topic));
    }
    out.values.insert(out.values.end(), topic_vec.begin(), topic_vec.end());

    UserFeatures user = user_features(snapshot, dataset_.follower_graph(), pagerank_);
    out.values.push_back(user.mean_activity);
    out.values.push_back(user.max_followers);
    out.values.push_back(user.mean_followers);

    HashtagFeatures hashtag =
        hashtag_features(dataset_, snapshot, corpus_stats_, config_.wordlist);
    out.values.push_back(hashtag.tag_length);
    out.values.push_back(hashtag.multi_tag_fraction);
    out.values.push_back(hashtag.clarity);
    out.values.push_back(hashtag.extended_clarity);
    out.values.push_back(hashtag.has_digit);
    out.values.push_back(hashtag.word_count);

    NetworkFeatures network = network_features(snapshot, dataset_.follower_graph());
    out.values.push_back(network.mean_degree);
    out.values.push_back(network.density);
    out.values.push_back(network.node_count);
    out.values.push_back(network.degree_entropy);
    out.values.push_back(network.border_user_count);
    out.values.insert(out.values.end(), network.exposure.begin(), network.exposure.end());
    out.values.push_back(network.component_fraction);
    out.values.push_back(network.mean_edge_weight);
    out.values.push_back(network.triangle_fraction);

    MemeFeatures meme = meme_features(dataset_, snapshot);
    out.values.push_back(meme.user_count);
    out.values.push_back(meme.user_fraction);
    out.values.push_back(meme.mention_count);
    out.values.push_back(meme.mention_fraction);
    out.values.push_back(meme.retweet_count);
    out.values.push_back(meme.retweet_fraction);
    out.values.push_back(meme.message_count);
    out.values.push_back(meme.url_fraction);

    TimeSeries window =
        topic_series(dataset_, topic, bucket - config_.window + 1, bucket);
    TimeSeriesFeatures ts = timeseries_features(window.counts);
    out.values.push_back(ts.fit_mean);
    out.values.push_back(ts.fit_std);
    out.values.push_back(ts.derivative_mean);
    out.values.push_back(ts.derivative_std);

    if (out.values.size() != schema.dimension_count()) {
        throw InvariantError("feature row dimension mismatch");
    }
    for (double v : out.values) {
        if (!std::isfinite(v)) {
            throw InvariantError("non-finite feature value for topic " + topic);
        }
    }
    return out;
}

FeatureMatrix FeatureExtractor::matrix(const std::vector<std::string>& topics,
                                       std::int64_t bucket) const {
    FeatureMatrix out;
    out.column_names = FeatureSchema::standard().dimension_names();
    out.rows.resize(topics.size());
    parallel_for(topics.size(), config_.workers,
                 [&](std::size_t i) { out.rows[i] = row(topics[i], bucket); });
    return out;
}

FeatureMatrix feature_matrix(const Dataset& dataset, const std::vector<std::string>& topics,
                             std::int64_t bucket, const FeatureConfig& config) {
    FeatureExtractor extractor(dataset, config);
    return extractor.matrix(topics, bucket);
}

}  // namespace topicbench
