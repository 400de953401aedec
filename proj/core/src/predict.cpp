#include "topicbench/predict.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "topicbench/errors.hpp"
#include "topicbench/io.hpp"
#include "topicbench/metrics.hpp"
#include "topicbench/parallel.hpp"
#include "topicbench/rng.hpp"

namespace topicbench {

void LabelingPolicy::validate() const {
    if (mode == Mode::Threshold) {
        if (threshold < 1) throw InputError("labeling threshold must be >= 1");
    } else {
        if (!(quantile > 0.0 && quantile < 1.0)) {
            throw InputError("labeling quantile must lie in (0, 1)");
        }
    }
}

namespace {

std::optional<std::int64_t> series_value_at(const TimeSeries& series, std::int64_t bucket) {
    if (bucket < series.start_bucket) return std::nullopt;
    std::size_t offset = static_cast<std::size_t>(bucket - series.start_bucket);
    if (offset >= series.counts.size()) return std::nullopt;
    return series.counts[offset];
}

}  // namespace

LabelingResult label_topics(const std::map<std::string, TimeSeries>& series_map,
                            std::int64_t next_bucket, const LabelingPolicy& policy) {
    policy.validate();
    LabelingResult out;
    std::vector<std::pair<std::string, std::int64_t>> counts;
    counts.reserve(series_map.size());
    for (const auto& [topic, series] : series_map) {
        auto value = series_value_at(series, next_bucket);
        if (!value) {
            out.skipped.push_back(topic);
            continue;
        }
        counts.emplace_back(topic, *value);
    }
    if (counts.empty()) {
        if (!out.skipped.empty()) return out;
        throw InputError("no topics to label");
    }

    std::int64_t threshold = 0;
    if (policy.mode == LabelingPolicy::Mode::Threshold) {
        threshold = policy.threshold;
    } else {
        std::vector<std::int64_t> sorted;
        sorted.reserve(counts.size());
        for (const auto& [_, c] : counts) sorted.push_back(c);
        std::sort(sorted.begin(), sorted.end());
        auto idx = static_cast<std::size_t>(
            std::floor(policy.quantile * static_cast<double>(sorted.size())));
        idx = std::min(idx, sorted.size() - 1);
        threshold = sorted[idx];
    }
    out.threshold_value = static_cast<double>(threshold);
    for (const auto& [topic, count] : counts) {
        out.labels.emplace(topic, count >= threshold ? 1 : 0);
    }
    return out;
}

std::vector<std::string> denoise_ts(const std::vector<std::string>& candidates,
                                    const std::map<std::string, TimeSeries>& series_map,
                                    std::int64_t bucket, std::int64_t window,
                                    int min_active_buckets, std::int64_t min_count) {
    if (window < 1) throw InputError("denoise window must be >= 1");
    if (min_active_buckets < 0 || static_cast<std::int64_t>(min_active_buckets) > window) {
        throw InputError("min active buckets must lie in [0, window]");
    }
    std::vector<std::string> kept;
    for (const auto& topic : candidates) {
        int active = 0;
        std::int64_t current = 0;
        auto it = series_map.find(topic);
        if (it != series_map.end()) {
            for (std::int64_t b = bucket - window + 1; b <= bucket; ++b) {
                auto value = series_value_at(it->second, b);
                if (value && *value != 0) ++active;
            }
            current = series_value_at(it->second, bucket).value_or(0);
        }
        if (active >= min_active_buckets && current >= min_count) kept.push_back(topic);
    }
    return kept;
}

void TrainConfig::validate() const {
    if (learning_rate <= 0.0) throw InputError("learning rate must be positive");
    if (iterations < 1) throw InputError("iteration count must be >= 1");
    if (l2 < 0.0) throw InputError("l2 strength must be non-negative");
}

namespace {

double sigmoid(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    double e = std::exp(z);
    return e / (1.0 + e);
}

// per-example logistic loss in the overflow-safe form
double logistic_loss(double z, int y) {
    return std::max(z, 0.0) - static_cast<double>(y) * z + std::log1p(std::exp(-std::fabs(z)));
}

}  // namespace

LinearModel LinearModel::train(const std::vector<std::vector<double>>& rows,
                               const std::vector<int>& labels,
                               const std::vector<std::string>& column_names,
                               const TrainConfig& config) {
    config.validate();
    if (rows.empty()) throw InputError("training set is empty");
    if (rows.size() != labels.size()) throw InputError("row and label counts differ");
    const std::size_t d = column_names.size();
    for (const auto& r : rows) {
        if (r.size() != d) throw InputError("training row width does not match column names");
        for (double v : r) {
            if (!std::isfinite(v)) throw InputError("training matrix contains non-finite value");
        }
    }
    bool has0 = false, has1 = false;
    for (int y : labels) {
        if (y == 0) has0 = true;
        else if (y == 1) has1 = true;
        else throw InputError("labels must be 0 or 1");
    }
    if (!has0 || !has1) throw InputError("degenerate labels: need both classes to train");

    const std::size_t n = rows.size();
    const double nd = static_cast<double>(n);

    LinearModel model;
    model.config_ = config;
    model.schema_hash_ = column_hash(column_names);
    model.means_.assign(d, 0.0);
    model.stds_.assign(d, 1.0);
    for (std::size_t j = 0; j < d; ++j) {
        double sum = 0.0;
        for (const auto& r : rows) sum += r[j];
        model.means_[j] = sum / nd;
        double var = 0.0;
        for (const auto& r : rows) {
            double dev = r[j] - model.means_[j];
            var += dev * dev;
        }
        double sd = std::sqrt(var / nd);
        model.stds_[j] = sd > 0.0 ? sd : 1.0;  // constant columns become inert
    }

    std::vector<std::vector<double>> z(n, std::vector<double>(d));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            z[i][j] = (rows[i][j] - model.means_[j]) / model.stds_[j];
        }
    }

    model.weights_.assign(d, 0.0);
    model.bias_ = 0.0;
    model.loss_history_.reserve(static_cast<std::size_t>(config.iterations) + 1);

    std::vector<double> grad(d);
    std::vector<double> margin(n);
    for (int iter = 0; iter <= config.iterations; ++iter) {
        double loss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double m = model.bias_;
            for (std::size_t j = 0; j < d; ++j) m += model.weights_[j] * z[i][j];
            margin[i] = m;
            loss += logistic_loss(m, labels[i]);
        }
        loss /= nd;
        double penalty = 0.0;
        for (double w : model.weights_) penalty += w * w;
        model.loss_history_.push_back(loss + 0.5 * config.l2 * penalty);
        if (iter == config.iterations) break;

        std::fill(grad.begin(), grad.end(), 0.0);
        double grad_bias = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double residual = sigmoid(margin[i]) - static_cast<double>(labels[i]);
            grad_bias += residual;
            for (std::size_t j = 0; j < d; ++j) grad[j] += residual * z[i][j];
        }
        for (std::size_t j = 0; j < d; ++j) {
            model.weights_[j] -=
                config.learning_rate * (grad[j] / nd + config.l2 * model.weights_[j]);
        }
        model.bias_ -= config.learning_rate * grad_bias / nd;
    }
    model.trained_ = true;
    return model;
}

double LinearModel::score(std::span<const double> row) const {
    if (!trained_) throw InputError("model is not trained");
    if (row.size() != weights_.size()) {
        throw InputError("row width does not match the trained model");
    }
    double z = bias_;
    for (std::size_t j = 0; j < weights_.size(); ++j) {
        z += weights_[j] * (row[j] - means_[j]) / stds_[j];
    }
    return sigmoid(z);
}

int LinearModel::classify(std::span<const double> row, double threshold) const {
    return score(row) >= threshold ? 1 : 0;
}

std::vector<double> LinearModel::score_all(const std::vector<std::vector<double>>& rows) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(score(r));
    return out;
}

std::vector<int> LinearModel::classify_all(const std::vector<std::vector<double>>& rows,
                                           double threshold) const {
    std::vector<int> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(classify(r, threshold));
    return out;
}

std::string LinearModel::save() const {
    if (!trained_) throw InputError("cannot save an untrained model");
    std::ostringstream out;
    out << "topicbench-model v1\n";
    out << "schema_hash " << hex64(schema_hash_) << '\n';
    out << "columns " << weights_.size() << '\n';
    out << "learning_rate " << format_double(config_.learning_rate) << '\n';
    out << "iterations " << config_.iterations << '\n';
    out << "l2 " << format_double(config_.l2) << '\n';
    out << "bias " << format_double(bias_) << '\n';
    auto emit = [&out](const char* key, const std::vector<double>& values) {
        out << key;
        for (double v : values) out << ' ' << format_double(v);
        out << '\n';
    };
    emit("means", means_);
    emit("stds", stds_);
    emit("weights", weights_);
    return out.str();
}

LinearModel LinearModel::load(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "topicbench-model v1") {
        throw InputError("unrecognized model artifact header");
    }
    LinearModel model;
    std::size_t columns = 0;
    bool have_means = false, have_stds = false, have_weights = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string key;
        fields >> key;
        auto read_vector = [&fields, columns]() {
            std::vector<double> values;
            values.reserve(columns);
            std::string token;
            while (fields >> token) values.push_back(parse_double(token));
            return values;
        };
        if (key == "schema_hash") {
            std::string hex;
            fields >> hex;
            model.schema_hash_ = std::stoull(hex, nullptr, 16);
        } else if (key == "columns") {
            fields >> columns;
        } else if (key == "learning_rate") {
            std::string v;
            fields >> v;
            model.config_.learning_rate = parse_double(v);
        } else if (key == "iterations") {
            fields >> model.config_.iterations;
        } else if (key == "l2") {
            std::string v;
            fields >> v;
            model.config_.l2 = parse_double(v);
        } else if (key == "bias") {
            std::string v;
            fields >> v;
            model.bias_ = parse_double(v);
        } else if (key == "means") {
            model.means_ = read_vector();
            have_means = true;
        } else if (key == "stds") {
            model.stds_ = read_vector();
            have_stds = true;
        } else if (key == "weights") {
            model.weights_ = read_vector();
            have_weights = true;
        } else {
            throw InputError("unknown model artifact key '" + key + "'");
        }
    }
    if (!have_means || !have_stds || !have_weights || model.means_.size() != columns ||
        model.stds_.size() != columns || model.weights_.size() != columns) {
        throw InputError("model artifact is incomplete or inconsistent");
    }
    model.trained_ = true;
    return model;
}

LatentFeatures latent_features(std::span<const std::int64_t> series) {
    if (series.empty()) throw InputError("latent features require a non-empty series");
    LatentFeatures out;
    double sum = 0.0;
    for (std::int64_t v : series) sum += static_cast<double>(v);
    out.sum = sum;
    const std::size_t w = series.size();
    if (w >= 2) {
        out.avg_rate_of_change = static_cast<double>(series[w - 1] - series[0]) /
                                 static_cast<double>(w - 1);
        double mean = sum / static_cast<double>(w);
        double var = 0.0;
        for (std::int64_t v : series) {
            double dev = static_cast<double>(v) - mean;
            var += dev * dev;
        }
        out.std = std::sqrt(var / static_cast<double>(w));
    }
    return out;
}

const std::vector<std::string> kLatentColumnNames = {"latent_sum", "latent_avg_rate_of_change",
                                                     "latent_std"};

FeatureMatrix latent_matrix(const Dataset& dataset, const std::vector<std::string>& topics,
                            std::int64_t start_bucket, std::int64_t end_bucket) {
    if (end_bucket < start_bucket) throw InputError("latent window is empty");
    FeatureMatrix out;
    out.column_names = kLatentColumnNames;
    out.rows.reserve(topics.size());
    for (const auto& topic : topics) {
        TimeSeries series = topic_series(dataset, topic, start_bucket, end_bucket);
        LatentFeatures lf = latent_features(series.counts);
        FeatureRow row;
        row.topic = topic;
        row.bucket = end_bucket;
        row.values = {lf.sum, lf.avg_rate_of_change, lf.std};
        out.rows.push_back(std::move(row));
    }
    return out;
}

void CvConfig::validate() const {
    if (folds < 2) throw InputError("cross-validation needs at least 2 folds");
    if (!(threshold >= 0.0 && threshold <= 1.0)) {
        throw InputError("decision threshold must lie in [0, 1]");
    }
    train.validate();
}

std::vector<int> stratified_folds(const std::vector<int>& labels, int k, std::uint64_t seed) {
    if (k < 2) throw InputError("cross-validation needs at least 2 folds");
    if (labels.size() < static_cast<std::size_t>(k)) {
        throw InputError("fewer examples than folds");
    }
    std::vector<std::size_t> by_class[2];
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != 0 && labels[i] != 1) throw InputError("labels must be 0 or 1");
        by_class[labels[i]].push_back(i);
    }
    std::vector<int> fold_of(labels.size(), 0);
    for (int cls = 0; cls < 2; ++cls) {
        std::mt19937_64 gen(mix_seed(seed, static_cast<std::uint64_t>(cls)));
        shuffle_inplace(by_class[cls], gen);
        for (std::size_t i = 0; i < by_class[cls].size(); ++i) {
            fold_of[by_class[cls][i]] = static_cast<int>(i % static_cast<std::size_t>(k));
        }
    }
    return fold_of;
}

CvResult cross_validate(const std::vector<std::vector<double>>& rows,
                        const std::vector<int>& labels, const CvConfig& config) {
    config.validate();
    if (rows.size() != labels.size()) throw InputError("row and label counts differ");

    CvResult result;
    result.fold_of = stratified_folds(labels, config.folds, config.seed);
    result.predicted.assign(rows.size(), 0);
    result.scores.assign(rows.size(), 0.0);

    std::vector<std::string> column_names;
    const std::size_t d = rows.empty() ? 0 : rows.front().size();
    column_names.reserve(d);
    for (std::size_t j = 0; j < d; ++j) column_names.push_back("col_" + std::to_string(j));

    parallel_for(static_cast<std::size_t>(config.folds), config.workers, [&](std::size_t f) {
        int fold = static_cast<int>(f);
        std::vector<std::vector<double>> train_rows;
        std::vector<int> train_labels;
        std::vector<std::size_t> test_index;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (result.fold_of[i] == fold) {
                test_index.push_back(i);
            } else {
                train_rows.push_back(rows[i]);
                train_labels.push_back(labels[i]);
            }
        }
        if (test_index.empty()) return;
        LinearModel model =
            LinearModel::train(train_rows, train_labels, column_names, config.train);
        for (std::size_t i : test_index) {
            double s = model.score(rows[i]);
            result.scores[i] = s;
            result.predicted[i] = s >= config.threshold ? 1 : 0;
        }
    });

    result.macro_f1 = macro_f1(labels, result.predicted);
    result.micro_f1 = micro_f1(labels, result.predicted);
    result.rmse_hard = rmse(std::span<const int>(labels), std::span<const int>(result.predicted));
    result.rmse_score = rmse(std::span<const int>(labels), std::span<const double>(result.scores));
    return result;
}

}  // namespace topicbench
