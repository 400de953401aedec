#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "topicbench/core.hpp"
#include "topicbench/features.hpp"

namespace topicbench {

// How the next-bucket popularity count is turned into a 0/1 label.
struct LabelingPolicy {
    enum class Mode { Threshold, Quantile };
    Mode mode = Mode::Quantile;
    std::int64_t threshold = 1;  // Threshold mode: popular iff count >= threshold
    double quantile = 0.9;       // Quantile mode: popular iff count >= q-quantile

    void validate() const;
};

struct LabelingResult {
    std::map<std::string, int> labels;
    std::vector<std::string> skipped;     // topics whose series miss the target bucket
    double threshold_value = 0.0;         // the resolved count threshold
};

// Labels each topic by its popularity at next_bucket. Topics whose series do
// not cover next_bucket are excluded and reported in `skipped`. Quantile mode
// resolves the threshold over all labeled topics; ties label toward 1.
LabelingResult label_topics(const std::map<std::string, TimeSeries>& series_map,
                            std::int64_t next_bucket, const LabelingPolicy& policy);

// Keeps candidates with at least min_active_buckets nonzero counts in the
// trailing window [bucket - window + 1, bucket] and a current count of at
// least min_count. Preserves input order.
std::vector<std::string> denoise_ts(const std::vector<std::string>& candidates,
                                    const std::map<std::string, TimeSeries>& series_map,
                                    std::int64_t bucket, std::int64_t window,
                                    int min_active_buckets, std::int64_t min_count);

struct TrainConfig {
    double learning_rate = 0.05;
    int iterations = 800;
    double l2 = 1e-4;

    void validate() const;
};

// Logistic regression with z-score standardization, L2 penalty, and
// full-batch gradient descent from a zero start. Fully deterministic:
// the same inputs and config always yield bit-identical weights.
class LinearModel {
public:
    LinearModel() = default;

    static LinearModel train(const std::vector<std::vector<double>>& rows,
                             const std::vector<int>& labels,
                             const std::vector<std::string>& column_names,
                             const TrainConfig& config);

    double score(std::span<const double> row) const;
    int classify(std::span<const double> row, double threshold = 0.5) const;
    std::vector<double> score_all(const std::vector<std::vector<double>>& rows) const;
    std::vector<int> classify_all(const std::vector<std::vector<double>>& rows,
                                  double threshold = 0.5) const;

    bool trained() const { return trained_; }
    std::size_t columns() const { return weights_.size(); }
    std::uint64_t schema_hash() const { return schema_hash_; }
    const std::vector<double>& weights() const { return weights_; }
    double bias() const { return bias_; }
    const std::vector<double>& means() const { return means_; }
    const std::vector<double>& stds() const { return stds_; }
    const std::vector<double>& loss_history() const { return loss_history_; }
    const TrainConfig& config() const { return config_; }

    // Flat text artifact; round-trips exactly.
    std::string save() const;
    static LinearModel load(const std::string& text);

private:
    std::vector<double> means_;
    std::vector<double> stds_;
    std::vector<double> weights_;
    double bias_ = 0.0;
    std::uint64_t schema_hash_ = 0;
    TrainConfig config_;
    std::vector<double> loss_history_;
    bool trained_ = false;
};

// The three latent signals of the relation-based baseline, computed from an
// early-window popularity series.
struct LatentFeatures {
    double sum = 0.0;
    double avg_rate_of_change = 0.0;
    double std = 0.0;
};

LatentFeatures latent_features(std::span<const std::int64_t> series);

extern const std::vector<std::string> kLatentColumnNames;

// Builds the 3-column matrix (sum, avg rate of change, std) over the series
// window [start_bucket, end_bucket] for each topic; rows are stamped with
// end_bucket.
FeatureMatrix latent_matrix(const Dataset& dataset, const std::vector<std::string>& topics,
                            std::int64_t start_bucket, std::int64_t end_bucket);

struct CvConfig {
    int folds = 10;
    std::uint64_t seed = 1;
    TrainConfig train;
    double threshold = 0.5;
    int workers = 1;

    void validate() const;
};

// Per-class seeded shuffle followed by round-robin assignment, so per-class
// fold counts differ by at most one.
std::vector<int> stratified_folds(const std::vector<int>& labels, int k, std::uint64_t seed);

struct CvResult {
    std::vector<int> fold_of;     // fold index per row
    std::vector<int> predicted;   // pooled out-of-fold hard labels
    std::vector<double> scores;   // pooled out-of-fold scores
    double macro_f1 = 0.0;        // pooled metrics
    double micro_f1 = 0.0;
    double rmse_hard = 0.0;
    double rmse_score = 0.0;
};

CvResult cross_validate(const std::vector<std::vector<double>>& rows,
                        const std::vector<int>& labels, const CvConfig& config);

}  // namespace topicbench
