#pragma once

#include <string>
#include <vector>

#include "topicbench/features.hpp"
#include "topicbench/predict.hpp"

namespace topicbench {

// One removal experiment: train with the unit's columns dropped, score with
// the shared folds, compare against the full-space baseline.
struct AblationResult {
    std::string unit;                    // dimension name, or feature name in group mode
    std::vector<std::size_t> columns;    // removed column indices
    double ablated_score = 0.0;          // A_i: mean of macro- and micro-F1 without the unit
    double relative_contribution = 0.0;  // RC = -1000 (A_i - A_s)
    int rank = 0;                        // 1-based, RC descending
};

struct AblationReport {
    double baseline_score = 0.0;  // A_s: mean of macro- and micro-F1, full space
    std::vector<AblationResult> results;
};

enum class AblationMode {
    PerDimension,  // one removal per matrix column
    PerFeature,    // multi-dimension features removed as blocks (schema matrices only)
};

struct AblationConfig {
    AblationMode mode = AblationMode::PerDimension;
    CvConfig cv;
    int workers = 1;  // parallelism across removals; results are order-independent
};

// Mean of pooled macro- and micro-F1 under cross-validation.
double mean_f1_score(const std::vector<std::vector<double>>& rows,
                     const std::vector<int>& labels, const CvConfig& cv);

// Removes one unit (a column name, or a feature name when the matrix carries
// the standard schema) and reports its relative contribution.
AblationResult relative_contribution(const FeatureMatrix& matrix, const std::vector<int>& labels,
                                     const std::string& unit, const AblationConfig& config);

// One result per removable unit, ranked by RC descending (ties keep schema
// order). Folds are shared across all removals.
AblationReport ablation_report(const FeatureMatrix& matrix, const std::vector<int>& labels,
                               const AblationConfig& config);

}  // namespace topicbench
