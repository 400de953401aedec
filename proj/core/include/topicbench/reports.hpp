#pragma once

#include <map>
#include <string>
#include <vector>

#include "topicbench/ablation.hpp"
#include "topicbench/features.hpp"
#include "topicbench/ranking.hpp"

namespace topicbench {

// CSV serializations for the pipeline artifacts. All doubles use the exact
// round-trip format, so rewriting a parsed file reproduces it byte for byte.
// Topic names must not contain commas, quotes, or newlines.

// header: topic,bucket,<one column per feature dimension>
std::string matrix_to_csv(const FeatureMatrix& matrix);
FeatureMatrix matrix_from_csv(const std::string& csv);

// header: topic,label
std::string labels_to_csv(const std::map<std::string, int>& labels);
std::map<std::string, int> labels_from_csv(const std::string& csv);

struct PredictionRow {
    std::string topic;
    double score = 0.0;
    int label = 0;
    int truth = 0;
};

// header: topic,score,label,truth
std::string predictions_to_csv(const std::vector<PredictionRow>& rows);
std::vector<PredictionRow> predictions_from_csv(const std::string& csv);

// header: rank,unit,ablated_score,relative_contribution (baseline on a
// leading comment line)
std::string ablation_to_csv(const AblationReport& report);

// header: rank,method,min_dis
std::string ranking_to_csv(const std::vector<RankedMethod>& ranked);

// Aligned, human-readable ranking table for one scenario.
std::string ranking_to_text(const std::string& scenario_label, const ScenarioWeights& weights,
                            const std::vector<RankedMethod>& ranked);

// header: scenario,w_c,w_u,w_a1,w_a2,w_rm
std::string weights_to_csv(const std::vector<std::pair<std::string, ScenarioWeights>>& rows);

}  // namespace topicbench
