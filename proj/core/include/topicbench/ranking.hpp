#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "topicbench/metrics.hpp"

namespace topicbench {

enum class Likelihood { Rare, Unlikely, Possible, Likely, Certain };
enum class Severity { Negligible, Marginal, Critical, Catastrophic };

// The five scorecard indexes a scenario weighs against each other.
enum class RankedMetric { Complexity, Universality, MacroF1, MicroF1, Rmse };

int ordinal(Likelihood l);  // Rare=0 .. Certain=4
int ordinal(Severity s);    // Negligible=0 .. Catastrophic=3

Likelihood parse_likelihood(const std::string& text);
Severity parse_severity(const std::string& text);
RankedMetric parse_ranked_metric(const std::string& text);
std::string to_string(Likelihood l);
std::string to_string(Severity s);
std::string to_string(RankedMetric m);

// All five ranked metrics are in the enum-ordered vector below.
const std::vector<RankedMetric>& all_ranked_metrics();

// Likelihood x severity placement of each metric for one scenario.
struct RiskMatrix {
    struct Placement {
        Likelihood likelihood = Likelihood::Possible;
        Severity severity = Severity::Marginal;
    };
    std::map<RankedMetric, Placement> placement;

    void validate() const;  // every metric placed exactly once
};

struct ScenarioWeights {
    double complexity = 0.0;
    double universality = 0.0;
    double macro_f1 = 0.0;
    double micro_f1 = 0.0;
    double rmse = 0.0;

    double get(RankedMetric m) const;
    void validate() const;  // non-negative, sum 1 within 1e-9
};

// Each metric scores 2^(likelihood ordinal + severity ordinal); weights are
// the scores normalized to sum 1.
ScenarioWeights weights_from_matrix(const RiskMatrix& matrix);

// Weighted Euclidean distance from the ideal method (macro = micro = 1,
// rmse = 0, complexity Low, universality High; level values 0.4/0.5/0.6).
double min_dis(const MethodScorecard& card, const ScenarioWeights& weights);

struct RankedMethod {
    std::string method;
    double min_dis = 0.0;
    int rank = 0;  // 1-based
};

// Ascending MinDis; ties broken lexicographically by method name.
std::vector<RankedMethod> rank_methods(const std::vector<MethodScorecard>& cards,
                                       const ScenarioWeights& weights);

// The four built-in application scenarios (1..4).
inline constexpr int kScenarioCount = 4;
RiskMatrix scenario_matrix(int scenario);
ScenarioWeights scenario_weights(int scenario);

// Published reference inputs: the seven evaluated methods with their five
// index scores and qualitative levels, and the four published weight rows.
const std::vector<MethodScorecard>& reference_scorecards();
const std::vector<ScenarioWeights>& reference_weights();

// Published MinDis values for the methods whose qualitative levels fully
// determine the computation; one value per scenario (index 0 = scenario 1).
struct ReferenceRanking {
    std::string method;
    std::array<double, kScenarioCount> min_dis;
};
const std::vector<ReferenceRanking>& reference_ranking_golden();

}  // namespace topicbench
