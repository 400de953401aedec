#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace topicbench {

// Binary confusion counts; class 1 is "popular".
struct Confusion {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;
    std::int64_t tn = 0;

    std::int64_t total() const { return tp + fp + fn + tn; }
};

Confusion confusion(std::span<const int> truth, std::span<const int> predicted);

struct ClassScores {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// Per-class precision/recall/F1 with the 0/0 -> 0 convention.
// positive_class selects which label (0 or 1) is treated as "positive".
ClassScores precision_recall_f1(const Confusion& c, int positive_class = 1);

// Unweighted mean of the two per-class F1 values.
double macro_f1(std::span<const int> truth, std::span<const int> predicted);

// Pooled-count F1 over both classes; equals accuracy for single-label
// binary data.
double micro_f1(std::span<const int> truth, std::span<const int> predicted);

// sqrt(mean (score - truth)^2); callers pass hard labels or probabilistic
// scores depending on the evaluation mode.
double rmse(std::span<const int> truth, std::span<const double> scores);
double rmse(std::span<const int> truth, std::span<const int> predicted);

// Qualitative levels used for complexity / universality judgments.
enum class Level { Low, Medium, High };

double level_value(Level level);  // Low 0.4, Medium 0.5, High 0.6
Level parse_level(const std::string& text);
std::string to_string(Level level);

// One evaluated method: the three quantitative indexes plus the two
// qualitative levels.
struct MethodScorecard {
    std::string method;
    double macro_f1 = 0.0;
    double micro_f1 = 0.0;
    double rmse = 0.0;
    Level complexity = Level::Medium;
    Level universality = Level::Medium;
};

// CSV round-trip: header method,macro_f1,micro_f1,rmse,complexity,universality
std::string scorecards_to_csv(const std::vector<MethodScorecard>& cards);
std::vector<MethodScorecard> scorecards_from_csv(const std::string& csv);

}  // namespace topicbench
