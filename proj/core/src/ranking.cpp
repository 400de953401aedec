#include "topicbench/ranking.hpp"

#include <algorithm>
#include <cmath>

#include "topicbench/errors.hpp"

namespace topicbench {

int ordinal(Likelihood l) { return static_cast<int>(l); }
int ordinal(Severity s) { return static_cast<int>(s); }

namespace {

std::string lower(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char ch : text) {
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
    return out;
}

}  // namespace

Likelihood parse_likelihood(const std::string& text) {
    std::string t = lower(text);
    if (t == "rare") return Likelihood::Rare;
    if (t == "unlikely") return Likelihood::Unlikely;
    if (t == "possible") return Likelihood::Possible;
    if (t == "likely") return Likelihood::Likely;
    if (t == "certain") return Likelihood::Certain;
    throw InputError("unknown likelihood '" + text + "'");
}

Severity parse_severity(const std::string& text) {
    std::string t = lower(text);
    if (t == "negligible") return Severity::Negligible;
    if (t == "marginal") return Severity::Marginal;
    if (t == "critical") return Severity::Critical;
    if (t == "catastrophic") return Severity::Catastrophic;
    throw InputError("unknown severity '" + text + "'");
}

RankedMetric parse_ranked_metric(const std::string& text) {
    std::string t = lower(text);
    if (t == "complexity") return RankedMetric::Complexity;
    if (t == "universality") return RankedMetric::Universality;
    if (t == "macro_f1") return RankedMetric::MacroF1;
    if (t == "micro_f1") return RankedMetric::MicroF1;
    if (t == "rmse") return RankedMetric::Rmse;
    throw InputError("unknown metric '" + text + "'");
}

std::string to_string(Likelihood l) {
    switch (l) {
        case Likelihood::Rare: return "Rare";
        case Likelihood::Unlikely: return "Unlikely";
        case Likelihood::Possible: return "Possible";
        case Likelihood::Likely: return "Likely";
        case Likelihood::Certain: return "Certain";
    }
    throw InvariantError("unknown likelihood");
}

std::string to_string(Severity s) {
    switch (s) {
        case Severity::Negligible: return "Negligible";
        case Severity::Marginal: return "Marginal";
        case Severity::Critical: return "Critical";
        case Severity::Catastrophic: return "Catastrophic";
    }
    throw InvariantError("unknown severity");
}

std::string to_string(RankedMetric m) {
    switch (m) {
        case RankedMetric::Complexity: return "complexity";
        case RankedMetric::Universality: return "universality";
        case RankedMetric::MacroF1: return "macro_f1";
        case RankedMetric::MicroF1: return "micro_f1";
        case RankedMetric::Rmse: return "rmse";
    }
    throw InvariantError("unknown metric");
}

const std::vector<RankedMetric>& all_ranked_metrics() {
    static const std::vector<RankedMetric> metrics = {
        RankedMetric::Complexity, RankedMetric::Universality, RankedMetric::MacroF1,
        RankedMetric::MicroF1, RankedMetric::Rmse};
    return metrics;
}

void RiskMatrix::validate() const {
    for (RankedMetric m : all_ranked_metrics()) {
        if (placement.find(m) == placement.end()) {
            throw InputError("risk matrix is missing metric '" + to_string(m) + "'");
        }
    }
    if (placement.size() != all_ranked_metrics().size()) {
        throw InputError("risk matrix places an unknown metric");
    }
}

double ScenarioWeights::get(RankedMetric m) const {
    switch (m) {
        case RankedMetric::Complexity: return complexity;
        case RankedMetric::Universality: return universality;
        case RankedMetric::MacroF1: return macro_f1;
        case RankedMetric::MicroF1: return micro_f1;
        case RankedMetric::Rmse: return rmse;
    }
    throw InvariantError("unknown metric");
}

void ScenarioWeights::validate() const {
    double sum = 0.0;
    for (RankedMetric m : all_ranked_metrics()) {
        double w = get(m);
        if (w < 0.0) throw InputError("weights must be non-negative");
        sum += w;
    }
    if (std::fabs(sum - 1.0) > 1e-9) throw InputError("weights must sum to 1");
}

ScenarioWeights weights_from_matrix(const RiskMatrix& matrix) {
    matrix.validate();
    double scores[5];
    double total = 0.0;
    for (RankedMetric m : all_ranked_metrics()) {
        const auto& p = matrix.placement.at(m);
        double s = std::pow(2.0, ordinal(p.likelihood) + ordinal(p.severity));
        scores[static_cast<int>(m)] = s;
        total += s;
    }
    ScenarioWeights w;
    w.complexity = scores[static_cast<int>(RankedMetric::Complexity)] / total;
    w.universality = scores[static_cast<int>(RankedMetric::Universality)] / total;
    w.macro_f1 = scores[static_cast<int>(RankedMetric::MacroF1)] / total;
    w.micro_f1 = scores[static_cast<int>(RankedMetric::MicroF1)] / total;
    w.rmse = scores[static_cast<int>(RankedMetric::Rmse)] / total;
    return w;
}

double min_dis(const MethodScorecard& card, const ScenarioWeights& weights) {
    weights.validate();
    const double ideal_complexity = level_value(Level::Low);
    const double ideal_universality = level_value(Level::High);
    double dc = ideal_complexity - level_value(card.complexity);
    double du = ideal_universality - level_value(card.universality);
    double da1 = 1.0 - card.macro_f1;
    double da2 = 1.0 - card.micro_f1;
    double drm = card.rmse;
    return std::sqrt(weights.macro_f1 * da1 * da1 + weights.micro_f1 * da2 * da2 +
                     weights.rmse * drm * drm + weights.complexity * dc * dc +
                     weights.universality * du * du);
}

std::vector<RankedMethod> rank_methods(const std::vector<MethodScorecard>& cards,
                                       const ScenarioWeights& weights) {
    if (cards.empty()) throw InputError("nothing to rank");
    std::vector<RankedMethod> out;
    out.reserve(cards.size());
    for (const auto& card : cards) {
        out.push_back({card.method, min_dis(card, weights), 0});
    }
    std::sort(out.begin(), out.end(), [](const RankedMethod& a, const RankedMethod& b) {
        if (a.min_dis != b.min_dis) return a.min_dis < b.min_dis;
        return a.method < b.method;
    });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = static_cast<int>(i) + 1;
    return out;
}

RiskMatrix scenario_matrix(int scenario) {
    // Fixed likelihoods across scenarios: complexity materializes in every
    // deployment (Likely); the quality shortfalls are contingent (Possible).
    // Scenarios differ only in how severe each shortfall is judged.
    auto place = [](Severity c, Severity u, Severity a1, Severity a2, Severity rm) {
        RiskMatrix m;
        m.placement[RankedMetric::Complexity] = {Likelihood::Likely, c};
        m.placement[RankedMetric::Universality] = {Likelihood::Possible, u};
        m.placement[RankedMetric::MacroF1] = {Likelihood::Possible, a1};
        m.placement[RankedMetric::MicroF1] = {Likelihood::Possible, a2};
        m.placement[RankedMetric::Rmse] = {Likelihood::Possible, rm};
        return m;
    };
    switch (scenario) {
        case 1:  // balanced: every metric matters equally
            return place(Severity::Marginal, Severity::Critical, Severity::Critical,
                         Severity::Critical, Severity::Critical);
        case 2:  // deployment cost dominates: complexity and universality first
            return place(Severity::Marginal, Severity::Critical, Severity::Marginal,
                         Severity::Marginal, Severity::Marginal);
        case 3:  // rare-class accuracy dominates: macro-F1 weighted highest
            return place(Severity::Marginal, Severity::Marginal, Severity::Catastrophic,
                         Severity::Critical, Severity::Critical);
        case 4:  // stability dominates: RMSE weighted highest
            return place(Severity::Negligible, Severity::Marginal, Severity::Marginal,
                         Severity::Marginal, Severity::Catastrophic);
        default:
            throw InputError("scenario must be 1..4, got " + std::to_string(scenario));
    }
}

ScenarioWeights scenario_weights(int scenario) {
    return weights_from_matrix(scenario_matrix(scenario));
}

const std::vector<MethodScorecard>& reference_scorecards() {
    static const std::vector<MethodScorecard> cards = {
        {"F-I (Origin)", 0.5367, 0.8381, 0.4983, Level::Medium, Level::High},
        {"F-II (Origin)", 0.6194, 0.6915, 0.4554, Level::High, Level::High},
        {"F-I (7 Day)", 0.7889, 0.8947, 0.3244, Level::Medium, Level::High},
        {"F-II (7 Day)", 0.8148, 0.2857, 0.8452, Level::High, Level::High},
        {"R-I (7 Day)", 0.4942, 0.9668, 0.1822, Level::Low, Level::High},
        {"R-II (7 Day)", 0.5839, 0.9879, 0.1100, Level::Low, Level::Medium},
        {"R-III (7 Day)", 0.4358, 0.4800, 0.7211, Level::Medium, Level::High},
    };
    return cards;
}

const std::vector<ScenarioWeights>& reference_weights() {
    auto make = [](double c, double u, double a1, double a2, double rm) {
        ScenarioWeights w;
        w.complexity = c;
        w.universality = u;
        w.macro_f1 = a1;
        w.micro_f1 = a2;
        w.rmse = rm;
        return w;
    };
    static const std::vector<ScenarioWeights> weights = {
        make(0.2, 0.2, 0.2, 0.2, 0.2),
        make(2.0 / 7.0, 2.0 / 7.0, 1.0 / 7.0, 1.0 / 7.0, 1.0 / 7.0),
        make(2.0 / 11.0, 1.0 / 11.0, 4.0 / 11.0, 2.0 / 11.0, 2.0 / 11.0),
        make(0.125, 0.125, 0.125, 0.125, 0.5),
    };
    return weights;
}

const std::vector<ReferenceRanking>& reference_ranking_golden() {
    static const std::vector<ReferenceRanking> golden = {
        {"F-I (Origin)", {0.3160, 0.2697, 0.3603, 0.3943}},
        {"F-I (7 Day)", {0.1848, 0.1608, 0.1979, 0.2466}},
        {"R-III (7 Day)", {0.4730, 0.4016, 0.5112, 0.5786}},
    };
    return golden;
}

}  // namespace topicbench
