#include "topicbench/ablation.hpp"

#include <algorithm>

#include "topicbench/errors.hpp"
#include "topicbench/parallel.hpp"

namespace topicbench {

namespace {

std::vector<std::vector<double>> drop_columns(const std::vector<std::vector<double>>& rows,
                                              const std::vector<std::size_t>& columns) {
    std::vector<char> dropped(rows.empty() ? 0 : rows.front().size(), 0);
    for (std::size_t c : columns) dropped[c] = 1;
    std::vector<std::vector<double>> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        std::vector<double> kept;
        kept.reserve(r.size() - columns.size());
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (!dropped[j]) kept.push_back(r[j]);
        }
        out.push_back(std::move(kept));
    }
    return out;
}

// Resolves a unit name to the matrix columns it covers.
std::vector<std::size_t> resolve_unit(const FeatureMatrix& matrix, const std::string& unit) {
    for (std::size_t j = 0; j < matrix.column_names.size(); ++j) {
        if (matrix.column_names[j] == unit) return {j};
    }
    const FeatureSchema& schema = FeatureSchema::standard();
    if (matrix.schema_hash() == schema.hash()) {
        if (const auto* feature = schema.find_feature(unit)) {
            std::vector<std::size_t> columns;
            for (std::size_t j = 0; j < feature->dims; ++j) columns.push_back(feature->offset + j);
            return columns;
        }
    }
    throw InputError("unknown removal unit '" + unit + "'");
}

AblationResult evaluate_removal(const std::vector<std::vector<double>>& rows,
                                const std::vector<int>& labels, const std::string& unit,
                                const std::vector<std::size_t>& columns, double baseline,
                                const CvConfig& cv) {
    if (rows.empty() || columns.size() >= rows.front().size()) {
        throw InputError("removing '" + unit + "' would leave no feature columns");
    }
    CvResult result = cross_validate(drop_columns(rows, columns), labels, cv);
    AblationResult out;
    out.unit = unit;
    out.columns = columns;
    out.ablated_score = (result.macro_f1 + result.micro_f1) / 2.0;
    // + 0.0 turns a negative zero into a plain zero so reports print "0"
    out.relative_contribution = -1000.0 * (out.ablated_score - baseline) + 0.0;
    return out;
}

}  // namespace

double mean_f1_score(const std::vector<std::vector<double>>& rows,
                     const std::vector<int>& labels, const CvConfig& cv) {
    CvResult result = cross_validate(rows, labels, cv);
    return (result.macro_f1 + result.micro_f1) / 2.0;
}

AblationResult relative_contribution(const FeatureMatrix& matrix, const std::vector<int>& labels,
                                     const std::string& unit, const AblationConfig& config) {
    std::vector<std::vector<double>> rows = matrix.values();
    double baseline = mean_f1_score(rows, labels, config.cv);
    return evaluate_removal(rows, labels, unit, resolve_unit(matrix, unit), baseline, config.cv);
}

AblationReport ablation_report(const FeatureMatrix& matrix, const std::vector<int>& labels,
                               const AblationConfig& config) {
    struct Unit {
        std::string name;
        std::vector<std::size_t> columns;
    };
    std::vector<Unit> units;
    if (config.mode == AblationMode::PerDimension) {
        for (std::size_t j = 0; j < matrix.column_names.size(); ++j) {
            units.push_back({matrix.column_names[j], {j}});
        }
    } else {
        const FeatureSchema& schema = FeatureSchema::standard();
        if (matrix.schema_hash() != schema.hash()) {
            throw InputError("per-feature ablation requires the standard feature schema");
        }
        for (const auto& feature : schema.features()) {
            Unit u;
            u.name = feature.name;
            for (std::size_t j = 0; j < feature.dims; ++j) u.columns.push_back(feature.offset + j);
            units.push_back(std::move(u));
        }
    }

    std::vector<std::vector<double>> rows = matrix.values();

    AblationReport report;
    report.baseline_score = mean_f1_score(rows, labels, config.cv);
    report.results.resize(units.size());

    // folds are fully determined by (labels, cv config), so every removal
    // trains against the same split regardless of scheduling
    CvConfig inner = config.cv;
    inner.workers = 1;
    parallel_for(units.size(), config.workers, [&](std::size_t i) {
        report.results[i] = evaluate_removal(rows, labels, units[i].name, units[i].columns,
                                             report.baseline_score, inner);
    });

    std::vector<std::size_t> order(report.results.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&report](std::size_t a, std::size_t b) {
        double ra = report.results[a].relative_contribution;
        double rb = report.results[b].relative_contribution;
        if (ra != rb) return ra > rb;
        return a < b;  // schema order breaks ties
    });
    std::vector<AblationResult> sorted;
    sorted.reserve(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        sorted.push_back(std::move(report.results[order[i]]));
        sorted.back().rank = static_cast<int>(i) + 1;
    }
    report.results = std::move(sorted);
    return report;
}

}  // namespace topicbench
