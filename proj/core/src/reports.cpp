#include "topicbench/reports.hpp"

#include <algorithm>
#include <sstream>

#include "topicbench/errors.hpp"
#include "topicbench/io.hpp"

namespace topicbench {

namespace {

void check_csv_safe(const std::string& value, const char* what) {
    if (value.find_first_of(",\"\r\n") != std::string::npos) {
        throw InputError(std::string(what) + " '" + value + "' cannot be written as CSV");
    }
}

std::vector<std::string> csv_lines(const std::string& csv) {
    std::vector<std::string> lines;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

int parse_binary_label(const std::string& text, const char* what) {
    if (text == "0") return 0;
    if (text == "1") return 1;
    throw InputError(std::string(what) + " must be 0 or 1, got '" + text + "'");
}

}  // namespace

std::string matrix_to_csv(const FeatureMatrix& matrix) {
    std::ostringstream out;
    out << "topic,bucket";
    for (const auto& name : matrix.column_names) {
        check_csv_safe(name, "column name");
        out << ',' << name;
    }
    out << '\n';
    for (const auto& row : matrix.rows) {
        check_csv_safe(row.topic, "topic");
        if (row.values.size() != matrix.column_names.size()) {
            throw InvariantError("matrix row width does not match the header");
        }
        out << row.topic << ',' << row.bucket;
        for (double v : row.values) out << ',' << format_double(v);
        out << '\n';
    }
    return out.str();
}

FeatureMatrix matrix_from_csv(const std::string& csv) {
    std::vector<std::string> lines = csv_lines(csv);
    if (lines.empty()) throw InputError("feature matrix file is empty");
    std::vector<std::string> header = split(lines.front(), ',');
    if (header.size() < 3 || header[0] != "topic" || header[1] != "bucket") {
        throw InputError("feature matrix header must start with topic,bucket");
    }
    FeatureMatrix matrix;
    matrix.column_names.assign(header.begin() + 2, header.end());
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::vector<std::string> fields = split(lines[i], ',');
        if (fields.size() != header.size()) {
            throw InputError("feature matrix line " + std::to_string(i + 1) +
                             ": expected " + std::to_string(header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        }
        FeatureRow row;
        row.topic = fields[0];
        try {
            row.bucket = std::stoll(fields[1]);
        } catch (const std::exception&) {
            throw InputError("feature matrix line " + std::to_string(i + 1) + ": bad bucket");
        }
        row.values.reserve(matrix.column_names.size());
        for (std::size_t j = 2; j < fields.size(); ++j) {
            row.values.push_back(parse_double(fields[j]));
        }
        matrix.rows.push_back(std::move(row));
    }
    return matrix;
}

std::string labels_to_csv(const std::map<std::string, int>& labels) {
    std::ostringstream out;
    out << "topic,label\n";
    for (const auto& [topic, label] : labels) {
        check_csv_safe(topic, "topic");
        if (label != 0 && label != 1) throw InputError("labels must be 0 or 1");
        out << topic << ',' << label << '\n';
    }
    return out.str();
}

std::map<std::string, int> labels_from_csv(const std::string& csv) {
    std::vector<std::string> lines = csv_lines(csv);
    if (lines.empty() || lines.front() != "topic,label") {
        throw InputError("labels file must start with header topic,label");
    }
    std::map<std::string, int> labels;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::vector<std::string> fields = split(lines[i], ',');
        if (fields.size() != 2) {
            throw InputError("labels line " + std::to_string(i + 1) + ": expected 2 fields");
        }
        if (!labels.emplace(fields[0], parse_binary_label(fields[1], "label")).second) {
            throw InputError("labels line " + std::to_string(i + 1) + ": duplicate topic '" +
                             fields[0] + "'");
        }
    }
    return labels;
}

std::string predictions_to_csv(const std::vector<PredictionRow>& rows) {
    std::ostringstream out;
    out << "topic,score,label,truth\n";
    for (const auto& row : rows) {
        check_csv_safe(row.topic, "topic");
        out << row.topic << ',' << format_double(row.score) << ',' << row.label << ','
            << row.truth << '\n';
    }
    return out.str();
}

std::vector<PredictionRow> predictions_from_csv(const std::string& csv) {
    std::vector<std::string> lines = csv_lines(csv);
    if (lines.empty() || lines.front() != "topic,score,label,truth") {
        throw InputError("predictions file must start with header topic,score,label,truth");
    }
    std::vector<PredictionRow> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::vector<std::string> fields = split(lines[i], ',');
        if (fields.size() != 4) {
            throw InputError("predictions line " + std::to_string(i + 1) + ": expected 4 fields");
        }
        PredictionRow row;
        row.topic = fields[0];
        row.score = parse_double(fields[1]);
        row.label = parse_binary_label(fields[2], "label");
        row.truth = parse_binary_label(fields[3], "truth");
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string ablation_to_csv(const AblationReport& report) {
    std::ostringstream out;
    out << "# baseline_score," << format_double(report.baseline_score) << '\n';
    out << "rank,unit,ablated_score,relative_contribution\n";
    for (const auto& r : report.results) {
        check_csv_safe(r.unit, "unit");
        out << r.rank << ',' << r.unit << ',' << format_double(r.ablated_score) << ','
            << format_double(r.relative_contribution) << '\n';
    }
    return out.str();
}

std::string ranking_to_csv(const std::vector<RankedMethod>& ranked) {
    std::ostringstream out;
    out << "rank,method,min_dis\n";
    for (const auto& r : ranked) {
        check_csv_safe(r.method, "method");
        out << r.rank << ',' << r.method << ',' << format_double(r.min_dis) << '\n';
    }
    return out.str();
}

std::string ranking_to_text(const std::string& scenario_label, const ScenarioWeights& weights,
                            const std::vector<RankedMethod>& ranked) {
    std::ostringstream out;
    out << "Scenario " << scenario_label << "\n";
    char weight_line[160];
    std::snprintf(weight_line, sizeof(weight_line),
                  "weights: w_c=%.4f w_u=%.4f w_a1=%.4f w_a2=%.4f w_rm=%.4f\n",
                  weights.complexity, weights.universality, weights.macro_f1, weights.micro_f1,
                  weights.rmse);
    out << weight_line;

    std::size_t method_width = std::string("method").size();
    for (const auto& r : ranked) method_width = std::max(method_width, r.method.size());
    char header[96];
    std::snprintf(header, sizeof(header), "%4s  %-*s  %8s\n", "rank",
                  static_cast<int>(method_width), "method", "MinDis");
    out << header;
    for (const auto& r : ranked) {
        char line[160];
        std::snprintf(line, sizeof(line), "%4d  %-*s  %8.4f\n", r.rank,
                      static_cast<int>(method_width), r.method.c_str(), r.min_dis);
        out << line;
    }
    return out.str();
}

std::string weights_to_csv(const std::vector<std::pair<std::string, ScenarioWeights>>& rows) {
    std::ostringstream out;
    out << "scenario,w_c,w_u,w_a1,w_a2,w_rm\n";
    for (const auto& [label, w] : rows) {
        check_csv_safe(label, "scenario");
        out << label << ',' << format_double(w.complexity) << ',' << format_double(w.universality)
            << ',' << format_double(w.macro_f1) << ',' << format_double(w.micro_f1) << ','
            << format_double(w.rmse) << '\n';
    }
    return out.str();
}

}  // namespace topicbench
