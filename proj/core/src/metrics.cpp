#include "topicbench/metrics.hpp"

#include <cmath>
#include <sstream>

#include "topicbench/errors.hpp"
#include "topicbench/io.hpp"

namespace topicbench {

namespace {

void check_lengths(std::size_t a, std::size_t b) {
    if (a == 0) throw InputError("metrics require at least one prediction");
    if (a != b) throw InputError("truth and prediction lengths differ");
}

void check_binary(int label) {
    if (label != 0 && label != 1) {
        throw InputError("labels must be 0 or 1, got " + std::to_string(label));
    }
}

}  // namespace

Confusion confusion(std::span<const int> truth, std::span<const int> predicted) {
    check_lengths(truth.size(), predicted.size());
    Confusion c;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        check_binary(truth[i]);
        check_binary(predicted[i]);
        if (truth[i] == 1) {
            predicted[i] == 1 ? ++c.tp : ++c.fn;
        } else {
            predicted[i] == 1 ? ++c.fp : ++c.tn;
        }
    }
    return c;
}

ClassScores precision_recall_f1(const Confusion& c, int positive_class) {
    // swapping the positive class mirrors the confusion matrix
    std::int64_t tp = positive_class == 1 ? c.tp : c.tn;
    std::int64_t fp = positive_class == 1 ? c.fp : c.fn;
    std::int64_t fn = positive_class == 1 ? c.fn : c.fp;
    ClassScores s;
    s.precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
    s.recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
    s.f1 = s.precision + s.recall == 0.0
               ? 0.0
               : 2.0 * s.precision * s.recall / (s.precision + s.recall);
    return s;
}

double macro_f1(std::span<const int> truth, std::span<const int> predicted) {
    Confusion c = confusion(truth, predicted);
    return (precision_recall_f1(c, 1).f1 + precision_recall_f1(c, 0).f1) / 2.0;
}

double micro_f1(std::span<const int> truth, std::span<const int> predicted) {
    Confusion c = confusion(truth, predicted);
    // pooled over both classes: every prediction contributes one TP when
    // correct, one FP and one FN when wrong, so micro-F1 reduces to accuracy
    return static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
}

double rmse(std::span<const int> truth, std::span<const double> scores) {
    check_lengths(truth.size(), scores.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        check_binary(truth[i]);
        double d = scores[i] - static_cast<double>(truth[i]);
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(truth.size()));
}

double rmse(std::span<const int> truth, std::span<const int> predicted) {
    std::vector<double> scores(predicted.size());
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        check_binary(predicted[i]);
        scores[i] = static_cast<double>(predicted[i]);
    }
    return rmse(truth, std::span<const double>(scores));
}

double level_value(Level level) {
    switch (level) {
        case Level::Low: return 0.4;
        case Level::Medium: return 0.5;
        case Level::High: return 0.6;
    }
    throw InvariantError("unknown level");
}

Level parse_level(const std::string& text) {
    std::string lower;
    lower.reserve(text.size());
    for (char ch : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    if (lower == "low") return Level::Low;
    if (lower == "medium") return Level::Medium;
    if (lower == "high") return Level::High;
    throw InputError("unknown level '" + text + "' (expected Low, Medium, or High)");
}

std::string to_string(Level level) {
    switch (level) {
        case Level::Low: return "Low";
        case Level::Medium: return "Medium";
        case Level::High: return "High";
    }
    throw InvariantError("unknown level");
}

std::string scorecards_to_csv(const std::vector<MethodScorecard>& cards) {
    std::ostringstream out;
    out << "method,macro_f1,micro_f1,rmse,complexity,universality\n";
    for (const auto& c : cards) {
        out << c.method << ',' << format_double(c.macro_f1) << ','
            << format_double(c.micro_f1) << ',' << format_double(c.rmse) << ','
            << to_string(c.complexity) << ',' << to_string(c.universality) << '\n';
    }
    return out.str();
}

std::vector<MethodScorecard> scorecards_from_csv(const std::string& csv) {
    std::vector<MethodScorecard> cards;
    std::istringstream in(csv);
    std::string line;
    bool first = true;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line.rfind("method,", 0) == 0) continue;  // header
        }
        std::vector<std::string> fields = split(line, ',');
        if (fields.size() != 6) {
            throw InputError("scorecard line " + std::to_string(line_no) +
                             ": expected 6 fields, got " + std::to_string(fields.size()));
        }
        MethodScorecard card;
        card.method = fields[0];
        card.macro_f1 = parse_double(fields[1]);
        card.micro_f1 = parse_double(fields[2]);
        card.rmse = parse_double(fields[3]);
        card.complexity = parse_level(fields[4]);
        card.universality = parse_level(fields[5]);
        if (card.macro_f1 < 0.0 || card.macro_f1 > 1.0 || card.micro_f1 < 0.0 ||
            card.micro_f1 > 1.0 || card.rmse < 0.0) {
            throw InputError("scorecard line " + std::to_string(line_no) +
                             ": index out of range");
        }
        cards.push_back(std::move(card));
    }
    if (cards.empty()) throw InputError("no scorecards found");
    return cards;
}

}  // namespace topicbench
