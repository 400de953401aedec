// topicbench: benchmark toolkit for topic-popularity prediction on
// social-network message corpora. See README.md for the pipeline walkthrough.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "topicbench/ablation.hpp"
#include "topicbench/core.hpp"
#include "topicbench/errors.hpp"
#include "topicbench/features.hpp"
#include "topicbench/ingest.hpp"
#include "topicbench/io.hpp"
#include "topicbench/metrics.hpp"
#include "topicbench/parallel.hpp"
#include "topicbench/predict.hpp"
#include "topicbench/ranking.hpp"
#include "topicbench/reports.hpp"
#include "topicbench/synth.hpp"

namespace tb = topicbench;
namespace fs = std::filesystem;

namespace {

constexpr const char* kToolVersion = "0.1.0";

// Collects manifest fields while a command runs and writes the file last, so
// a manifest on disk always describes a completed run.
class ManifestScope {
public:
    ManifestScope(std::string command, std::string path)
        : path_(std::move(path)) {
        manifest_.command = std::move(command);
        manifest_.tool_version = kToolVersion;
        manifest_.started_at = tb::iso8601_utc_now();
    }

    void seed(std::uint64_t value) { manifest_.seed = value; }
    void config(const std::string& key, const std::string& value) {
        manifest_.config[key] = value;
    }
    void config(const std::string& key, std::int64_t value) {
        manifest_.config[key] = std::to_string(value);
    }
    void config_double(const std::string& key, double value) {
        manifest_.config[key] = tb::format_double(value);
    }
    void input(const std::string& path) {
        manifest_.input_digests[path] = tb::hex64(tb::fnv1a64_file(path));
    }

    void finish() {
        manifest_.finished_at = tb::iso8601_utc_now();
        manifest_.save(path_);
    }

private:
    tb::RunManifest manifest_;
    std::string path_;
};

std::string manifest_path_for(const std::string& out_path) {
    return out_path + ".manifest.json";
}

void ensure_parent_dir(const std::string& path) {
    fs::path parent = fs::path(path).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
}

// ---------------------------------------------------------------------------
// shared corpus options

struct CorpusOptions {
    std::string messages_path;
    std::string followers_path;
    std::vector<std::string> languages;
};

void add_corpus_options(CLI::App* cmd, CorpusOptions& opts) {
    cmd->add_option("--messages", opts.messages_path, "Message corpus (JSONL)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--followers", opts.followers_path, "Follower edges (TSV)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--lang", opts.languages,
                    "Accept only these language codes (default: accept all)")
        ->delimiter(',');
}

tb::ParseOptions parse_options(const CorpusOptions& opts) {
    tb::ParseOptions parse;
    if (!opts.languages.empty()) {
        parse.allowed_languages.emplace(opts.languages.begin(), opts.languages.end());
    }
    return parse;
}

struct LoadedCorpus {
    tb::Dataset dataset;
    tb::IngestReport report;
    tb::FollowerFileStats follower_stats;
};

LoadedCorpus load_corpus(const CorpusOptions& opts) {
    auto [messages, report] = tb::parse_messages_file(opts.messages_path, parse_options(opts));
    tb::FollowerFileStats stats;
    tb::FollowerGraph followers = tb::parse_followers_file(opts.followers_path, &stats);
    return {tb::Dataset(std::move(messages), std::move(followers)), report, stats};
}

// ---------------------------------------------------------------------------
// shared topic-selection options

struct TopicOptions {
    std::int64_t bucket = std::numeric_limits<std::int64_t>::min();  // min() = auto
    std::size_t min_count = 5;
    std::int64_t denoise_window = 0;  // 0 disables denoising
    int denoise_min_active = 1;
    std::int64_t denoise_min_count = 0;
};

void add_topic_options(CLI::App* cmd, TopicOptions& opts) {
    cmd->add_option("--bucket", opts.bucket,
                    "Feature bucket t (default: last bucket - 1)");
    cmd->add_option("--min-count", opts.min_count,
                    "Keep hashtags with at least this corpus-wide count")->capture_default_str();
    cmd->add_option("--denoise-window", opts.denoise_window,
                    "Trailing-window length for denoising; 0 disables")->capture_default_str();
    cmd->add_option("--denoise-min-active", opts.denoise_min_active,
                    "Minimum nonzero buckets in the denoise window")->capture_default_str();
    cmd->add_option("--denoise-min-count", opts.denoise_min_count,
                    "Minimum count at bucket t to survive denoising")->capture_default_str();
}

std::int64_t resolve_bucket(const tb::Dataset& dataset, const TopicOptions& opts) {
    if (opts.bucket != std::numeric_limits<std::int64_t>::min()) return opts.bucket;
    const auto& buckets = dataset.buckets();
    if (buckets.empty()) throw tb::InputError("corpus has no messages");
    std::int64_t last = buckets.rbegin()->first;
    return buckets.size() > 1 ? last - 1 : last;
}

std::vector<std::string> select_topics(const tb::Dataset& dataset, const TopicOptions& opts,
                                       std::int64_t bucket) {
    std::vector<std::string> topics = tb::extract_topics(dataset.messages(), opts.min_count);
    if (topics.empty()) throw tb::InputError("no hashtag reaches --min-count");
    if (opts.denoise_window > 0) {
        std::map<std::string, tb::TimeSeries> series;
        for (const auto& topic : topics) {
            series[topic] = tb::topic_series(dataset, topic, bucket - opts.denoise_window + 1,
                                             bucket);
        }
        topics = tb::denoise_ts(topics, series, bucket, opts.denoise_window,
                                opts.denoise_min_active, opts.denoise_min_count);
        if (topics.empty()) throw tb::InputError("denoising removed every topic");
    }
    return topics;
}

void record_topic_config(ManifestScope& manifest, const TopicOptions& opts,
                         std::int64_t bucket) {
    manifest.config("bucket", bucket);
    manifest.config("min_count", static_cast<std::int64_t>(opts.min_count));
    manifest.config("denoise_window", opts.denoise_window);
    manifest.config("denoise_min_active", opts.denoise_min_active);
    manifest.config("denoise_min_count", opts.denoise_min_count);
}

// ---------------------------------------------------------------------------
// matrix/label alignment shared by train, eval and ablate

struct AlignedData {
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    std::vector<std::string> topics;
    std::size_t unlabeled = 0;
};

AlignedData align(const tb::FeatureMatrix& matrix, const std::map<std::string, int>& labels) {
    AlignedData out;
    for (const auto& row : matrix.rows) {
        auto it = labels.find(row.topic);
        if (it == labels.end()) {
            ++out.unlabeled;
            continue;
        }
        out.rows.push_back(row.values);
        out.labels.push_back(it->second);
        out.topics.push_back(row.topic);
    }
    if (out.rows.empty()) throw tb::InputError("no matrix row has a label");
    return out;
}

void warn_unlabeled(const AlignedData& data) {
    if (data.unlabeled > 0) {
        std::cerr << "note: " << data.unlabeled << " matrix row(s) without a label were skipped\n";
    }
}

// ---------------------------------------------------------------------------
// subcommand option bundles

struct IngestArgs {
    CorpusOptions corpus;
    std::string out = "ingest_report.json";
};

struct FeatureArgs {
    CorpusOptions corpus;
    TopicOptions topics;
    std::int64_t window = 5;
    std::uint64_t seed = 1;
    int workers = 0;
    int lda_fit_iterations = 150;
    int lda_infer_iterations = 30;
    std::string lexicon_path;
    std::string wordlist_path;
    bool latent = false;
    std::string out = "matrix.csv";
};

struct LabelArgs {
    CorpusOptions corpus;
    TopicOptions topics;
    double quantile = 0.9;
    std::int64_t threshold = 0;  // > 0 switches to absolute-threshold mode
    std::string out = "labels.csv";
};

struct TrainArgs {
    std::string matrix_path;
    std::string labels_path;
    tb::TrainConfig train;
    int folds = 10;
    std::uint64_t seed = 1;
    double threshold = 0.5;
    int workers = 1;
    std::string out = "model.txt";
    std::string predictions_out;  // optional pooled CV predictions
};

struct EvalArgs {
    std::string matrix_path;
    std::string labels_path;
    std::string model_path;
    double threshold = 0.5;
    bool rmse_on_scores = false;
    std::string out = "predictions.csv";
};

struct RankArgs {
    std::string scorecards_path;
    std::string scenario = "all";
    std::vector<double> custom_weights;  // c,u,a1,a2,rm
    std::string risk_matrix_path;
    std::string out = "ranking.csv";
    std::string text_out;
};

// Scenario definition file: one "metric,likelihood,severity" line per metric.
tb::RiskMatrix risk_matrix_from_file(const std::string& path) {
    tb::RiskMatrix matrix;
    std::size_t line_no = 0;
    for (const auto& line : tb::split(tb::read_file(path), '\n')) {
        ++line_no;
        std::string trimmed = line;
        while (!trimmed.empty() && (trimmed.back() == '\r' || trimmed.back() == ' ')) {
            trimmed.pop_back();
        }
        if (trimmed.empty() || trimmed.front() == '#') continue;
        std::vector<std::string> parts = tb::split(trimmed, ',');
        if (parts.size() != 3) {
            throw tb::InputError("risk-matrix line " + std::to_string(line_no) +
                                 ": expected metric,likelihood,severity");
        }
        matrix.placement[tb::parse_ranked_metric(parts[0])] = {
            tb::parse_likelihood(parts[1]), tb::parse_severity(parts[2])};
    }
    matrix.validate();
    return matrix;
}

struct AblateArgs {
    std::string matrix_path;
    std::string labels_path;
    std::string mode = "dimension";
    tb::TrainConfig train;
    int folds = 10;
    std::uint64_t seed = 1;
    double threshold = 0.5;
    int workers = 0;
    std::string out = "ablation.csv";
};

struct SynthArgs {
    tb::SynthConfig config;
    std::string out_dir = "synth";
};

struct ReproArgs {
    std::string out_dir = ".";
};

// ---------------------------------------------------------------------------
// subcommand implementations

void run_ingest(const IngestArgs& args) {
    ensure_parent_dir(args.out);
    ManifestScope manifest("ingest", manifest_path_for(args.out));
    manifest.input(args.corpus.messages_path);
    manifest.input(args.corpus.followers_path);

    LoadedCorpus corpus = load_corpus(args.corpus);

    nlohmann::ordered_json j;
    j["messages_ok"] = corpus.report.messages_ok;
    j["messages_rejected"] = corpus.report.messages_rejected;
    j["reject_reasons"] = corpus.report.reject_reasons;
    j["users"] = corpus.report.users;
    j["topics"] = corpus.report.topics;
    j["hashtag_fraction"] = corpus.report.hashtag_fraction;
    j["follower_edges"] = corpus.follower_stats.edges;
    j["follower_duplicates"] = corpus.follower_stats.duplicates;
    j["follower_self_loops"] = corpus.follower_stats.self_loops;
    j["follower_malformed"] = corpus.follower_stats.malformed;
    j["buckets"] = corpus.dataset.buckets().size();
    j["content_hash"] = tb::hex64(corpus.dataset.content_hash());
    tb::write_file_atomic(args.out, j.dump(2) + "\n");

    std::cout << "ingested " << corpus.report.messages_ok << " messages ("
              << corpus.report.messages_rejected << " rejected), " << corpus.report.users
              << " users, " << corpus.report.topics << " hashtags, "
              << corpus.dataset.buckets().size() << " buckets\n"
              << "report: " << args.out << "\n";
    manifest.finish();
}

void run_features(const FeatureArgs& args) {
    ensure_parent_dir(args.out);
    ManifestScope manifest("features", manifest_path_for(args.out));
    manifest.seed(args.seed);
    manifest.input(args.corpus.messages_path);
    manifest.input(args.corpus.followers_path);

    LoadedCorpus corpus = load_corpus(args.corpus);
    std::int64_t bucket = resolve_bucket(corpus.dataset, args.topics);
    std::vector<std::string> topics = select_topics(corpus.dataset, args.topics, bucket);
    record_topic_config(manifest, args.topics, bucket);
    manifest.config("window", args.window);
    manifest.config("latent", args.latent ? "true" : "false");

    tb::FeatureMatrix matrix;
    if (args.latent) {
        matrix = tb::latent_matrix(corpus.dataset, topics, bucket - args.window + 1, bucket);
    } else {
        tb::FeatureConfig config;
        config.window = args.window;
        config.seed = args.seed;
        config.workers = args.workers;
        config.lda.fit_iterations = args.lda_fit_iterations;
        config.lda.infer_iterations = args.lda_infer_iterations;
        if (!args.lexicon_path.empty()) {
            config.lexicon = tb::SentimentLexicon::from_file(args.lexicon_path);
            manifest.input(args.lexicon_path);
        }
        if (!args.wordlist_path.empty()) {
            config.wordlist = tb::Wordlist::from_file(args.wordlist_path);
            manifest.input(args.wordlist_path);
        }
        matrix = tb::feature_matrix(corpus.dataset, topics, bucket, config);
    }
    manifest.config("schema_hash", tb::hex64(matrix.schema_hash()));
    tb::write_file_atomic(args.out, tb::matrix_to_csv(matrix));

    std::cout << "wrote " << matrix.rows.size() << " x " << matrix.column_names.size()
              << " feature matrix for bucket " << bucket << " to " << args.out << "\n";
    manifest.finish();
}

void run_label(const LabelArgs& args) {
    ensure_parent_dir(args.out);
    ManifestScope manifest("label", manifest_path_for(args.out));
    manifest.input(args.corpus.messages_path);
    manifest.input(args.corpus.followers_path);

    LoadedCorpus corpus = load_corpus(args.corpus);
    std::int64_t bucket = resolve_bucket(corpus.dataset, args.topics);
    std::vector<std::string> topics = select_topics(corpus.dataset, args.topics, bucket);
    record_topic_config(manifest, args.topics, bucket);

    tb::LabelingPolicy policy;
    if (args.threshold > 0) {
        policy.mode = tb::LabelingPolicy::Mode::Threshold;
        policy.threshold = args.threshold;
        manifest.config("threshold", args.threshold);
    } else {
        policy.mode = tb::LabelingPolicy::Mode::Quantile;
        policy.quantile = args.quantile;
        manifest.config_double("quantile", args.quantile);
    }

    std::map<std::string, tb::TimeSeries> series;
    for (const auto& topic : topics) {
        series[topic] = tb::topic_series(corpus.dataset, topic, bucket + 1, bucket + 1);
    }
    tb::LabelingResult result = tb::label_topics(series, bucket + 1, policy);
    for (const auto& topic : result.skipped) {
        std::cerr << "note: topic '" << topic << "' misses bucket " << bucket + 1
                  << " and was skipped\n";
    }
    manifest.config_double("resolved_threshold", result.threshold_value);
    tb::write_file_atomic(args.out, tb::labels_to_csv(result.labels));

    std::size_t positive = 0;
    for (const auto& [_, label] : result.labels) positive += static_cast<std::size_t>(label);
    std::cout << "labeled " << result.labels.size() << " topics at bucket " << bucket + 1
              << " (threshold " << tb::format_double(result.threshold_value) << "): " << positive
              << " popular\n"
              << "labels: " << args.out << "\n";
    manifest.finish();
}

void run_train(const TrainArgs& args) {
    ensure_parent_dir(args.out);
    ManifestScope manifest("train", manifest_path_for(args.out));
    manifest.seed(args.seed);
    manifest.input(args.matrix_path);
    manifest.input(args.labels_path);
    manifest.config_double("learning_rate", args.train.learning_rate);
    manifest.config("iterations", args.train.iterations);
    manifest.config_double("l2", args.train.l2);
    manifest.config("folds", args.folds);
    manifest.config_double("threshold", args.threshold);

    tb::FeatureMatrix matrix = tb::matrix_from_csv(tb::read_file(args.matrix_path));
    std::map<std::string, int> labels = tb::labels_from_csv(tb::read_file(args.labels_path));
    AlignedData data = align(matrix, labels);
    warn_unlabeled(data);
    manifest.config("schema_hash", tb::hex64(matrix.schema_hash()));

    tb::CvConfig cv;
    cv.folds = args.folds;
    cv.seed = args.seed;
    cv.train = args.train;
    cv.threshold = args.threshold;
    cv.workers = args.workers;
    tb::CvResult result = tb::cross_validate(data.rows, data.labels, cv);

    tb::LinearModel model =
        tb::LinearModel::train(data.rows, data.labels, matrix.column_names, args.train);
    tb::write_file_atomic(args.out, model.save());

    if (!args.predictions_out.empty()) {
        ensure_parent_dir(args.predictions_out);
        std::vector<tb::PredictionRow> rows;
        rows.reserve(data.topics.size());
        for (std::size_t i = 0; i < data.topics.size(); ++i) {
            rows.push_back({data.topics[i], result.scores[i], result.predicted[i],
                            data.labels[i]});
        }
        tb::write_file_atomic(args.predictions_out, tb::predictions_to_csv(rows));
    }

    std::cout << "trained on " << data.rows.size() << " topics, " << matrix.column_names.size()
              << " columns\n"
              << "cv (" << args.folds << "-fold, pooled): macro_f1 "
              << tb::format_double(result.macro_f1) << ", micro_f1 "
              << tb::format_double(result.micro_f1) << ", rmse "
              << tb::format_double(result.rmse_hard) << "\n"
              << "model: " << args.out << "\n";
    manifest.finish();
}

void run_eval(const EvalArgs& args) {
    ensure_parent_dir(args.out);
    ManifestScope manifest("eval", manifest_path_for(args.out));
    manifest.input(args.matrix_path);
    manifest.input(args.labels_path);
    manifest.input(args.model_path);
    manifest.config_double("threshold", args.threshold);
    manifest.config("rmse_mode", args.rmse_on_scores ? "score" : "hard");

    tb::FeatureMatrix matrix = tb::matrix_from_csv(tb::read_file(args.matrix_path));
    std::map<std::string, int> labels = tb::labels_from_csv(tb::read_file(args.labels_path));
    tb::LinearModel model = tb::LinearModel::load(tb::read_file(args.model_path));

    if (model.schema_hash() != matrix.schema_hash()) {
        throw tb::InputError("schema hash mismatch: model " + tb::hex64(model.schema_hash()) +
                             " vs matrix " + tb::hex64(matrix.schema_hash()) +
                             " — the model was trained on a different feature layout");
    }

    AlignedData data = align(matrix, labels);
    warn_unlabeled(data);

    std::vector<tb::PredictionRow> rows;
    std::vector<int> predicted;
    std::vector<double> scores;
    rows.reserve(data.rows.size());
    for (std::size_t i = 0; i < data.rows.size(); ++i) {
        double s = model.score(data.rows[i]);
        int label = s >= args.threshold ? 1 : 0;
        scores.push_back(s);
        predicted.push_back(label);
        rows.push_back({data.topics[i], s, label, data.labels[i]});
    }
    tb::write_file_atomic(args.out, tb::predictions_to_csv(rows));

    double macro = tb::macro_f1(data.labels, predicted);
    double micro = tb::micro_f1(data.labels, predicted);
    double rmse_value = args.rmse_on_scores
                            ? tb::rmse(std::span<const int>(data.labels),
                                       std::span<const double>(scores))
                            : tb::rmse(std::span<const int>(data.labels),
                                       std::span<const int>(predicted));
    std::cout << "evaluated " << data.rows.size() << " topics: macro_f1 "
              << tb::format_double(macro) << ", micro_f1 " << tb::format_double(micro)
              << ", rmse " << tb::format_double(rmse_value) << "\n"
              << "predictions: " << args.out << "\n";
    manifest.finish();
}

std::vector<int> scenario_list(const std::string& text) {
    static const std::map<std::string, int> names = {
        {"1", 1},  {"2", 2},   {"3", 3},    {"4", 4},
        {"i", 1},  {"ii", 2},  {"iii", 3},  {"iv", 4},
    };
    if (text == "all") return {1, 2, 3, 4};
    std::string t;
    for (char ch : text) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    auto it = names.find(t);
    if (it == names.end()) {
        throw tb::InputError("unknown scenario '" + text + "' (expected I..IV or all)");
    }
    return {it->second};
}

const char* scenario_label(int scenario) {
    switch (scenario) {
        case 1: return "I";
        case 2: return "II";
        case 3: return "III";
        case 4: return "IV";
    }
    throw tb::InvariantError("scenario out of range");
}

void run_rank(const RankArgs& args) {
    ensure_parent_dir(args.out);
    ManifestScope manifest("rank", manifest_path_for(args.out));
    manifest.input(args.scorecards_path);
    manifest.config("scenario", args.scenario);

    std::vector<tb::MethodScorecard> cards =
        tb::scorecards_from_csv(tb::read_file(args.scorecards_path));

    std::vector<std::pair<std::string, tb::ScenarioWeights>> runs;
    if (!args.custom_weights.empty()) {
        if (args.custom_weights.size() != 5) {
            throw tb::InputError("--weights needs 5 values: w_c,w_u,w_a1,w_a2,w_rm");
        }
        tb::ScenarioWeights w;
        w.complexity = args.custom_weights[0];
        w.universality = args.custom_weights[1];
        w.macro_f1 = args.custom_weights[2];
        w.micro_f1 = args.custom_weights[3];
        w.rmse = args.custom_weights[4];
        w.validate();
        runs.emplace_back("custom", w);
    } else if (!args.risk_matrix_path.empty()) {
        manifest.input(args.risk_matrix_path);
        runs.emplace_back("custom", tb::weights_from_matrix(risk_matrix_from_file(args.risk_matrix_path)));
    } else {
        for (int s : scenario_list(args.scenario)) {
            runs.emplace_back(scenario_label(s), tb::scenario_weights(s));
        }
    }

    std::ostringstream csv;
    std::ostringstream text;
    csv << "scenario,rank,method,min_dis\n";
    for (const auto& [label, weights] : runs) {
        std::vector<tb::RankedMethod> ranked = tb::rank_methods(cards, weights);
        for (const auto& r : ranked) {
            csv << label << ',' << r.rank << ',' << r.method << ','
                << tb::format_double(r.min_dis) << '\n';
        }
        text << tb::ranking_to_text(label, weights, ranked) << '\n';
    }
    tb::write_file_atomic(args.out, csv.str());
    if (!args.text_out.empty()) {
        ensure_parent_dir(args.text_out);
        tb::write_file_atomic(args.text_out, text.str());
    }
    std::cout << text.str() << "ranking: " << args.out << "\n";
    manifest.finish();
}

void run_ablate(const AblateArgs& args) {
    ensure_parent_dir(args.out);
    ManifestScope manifest("ablate", manifest_path_for(args.out));
    manifest.seed(args.seed);
    manifest.input(args.matrix_path);
    manifest.input(args.labels_path);
    manifest.config("mode", args.mode);
    manifest.config("folds", args.folds);
    manifest.config_double("learning_rate", args.train.learning_rate);
    manifest.config("iterations", args.train.iterations);
    manifest.config_double("l2", args.train.l2);

    tb::FeatureMatrix matrix = tb::matrix_from_csv(tb::read_file(args.matrix_path));
    std::map<std::string, int> labels = tb::labels_from_csv(tb::read_file(args.labels_path));
    AlignedData data = align(matrix, labels);
    warn_unlabeled(data);

    // rebuild a matrix limited to the labeled rows so the report and the CV
    // folds see the same data
    tb::FeatureMatrix labeled;
    labeled.column_names = matrix.column_names;
    for (const auto& row : matrix.rows) {
        if (labels.find(row.topic) != labels.end()) labeled.rows.push_back(row);
    }

    tb::AblationConfig config;
    config.mode = args.mode == "feature" ? tb::AblationMode::PerFeature
                                         : tb::AblationMode::PerDimension;
    if (args.mode != "feature" && args.mode != "dimension") {
        throw tb::InputError("--mode must be 'dimension' or 'feature'");
    }
    config.cv.folds = args.folds;
    config.cv.seed = args.seed;
    config.cv.train = args.train;
    config.cv.threshold = args.threshold;
    config.workers = args.workers;

    tb::AblationReport report = tb::ablation_report(labeled, data.labels, config);
    tb::write_file_atomic(args.out, tb::ablation_to_csv(report));

    std::cout << "baseline mean F1 " << tb::format_double(report.baseline_score) << " over "
              << data.rows.size() << " topics; " << report.results.size()
              << " removal experiments\n"
              << "top unit: " << report.results.front().unit << " (RC "
              << tb::format_double(report.results.front().relative_contribution) << ")\n"
              << "report: " << args.out << "\n";
    manifest.finish();
}

void run_synth(const SynthArgs& args) {
    fs::create_directories(args.out_dir);
    fs::path dir(args.out_dir);
    ManifestScope manifest("synth", (dir / "manifest.json").string());
    manifest.seed(args.config.seed);
    manifest.config("users", args.config.users);
    manifest.config("attachment", args.config.attachment);
    manifest.config_double("reciprocity", args.config.reciprocity);
    manifest.config("topics", args.config.topics);
    manifest.config_double("infectivity_low", args.config.infectivity_low);
    manifest.config_double("infectivity_high", args.config.infectivity_high);
    manifest.config_double("popular_fraction", args.config.popular_fraction);
    manifest.config("buckets", args.config.buckets);
    manifest.config("seeds_per_topic", args.config.seeds_per_topic);

    tb::GenerationLedger ledger =
        tb::generate(args.config, (dir / "messages.jsonl").string(),
                     (dir / "followers.tsv").string(), (dir / "ledger.json").string());

    std::size_t popular = 0;
    for (const auto& [_, label] : ledger.planted_labels) popular += static_cast<std::size_t>(label);
    std::cout << "generated " << ledger.provenance.size() << " messages across "
              << ledger.adoption_counts.size() << " topics (" << popular << " popular) into "
              << args.out_dir << "\n";
    manifest.finish();
}

void run_repro_tables(const ReproArgs& args) {
    fs::create_directories(args.out_dir);
    fs::path dir(args.out_dir);
    ManifestScope manifest("repro-tables", (dir / "repro_manifest.json").string());

    const auto& cards = tb::reference_scorecards();
    tb::write_file_atomic((dir / "published_scorecards.csv").string(),
                          tb::scorecards_to_csv(cards));

    // weights re-derived from the scenario risk matrices, checked against the
    // published rows
    std::vector<std::pair<std::string, tb::ScenarioWeights>> weight_rows;
    double max_weight_diff = 0.0;
    for (int s = 1; s <= tb::kScenarioCount; ++s) {
        tb::ScenarioWeights derived = tb::scenario_weights(s);
        const tb::ScenarioWeights& published = tb::reference_weights()[static_cast<std::size_t>(s - 1)];
        for (tb::RankedMetric m : tb::all_ranked_metrics()) {
            max_weight_diff = std::max(max_weight_diff,
                                       std::fabs(derived.get(m) - published.get(m)));
        }
        weight_rows.emplace_back(scenario_label(s), derived);
    }
    tb::write_file_atomic((dir / "weights.csv").string(), tb::weights_to_csv(weight_rows));

    std::ostringstream csv;
    std::ostringstream text;
    csv << "scenario,rank,method,min_dis\n";
    double max_rank_diff = 0.0;
    for (int s = 1; s <= tb::kScenarioCount; ++s) {
        tb::ScenarioWeights weights = tb::scenario_weights(s);
        std::vector<tb::RankedMethod> ranked = tb::rank_methods(cards, weights);
        for (const auto& r : ranked) {
            csv << scenario_label(s) << ',' << r.rank << ',' << r.method << ','
                << tb::format_double(r.min_dis) << '\n';
        }
        text << tb::ranking_to_text(scenario_label(s), weights, ranked) << '\n';
        for (const auto& golden : tb::reference_ranking_golden()) {
            auto it = std::find_if(ranked.begin(), ranked.end(), [&](const tb::RankedMethod& r) {
                return r.method == golden.method;
            });
            if (it == ranked.end()) throw tb::InvariantError("golden method missing from ranking");
            max_rank_diff = std::max(
                max_rank_diff,
                std::fabs(it->min_dis - golden.min_dis[static_cast<std::size_t>(s - 1)]));
        }
    }
    tb::write_file_atomic((dir / "ranking.csv").string(), csv.str());
    tb::write_file_atomic((dir / "ranking.txt").string(), text.str());

    std::cout << text.str();
    std::cout << "self-check: weight tables max |diff| = " << tb::format_double(max_weight_diff)
              << (max_weight_diff <= 1e-3 ? " (ok)" : " (FAIL)") << "\n";
    std::cout << "self-check: reference MinDis max |diff| = " << tb::format_double(max_rank_diff)
              << (max_rank_diff <= 1e-3 ? " (ok)" : " (FAIL)") << "\n";
    if (max_weight_diff > 1e-3 || max_rank_diff > 1e-3) {
        throw tb::InvariantError("reproduced tables deviate from the published values");
    }
    std::cout << "tables: " << args.out_dir << "\n";
    manifest.finish();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"topicbench — benchmark toolkit for topic-popularity prediction"};
    app.set_version_flag("--version", kToolVersion);
    app.set_config("--config", "", "Configuration file (INI/TOML; flags take precedence)");
    app.require_subcommand(1);

    IngestArgs ingest_args;
    auto* ingest = app.add_subcommand("ingest", "Parse and validate a corpus");
    add_corpus_options(ingest, ingest_args.corpus);
    ingest->add_option("--out", ingest_args.out, "Ingest report (JSON)")->capture_default_str();
    ingest->callback([&] { run_ingest(ingest_args); });

    FeatureArgs feature_args;
    auto* features = app.add_subcommand("features", "Extract the feature matrix for one bucket");
    add_corpus_options(features, feature_args.corpus);
    add_topic_options(features, feature_args.topics);
    features->add_option("--window", feature_args.window, "Time-series window in buckets")->capture_default_str();
    features->add_option("--seed", feature_args.seed, "Random seed")->capture_default_str();
    features->add_option("--workers", feature_args.workers, "Worker threads (0 = cores)")->capture_default_str();
    features->add_option("--lda-fit-iterations", feature_args.lda_fit_iterations,
                         "Topic model training sweeps")->capture_default_str();
    features->add_option("--lda-infer-iterations", feature_args.lda_infer_iterations,
                         "Topic model fold-in sweeps")->capture_default_str();
    features->add_option("--lexicon", feature_args.lexicon_path,
                         "Sentiment lexicon (term<TAB>score)")
        ->check(CLI::ExistingFile);
    features->add_option("--wordlist", feature_args.wordlist_path,
                         "Wordlist for hashtag segmentation (one word per line)")
        ->check(CLI::ExistingFile);
    features->add_flag("--latent", feature_args.latent,
                       "Emit the 3-column latent baseline matrix instead");
    features->add_option("--out", feature_args.out, "Feature matrix (CSV)")->capture_default_str();
    features->callback([&] { run_features(feature_args); });

    LabelArgs label_args;
    auto* label = app.add_subcommand("label", "Label topics by next-bucket popularity");
    add_corpus_options(label, label_args.corpus);
    add_topic_options(label, label_args.topics);
    label->add_option("--quantile", label_args.quantile,
                      "Popular iff next-bucket count >= this quantile")->capture_default_str();
    label->add_option("--threshold", label_args.threshold,
                      "Absolute count threshold (overrides --quantile)");
    label->add_option("--out", label_args.out, "Labels (CSV)")->capture_default_str();
    label->callback([&] { run_label(label_args); });

    TrainArgs train_args;
    auto* train = app.add_subcommand("train", "Train the classifier and cross-validate");
    train->add_option("--matrix", train_args.matrix_path, "Feature matrix (CSV)")
        ->required()
        ->check(CLI::ExistingFile);
    train->add_option("--labels", train_args.labels_path, "Labels (CSV)")
        ->required()
        ->check(CLI::ExistingFile);
    train->add_option("--learning-rate", train_args.train.learning_rate, "GD step size")->capture_default_str();
    train->add_option("--iterations", train_args.train.iterations, "GD iterations")->capture_default_str();
    train->add_option("--l2", train_args.train.l2, "L2 strength")->capture_default_str();
    train->add_option("--folds", train_args.folds, "Cross-validation folds")->capture_default_str();
    train->add_option("--seed", train_args.seed, "Fold-assignment seed")->capture_default_str();
    train->add_option("--threshold", train_args.threshold, "Decision threshold")->capture_default_str();
    train->add_option("--workers", train_args.workers, "Parallel fold training")->capture_default_str();
    train->add_option("--out", train_args.out, "Model artifact")->capture_default_str();
    train->add_option("--predictions", train_args.predictions_out,
                      "Pooled out-of-fold predictions (CSV)");
    train->callback([&] { run_train(train_args); });

    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "Score a matrix with a trained model");
    eval->add_option("--matrix", eval_args.matrix_path, "Feature matrix (CSV)")
        ->required()
        ->check(CLI::ExistingFile);
    eval->add_option("--labels", eval_args.labels_path, "Labels (CSV)")
        ->required()
        ->check(CLI::ExistingFile);
    eval->add_option("--model", eval_args.model_path, "Model artifact")
        ->required()
        ->check(CLI::ExistingFile);
    eval->add_option("--threshold", eval_args.threshold, "Decision threshold")->capture_default_str();
    eval->add_flag("--rmse-on-scores", eval_args.rmse_on_scores,
                   "Compute RMSE on scores instead of hard labels");
    eval->add_option("--out", eval_args.out, "Predictions (CSV)")->capture_default_str();
    eval->callback([&] { run_eval(eval_args); });

    RankArgs rank_args;
    auto* rank = app.add_subcommand("rank", "Rank method scorecards by MinDis");
    rank->add_option("--scorecards", rank_args.scorecards_path, "Scorecards (CSV)")
        ->required()
        ->check(CLI::ExistingFile);
    rank->add_option("--scenario", rank_args.scenario, "Scenario I..IV or 'all'")->capture_default_str();
    rank->add_option("--weights", rank_args.custom_weights,
                     "Explicit weights w_c,w_u,w_a1,w_a2,w_rm (overrides --scenario)")
        ->delimiter(',');
    rank->add_option("--risk-matrix", rank_args.risk_matrix_path,
                     "Scenario definition file: metric,likelihood,severity per line")
        ->check(CLI::ExistingFile);
    rank->add_option("--out", rank_args.out, "Ranking report (CSV)")->capture_default_str();
    rank->add_option("--text", rank_args.text_out, "Aligned text report");
    rank->callback([&] { run_rank(rank_args); });

    AblateArgs ablate_args;
    auto* ablate = app.add_subcommand("ablate", "Per-feature relative-contribution analysis");
    ablate->add_option("--matrix", ablate_args.matrix_path, "Feature matrix (CSV)")
        ->required()
        ->check(CLI::ExistingFile);
    ablate->add_option("--labels", ablate_args.labels_path, "Labels (CSV)")
        ->required()
        ->check(CLI::ExistingFile);
    ablate->add_option("--mode", ablate_args.mode, "Removal unit: dimension | feature")->capture_default_str();
    ablate->add_option("--folds", ablate_args.folds, "Cross-validation folds")->capture_default_str();
    ablate->add_option("--seed", ablate_args.seed, "Fold-assignment seed")->capture_default_str();
    ablate->add_option("--learning-rate", ablate_args.train.learning_rate, "GD step size")->capture_default_str();
    ablate->add_option("--iterations", ablate_args.train.iterations, "GD iterations")->capture_default_str();
    ablate->add_option("--l2", ablate_args.train.l2, "L2 strength")->capture_default_str();
    ablate->add_option("--threshold", ablate_args.threshold, "Decision threshold")->capture_default_str();
    ablate->add_option("--workers", ablate_args.workers, "Parallel removals (0 = cores)")->capture_default_str();
    ablate->add_option("--out", ablate_args.out, "Ablation report (CSV)")->capture_default_str();
    ablate->callback([&] { run_ablate(ablate_args); });

    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus with ground truth");
    synth->add_option("--seed", synth_args.config.seed, "Generator seed")->required();
    synth->add_option("--users", synth_args.config.users, "User count")->capture_default_str();
    synth->add_option("--attachment", synth_args.config.attachment,
                      "Follow links per joining user")->capture_default_str();
    synth->add_option("--reciprocity", synth_args.config.reciprocity,
                      "Chance a followee follows back")->capture_default_str();
    synth->add_option("--topics", synth_args.config.topics, "Topic count")->capture_default_str();
    synth->add_option("--infectivity-low", synth_args.config.infectivity_low,
                      "Adoption probability for ordinary topics")->capture_default_str();
    synth->add_option("--infectivity-high", synth_args.config.infectivity_high,
                      "Adoption probability for popular topics")->capture_default_str();
    synth->add_option("--popular-fraction", synth_args.config.popular_fraction,
                      "Fraction of topics planted popular")->capture_default_str();
    synth->add_option("--buckets", synth_args.config.buckets, "Cascade horizon")->capture_default_str();
    synth->add_option("--seeds-per-topic", synth_args.config.seeds_per_topic,
                      "Seed adopters per topic")->capture_default_str();
    synth->add_option("--out-dir", synth_args.out_dir, "Output directory")->capture_default_str();
    synth->callback([&] { run_synth(synth_args); });

    ReproArgs repro_args;
    auto* repro = app.add_subcommand(
        "repro-tables", "Re-derive the published weight and ranking tables as a self-check");
    repro->add_option("--out-dir", repro_args.out_dir, "Output directory")->capture_default_str();
    repro->callback([&] { run_repro_tables(repro_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const tb::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const tb::InvariantError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
