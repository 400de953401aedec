// Microbenchmarks for the hot paths: corpus synthesis, pagerank, topic-model
// fitting and inference, feature extraction, and classifier training. Run the
// binary directly; pass --benchmark_filter=<regex> to narrow the selection.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <topicbench/core.hpp>
#include <topicbench/features.hpp>
#include <topicbench/lda.hpp>
#include <topicbench/pagerank.hpp>
#include <topicbench/predict.hpp>
#include <topicbench/rng.hpp>
#include <topicbench/synth.hpp>

namespace tb = topicbench;

namespace {

tb::SynthConfig corpus_config(int users, int topics) {
    tb::SynthConfig config;
    config.users = users;
    config.topics = topics;
    config.buckets = 6;
    config.seeds_per_topic = 3;
    config.seed = 7;
    return config;
}

// One mid-sized corpus shared by the extraction benchmarks so the generator
// runs once per process instead of once per benchmark.
struct Corpus {
    tb::SynthOutput out;
    std::unique_ptr<tb::Dataset> dataset;
    std::vector<std::string> tags;
};

const Corpus& shared_corpus() {
    static const Corpus corpus = [] {
        Corpus built;
        built.out = tb::generate_in_memory(corpus_config(600, 60));
        tb::FollowerGraph followers;
        for (const auto& [follower, followee] : built.out.follows) {
            followers.add_follow(follower, followee);
        }
        built.dataset = std::make_unique<tb::Dataset>(
            built.out.messages, followers,
            tb::TimeBucketing{built.out.ledger.origin, built.out.ledger.period});
        for (const auto& [tag, counts] : built.out.ledger.adoption_counts) {
            built.tags.push_back(tag);
        }
        return built;
    }();
    return corpus;
}

tb::InteractionGraph random_interactions(int nodes, std::uint64_t seed) {
    tb::InteractionGraph graph;
    std::mt19937_64 rng(seed);
    for (int i = 0; i < nodes; ++i) graph.add_node("u" + std::to_string(i));
    const std::uint64_t span = static_cast<std::uint64_t>(nodes);
    for (int edge = 0; edge < nodes * 4; ++edge) {
        const std::uint64_t target = tb::uniform_below(rng, span);
        const std::uint64_t actor = tb::uniform_below(rng, span);
        if (target == actor) continue;
        graph.add_interaction("u" + std::to_string(target), "u" + std::to_string(actor));
    }
    return graph;
}

std::vector<std::vector<std::string>> random_documents(int docs, int vocabulary, int length,
                                                       std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<std::string>> documents(static_cast<std::size_t>(docs));
    for (auto& doc : documents) {
        doc.reserve(static_cast<std::size_t>(length));
        for (int token = 0; token < length; ++token) {
            doc.push_back("w" + std::to_string(
                                    tb::uniform_below(rng, static_cast<std::uint64_t>(vocabulary))));
        }
    }
    return documents;
}

void BM_SynthGenerate(benchmark::State& state) {
    const tb::SynthConfig config = corpus_config(static_cast<int>(state.range(0)), 50);
    std::size_t messages = 0;
    for (auto _ : state) {
        tb::SynthOutput out = tb::generate_in_memory(config);
        messages = out.messages.size();
        benchmark::DoNotOptimize(out.messages.data());
    }
    state.counters["messages"] = static_cast<double>(messages);
}
BENCHMARK(BM_SynthGenerate)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Pagerank(benchmark::State& state) {
    const tb::InteractionGraph graph = random_interactions(static_cast<int>(state.range(0)), 11);
    for (auto _ : state) {
        auto scores = tb::pagerank(graph);
        benchmark::DoNotOptimize(scores);
    }
}
BENCHMARK(BM_Pagerank)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_LdaFit(benchmark::State& state) {
    const auto documents = random_documents(static_cast<int>(state.range(0)), 400, 12, 3);
    const tb::LdaConfig config;
    for (auto _ : state) {
        tb::TopicModel model = tb::TopicModel::fit(documents, config);
        benchmark::DoNotOptimize(model.vocabulary_size());
    }
}
BENCHMARK(BM_LdaFit)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_LdaInfer(benchmark::State& state) {
    const auto documents = random_documents(400, 400, 12, 3);
    const tb::TopicModel model = tb::TopicModel::fit(documents, tb::LdaConfig{});
    const auto query = random_documents(1, 400, 40, 9).front();
    std::uint64_t salt = 0;
    for (auto _ : state) {
        auto distribution = model.infer(query, salt++);
        benchmark::DoNotOptimize(distribution.data());
    }
}
BENCHMARK(BM_LdaInfer)->Unit(benchmark::kMicrosecond);

// Shared-state construction: corpus statistics, topic model, pagerank.
void BM_FeatureExtractorSetup(benchmark::State& state) {
    const Corpus& corpus = shared_corpus();
    tb::FeatureConfig config;
    config.window = 3;
    config.workers = 1;
    for (auto _ : state) {
        const tb::FeatureExtractor extractor(*corpus.dataset, config);
        benchmark::DoNotOptimize(&extractor.corpus_stats());
    }
}
BENCHMARK(BM_FeatureExtractorSetup)->Unit(benchmark::kMillisecond);

// Marginal per-topic cost once the shared state exists.
void BM_FeatureRow(benchmark::State& state) {
    const Corpus& corpus = shared_corpus();
    tb::FeatureConfig config;
    config.window = 3;
    config.workers = 1;
    const tb::FeatureExtractor extractor(*corpus.dataset, config);
    std::size_t next = 0;
    for (auto _ : state) {
        const std::string& tag = corpus.tags[next++ % corpus.tags.size()];
        tb::FeatureRow row = extractor.row(tag, 3);
        benchmark::DoNotOptimize(row.values.data());
    }
}
BENCHMARK(BM_FeatureRow)->Unit(benchmark::kMicrosecond);

void BM_FeatureMatrix(benchmark::State& state) {
    const Corpus& corpus = shared_corpus();
    tb::FeatureConfig config;
    config.window = 3;
    config.workers = static_cast<int>(state.range(0));
    for (auto _ : state) {
        tb::FeatureMatrix matrix = tb::feature_matrix(*corpus.dataset, corpus.tags, 3, config);
        benchmark::DoNotOptimize(matrix.rows.data());
    }
}
BENCHMARK(BM_FeatureMatrix)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_TrainClassifier(benchmark::State& state) {
    const auto& schema = tb::FeatureSchema::standard();
    const std::vector<std::string> names = schema.dimension_names();
    const int rows_wanted = static_cast<int>(state.range(0));
    std::mt19937_64 rng(21);
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (int i = 0; i < rows_wanted; ++i) {
        const int label = static_cast<int>(i % 2);
        std::vector<double> row(names.size());
        for (double& value : row) value = tb::uniform_double(rng) - 0.5;
        row[0] += label == 1 ? 1.0 : -1.0;  // plant a separable direction
        rows.push_back(std::move(row));
        labels.push_back(label);
    }
    const tb::TrainConfig config;
    for (auto _ : state) {
        tb::LinearModel model = tb::LinearModel::train(rows, labels, names, config);
        benchmark::DoNotOptimize(model.bias());
    }
}
BENCHMARK(BM_TrainClassifier)->Arg(240)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
