#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "topicbench/core.hpp"

namespace topicbench {

// Parameters of the synthetic corpus generator. The seed is part of the
// contract: the same config always produces byte-identical output.
struct SynthConfig {
    int users = 2000;
    int attachment = 2;             // follow links added per joining user
    double reciprocity = 0.25;      // chance a followee follows back immediately
    int topics = 300;
    double infectivity_low = 0.05;
    double infectivity_high = 0.4;
    double popular_fraction = 0.2;  // fraction of topics planted as popular
    int buckets = 8;                // cascade horizon in time buckets
    int seeds_per_topic = 5;
    std::uint64_t seed = 0;

    void validate() const;
};

// Ground truth recorded during generation, used as a pipeline oracle.
struct GenerationLedger {
    struct Provenance {
        MessageId id;
        UserId user;
        std::string topic;
        std::int64_t bucket = 0;
        UserId infected_by;  // empty for seed adopters
    };

    std::int64_t origin = 0;
    std::int64_t period = 86400;
    std::int64_t buckets = 0;
    std::map<std::string, std::vector<std::int64_t>> adoption_counts;  // bucket 0..buckets-1
    std::map<std::string, int> planted_labels;                         // 1 = popular
    std::vector<Provenance> provenance;

    std::string to_json() const;
    static GenerationLedger from_json(const std::string& text);
};

struct SynthOutput {
    std::vector<Message> messages;
    std::vector<std::pair<UserId, UserId>> follows;  // (follower, followee)
    GenerationLedger ledger;
};

// Preferential-attachment follower graph (with follow-backs so influence can
// travel both ways along the join order) plus an independent cascade per
// topic; popular topics spread with infectivity_high, the rest with
// infectivity_low. Single-threaded and fully deterministic.
SynthOutput generate_in_memory(const SynthConfig& config);

// Serializations of the in-memory output (message corpus as JSONL records,
// follows as TSV lines, ledger as JSON).
std::string messages_to_jsonl(const std::vector<Message>& messages);
std::string follows_to_tsv(const std::vector<std::pair<UserId, UserId>>& follows);

// Writes the three artifacts and returns the ledger.
GenerationLedger generate(const SynthConfig& config, const std::string& messages_path,
                          const std::string& followers_path, const std::string& ledger_path);

}  // namespace topicbench
