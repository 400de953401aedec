#include "topicbench/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include <nlohmann/json.hpp>

#include "topicbench/errors.hpp"
#include "topicbench/io.hpp"
#include "topicbench/rng.hpp"

namespace topicbench {

namespace {

using nlohmann::ordered_json;

constexpr std::int64_t kOrigin = 20000LL * 86400LL;  // a midnight, so bucket 0 aligns
constexpr std::size_t kThemes = 20;
constexpr std::size_t kThemeVocab = 30;

const char* const kCommonWords[] = {"the", "and", "for", "with", "this", "that",
                                    "just", "now",  "out", "new"};

std::string padded(const char* prefix, std::size_t value, int width) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%0*zu", prefix, width, value);
    return buf;
}

}  // namespace

void SynthConfig::validate() const {
    if (users < 2) throw InputError("synth needs at least 2 users");
    if (attachment < 1) throw InputError("attachment must be >= 1");
    if (!(reciprocity >= 0.0 && reciprocity <= 1.0)) {
        throw InputError("reciprocity must lie in [0, 1]");
    }
    if (topics < 1) throw InputError("synth needs at least 1 topic");
    if (!(infectivity_low >= 0.0 && infectivity_low <= 1.0)) {
        throw InputError("infectivity_low must lie in [0, 1]");
    }
    if (!(infectivity_high >= 0.0 && infectivity_high <= 1.0)) {
        throw InputError("infectivity_high must lie in [0, 1]");
    }
    if (!(popular_fraction >= 0.0 && popular_fraction <= 1.0)) {
        throw InputError("popular_fraction must lie in [0, 1]");
    }
    if (buckets < 1) throw InputError("synth needs at least 1 bucket");
    if (seeds_per_topic < 1 || seeds_per_topic > users) {
        throw InputError("seeds_per_topic must lie in [1, users]");
    }
}

SynthOutput generate_in_memory(const SynthConfig& config) {
    config.validate();
    std::mt19937_64 gen(config.seed);
    const std::size_t n = static_cast<std::size_t>(config.users);

    SynthOutput out;
    out.ledger.origin = kOrigin;
    out.ledger.period = 86400;
    out.ledger.buckets = config.buckets;

    std::vector<UserId> users(n);
    for (std::size_t i = 0; i < n; ++i) users[i] = padded("u", i, 5);

    // follower graph by preferential attachment: each joining user follows
    // up to `attachment` distinct earlier users, weighted by current
    // follower count + 1. Each followed user follows back with probability
    // `reciprocity`; without follow-backs every edge would point from a later
    // joiner to an earlier one and cascades could never reach the
    // well-followed early users.
    std::vector<std::vector<std::size_t>> followers_of(n);
    std::vector<std::size_t> follower_count(n, 0);
    std::size_t total_weight = 0;  // sum over existing users of count + 1
    for (std::size_t i = 1; i < n; ++i) {
        total_weight = 0;
        for (std::size_t j = 0; j < i; ++j) total_weight += follower_count[j] + 1;
        const std::size_t want = std::min<std::size_t>(config.attachment, i);
        std::set<std::size_t> chosen;
        std::size_t attempts = 0;
        const std::size_t max_attempts = 20 * want + 50;
        while (chosen.size() < want && attempts < max_attempts) {
            ++attempts;
            std::uint64_t r = uniform_below(gen, total_weight);
            std::uint64_t running = 0;
            std::size_t pick = 0;
            for (std::size_t j = 0; j < i; ++j) {
                running += follower_count[j] + 1;
                if (r < running) {
                    pick = j;
                    break;
                }
            }
            chosen.insert(pick);
        }
        for (std::size_t j : chosen) {
            out.follows.emplace_back(users[i], users[j]);
            followers_of[j].push_back(i);
            ++follower_count[j];
            if (uniform_double(gen) < config.reciprocity) {
                out.follows.emplace_back(users[j], users[i]);
                followers_of[i].push_back(j);
                ++follower_count[i];
            }
        }
    }

    // plant the popular class on a seeded shuffle of the topic indices
    const std::size_t topic_count = static_cast<std::size_t>(config.topics);
    std::vector<std::size_t> topic_order(topic_count);
    for (std::size_t t = 0; t < topic_count; ++t) topic_order[t] = t;
    shuffle_inplace(topic_order, gen);
    const auto popular_count = static_cast<std::size_t>(
        std::min<long long>(std::llround(config.popular_fraction * static_cast<double>(topic_count)),
                            static_cast<long long>(topic_count)));
    std::vector<int> planted(topic_count, 0);
    for (std::size_t t = 0; t < popular_count; ++t) planted[topic_order[t]] = 1;

    struct Adoption {
        std::size_t user;
        std::size_t infector = 0;
        bool seeded = true;
        std::int64_t bucket = 0;
    };

    std::size_t message_counter = 0;
    std::vector<char> adopted(n, 0);
    for (std::size_t t = 0; t < topic_count; ++t) {
        const std::string tag = padded("tag", t, 4);
        const double p = planted[t] == 1 ? config.infectivity_high : config.infectivity_low;
        const std::size_t theme = t % kThemes;

        // seeds are follower-weighted (like the attachment rule): topics enter
        // the network through visible accounts, and a high-infectivity cascade
        // from a visible seed reliably ignites instead of flickering out
        std::set<std::size_t> seed_users;
        std::size_t seed_weight = 0;
        for (std::size_t j = 0; j < n; ++j) seed_weight += follower_count[j] + 1;
        while (seed_users.size() < static_cast<std::size_t>(config.seeds_per_topic)) {
            std::uint64_t r = uniform_below(gen, seed_weight);
            std::uint64_t running = 0;
            for (std::size_t j = 0; j < n; ++j) {
                running += follower_count[j] + 1;
                if (r < running) {
                    seed_users.insert(j);
                    break;
                }
            }
        }

        std::fill(adopted.begin(), adopted.end(), 0);
        std::vector<Adoption> adoptions;
        std::vector<std::size_t> frontier;  // indexes into adoptions
        for (std::size_t s : seed_users) {
            adopted[s] = 1;
            frontier.push_back(adoptions.size());
            adoptions.push_back({s, 0, true, 0});
        }
        for (std::int64_t b = 1; b < config.buckets && !frontier.empty(); ++b) {
            std::vector<std::size_t> next;
            for (std::size_t ai : frontier) {
                const std::size_t source = adoptions[ai].user;
                for (std::size_t f : followers_of[source]) {
                    if (adopted[f]) continue;
                    if (uniform_double(gen) < p) {
                        adopted[f] = 1;
                        next.push_back(adoptions.size());
                        adoptions.push_back({f, source, false, b});
                    }
                }
            }
            frontier = std::move(next);
        }

        // one message per adoption, in adoption order
        auto& counts = out.ledger.adoption_counts[tag];
        counts.assign(static_cast<std::size_t>(config.buckets), 0);
        out.ledger.planted_labels[tag] = planted[t];
        std::map<std::size_t, MessageId> message_of;  // adopter -> message in this topic
        for (const Adoption& a : adoptions) {
            Message m;
            m.id = padded("m", message_counter++, 6);
            m.author = users[a.user];
            m.timestamp = kOrigin + a.bucket * 86400 +
                          static_cast<std::int64_t>(uniform_below(gen, 86400));
            std::string text;
            for (int w = 0; w < 8; ++w) {
                if (!text.empty()) text.push_back(' ');
                if (uniform_double(gen) < 0.15) {
                    text += kCommonWords[uniform_below(gen, 10)];
                } else {
                    text += "t" + std::to_string(theme) + "w" +
                            std::to_string(uniform_below(gen, kThemeVocab));
                }
            }
            text += " #" + tag;
            m.text = std::move(text);
            m.hashtags.push_back(tag);
            if (uniform_double(gen) < 0.1) m.hashtags.push_back("misc");
            if (!a.seeded) {
                m.mentions.push_back(users[a.infector]);
                if (uniform_double(gen) < 0.5) m.retweet_of = message_of.at(a.infector);
            }
            m.urls = uniform_double(gen) < 0.2 ? 1 : 0;
            message_of[a.user] = m.id;

            ++counts[static_cast<std::size_t>(a.bucket)];
            out.ledger.provenance.push_back(
                {m.id, m.author, tag, a.bucket, a.seeded ? UserId{} : users[a.infector]});
            out.messages.push_back(std::move(m));
        }
    }
    return out;
}

std::string messages_to_jsonl(const std::vector<Message>& messages) {
    std::string out;
    for (const auto& m : messages) {
        ordered_json j;
        j["id"] = m.id;
        j["user"] = m.author;
        j["ts"] = m.timestamp;
        j["lang"] = "en";
        j["text"] = m.text;
        j["hashtags"] = m.hashtags;
        j["mentions"] = m.mentions;
        if (m.retweet_of) j["retweet_of"] = *m.retweet_of;
        j["urls"] = m.urls;
        out += j.dump();
        out.push_back('\n');
    }
    return out;
}

std::string follows_to_tsv(const std::vector<std::pair<UserId, UserId>>& follows) {
    std::string out = "# follower\tfollowee\n";
    for (const auto& [follower, followee] : follows) {
        out += follower;
        out.push_back('\t');
        out += followee;
        out.push_back('\n');
    }
    return out;
}

std::string GenerationLedger::to_json() const {
    ordered_json j;
    j["origin"] = origin;
    j["period"] = period;
    j["buckets"] = buckets;
    ordered_json topics = ordered_json::object();
    for (const auto& [tag, counts] : adoption_counts) {
        ordered_json entry;
        entry["label"] = planted_labels.at(tag);
        entry["counts"] = counts;
        topics[tag] = std::move(entry);
    }
    j["topics"] = std::move(topics);
    ordered_json prov = ordered_json::array();
    for (const auto& p : provenance) {
        ordered_json row;
        row["id"] = p.id;
        row["user"] = p.user;
        row["topic"] = p.topic;
        row["bucket"] = p.bucket;
        row["infected_by"] = p.infected_by;
        prov.push_back(std::move(row));
    }
    j["provenance"] = std::move(prov);
    return j.dump(2) + "\n";
}

GenerationLedger GenerationLedger::from_json(const std::string& text) {
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw InputError("ledger file is not valid JSON");
    try {
        GenerationLedger ledger;
        ledger.origin = j.at("origin").get<std::int64_t>();
        ledger.period = j.at("period").get<std::int64_t>();
        ledger.buckets = j.at("buckets").get<std::int64_t>();
        for (const auto& [tag, entry] : j.at("topics").items()) {
            ledger.planted_labels[tag] = entry.at("label").get<int>();
            ledger.adoption_counts[tag] =
                entry.at("counts").get<std::vector<std::int64_t>>();
        }
        for (const auto& row : j.at("provenance")) {
            GenerationLedger::Provenance p;
            p.id = row.at("id").get<std::string>();
            p.user = row.at("user").get<std::string>();
            p.topic = row.at("topic").get<std::string>();
            p.bucket = row.at("bucket").get<std::int64_t>();
            p.infected_by = row.at("infected_by").get<std::string>();
            ledger.provenance.push_back(std::move(p));
        }
        return ledger;
    } catch (const ordered_json::exception& e) {
        throw InputError(std::string("ledger file is malformed: ") + e.what());
    }
}

GenerationLedger generate(const SynthConfig& config, const std::string& messages_path,
                          const std::string& followers_path, const std::string& ledger_path) {
    SynthOutput out = generate_in_memory(config);
    write_file_atomic(messages_path, messages_to_jsonl(out.messages));
    write_file_atomic(followers_path, follows_to_tsv(out.follows));
    write_file_atomic(ledger_path, out.ledger.to_json());
    return std::move(out.ledger);
}

}  // namespace topicbench
