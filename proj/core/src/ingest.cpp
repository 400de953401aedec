#include "topicbench/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "topicbench/errors.hpp"

namespace topicbench {

namespace {

using nlohmann::json;

bool get_string(const json& j, const char* key, std::string& out) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string()) return false;
    out = it->get<std::string>();
    return true;
}

// Parses one record; on failure sets `reason` and returns nullopt.
std::optional<Message> parse_record(const std::string& line, const ParseOptions& options,
                                    std::string& reason) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        reason = "bad_json";
        return std::nullopt;
    }

    Message m;
    if (!get_string(j, "id", m.id) || m.id.empty()) {
        reason = "missing_id";
        return std::nullopt;
    }
    if (!get_string(j, "user", m.author) || m.author.empty()) {
        reason = "missing_user";
        return std::nullopt;
    }
    auto ts = j.find("ts");
    if (ts == j.end() || !ts->is_number_integer()) {
        reason = "missing_timestamp";
        return std::nullopt;
    }
    m.timestamp = ts->get<std::int64_t>();
    if (m.timestamp < 0) {
        reason = "bad_timestamp";
        return std::nullopt;
    }

    if (options.allowed_languages) {
        std::string lang;
        if (!get_string(j, "lang", lang) || options.allowed_languages->count(lang) == 0) {
            reason = "language";
            return std::nullopt;
        }
    }

    if (auto it = j.find("text"); it != j.end()) {
        if (!it->is_string()) {
            reason = "bad_field";
            return std::nullopt;
        }
        m.text = it->get<std::string>();
    }
    if (auto it = j.find("hashtags"); it != j.end()) {
        if (!it->is_array()) {
            reason = "bad_field";
            return std::nullopt;
        }
        std::unordered_set<std::string> seen;
        for (const auto& v : *it) {
            if (!v.is_string()) {
                reason = "bad_field";
                return std::nullopt;
            }
            std::string tag = normalize_hashtag(v.get<std::string>());
            if (!tag.empty() && seen.insert(tag).second) m.hashtags.push_back(std::move(tag));
        }
    }
    if (auto it = j.find("mentions"); it != j.end()) {
        if (!it->is_array()) {
            reason = "bad_field";
            return std::nullopt;
        }
        for (const auto& v : *it) {
            if (!v.is_string()) {
                reason = "bad_field";
                return std::nullopt;
            }
            if (!v.get<std::string>().empty()) m.mentions.push_back(v.get<std::string>());
        }
    }
    if (auto it = j.find("retweet_of"); it != j.end() && !it->is_null()) {
        if (!it->is_string()) {
            reason = "bad_field";
            return std::nullopt;
        }
        m.retweet_of = it->get<std::string>();
    }
    if (auto it = j.find("urls"); it != j.end()) {
        if (!it->is_number_integer() || it->get<std::int64_t>() < 0) {
            reason = "bad_field";
            return std::nullopt;
        }
        m.urls = static_cast<int>(it->get<std::int64_t>());
    }
    return m;
}

}  // namespace

std::string normalize_hashtag(std::string tag) {
    if (!tag.empty() && tag.front() == '#') tag.erase(tag.begin());
    std::transform(tag.begin(), tag.end(), tag.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return tag;
}

std::pair<std::vector<Message>, IngestReport> parse_messages(std::istream& in,
                                                             const ParseOptions& options) {
    std::vector<Message> messages;
    IngestReport report;
    std::unordered_set<std::string> seen_ids;
    std::unordered_set<std::string> authors;
    std::unordered_set<std::string> tags;
    std::size_t tagged = 0;

    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            ++report.messages_rejected;
            ++report.reject_reasons["empty_line"];
            continue;
        }
        std::string reason;
        auto parsed = parse_record(line, options, reason);
        if (!parsed) {
            ++report.messages_rejected;
            ++report.reject_reasons[reason];
            continue;
        }
        if (!seen_ids.insert(parsed->id).second) {
            ++report.messages_rejected;
            ++report.reject_reasons["duplicate_id"];
            continue;
        }
        ++report.messages_ok;
        authors.insert(parsed->author);
        for (const auto& t : parsed->hashtags) tags.insert(t);
        if (!parsed->hashtags.empty()) ++tagged;
        messages.push_back(std::move(*parsed));
    }

    report.users = authors.size();
    report.topics = tags.size();
    report.hashtag_fraction =
        report.messages_ok == 0 ? 0.0
                                : static_cast<double>(tagged) / static_cast<double>(report.messages_ok);
    return {std::move(messages), report};
}

std::pair<std::vector<Message>, IngestReport> parse_messages_file(const std::string& path,
                                                                  const ParseOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read messages file: " + path);
    return parse_messages(in, options);
}

FollowerGraph parse_followers(std::istream& in, FollowerFileStats* stats) {
    FollowerGraph graph;
    FollowerFileStats local;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size() ||
            line.find('\t', tab + 1) != std::string::npos) {
            ++local.malformed;
            continue;
        }
        std::string follower = line.substr(0, tab);
        std::string followee = line.substr(tab + 1);
        if (follower == followee) {
            ++local.self_loops;
            continue;
        }
        if (graph.add_follow(follower, followee)) {
            ++local.edges;
        } else {
            ++local.duplicates;
        }
    }
    if (stats) *stats = local;
    return graph;
}

FollowerGraph parse_followers_file(const std::string& path, FollowerFileStats* stats) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read followers file: " + path);
    return parse_followers(in, stats);
}

InteractionGraph build_interaction_graph(const std::vector<Message>& messages) {
    InteractionGraph graph;
    for (const auto& m : messages) {
        graph.add_node(m.author);
        for (const auto& target : m.mentions) {
            graph.add_node(target);
            graph.add_interaction(target, m.author);
        }
    }
    return graph;
}

std::vector<std::string> extract_topics(const std::vector<Message>& messages,
                                        std::size_t min_total_count) {
    if (min_total_count < 1) throw InputError("min_total_count must be >= 1");
    std::map<std::string, std::size_t> counts;
    for (const auto& m : messages) {
        for (const auto& tag : m.hashtags) ++counts[tag];
    }
    std::vector<std::string> out;
    for (const auto& [tag, count] : counts) {
        if (count >= min_total_count) out.push_back(tag);
    }
    std::sort(out.begin(), out.end(), [&counts](const std::string& a, const std::string& b) {
        if (counts[a] != counts[b]) return counts[a] > counts[b];
        return a < b;
    });
    return out;
}

}  // namespace topicbench
