#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "topicbench/core.hpp"

namespace topicbench {

struct IngestReport {
    std::size_t messages_ok = 0;
    std::size_t messages_rejected = 0;
    std::map<std::string, std::size_t> reject_reasons;
    std::size_t users = 0;   // distinct authors among accepted messages
    std::size_t topics = 0;  // distinct hashtags among accepted messages
    double hashtag_fraction = 0.0;  // tagged / ok
};

struct ParseOptions {
    // When set, messages whose "lang" field is absent or not in the set are
    // rejected with reason "language". Default: accept all.
    std::optional<std::set<std::string>> allowed_languages;
};

// Line-delimited JSON records: {"id","user","ts","text","hashtags","mentions",
// "retweet_of","urls","lang"}. id/user/ts are required; the rest default.
// Malformed lines are counted per reason and never abort the run.
std::pair<std::vector<Message>, IngestReport> parse_messages(std::istream& in,
                                                             const ParseOptions& options = {});
std::pair<std::vector<Message>, IngestReport> parse_messages_file(const std::string& path,
                                                                  const ParseOptions& options = {});

struct FollowerFileStats {
    std::size_t edges = 0;
    std::size_t duplicates = 0;
    std::size_t self_loops = 0;
    std::size_t malformed = 0;
};

// Tab-separated "follower<TAB>followee" lines; '#' starts a comment line.
FollowerGraph parse_followers(std::istream& in, FollowerFileStats* stats = nullptr);
FollowerGraph parse_followers_file(const std::string& path, FollowerFileStats* stats = nullptr);

// One node per author or mentioned user; edge (target, actor) weighted by the
// number of mention occurrences. Self-mentions are dropped.
InteractionGraph build_interaction_graph(const std::vector<Message>& messages);

// Hashtags whose corpus-wide message count >= min_total_count, sorted by count
// descending then lexicographically.
std::vector<std::string> extract_topics(const std::vector<Message>& messages,
                                        std::size_t min_total_count);

// Normalizes a raw tag: strips one leading '#', lowercases ASCII. Empty result
// means the tag should be dropped.
std::string normalize_hashtag(std::string tag);

}  // namespace topicbench
