#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace topicbench {

using UserId = std::string;
using MessageId = std::string;

struct Message {
    MessageId id;
    UserId author;
    std::int64_t timestamp = 0;  // seconds since epoch, UTC
    std::string text;
    std::vector<std::string> hashtags;  // lowercased, deduplicated, no leading '#'
    std::vector<UserId> mentions;       // one entry per mention occurrence
    std::optional<MessageId> retweet_of;
    int urls = 0;
};

// Directed interaction counts. An edge keyed (target, actor) records how many
// times the actor mentioned or replied to the target; weight accumulates per
// occurrence. Self-interactions are ignored.
struct InteractionGraph {
    std::set<UserId> nodes;
    std::map<std::pair<UserId, UserId>, std::int64_t> edges;

    void add_node(const UserId& user) { nodes.insert(user); }
    void add_interaction(const UserId& target, const UserId& actor, std::int64_t times = 1);
    std::int64_t weight(const UserId& target, const UserId& actor) const;
};

// Follow relation with both directions indexed. No self-follow entries.
struct FollowerGraph {
    std::map<UserId, std::set<UserId>> following;  // follower -> followees
    std::map<UserId, std::set<UserId>> followers;  // followee -> followers

    // Returns false (and stores nothing) for self-follows and duplicates.
    bool add_follow(const UserId& follower, const UserId& followee);
    std::size_t follower_count(const UserId& user) const;
    bool follows(const UserId& follower, const UserId& followee) const;
};

struct TimeBucketing {
    std::int64_t origin = 0;
    std::int64_t period = 86400;  // seconds; must be > 0

    // floor((ts - origin) / period), exact for negative offsets too
    std::int64_t bucket_of(std::int64_t timestamp) const;
    std::int64_t bucket_start(std::int64_t bucket) const { return origin + bucket * period; }
};

// Bucketing anchored at midnight UTC of the earliest message.
TimeBucketing default_bucketing(const std::vector<Message>& messages, std::int64_t period = 86400);

// One hashtag-topic in one time bucket. users are exactly the authors of
// messages; edges are the interactions of those messages restricted to pairs
// inside users, keyed (target, actor).
struct TopicSnapshot {
    std::string topic;
    std::int64_t bucket = 0;
    std::set<UserId> users;
    std::map<std::pair<UserId, UserId>, std::int64_t> edges;
    std::vector<MessageId> messages;

    bool empty() const { return messages.empty(); }
};

struct TimeSeries {
    std::string topic;
    std::int64_t start_bucket = 0;
    std::vector<std::int64_t> counts;  // counts[i] = popularity at start_bucket + i
};

class Dataset;

std::map<std::int64_t, std::vector<MessageId>> bucketize(const std::vector<Message>& messages,
                                                         const TimeBucketing& bucketing);

TopicSnapshot topic_snapshot(const Dataset& dataset, const std::string& topic, std::int64_t bucket);

std::int64_t popularity(const TopicSnapshot& snapshot);

// Inclusive bucket range; first_bucket > last_bucket is an InputError.
TimeSeries topic_series(const Dataset& dataset, const std::string& topic,
                        std::int64_t first_bucket, std::int64_t last_bucket);

// Immutable, fully indexed view of a parsed corpus. Construction is
// single-threaded; afterwards the object is safe to share across workers.
class Dataset {
public:
    Dataset(std::vector<Message> messages, FollowerGraph followers, TimeBucketing bucketing);

    // Convenience: bucketing defaulted from the corpus.
    Dataset(std::vector<Message> messages, FollowerGraph followers);

    const std::vector<Message>& messages() const { return messages_; }
    const Message* find_message(const MessageId& id) const;
    const FollowerGraph& follower_graph() const { return followers_; }
    const InteractionGraph& interaction_graph() const { return interactions_; }
    const TimeBucketing& bucketing() const { return bucketing_; }

    const std::map<std::int64_t, std::vector<std::size_t>>& buckets() const { return buckets_; }

    // Everyone who posted anything (tagged or not) in the bucket.
    const std::set<UserId>& active_users(std::int64_t bucket) const;

    // Indices of messages in the bucket carrying the hashtag; empty if none.
    const std::vector<std::size_t>& topic_bucket_messages(const std::string& topic,
                                                          std::int64_t bucket) const;

    // All hashtags seen, sorted by total count descending then lexicographically.
    std::vector<std::string> topics() const;
    std::int64_t topic_total_count(const std::string& topic) const;

    // Order-sensitive digest of the message list; identical re-parses agree.
    std::uint64_t content_hash() const { return content_hash_; }

private:
    void build_indexes();

    std::vector<Message> messages_;
    FollowerGraph followers_;
    InteractionGraph interactions_;
    TimeBucketing bucketing_;
    std::map<std::int64_t, std::vector<std::size_t>> buckets_;
    std::map<std::int64_t, std::set<UserId>> active_users_;
    std::map<std::string, std::map<std::int64_t, std::vector<std::size_t>>> topic_index_;
    std::map<std::string, std::int64_t> topic_counts_;
    std::map<MessageId, std::size_t> id_index_;
    std::uint64_t content_hash_ = 0;
};

}  // namespace topicbench
