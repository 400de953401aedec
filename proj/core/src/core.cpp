#include "topicbench/core.hpp"

#include <algorithm>
#include <limits>

#include "topicbench/errors.hpp"
#include "topicbench/ingest.hpp"
#include "topicbench/io.hpp"

namespace topicbench {

void InteractionGraph::add_interaction(const UserId& target, const UserId& actor,
                                       std::int64_t times) {
    if (times <= 0 || target == actor) return;
    nodes.insert(target);
    nodes.insert(actor);
    edges[{target, actor}] += times;
}

std::int64_t InteractionGraph::weight(const UserId& target, const UserId& actor) const {
    auto it = edges.find({target, actor});
    return it == edges.end() ? 0 : it->second;
}

bool FollowerGraph::add_follow(const UserId& follower, const UserId& followee) {
    if (follower == followee) return false;
    if (!following[follower].insert(followee).second) return false;
    followers[followee].insert(follower);
    return true;
}

std::size_t FollowerGraph::follower_count(const UserId& user) const {
    auto it = followers.find(user);
    return it == followers.end() ? 0 : it->second.size();
}

bool FollowerGraph::follows(const UserId& follower, const UserId& followee) const {
    auto it = following.find(follower);
    return it != following.end() && it->second.count(followee) > 0;
}

std::int64_t TimeBucketing::bucket_of(std::int64_t timestamp) const {
    if (period <= 0) throw InputError("bucketing period must be positive");
    std::int64_t offset = timestamp - origin;
    std::int64_t q = offset / period;
    if (offset % period != 0 && offset < 0) --q;
    return q;
}

TimeBucketing default_bucketing(const std::vector<Message>& messages, std::int64_t period) {
    if (period <= 0) throw InputError("bucketing period must be positive");
    TimeBucketing b;
    b.period = period;
    if (!messages.empty()) {
        std::int64_t earliest = std::numeric_limits<std::int64_t>::max();
        for (const auto& m : messages) earliest = std::min(earliest, m.timestamp);
        // midnight UTC of the earliest message
        std::int64_t day = earliest / 86400;
        if (earliest % 86400 != 0 && earliest < 0) --day;
        b.origin = day * 86400;
    }
    return b;
}

std::map<std::int64_t, std::vector<MessageId>> bucketize(const std::vector<Message>& messages,
                                                         const TimeBucketing& bucketing) {
    if (bucketing.period <= 0) throw InputError("bucketing period must be positive");
    std::map<std::int64_t, std::vector<MessageId>> out;
    for (const auto& m : messages) {
        out[bucketing.bucket_of(m.timestamp)].push_back(m.id);
    }
    return out;
}

Dataset::Dataset(std::vector<Message> messages, FollowerGraph followers, TimeBucketing bucketing)
    : messages_(std::move(messages)), followers_(std::move(followers)), bucketing_(bucketing) {
    build_indexes();
}

Dataset::Dataset(std::vector<Message> messages, FollowerGraph followers)
    : messages_(std::move(messages)), followers_(std::move(followers)) {
    bucketing_ = default_bucketing(messages_);
    build_indexes();
}

void Dataset::build_indexes() {
    if (bucketing_.period <= 0) throw InputError("bucketing period must be positive");
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < messages_.size(); ++i) {
        const Message& m = messages_[i];
        if (m.id.empty()) throw InvariantError("message with empty id");
        if (m.timestamp < 0) throw InvariantError("message with negative timestamp: " + m.id);
        if (!id_index_.emplace(m.id, i).second) {
            throw InvariantError("duplicate message id: " + m.id);
        }
        std::int64_t bucket = bucketing_.bucket_of(m.timestamp);
        buckets_[bucket].push_back(i);
        active_users_[bucket].insert(m.author);
        for (const auto& tag : m.hashtags) {
            topic_index_[tag][bucket].push_back(i);
            topic_counts_[tag] += 1;
        }
        hash = fnv1a64_extend(hash, m.id);
        hash = fnv1a64_extend(hash, "\x1f");
        hash = fnv1a64_extend(hash, m.author);
        hash = fnv1a64_extend(hash, "\x1f");
        hash = fnv1a64_extend(hash, std::to_string(m.timestamp));
        hash = fnv1a64_extend(hash, "\x1f");
        hash = fnv1a64_extend(hash, m.text);
        for (const auto& tag : m.hashtags) {
            hash = fnv1a64_extend(hash, "\x1f#");
            hash = fnv1a64_extend(hash, tag);
        }
        for (const auto& u : m.mentions) {
            hash = fnv1a64_extend(hash, "\x1f@");
            hash = fnv1a64_extend(hash, u);
        }
        hash = fnv1a64_extend(hash, "\x1f");
        hash = fnv1a64_extend(hash, m.retweet_of ? *m.retweet_of : std::string());
        hash = fnv1a64_extend(hash, "\x1f");
        hash = fnv1a64_extend(hash, std::to_string(m.urls));
        hash = fnv1a64_extend(hash, "\n");
    }
    content_hash_ = hash;
    interactions_ = build_interaction_graph(messages_);
}

const Message* Dataset::find_message(const MessageId& id) const {
    auto it = id_index_.find(id);
    return it == id_index_.end() ? nullptr : &messages_[it->second];
}

const std::set<UserId>& Dataset::active_users(std::int64_t bucket) const {
    static const std::set<UserId> kEmpty;
    auto it = active_users_.find(bucket);
    return it == active_users_.end() ? kEmpty : it->second;
}

const std::vector<std::size_t>& Dataset::topic_bucket_messages(const std::string& topic,
                                                               std::int64_t bucket) const {
    static const std::vector<std::size_t> kEmpty;
    auto it = topic_index_.find(topic);
    if (it == topic_index_.end()) return kEmpty;
    auto jt = it->second.find(bucket);
    return jt == it->second.end() ? kEmpty : jt->second;
}

std::vector<std::string> Dataset::topics() const {
    std::vector<std::string> out;
    out.reserve(topic_counts_.size());
    for (const auto& [tag, _] : topic_counts_) out.push_back(tag);
    std::sort(out.begin(), out.end(), [this](const std::string& a, const std::string& b) {
        std::int64_t ca = topic_counts_.at(a), cb = topic_counts_.at(b);
        if (ca != cb) return ca > cb;
        return a < b;
    });
    return out;
}

std::int64_t Dataset::topic_total_count(const std::string& topic) const {
    auto it = topic_counts_.find(topic);
    return it == topic_counts_.end() ? 0 : it->second;
}

TopicSnapshot topic_snapshot(const Dataset& dataset, const std::string& topic,
                             std::int64_t bucket) {
    TopicSnapshot snap;
    snap.topic = topic;
    snap.bucket = bucket;
    const auto& indices = dataset.topic_bucket_messages(topic, bucket);
    snap.messages.reserve(indices.size());
    for (std::size_t idx : indices) {
        const Message& m = dataset.messages()[idx];
        snap.messages.push_back(m.id);
        snap.users.insert(m.author);
    }
    // Interactions of the snapshot messages, kept only when both endpoints
    // posted about the topic in this bucket.
    for (std::size_t idx : indices) {
        const Message& m = dataset.messages()[idx];
        for (const auto& target : m.mentions) {
            if (target == m.author) continue;
            if (snap.users.count(target) == 0) continue;
            snap.edges[{target, m.author}] += 1;
        }
    }
    return snap;
}

std::int64_t popularity(const TopicSnapshot& snapshot) {
    return static_cast<std::int64_t>(snapshot.messages.size());
}

TimeSeries topic_series(const Dataset& dataset, const std::string& topic,
                        std::int64_t first_bucket, std::int64_t last_bucket) {
    if (first_bucket > last_bucket) throw InputError("inverted bucket range");
    TimeSeries series;
    series.topic = topic;
    series.start_bucket = first_bucket;
    series.counts.reserve(static_cast<std::size_t>(last_bucket - first_bucket + 1));
    for (std::int64_t b = first_bucket; b <= last_bucket; ++b) {
        series.counts.push_back(
            static_cast<std::int64_t>(dataset.topic_bucket_messages(topic, b).size()));
    }
    return series;
}

}  // namespace topicbench
