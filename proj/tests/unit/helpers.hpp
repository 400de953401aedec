#pragma once

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <unistd.h>

#include "topicbench/core.hpp"

namespace testutil {

inline topicbench::Message msg(std::string id, std::string author, std::int64_t ts,
                               std::string text = "", std::vector<std::string> hashtags = {}) {
    topicbench::Message m;
    m.id = std::move(id);
    m.author = std::move(author);
    m.timestamp = ts;
    m.text = std::move(text);
    m.hashtags = std::move(hashtags);
    return m;
}

inline topicbench::Dataset dataset_of(std::vector<topicbench::Message> messages,
                                      topicbench::FollowerGraph followers = {}) {
    return topicbench::Dataset(std::move(messages), std::move(followers));
}

// Unique scratch directory per test binary run, cleaned up on destruction.
class ScratchDir {
public:
    explicit ScratchDir(const std::string& label) {
        path_ = std::filesystem::temp_directory_path() /
                ("topicbench_test_" + label + "_" + std::to_string(::getpid()));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~ScratchDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::string file(const std::string& name) const { return (path_ / name).string(); }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

}  // namespace testutil
