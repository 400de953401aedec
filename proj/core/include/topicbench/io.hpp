#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace topicbench {

// FNV-1a 64-bit; used for schema hashes, dataset digests and manifest digests.
std::uint64_t fnv1a64(std::string_view data);
std::uint64_t fnv1a64_extend(std::uint64_t hash, std::string_view data);
std::uint64_t fnv1a64_file(const std::string& path);
std::string hex64(std::uint64_t value);

// Canonical double formatting (%.17g): round-trips exactly and is stable, so
// emitted files can be byte-compared across runs.
std::string format_double(double value);
double parse_double(const std::string& text);

std::vector<std::string> split(std::string_view line, char sep);

// Writes content to path atomically (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// Run metadata written beside every CLI output. Timestamps are ISO 8601 UTC.
struct RunManifest {
    std::string command;
    std::string tool_version;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> config;
    std::map<std::string, std::string> input_digests;  // path -> fnv1a64 hex
    std::string started_at;
    std::string finished_at;

    void save(const std::string& path) const;  // atomic
};

std::string iso8601_utc_now();

}  // namespace topicbench
