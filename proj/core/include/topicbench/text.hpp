#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace topicbench {

// Lowercased word tokens. A word character is an ASCII letter, an ASCII digit
// or any non-ASCII byte (so UTF-8 text stays intact); everything else splits.
std::vector<std::string> tokenize(std::string_view text);

// term<TAB>score per line; '#' starts a comment line.
struct SentimentLexicon {
    std::map<std::string, double> scores;

    bool empty() const { return scores.empty(); }
    double score(const std::string& term) const;
    static SentimentLexicon from_file(const std::string& path);
};

// Sum of positive / negative term scores over the tokens of one text.
struct SentimentSums {
    double positive = 0.0;
    double negative = 0.0;
};
SentimentSums sentiment_sums(std::string_view text, const SentimentLexicon& lexicon);

const std::vector<std::string>& default_emoticons();

// Occurrences of table entries, scanned left to right, longest match first,
// non-overlapping.
std::size_t count_emoticons(std::string_view text);
std::size_t count_emoticons(std::string_view text, const std::vector<std::string>& table);

// Maximal runs of >= 3 identical characters, letters or punctuation, each run
// counted once ("Goooood" -> 1, "!!!!" -> 1).
std::size_t count_special_signals(std::string_view text);

// One word per line; used for hashtag segmentation.
struct Wordlist {
    std::set<std::string> words;
    std::size_t max_length = 0;

    bool empty() const { return words.empty(); }
    void add(std::string word);
    static Wordlist from_file(const std::string& path);
};

// Greedy longest-match segmentation against the wordlist; when the tag cannot
// be fully segmented, falls back to digit/case boundary splitting. Always >= 1
// for a non-empty tag.
std::size_t hashtag_word_count(std::string_view tag, const Wordlist& wordlist);

bool contains_digit(std::string_view text);

}  // namespace topicbench
