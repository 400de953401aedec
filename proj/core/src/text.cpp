#include "topicbench/text.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "topicbench/errors.hpp"
#include "topicbench/io.hpp"

namespace topicbench {

namespace {

bool is_word_byte(unsigned char c) {
    return std::isalnum(c) != 0 || c >= 0x80;
}

char ascii_lower(unsigned char c) {
    return static_cast<char>(std::tolower(c));
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (unsigned char c : text) {
        if (is_word_byte(c)) {
            current.push_back(ascii_lower(c));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

double SentimentLexicon::score(const std::string& term) const {
    auto it = scores.find(term);
    return it == scores.end() ? 0.0 : it->second;
}

SentimentLexicon SentimentLexicon::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read lexicon file: " + path);
    SentimentLexicon lexicon;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos) throw InputError("lexicon line without tab: " + line);
        std::string term = line.substr(0, tab);
        std::transform(term.begin(), term.end(), term.begin(),
                       [](unsigned char c) { return ascii_lower(c); });
        lexicon.scores[term] = parse_double(line.substr(tab + 1));
    }
    return lexicon;
}

SentimentSums sentiment_sums(std::string_view text, const SentimentLexicon& lexicon) {
    SentimentSums sums;
    if (lexicon.empty()) return sums;
    for (const auto& token : tokenize(text)) {
        double s = lexicon.score(token);
        if (s > 0) {
            sums.positive += s;
        } else if (s < 0) {
            sums.negative += s;
        }
    }
    return sums;
}

const std::vector<std::string>& default_emoticons() {
    static const std::vector<std::string> kTable = {
        ":-)", ":-(", ":-D", ":-P", ":-/", ";-)", ":')", ":'(", "^_^", "-_-",
        "o_O", "O_o", "T_T", "</3", "\\o/", ":)",  ":(",  ":D",  ":P",  ":p",
        ";)",  ":o",  ":O",  ":/",  ":|",  ":*",  ":3",  "=)",  "=(",  "=D",
        "xD",  "XD",  "<3",
    };
    return kTable;
}

std::size_t count_emoticons(std::string_view text) {
    return count_emoticons(text, default_emoticons());
}

std::size_t count_emoticons(std::string_view text, const std::vector<std::string>& table) {
    // Longest-first so ":-)" is not double-counted as ":-" + ":)".
    std::vector<const std::string*> sorted;
    sorted.reserve(table.size());
    for (const auto& e : table) {
        if (!e.empty()) sorted.push_back(&e);
    }
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const std::string* a, const std::string* b) { return a->size() > b->size(); });

    std::size_t count = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t matched = 0;
        for (const std::string* e : sorted) {
            if (text.compare(pos, e->size(), *e) == 0) {
                matched = e->size();
                break;
            }
        }
        if (matched > 0) {
            ++count;
            pos += matched;
        } else {
            ++pos;
        }
    }
    return count;
}

std::size_t count_special_signals(std::string_view text) {
    std::size_t count = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t j = i;
        while (j < text.size() && text[j] == text[i]) ++j;
        std::size_t run = j - i;
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (run >= 3 && (std::isalpha(c) != 0 || std::ispunct(c) != 0)) ++count;
        i = j;
    }
    return count;
}

void Wordlist::add(std::string word) {
    std::transform(word.begin(), word.end(), word.begin(),
                   [](unsigned char c) { return ascii_lower(c); });
    if (word.empty()) return;
    max_length = std::max(max_length, word.size());
    words.insert(std::move(word));
}

Wordlist Wordlist::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read wordlist file: " + path);
    Wordlist list;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        list.add(line);
    }
    return list;
}

namespace {

// Number of segments under greedy longest-match, or 0 when some position has
// no wordlist match.
std::size_t greedy_segments(std::string_view tag, const Wordlist& wordlist) {
    std::size_t pos = 0;
    std::size_t segments = 0;
    std::string candidate;
    while (pos < tag.size()) {
        std::size_t best = 0;
        std::size_t longest = std::min(wordlist.max_length, tag.size() - pos);
        for (std::size_t len = longest; len >= 1; --len) {
            candidate.assign(tag.substr(pos, len));
            if (wordlist.words.count(candidate) > 0) {
                best = len;
                break;
            }
        }
        if (best == 0) return 0;
        pos += best;
        ++segments;
    }
    return segments;
}

enum class CharClass { Lower, Upper, Digit, Other };

CharClass class_of(unsigned char c) {
    if (std::isdigit(c)) return CharClass::Digit;
    if (std::isupper(c)) return CharClass::Upper;
    if (std::isalpha(c) || c >= 0x80) return CharClass::Lower;
    return CharClass::Other;
}

// Splits on digit/letter transitions and lower->Upper case boundaries:
// "top10" -> 2, "liveMusic" -> 2, "epl" -> 1.
std::size_t boundary_segments(std::string_view tag) {
    std::size_t segments = 0;
    CharClass prev = CharClass::Other;
    for (unsigned char c : tag) {
        CharClass cur = class_of(c);
        if (cur == CharClass::Other) {
            prev = cur;
            continue;
        }
        bool boundary = prev == CharClass::Other ||
                        (prev == CharClass::Digit) != (cur == CharClass::Digit) ||
                        (prev == CharClass::Lower && cur == CharClass::Upper);
        if (boundary) ++segments;
        prev = cur;
    }
    return segments;
}

}  // namespace

std::size_t hashtag_word_count(std::string_view tag, const Wordlist& wordlist) {
    if (tag.empty()) return 1;
    std::string lowered(tag);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return ascii_lower(c); });
    if (!wordlist.empty()) {
        std::size_t n = greedy_segments(lowered, wordlist);
        if (n > 0) return n;
    }
    std::size_t n = boundary_segments(tag);
    return std::max<std::size_t>(n, 1);
}

bool contains_digit(std::string_view text) {
    return std::any_of(text.begin(), text.end(),
                       [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace topicbench
