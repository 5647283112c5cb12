#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace astaxon {

// Lowercase words filtered out of descriptions before stemming.
class StopWordList {
public:
    StopWordList() = default;
    explicit StopWordList(std::unordered_set<std::string> words) : words_(std::move(words)) {}

    bool contains(std::string_view word) const {
        return words_.count(std::string(word)) > 0;
    }

    std::size_t size() const { return words_.size(); }
    bool empty() const { return words_.empty(); }

private:
    std::unordered_set<std::string> words_;
};

// File format: one lowercase word per line, UTF-8, '#' comments.
// Throws DataError if the list is empty or lacks "of" / "the".
StopWordList load_stopwords(std::istream& in);
StopWordList load_stopwords_file(const std::string& path);

// Split on any non-alphanumeric byte (bytes >= 0x80 count as letters),
// lowercase ASCII, drop empty and pure-digit tokens.
std::vector<std::string> tokenize(std::string_view text);

// Order-preserving stop-word filter; tokens must already be lowercase.
std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const StopWordList& stoplist);

// Porter (1980) stem of a lowercase token. Words of length <= 2 and tokens
// without any ASCII letter are returned unchanged; non-letter bytes classify
// as consonants and never match a rule suffix.
std::string porter_stem(std::string_view word);

// tokenize, then remove stop words, then stem each surviving token.
std::vector<std::string> preprocess(std::string_view descr, const StopWordList& stoplist);

} // namespace astaxon
