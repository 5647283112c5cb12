#include "astaxon/textprep.hpp"

#include <cctype>
#include <fstream>
#include <istream>

#include "astaxon/errors.hpp"

namespace astaxon {
namespace {

bool is_token_char(unsigned char c) {
    return std::isalnum(c) != 0 || c >= 0x80;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

StopWordList load_stopwords(std::istream& in) {
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        std::string word = trim(line);
        if (word.empty() || word[0] == '#') continue;
        for (char& c : word) {
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + ('a' - 'A'));
        }
        words.insert(word);
    }
    if (words.empty()) throw DataError("stop-word list is empty");
    if (!words.count("of") || !words.count("the")) {
        throw DataError("stop-word list must contain at least \"of\" and \"the\"");
    }
    return StopWordList(std::move(words));
}

StopWordList load_stopwords_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open stop-word file: " + path);
    return load_stopwords(in);
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    bool all_digits = true;
    auto flush = [&] {
        if (!current.empty() && !all_digits) tokens.push_back(current);
        current.clear();
        all_digits = true;
    };
    for (unsigned char c : text) {
        if (is_token_char(c)) {
            if (c >= 'A' && c <= 'Z') c = static_cast<unsigned char>(c + ('a' - 'A'));
            if (c < '0' || c > '9') all_digits = false;
            current.push_back(static_cast<char>(c));
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const StopWordList& stoplist) {
    std::vector<std::string> kept;
    kept.reserve(tokens.size());
    for (const std::string& t : tokens) {
        if (!stoplist.contains(t)) kept.push_back(t);
    }
    return kept;
}

std::vector<std::string> preprocess(std::string_view descr, const StopWordList& stoplist) {
    std::vector<std::string> out = remove_stopwords(tokenize(descr), stoplist);
    for (std::string& t : out) t = porter_stem(t);
    return out;
}

} // namespace astaxon
