#include "astaxon/textprep.hpp"

#include <array>
#include <string_view>

// The Porter (1980) suffix stripper. Within each step only the rule with
// the longest matching suffix is considered; if its condition fails, the
// step changes nothing (so e.g. "rational" keeps its "ational" ending).

namespace astaxon {
namespace {

bool is_consonant(const std::string& b, std::size_t i) {
    switch (b[i]) {
        case 'a': case 'e': case 'i': case 'o': case 'u':
            return false;
        case 'y':
            return i == 0 ? true : !is_consonant(b, i - 1);
        default:
            // Other letters, digits and non-ASCII bytes all classify as
            // consonants; they never satisfy a vowel condition.
            return true;
    }
}

// Measure of the prefix b[0..len): the m in [C](VC){m}[V].
std::size_t measure(const std::string& b, std::size_t len) {
    std::size_t n = 0;
    std::size_t i = 0;
    while (true) {
        if (i >= len) return n;
        if (!is_consonant(b, i)) break;
        ++i;
    }
    ++i;
    while (true) {
        while (true) {
            if (i >= len) return n;
            if (is_consonant(b, i)) break;
            ++i;
        }
        ++i;
        ++n;
        while (true) {
            if (i >= len) return n;
            if (!is_consonant(b, i)) break;
            ++i;
        }
        ++i;
    }
}

bool vowel_in(const std::string& b, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) {
        if (!is_consonant(b, i)) return true;
    }
    return false;
}

bool double_consonant_at_end(const std::string& b, std::size_t len) {
    return len >= 2 && b[len - 1] == b[len - 2] && is_consonant(b, len - 1);
}

// Ends consonant-vowel-consonant where the final consonant is not w, x or y.
bool cvc_at_end(const std::string& b, std::size_t len) {
    if (len < 3) return false;
    if (!is_consonant(b, len - 1) || is_consonant(b, len - 2) || !is_consonant(b, len - 3)) {
        return false;
    }
    const char c = b[len - 1];
    return c != 'w' && c != 'x' && c != 'y';
}

bool ends_with(const std::string& b, std::string_view suffix) {
    return b.size() >= suffix.size() &&
           std::string_view(b).substr(b.size() - suffix.size()) == suffix;
}

struct SuffixRule {
    std::string_view suffix;
    std::string_view replacement;
};

// Applies the longest-matching rule if the stem measure exceeds min_measure;
// a matching rule with a failed condition still ends the step.
void apply_table(std::string& b, std::initializer_list<SuffixRule> rules,
                 std::size_t min_measure) {
    const SuffixRule* best = nullptr;
    for (const SuffixRule& r : rules) {
        if (ends_with(b, r.suffix) && (!best || r.suffix.size() > best->suffix.size())) {
            best = &r;
        }
    }
    if (!best) return;
    const std::size_t stem_len = b.size() - best->suffix.size();
    if (measure(b, stem_len) > min_measure) {
        b.resize(stem_len);
        b.append(best->replacement);
    }
}

void step1a(std::string& b) {
    if (ends_with(b, "sses")) {
        b.resize(b.size() - 2);
    } else if (ends_with(b, "ies")) {
        b.resize(b.size() - 2);
    } else if (ends_with(b, "ss")) {
        // keep
    } else if (ends_with(b, "s")) {
        b.resize(b.size() - 1);
    }
}

void step1b(std::string& b) {
    if (ends_with(b, "eed")) {
        if (measure(b, b.size() - 3) > 0) b.resize(b.size() - 1);
        return;
    }
    bool stripped = false;
    if (ends_with(b, "ed") && vowel_in(b, b.size() - 2)) {
        b.resize(b.size() - 2);
        stripped = true;
    } else if (ends_with(b, "ing") && vowel_in(b, b.size() - 3)) {
        b.resize(b.size() - 3);
        stripped = true;
    }
    if (!stripped) return;
    if (ends_with(b, "at") || ends_with(b, "bl") || ends_with(b, "iz")) {
        b.push_back('e');
    } else if (double_consonant_at_end(b, b.size())) {
        const char c = b.back();
        if (c != 'l' && c != 's' && c != 'z') b.resize(b.size() - 1);
    } else if (measure(b, b.size()) == 1 && cvc_at_end(b, b.size())) {
        b.push_back('e');
    }
}

void step1c(std::string& b) {
    if (ends_with(b, "y") && vowel_in(b, b.size() - 1)) b.back() = 'i';
}

void step2(std::string& b) {
    apply_table(b,
                {{"ational", "ate"}, {"ization", "ize"}, {"iveness", "ive"},
                 {"fulness", "ful"}, {"ousness", "ous"}, {"tional", "tion"},
                 {"biliti", "ble"},  {"entli", "ent"},   {"ousli", "ous"},
                 {"ation", "ate"},   {"alism", "al"},    {"aliti", "al"},
                 {"iviti", "ive"},   {"enci", "ence"},   {"anci", "ance"},
                 {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},
                 {"ator", "ate"},    {"eli", "e"}},
                0);
}

void step3(std::string& b) {
    apply_table(b,
                {{"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
                 {"ical", "ic"},  {"ness", ""},  {"ful", ""}},
                0);
}

void step4(std::string& b) {
    const SuffixRule rules[] = {
        {"ement", ""}, {"ance", ""}, {"ence", ""}, {"able", ""}, {"ible", ""},
        {"ment", ""},  {"ant", ""},  {"ent", ""},  {"ion", ""},  {"ism", ""},
        {"ate", ""},   {"iti", ""},  {"ous", ""},  {"ive", ""},  {"ize", ""},
        {"al", ""},    {"er", ""},   {"ic", ""},   {"ou", ""},
    };
    const SuffixRule* best = nullptr;
    for (const SuffixRule& r : rules) {
        if (ends_with(b, r.suffix) && (!best || r.suffix.size() > best->suffix.size())) {
            best = &r;
        }
    }
    if (!best) return;
    const std::size_t stem_len = b.size() - best->suffix.size();
    if (measure(b, stem_len) <= 1) return;
    if (best->suffix == "ion" && stem_len > 0) {
        const char c = b[stem_len - 1];
        if (c != 's' && c != 't') return;
    }
    b.resize(stem_len);
}

void step5a(std::string& b) {
    if (!ends_with(b, "e")) return;
    const std::size_t stem_len = b.size() - 1;
    const std::size_t m = measure(b, stem_len);
    if (m > 1 || (m == 1 && !cvc_at_end(b, stem_len))) b.resize(stem_len);
}

void step5b(std::string& b) {
    if (b.back() == 'l' && double_consonant_at_end(b, b.size()) && measure(b, b.size()) > 1) {
        b.resize(b.size() - 1);
    }
}

bool has_ascii_letter(std::string_view w) {
    for (char c : w) {
        if (c >= 'a' && c <= 'z') return true;
    }
    return false;
}

} // namespace

std::string porter_stem(std::string_view word) {
    std::string b(word);
    if (b.size() <= 2 || !has_ascii_letter(b)) return b;
    step1a(b);
    step1b(b);
    step1c(b);
    step2(b);
    step3(b);
    step4(b);
    step5a(b);
    step5b(b);
    return b;
}

} // namespace astaxon
