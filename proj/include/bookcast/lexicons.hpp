#pragma once

// Lexicon file loaders plus built-in defaults. Formats:
//   stopwords.txt  — one lowercase word per line
//   sentiment.tsv  — word<TAB>pos|neg
//   categories.tsv — category<TAB>pattern   (pattern may end in '*')
// The defaults are small general-purpose English lists; they stand in for
// proprietary dictionaries, which are deliberately not bundled.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "bookcast/io.hpp"
#include "bookcast/textkit.hpp"

namespace bookcast::text {

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace detail

inline StopwordSet load_stopwords(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open stopword file: " + path.string());
    StopwordSet out;
    std::string line;
    while (std::getline(in, line)) {
        std::string w = detail::trim(line);
        if (!w.empty()) out.insert(w);
    }
    return out;
}

inline SentimentLexicon load_sentiment_lexicon(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open sentiment lexicon: " + path.string());
    SentimentLexicon lex;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::trim(line).empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw DataError("sentiment.tsv:" + std::to_string(lineno) + ": expected word<TAB>pos|neg");
        }
        std::string word = detail::trim(line.substr(0, tab));
        std::string pol = detail::trim(line.substr(tab + 1));
        if (word.empty() || (pol != "pos" && pol != "neg")) {
            throw DataError("sentiment.tsv:" + std::to_string(lineno) + ": bad polarity '" + pol + "'");
        }
        lex.add(word, pol == "pos");
    }
    return lex;
}

inline CategoryLexicon load_category_lexicon(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open category lexicon: " + path.string());
    CategoryLexicon lex;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::trim(line).empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw DataError("categories.tsv:" + std::to_string(lineno) + ": expected category<TAB>pattern");
        }
        std::string cat = detail::trim(line.substr(0, tab));
        std::string pat = detail::trim(line.substr(tab + 1));
        if (cat.empty() || pat.empty() || pat == "*") {
            throw DataError("categories.tsv:" + std::to_string(lineno) + ": empty category or pattern");
        }
        lex.add(cat, pat);
    }
    return lex;
}

// ---------------------------------------------------------------------------
// Built-in defaults
// ---------------------------------------------------------------------------

inline const StopwordSet& default_stopwords() {
    static const StopwordSet set = [] {
        static constexpr const char* words[] = {
            "a", "about", "above", "after", "again", "all", "an", "and", "any", "are",
            "as", "at", "be", "because", "been", "before", "being", "between", "both",
            "but", "by", "can", "did", "do", "does", "doing", "down", "during", "each",
            "few", "for", "from", "further", "had", "has", "have", "having", "he", "her",
            "here", "hers", "him", "his", "how", "i", "if", "in", "into", "is", "it",
            "its", "just", "me", "more", "most", "my", "no", "nor", "not", "now", "of",
            "off", "on", "once", "only", "or", "other", "our", "ours", "out", "over",
            "own", "s", "same", "she", "so", "some", "such", "t", "than", "that", "the",
            "their", "theirs", "them", "then", "there", "these", "they", "this", "those",
            "through", "to", "too", "under", "until", "up", "very", "was", "we", "were",
            "what", "when", "where", "which", "while", "who", "whom", "why", "will",
            "with", "you", "your", "yours",
        };
        StopwordSet s;
        for (const char* w : words) s.insert(w);
        return s;
    }();
    return set;
}

inline const SentimentLexicon& default_sentiment_lexicon() {
    static const SentimentLexicon lex = [] {
        static constexpr const char* pos[] = {
            "good", "great", "excellent", "amazing", "wonderful", "brilliant", "love",
            "loved", "beautiful", "enjoy", "enjoyed", "best", "favorite", "fantastic",
            "delightful", "masterpiece", "compelling", "gripping", "charming", "superb",
            "perfect", "fresh", "inspiring", "stunning", "engaging", "rich", "vivid",
            "powerful", "moving", "witty",
        };
        static constexpr const char* neg[] = {
            "bad", "terrible", "awful", "boring", "dull", "hate", "hated", "worst",
            "disappointing", "disappointment", "weak", "tedious", "poor", "mess",
            "flat", "predictable", "confusing", "annoying", "shallow", "bland", "slow",
            "mediocre", "forgettable", "clumsy", "lifeless", "frustrating", "painful",
            "pretentious", "hollow", "stale",
        };
        SentimentLexicon l;
        for (const char* w : pos) l.add(w, true);
        for (const char* w : neg) l.add(w, false);
        return l;
    }();
    return lex;
}

inline const CategoryLexicon& default_category_lexicon() {
    static const CategoryLexicon lex = [] {
        CategoryLexicon l;
        l.add("cogproc", "think*");
        l.add("cogproc", "know*");
        l.add("cogproc", "believe*");
        l.add("cogproc", "because");
        l.add("cogproc", "understand*");
        l.add("cogproc", "idea*");
        l.add("cogproc", "reason*");
        l.add("cogproc", "wonder*");
        l.add("affect", "love*");
        l.add("affect", "hate*");
        l.add("affect", "feel*");
        l.add("affect", "happy");
        l.add("affect", "sad");
        l.add("affect", "fear*");
        l.add("affect", "joy*");
        l.add("affect", "anger*");
        l.add("social", "friend*");
        l.add("social", "family");
        l.add("social", "people");
        l.add("social", "reader*");
        l.add("social", "talk*");
        l.add("social", "share*");
        l.add("social", "community");
        l.add("social", "author*");
        l.add("time", "time");
        l.add("time", "day*");
        l.add("time", "week*");
        l.add("time", "month*");
        l.add("time", "year*");
        l.add("time", "night*");
        l.add("time", "morning");
        l.add("time", "hour*");
        l.add("percept", "see*");
        l.add("percept", "look*");
        l.add("percept", "hear*");
        l.add("percept", "sound*");
        l.add("percept", "watch*");
        l.add("percept", "eye*");
        l.add("certain", "always");
        l.add("certain", "never");
        l.add("certain", "certain*");
        l.add("certain", "definite*");
        l.add("certain", "clear*");
        l.add("certain", "sure");
        l.add("certain", "exact*");
        l.add("certain", "truly");
        return l;
    }();
    return lex;
}

}  // namespace bookcast::text
