#pragma once

// Text-analytic primitives: tokenizer, RAKE keyword extraction, add-one
// smoothed unigram models with KL divergence, lexicon sentiment, and
// category profiling. All functions are pure; lexicons are immutable after
// load, so everything here is safe to call concurrently.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace bookcast::text {

using StopwordSet = std::unordered_set<std::string>;

// ---------------------------------------------------------------------------
// Tokenization
// ---------------------------------------------------------------------------

inline bool is_token_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '\'';
}

// Lowercase maximal runs of letters/digits/apostrophes; everything else is a
// separator. Multi-byte UTF-8 sequences fall out as separators byte by byte.
inline std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : text) {
        if (is_token_char(c)) {
            cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else if (!cur.empty()) {
            tokens.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

// ---------------------------------------------------------------------------
// RAKE keyword extraction
// ---------------------------------------------------------------------------

struct KeywordSet {
    std::set<std::string> keywords;            // selected phrases
    std::map<std::string, double> scores;      // phrase -> score (all candidates)

    bool empty() const { return keywords.empty(); }
};

namespace detail {

constexpr std::string_view kPhraseDelims = ".!?,;:\n\r";

// Candidate phrases: maximal non-stopword token runs between stopwords and
// sentence punctuation. Returned with multiplicity.
inline std::vector<std::vector<std::string>> candidate_phrases(std::string_view text,
                                                               const StopwordSet& stopwords) {
    std::vector<std::vector<std::string>> phrases;
    std::vector<std::string> cur_phrase;
    std::string cur_token;

    auto flush_token = [&]() {
        if (cur_token.empty()) return;
        if (stopwords.contains(cur_token)) {
            if (!cur_phrase.empty()) phrases.push_back(std::move(cur_phrase));
            cur_phrase.clear();
        } else {
            cur_phrase.push_back(cur_token);
        }
        cur_token.clear();
    };
    auto flush_phrase = [&]() {
        flush_token();
        if (!cur_phrase.empty()) phrases.push_back(std::move(cur_phrase));
        cur_phrase.clear();
    };

    for (char c : text) {
        if (is_token_char(c)) {
            cur_token += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else if (kPhraseDelims.find(c) != std::string_view::npos) {
            flush_phrase();
        } else {
            flush_token();
        }
    }
    flush_phrase();
    return phrases;
}

}  // namespace detail

// Word score deg(w)/freq(w) where deg(w) sums the length of every candidate
// occurrence containing w; phrase score sums its word scores. Keeps the top
// third of distinct candidates by score (candidates tied with the cutoff
// score are kept too; ordering ties break lexicographically).
inline KeywordSet extract_keywords(std::string_view text, const StopwordSet& stopwords) {
    if (stopwords.empty()) throw std::invalid_argument("extract_keywords: stopword set is empty");

    auto phrases = detail::candidate_phrases(text, stopwords);
    KeywordSet out;
    if (phrases.empty()) return out;

    std::unordered_map<std::string, double> freq, degree;
    for (const auto& phrase : phrases) {
        for (const auto& w : phrase) {
            freq[w] += 1.0;
            degree[w] += static_cast<double>(phrase.size());
        }
    }

    std::map<std::string, double> candidate_scores;  // distinct phrases
    for (const auto& phrase : phrases) {
        double score = 0.0;
        std::string joined;
        for (const auto& w : phrase) {
            score += degree[w] / freq[w];
            if (!joined.empty()) joined += ' ';
            joined += w;
        }
        candidate_scores[joined] = score;
    }

    std::vector<std::pair<std::string, double>> ranked(candidate_scores.begin(),
                                                       candidate_scores.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    const std::size_t c_count = ranked.size();
    std::size_t keep = (c_count + 2) / 3;  // ceil(C/3)
    double cutoff_score = ranked[keep - 1].second;
    for (const auto& [phrase, score] : ranked) {
        if (score >= cutoff_score) out.keywords.insert(phrase);
    }
    out.scores = std::move(candidate_scores);
    return out;
}

struct UndefinedOverlapError : std::runtime_error {
    UndefinedOverlapError() : std::runtime_error("keyword overlap undefined: both sets empty") {}
};

// |A ∩ B| / min(|A|, |B|). Higher overlap means lower novelty. Both sets
// empty is undefined (callers substitute 0); exactly one empty set has no
// shared keywords and scores 0.
inline double keyword_overlap(const KeywordSet& a, const KeywordSet& b) {
    if (a.empty() && b.empty()) throw UndefinedOverlapError();
    if (a.empty() || b.empty()) return 0.0;
    std::size_t inter = 0;
    for (const auto& k : a.keywords) {
        if (b.keywords.contains(k)) ++inter;
    }
    return static_cast<double>(inter) /
           static_cast<double>(std::min(a.keywords.size(), b.keywords.size()));
}

// ---------------------------------------------------------------------------
// Unigram language models and KL divergence
// ---------------------------------------------------------------------------

struct UnigramModel {
    std::map<std::string, double> probabilities;  // over the shared vocabulary
    std::size_t token_count = 0;

    // add-one smoothing over `vocabulary`; any token outside it is ignored
    static UnigramModel fit(const std::vector<std::string>& tokens,
                            const std::set<std::string>& vocabulary) {
        if (vocabulary.empty()) throw std::invalid_argument("UnigramModel: empty vocabulary");
        std::unordered_map<std::string, std::size_t> counts;
        std::size_t n = 0;
        for (const auto& t : tokens) {
            if (vocabulary.contains(t)) {
                ++counts[t];
                ++n;
            }
        }
        UnigramModel m;
        m.token_count = n;
        const double denom = static_cast<double>(n + vocabulary.size());
        for (const auto& w : vocabulary) {
            auto it = counts.find(w);
            const double c = it == counts.end() ? 0.0 : static_cast<double>(it->second);
            m.probabilities[w] = (c + 1.0) / denom;
        }
        return m;
    }
};

// KL(P_A || P_B) in nats over the union vocabulary of both documents after
// stopword removal. Nonnegative, and zero iff the smoothed distributions
// coincide. An empty B smooths to the uniform model over the union.
inline double kl_novelty(std::string_view doc_a, std::string_view doc_b,
                         const StopwordSet& stopwords) {
    auto strip = [&](std::string_view doc) {
        std::vector<std::string> kept;
        for (auto& t : tokenize(doc)) {
            if (!stopwords.contains(t)) kept.push_back(std::move(t));
        }
        return kept;
    };
    std::vector<std::string> tokens_a = strip(doc_a);
    if (tokens_a.empty()) throw std::invalid_argument("kl_novelty: document A empty after stopword removal");
    std::vector<std::string> tokens_b = strip(doc_b);

    std::set<std::string> vocab(tokens_a.begin(), tokens_a.end());
    vocab.insert(tokens_b.begin(), tokens_b.end());

    UnigramModel pa = UnigramModel::fit(tokens_a, vocab);
    UnigramModel pb = UnigramModel::fit(tokens_b, vocab);

    double kl = 0.0;
    for (const auto& [w, p] : pa.probabilities) {
        kl += p * std::log(p / pb.probabilities.at(w));
    }
    return kl;
}

// ---------------------------------------------------------------------------
// Sentiment and category lexicons
// ---------------------------------------------------------------------------

struct SentimentLexicon {
    std::unordered_set<std::string> positive;
    std::unordered_set<std::string> negative;
    std::size_t conflicts_dropped = 0;  // words listed on both sides

    void add(const std::string& word, bool is_positive) {
        auto& mine = is_positive ? positive : negative;
        auto& other = is_positive ? negative : positive;
        if (other.contains(word)) {
            other.erase(word);
            ++conflicts_dropped;
            return;
        }
        mine.insert(word);
    }
};

struct SentimentScore {
    double positive_fraction = 0.0;
    double negative_fraction = 0.0;
};

// Fractions of all tokens matching each side of the lexicon; empty text is
// (0, 0) by convention.
inline SentimentScore sentiment_scores(std::string_view text, const SentimentLexicon& lexicon) {
    auto tokens = tokenize(text);
    if (tokens.empty()) return {};
    std::size_t pos = 0, neg = 0;
    for (const auto& t : tokens) {
        if (lexicon.positive.contains(t)) ++pos;
        else if (lexicon.negative.contains(t)) ++neg;
    }
    const double n = static_cast<double>(tokens.size());
    return {static_cast<double>(pos) / n, static_cast<double>(neg) / n};
}

// A pattern is a literal lowercase word or a prefix ending in '*'.
struct CategoryPattern {
    std::string text;
    bool prefix = false;

    bool matches(const std::string& token) const {
        if (prefix) return token.size() >= text.size() && token.compare(0, text.size(), text) == 0;
        return token == text;
    }
};

struct CategoryLexicon {
    // insertion-ordered so feature manifests are stable for a given file
    std::vector<std::pair<std::string, std::vector<CategoryPattern>>> categories;

    void add(const std::string& category, const std::string& raw_pattern) {
        CategoryPattern p;
        if (!raw_pattern.empty() && raw_pattern.back() == '*') {
            p.text = raw_pattern.substr(0, raw_pattern.size() - 1);
            p.prefix = true;
        } else {
            p.text = raw_pattern;
        }
        for (auto& [name, patterns] : categories) {
            if (name == category) {
                patterns.push_back(std::move(p));
                return;
            }
        }
        categories.push_back({category, {std::move(p)}});
    }

    std::vector<std::string> category_names() const {
        std::vector<std::string> names;
        names.reserve(categories.size());
        for (const auto& [name, _] : categories) names.push_back(name);
        return names;
    }
};

// score(c) = fraction of tokens matching any pattern of c; every category is
// present in the result, zero-filled for empty text.
inline std::map<std::string, double> category_profile(std::string_view text,
                                                      const CategoryLexicon& lexicon) {
    std::map<std::string, double> out;
    for (const auto& [name, _] : lexicon.categories) out[name] = 0.0;
    auto tokens = tokenize(text);
    if (tokens.empty()) return out;
    for (const auto& [name, patterns] : lexicon.categories) {
        std::size_t hits = 0;
        for (const auto& t : tokens) {
            for (const auto& p : patterns) {
                if (p.matches(t)) {
                    ++hits;
                    break;
                }
            }
        }
        out[name] = static_cast<double>(hits) / static_cast<double>(tokens.size());
    }
    return out;
}

}  // namespace bookcast::text
