#include <catch2/catch_amalgamated.hpp>

#include "bookcast/lexicons.hpp"
#include "bookcast/rng.hpp"
#include "bookcast/textkit.hpp"
#include "oracles.hpp"

using namespace bookcast;
using text::KeywordSet;
using text::StopwordSet;

namespace {

StopwordSet stops(std::initializer_list<const char*> words) {
    StopwordSet s;
    for (const char* w : words) s.insert(w);
    return s;
}

KeywordSet kwset(std::initializer_list<const char*> phrases) {
    KeywordSet k;
    for (const char* p : phrases) k.keywords.insert(p);
    return k;
}

std::string random_doc(Rng& rng, std::size_t len) {
    static const std::vector<std::string> vocab = {
        "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta",
        "iota", "kappa", "the", "and", "of", "sun", "moon", "star", "sea",
    };
    std::string doc;
    for (std::size_t i = 0; i < len; ++i) {
        if (!doc.empty()) doc += ' ';
        doc += vocab[rng.uniform_int(vocab.size())];
        if (rng.bernoulli(0.1)) doc += '.';
    }
    return doc;
}

}  // namespace

TEST_CASE("tokenize lowercases and splits on non-word characters") {
    CHECK(text::tokenize("").empty());
    CHECK(text::tokenize("Don't stop\xE2\x80\x94READ!") ==
          std::vector<std::string>{"don't", "stop", "read"});
    CHECK(text::tokenize("page 42 of 300") == std::vector<std::string>{"page", "42", "of", "300"});
}

TEST_CASE("RAKE scores the worked example and keeps both tied candidates") {
    auto kw = text::extract_keywords("machine learning and machine vision", stops({"and"}));
    REQUIRE(kw.scores.size() == 2);
    CHECK(kw.scores.at("machine learning") == Catch::Approx(4.0));
    CHECK(kw.scores.at("machine vision") == Catch::Approx(4.0));
    CHECK(kw.keywords == std::set<std::string>{"machine learning", "machine vision"});
}

TEST_CASE("RAKE corner cases") {
    auto sw = stops({"the", "and", "of"});
    CHECK(text::extract_keywords("the and of the", sw).empty());
    CHECK(text::extract_keywords("", sw).empty());

    auto a = text::extract_keywords("deep river and silent forest. the old map of stars", sw);
    auto b = text::extract_keywords("deep river and silent forest. the old map of stars", sw);
    CHECK(a.keywords == b.keywords);
    CHECK(a.scores == b.scores);

    CHECK_THROWS_AS(text::extract_keywords("anything", StopwordSet{}), std::invalid_argument);
}

TEST_CASE("RAKE keywords never contain a stopword token") {
    auto sw = text::default_stopwords();
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        std::string doc = random_doc(rng, 40);
        auto kw = text::extract_keywords(doc, sw);
        for (const auto& phrase : kw.keywords) {
            for (const auto& tok : text::tokenize(phrase)) {
                INFO("phrase: " << phrase);
                CHECK_FALSE(sw.contains(tok));
            }
        }
    }
}

TEST_CASE("keyword overlap") {
    auto a = kwset({"a", "b", "c", "d"});
    auto b = kwset({"c", "d", "e"});
    CHECK(text::keyword_overlap(a, b) == Catch::Approx(2.0 / 3.0));
    CHECK(text::keyword_overlap(a, a) == 1.0);
    CHECK(text::keyword_overlap(kwset({"x"}), kwset({"y"})) == 0.0);
    CHECK(text::keyword_overlap(kwset({"x"}), KeywordSet{}) == 0.0);
    CHECK_THROWS_AS(text::keyword_overlap(KeywordSet{}, KeywordSet{}),
                    text::UndefinedOverlapError);

    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        KeywordSet x, y;
        for (int i = 0; i < 8; ++i) {
            if (rng.bernoulli(0.5)) x.keywords.insert("w" + std::to_string(rng.uniform_int(12)));
            if (rng.bernoulli(0.5)) y.keywords.insert("w" + std::to_string(rng.uniform_int(12)));
        }
        if (x.empty() || y.empty()) continue;
        CHECK(text::keyword_overlap(x, y) == text::keyword_overlap(y, x));
        CHECK(text::keyword_overlap(x, y) == Catch::Approx(
            oracle::keyword_overlap(x.keywords, y.keywords)));
    }
}

TEST_CASE("kl_novelty against the direct-summation oracle") {
    auto sw = stops({"the", "and", "of"});
    CHECK(text::kl_novelty("alpha beta gamma", "alpha beta gamma", sw) == Catch::Approx(0.0).margin(1e-12));
    CHECK(text::kl_novelty("alpha alpha", "alpha beta", sw) > 0.0);
    CHECK_THROWS_AS(text::kl_novelty("the and", "alpha", sw), std::invalid_argument);

    // empty B smooths to the uniform model over the union vocabulary
    double vs_empty = text::kl_novelty("alpha alpha beta", "", sw);
    CHECK(vs_empty == Catch::Approx(oracle::kl_divergence({"alpha", "alpha", "beta"}, {})).margin(1e-12));

    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        std::string da = random_doc(rng, 5 + rng.uniform_int(30));
        std::string db = random_doc(rng, rng.uniform_int(40));
        auto strip = [&](const std::string& d) {
            std::vector<std::string> out;
            for (auto& t : text::tokenize(d)) {
                if (!sw.contains(t)) out.push_back(t);
            }
            return out;
        };
        auto ta = strip(da);
        if (ta.empty()) continue;
        double got = text::kl_novelty(da, db, sw);
        double want = oracle::kl_divergence(ta, strip(db));
        CHECK(got == Catch::Approx(want).margin(1e-9));
        CHECK(got >= -1e-12);  // Gibbs' inequality
    }
}

TEST_CASE("unigram model probabilities sum to one") {
    Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::string> tokens;
        std::set<std::string> vocab;
        for (int i = 0; i < 3 + static_cast<int>(rng.uniform_int(20)); ++i) {
            std::string w = "t" + std::to_string(rng.uniform_int(9));
            tokens.push_back(w);
            vocab.insert(w);
        }
        vocab.insert("unseen");
        auto m = text::UnigramModel::fit(tokens, vocab);
        double total = 0.0;
        for (const auto& [w, p] : m.probabilities) {
            CHECK(p > 0.0);
            total += p;
        }
        CHECK(total == Catch::Approx(1.0).margin(1e-9));
    }
}

TEST_CASE("sentiment scores") {
    text::SentimentLexicon lex;
    lex.add("good", true);
    lex.add("bad", false);

    auto s = text::sentiment_scores("good good bad word", lex);
    CHECK(s.positive_fraction == Catch::Approx(0.5));
    CHECK(s.negative_fraction == Catch::Approx(0.25));

    auto none = text::sentiment_scores("nothing matches here", lex);
    CHECK(none.positive_fraction == 0.0);
    CHECK(none.negative_fraction == 0.0);

    auto empty = text::sentiment_scores("", lex);
    CHECK(empty.positive_fraction == 0.0);
    CHECK(empty.negative_fraction == 0.0);
}

TEST_CASE("sentiment fractions stay in range and conflicts are dropped") {
    text::SentimentLexicon lex;
    lex.add("fine", true);
    lex.add("fine", false);  // conflicting entry removed from both sides
    CHECK(lex.conflicts_dropped == 1);
    CHECK_FALSE(lex.positive.contains("fine"));
    CHECK_FALSE(lex.negative.contains("fine"));

    auto full = text::default_sentiment_lexicon();
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        auto s = text::sentiment_scores(random_doc(rng, 30) + " good bad awful great", full);
        CHECK(s.positive_fraction >= 0.0);
        CHECK(s.negative_fraction >= 0.0);
        CHECK(s.positive_fraction + s.negative_fraction <= 1.0 + 1e-12);
    }
}

TEST_CASE("category profile") {
    text::CategoryLexicon lex;
    lex.add("certain", "always");
    lex.add("certain", "never");

    auto p = text::category_profile("never say never", lex);
    CHECK(p.at("certain") == Catch::Approx(2.0 / 3.0));

    auto empty = text::category_profile("", lex);
    CHECK(empty.at("certain") == 0.0);

    text::CategoryLexicon prefix;
    prefix.add("reading", "read*");
    CHECK(text::category_profile("reading is reading", prefix).at("reading") ==
          Catch::Approx(2.0 / 3.0));
    CHECK(text::category_profile("ready reader read", prefix).at("reading") == Catch::Approx(1.0));
}
