#pragma once

// Seeded synthetic corpus generator. Produces ABS-like, OTHER-like, and
// optionally HRHR/GCAN-like cohorts whose contrasts qualitatively track the
// characterization study this pipeline reproduces: best-seller-like books
// get more diverse star histograms, more shelves, denser status streams
// with shorter inter-arrival gaps, and fewer finishers. Distribution
// families (log-normal volumes, exponential gaps, Zipf shelf concentration)
// are configurable; this is a test fixture, not an empirical claim.
//
// Byte-identical output for identical (config, seed): every stream is
// derived from the master seed via named sub-seeds, never from draw order
// across books.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "bookcast/corpus.hpp"
#include "bookcast/features.hpp"
#include "bookcast/rng.hpp"

namespace bookcast::synth {

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

struct CohortParams {
    std::size_t count = 0;

    // ratings: volume log-normal, stars categorical
    double rating_volume_mu = 3.4;
    double rating_volume_sigma = 0.9;
    std::array<double, 5> star_probs{0.03, 0.05, 0.17, 0.35, 0.40};

    // reviews
    double review_volume_mu = 2.5;
    double review_volume_sigma = 0.7;
    double review_volume_offset = 0.0;  // floor added to the draw
    double review_pos_rate = 0.08;
    double review_neg_rate = 0.06;

    // shelves
    double custom_shelves_mu = 1.3;   // log-normal count of custom shelves
    double custom_shelves_sigma = 0.6;
    double shelf_users_mu = 5.0;      // log-normal total placing users
    double shelf_users_sigma = 0.8;
    double shelf_zipf_exponent = 1.6; // placement concentration over shelves
    double re_read_shelf_prob = 0.25;

    // status posting process
    double readers_mu = 1.8;          // log-normal unique posters
    double readers_sigma = 0.6;
    double extra_posts_mean = 1.0;    // geometric extra posts per reader
    double first_post_day_mean = 6.0; // exponential
    double inter_post_gap_days = 2.5; // exponential mean
    double percent_increment_lo = 2.0;
    double percent_increment_hi = 12.0;
    double finish_prob = 0.010;       // per reader
    double status_comment_prob = 0.3;
    double status_pos_rate = 0.06;
    double status_neg_rate = 0.04;

    // summary text model
    double stopword_rate = 0.35;   // function-word share of generated text
    double boilerplate_rate = 0.3; // chance of a stock phrase per sentence
    std::size_t about_len_lo = 40;
    std::size_t about_len_hi = 80;
    double about_topic_rate = 0.20;
    double about_rare_rate = 0.10;
    double about_sentiment_rate = 0.05;
    std::size_t topic_pool_size = 60;

    // review/status comment length
    std::size_t review_len_lo = 20;
    std::size_t review_len_hi = 60;

    // ratings/reviews arrive with exponential day offsets from publication
    double event_day_mean = 10.0;

    // authors
    double author_works_mu = 1.5, author_works_sigma = 0.9;
    double author_ratings_mu = 4.0, author_ratings_sigma = 1.5;
    double author_reviews_mu = 2.5, author_reviews_sigma = 1.3;
    double author_fans_mu = 1.5, author_fans_sigma = 1.4;
    double author_avg_rating_mean = 3.8, author_avg_rating_sd = 0.4;

    // independent Bernoulli weight per normalized genre
    std::map<std::string, double> genre_weights;
};

struct SynthConfig {
    CohortParams abs;
    CohortParams other;
    CohortParams hrhr;
    CohortParams gcan;
    std::string pub_date_start = "2008-01-01";
    std::string pub_date_end = "2015-06-30";
    double max_event_day = 40.0;  // events past the widest window get clipped later

    void validate() const;
    nlohmann::json to_json() const;
    static SynthConfig from_json(const nlohmann::json& j);
};

namespace detail {

// Marginal genre fractions per cohort: best-seller-like books skew heavily
// nonfiction/self-help, the random cohort skews fiction. Genres outside a
// cohort's head get a small floor so every schema dimension stays informative.
inline std::map<std::string, double> abs_genre_weights() {
    return {
        {"nonfiction", 0.577}, {"fiction", 0.349}, {"self help", 0.219}, {"adult", 0.219},
        {"reference", 0.190}, {"business", 0.185}, {"history", 0.179}, {"biography", 0.151},
        {"science", 0.143}, {"novels", 0.143}, {"psychology", 0.141}, {"literature", 0.137},
        {"fantasy", 0.131}, {"contemporary", 0.128}, {"adult fiction", 0.117},
        {"romance", 0.05}, {"cultural", 0.05}, {"historical", 0.05}, {"children", 0.05},
        {"historical fiction", 0.05}, {"mystery", 0.05}, {"sequential art", 0.05},
        {"science fiction", 0.05}, {"young adult", 0.05},
    };
}

inline std::map<std::string, double> other_genre_weights() {
    return {
        {"fiction", 0.221}, {"nonfiction", 0.202}, {"romance", 0.119}, {"fantasy", 0.103},
        {"literature", 0.103}, {"history", 0.091}, {"cultural", 0.084}, {"historical", 0.063},
        {"children", 0.063}, {"historical fiction", 0.060}, {"mystery", 0.060},
        {"contemporary", 0.058}, {"sequential art", 0.054}, {"science fiction", 0.051},
        {"young adult", 0.051},
        {"self help", 0.04}, {"adult", 0.04}, {"reference", 0.04}, {"business", 0.04},
        {"biography", 0.04}, {"science", 0.04}, {"novels", 0.04}, {"psychology", 0.04},
        {"adult fiction", 0.04},
    };
}

inline std::map<std::string, double> competitor_genre_weights() {
    // close competitors are overwhelmingly fiction
    return {
        {"fiction", 0.737}, {"fantasy", 0.464}, {"romance", 0.388}, {"young adult", 0.332},
        {"adult", 0.298}, {"mystery", 0.212}, {"contemporary", 0.207},
        {"historical fiction", 0.159}, {"literature", 0.159}, {"historical", 0.156},
        {"science fiction", 0.155}, {"nonfiction", 0.08}, {"children", 0.137},
        {"self help", 0.03}, {"reference", 0.03}, {"business", 0.03}, {"biography", 0.06},
        {"science", 0.05}, {"novels", 0.08}, {"psychology", 0.03}, {"adult fiction", 0.15},
        {"history", 0.07}, {"cultural", 0.06}, {"sequential art", 0.04},
    };
}

}  // namespace detail

// ABS-like books: more ratings with more diverse stars, more shelves and
// flatter placements, many fast-posting readers, few finishers.
inline SynthConfig default_config() {
    SynthConfig cfg;

    cfg.abs.count = 380;
    cfg.abs.rating_volume_mu = 4.0;
    cfg.abs.rating_volume_sigma = 1.0;
    cfg.abs.star_probs = {0.06, 0.09, 0.18, 0.32, 0.35};
    cfg.abs.review_volume_mu = 3.0;
    cfg.abs.review_volume_sigma = 0.8;
    cfg.abs.review_pos_rate = 0.09;
    cfg.abs.review_neg_rate = 0.05;
    cfg.abs.custom_shelves_mu = 2.0;
    cfg.abs.shelf_users_mu = 6.2;
    cfg.abs.shelf_zipf_exponent = 1.3;
    cfg.abs.re_read_shelf_prob = 0.55;
    cfg.abs.readers_mu = 3.2;       // ~25 posters
    cfg.abs.readers_sigma = 0.5;
    cfg.abs.extra_posts_mean = 3.0;
    cfg.abs.first_post_day_mean = 3.0;
    cfg.abs.inter_post_gap_days = 0.6;
    cfg.abs.percent_increment_lo = 5.0;
    cfg.abs.percent_increment_hi = 25.0;
    cfg.abs.finish_prob = 0.018;    // most books end up with no finisher
    cfg.abs.status_pos_rate = 0.09;
    cfg.abs.status_neg_rate = 0.03;
    cfg.abs.about_topic_rate = 0.30;
    cfg.abs.boilerplate_rate = 0.45;
    cfg.abs.about_rare_rate = 0.06;
    cfg.abs.topic_pool_size = 40;
    cfg.abs.author_ratings_mu = 9.0;
    cfg.abs.author_reviews_mu = 6.5;
    cfg.abs.author_fans_mu = 6.0;
    cfg.abs.author_works_mu = 3.0;
    cfg.abs.genre_weights = detail::abs_genre_weights();

    cfg.other.count = 380;
    cfg.other.rating_volume_mu = 3.5;
    cfg.other.rating_volume_sigma = 1.0;
    cfg.other.star_probs = {0.04, 0.06, 0.16, 0.34, 0.40};
    cfg.other.review_volume_mu = 2.6;
    cfg.other.review_volume_sigma = 0.8;
    cfg.other.review_pos_rate = 0.08;
    cfg.other.review_neg_rate = 0.055;
    cfg.other.custom_shelves_mu = 1.5;
    cfg.other.shelf_users_mu = 4.6;
    cfg.other.shelf_zipf_exponent = 1.7;
    cfg.other.re_read_shelf_prob = 0.20;
    cfg.other.readers_mu = 1.8;     // ~6 posters
    cfg.other.extra_posts_mean = 1.0;
    cfg.other.first_post_day_mean = 6.0;
    cfg.other.inter_post_gap_days = 2.5;
    cfg.other.percent_increment_lo = 2.0;
    cfg.other.percent_increment_hi = 12.0;
    cfg.other.finish_prob = 0.010;
    cfg.other.about_topic_rate = 0.18;
    cfg.other.boilerplate_rate = 0.25;
    cfg.other.about_rare_rate = 0.12;
    cfg.other.topic_pool_size = 120;
    cfg.other.genre_weights = detail::other_genre_weights();

    // close competitors: even denser reading activity than ABS, every book
    // gets finished by someone, fiction-heavy genres
    cfg.hrhr.count = 0;
    cfg.hrhr.rating_volume_mu = 6.0;
    cfg.hrhr.rating_volume_sigma = 0.4;
    cfg.hrhr.star_probs = {0.01, 0.02, 0.10, 0.30, 0.57};
    cfg.hrhr.review_volume_mu = 4.5;
    cfg.hrhr.review_volume_sigma = 0.5;
    cfg.hrhr.review_volume_offset = 950.0;
    cfg.hrhr.review_len_lo = 8;
    cfg.hrhr.review_len_hi = 20;
    cfg.hrhr.custom_shelves_mu = 2.6;
    cfg.hrhr.shelf_users_mu = 7.0;
    cfg.hrhr.shelf_zipf_exponent = 1.0;
    cfg.hrhr.re_read_shelf_prob = 0.35;
    cfg.hrhr.readers_mu = 3.6;
    cfg.hrhr.extra_posts_mean = 3.5;
    cfg.hrhr.first_post_day_mean = 2.0;
    cfg.hrhr.inter_post_gap_days = 0.45;
    cfg.hrhr.percent_increment_lo = 6.0;
    cfg.hrhr.percent_increment_hi = 28.0;
    cfg.hrhr.finish_prob = 0.15;
    cfg.hrhr.genre_weights = detail::competitor_genre_weights();

    cfg.gcan = cfg.hrhr;
    cfg.gcan.count = 0;
    cfg.gcan.review_volume_offset = 0.0;
    cfg.gcan.review_volume_mu = 3.6;
    cfg.gcan.review_len_lo = 20;
    cfg.gcan.review_len_hi = 60;

    return cfg;
}

inline void SynthConfig::validate() const {
    auto check_cohort = [](const CohortParams& p, const std::string& name) {
        double sum = 0.0;
        for (double s : p.star_probs) {
            if (s < 0.0) throw DataError("synth config " + name + ": negative star probability");
            sum += s;
        }
        if (std::abs(sum - 1.0) > 1e-9) {
            throw DataError("synth config " + name + ": star probabilities sum to " +
                            format_double(sum) + ", expected 1");
        }
        if (p.inter_post_gap_days <= 0 || p.first_post_day_mean <= 0 || p.event_day_mean <= 0) {
            throw DataError("synth config " + name + ": rates must be positive");
        }
        if (p.finish_prob < 0 || p.finish_prob > 1 || p.status_comment_prob < 0 ||
            p.status_comment_prob > 1 || p.re_read_shelf_prob < 0 || p.re_read_shelf_prob > 1) {
            throw DataError("synth config " + name + ": probabilities must lie in [0,1]");
        }
        if (p.percent_increment_lo <= 0 || p.percent_increment_hi < p.percent_increment_lo) {
            throw DataError("synth config " + name + ": bad percent increment range");
        }
        if (p.about_len_hi < p.about_len_lo || p.review_len_hi < p.review_len_lo) {
            throw DataError("synth config " + name + ": bad text length range");
        }
        for (const auto& [genre, w] : p.genre_weights) {
            if (w < 0.0 || w > 1.0) {
                throw DataError("synth config " + name + ": genre weight out of [0,1] for '" + genre + "'");
            }
        }
    };
    check_cohort(abs, "abs");
    check_cohort(other, "other");
    check_cohort(hrhr, "hrhr");
    check_cohort(gcan, "gcan");
    auto start = try_parse_instant(pub_date_start);
    auto end = try_parse_instant(pub_date_end);
    if (!start || !end || *start > *end) throw DataError("synth config: bad publication date range");
    if (max_event_day <= 0) throw DataError("synth config: max_event_day must be positive");
}

// ---------------------------------------------------------------------------
// Config <-> JSON (partial overrides on top of the defaults)
// ---------------------------------------------------------------------------

namespace detail {

inline nlohmann::json cohort_to_json(const CohortParams& p) {
    return nlohmann::json{
        {"count", p.count},
        {"rating_volume_mu", p.rating_volume_mu},
        {"rating_volume_sigma", p.rating_volume_sigma},
        {"star_probs", p.star_probs},
        {"review_volume_mu", p.review_volume_mu},
        {"review_volume_sigma", p.review_volume_sigma},
        {"review_volume_offset", p.review_volume_offset},
        {"review_pos_rate", p.review_pos_rate},
        {"review_neg_rate", p.review_neg_rate},
        {"custom_shelves_mu", p.custom_shelves_mu},
        {"custom_shelves_sigma", p.custom_shelves_sigma},
        {"shelf_users_mu", p.shelf_users_mu},
        {"shelf_users_sigma", p.shelf_users_sigma},
        {"shelf_zipf_exponent", p.shelf_zipf_exponent},
        {"re_read_shelf_prob", p.re_read_shelf_prob},
        {"readers_mu", p.readers_mu},
        {"readers_sigma", p.readers_sigma},
        {"extra_posts_mean", p.extra_posts_mean},
        {"first_post_day_mean", p.first_post_day_mean},
        {"inter_post_gap_days", p.inter_post_gap_days},
        {"percent_increment_lo", p.percent_increment_lo},
        {"percent_increment_hi", p.percent_increment_hi},
        {"finish_prob", p.finish_prob},
        {"status_comment_prob", p.status_comment_prob},
        {"status_pos_rate", p.status_pos_rate},
        {"status_neg_rate", p.status_neg_rate},
        {"stopword_rate", p.stopword_rate},
        {"boilerplate_rate", p.boilerplate_rate},
        {"about_len_lo", p.about_len_lo},
        {"about_len_hi", p.about_len_hi},
        {"about_topic_rate", p.about_topic_rate},
        {"about_rare_rate", p.about_rare_rate},
        {"about_sentiment_rate", p.about_sentiment_rate},
        {"topic_pool_size", p.topic_pool_size},
        {"review_len_lo", p.review_len_lo},
        {"review_len_hi", p.review_len_hi},
        {"event_day_mean", p.event_day_mean},
        {"author_works_mu", p.author_works_mu},
        {"author_works_sigma", p.author_works_sigma},
        {"author_ratings_mu", p.author_ratings_mu},
        {"author_ratings_sigma", p.author_ratings_sigma},
        {"author_reviews_mu", p.author_reviews_mu},
        {"author_reviews_sigma", p.author_reviews_sigma},
        {"author_fans_mu", p.author_fans_mu},
        {"author_fans_sigma", p.author_fans_sigma},
        {"author_avg_rating_mean", p.author_avg_rating_mean},
        {"author_avg_rating_sd", p.author_avg_rating_sd},
        {"genre_weights", p.genre_weights},
    };
}

template <typename T>
void maybe(const nlohmann::json& j, const char* key, T& out) {
    if (auto it = j.find(key); it != j.end()) out = it->get<T>();
}

inline void cohort_from_json(const nlohmann::json& j, CohortParams& p) {
    maybe(j, "count", p.count);
    maybe(j, "rating_volume_mu", p.rating_volume_mu);
    maybe(j, "rating_volume_sigma", p.rating_volume_sigma);
    maybe(j, "star_probs", p.star_probs);
    maybe(j, "review_volume_mu", p.review_volume_mu);
    maybe(j, "review_volume_sigma", p.review_volume_sigma);
    maybe(j, "review_volume_offset", p.review_volume_offset);
    maybe(j, "review_pos_rate", p.review_pos_rate);
    maybe(j, "review_neg_rate", p.review_neg_rate);
    maybe(j, "custom_shelves_mu", p.custom_shelves_mu);
    maybe(j, "custom_shelves_sigma", p.custom_shelves_sigma);
    maybe(j, "shelf_users_mu", p.shelf_users_mu);
    maybe(j, "shelf_users_sigma", p.shelf_users_sigma);
    maybe(j, "shelf_zipf_exponent", p.shelf_zipf_exponent);
    maybe(j, "re_read_shelf_prob", p.re_read_shelf_prob);
    maybe(j, "readers_mu", p.readers_mu);
    maybe(j, "readers_sigma", p.readers_sigma);
    maybe(j, "extra_posts_mean", p.extra_posts_mean);
    maybe(j, "first_post_day_mean", p.first_post_day_mean);
    maybe(j, "inter_post_gap_days", p.inter_post_gap_days);
    maybe(j, "percent_increment_lo", p.percent_increment_lo);
    maybe(j, "percent_increment_hi", p.percent_increment_hi);
    maybe(j, "finish_prob", p.finish_prob);
    maybe(j, "status_comment_prob", p.status_comment_prob);
    maybe(j, "status_pos_rate", p.status_pos_rate);
    maybe(j, "status_neg_rate", p.status_neg_rate);
    maybe(j, "stopword_rate", p.stopword_rate);
    maybe(j, "boilerplate_rate", p.boilerplate_rate);
    maybe(j, "about_len_lo", p.about_len_lo);
    maybe(j, "about_len_hi", p.about_len_hi);
    maybe(j, "about_topic_rate", p.about_topic_rate);
    maybe(j, "about_rare_rate", p.about_rare_rate);
    maybe(j, "about_sentiment_rate", p.about_sentiment_rate);
    maybe(j, "topic_pool_size", p.topic_pool_size);
    maybe(j, "review_len_lo", p.review_len_lo);
    maybe(j, "review_len_hi", p.review_len_hi);
    maybe(j, "event_day_mean", p.event_day_mean);
    maybe(j, "author_works_mu", p.author_works_mu);
    maybe(j, "author_works_sigma", p.author_works_sigma);
    maybe(j, "author_ratings_mu", p.author_ratings_mu);
    maybe(j, "author_ratings_sigma", p.author_ratings_sigma);
    maybe(j, "author_reviews_mu", p.author_reviews_mu);
    maybe(j, "author_reviews_sigma", p.author_reviews_sigma);
    maybe(j, "author_fans_mu", p.author_fans_mu);
    maybe(j, "author_fans_sigma", p.author_fans_sigma);
    maybe(j, "author_avg_rating_mean", p.author_avg_rating_mean);
    maybe(j, "author_avg_rating_sd", p.author_avg_rating_sd);
    maybe(j, "genre_weights", p.genre_weights);
}

}  // namespace detail

inline nlohmann::json SynthConfig::to_json() const {
    return nlohmann::json{
        {"abs", detail::cohort_to_json(abs)},
        {"other", detail::cohort_to_json(other)},
        {"hrhr", detail::cohort_to_json(hrhr)},
        {"gcan", detail::cohort_to_json(gcan)},
        {"pub_date_start", pub_date_start},
        {"pub_date_end", pub_date_end},
        {"max_event_day", max_event_day},
    };
}

inline SynthConfig SynthConfig::from_json(const nlohmann::json& j) {
    SynthConfig cfg = default_config();
    if (auto it = j.find("abs"); it != j.end()) detail::cohort_from_json(*it, cfg.abs);
    if (auto it = j.find("other"); it != j.end()) detail::cohort_from_json(*it, cfg.other);
    if (auto it = j.find("hrhr"); it != j.end()) detail::cohort_from_json(*it, cfg.hrhr);
    if (auto it = j.find("gcan"); it != j.end()) detail::cohort_from_json(*it, cfg.gcan);
    detail::maybe(j, "pub_date_start", cfg.pub_date_start);
    detail::maybe(j, "pub_date_end", cfg.pub_date_end);
    detail::maybe(j, "max_event_day", cfg.max_event_day);
    return cfg;
}

// ---------------------------------------------------------------------------
// Vocabulary pools for generated text
// ---------------------------------------------------------------------------

namespace detail {

inline const std::vector<std::string>& filler_words() {
    static const std::vector<std::string> v = {
        "story", "novel", "world", "life", "character", "journey", "secret", "city", "war",
        "heart", "mystery", "magic", "history", "science", "truth", "dream", "island",
        "garden", "river", "music", "letter", "house", "road", "winter", "summer", "shadow",
        "light", "fire", "stone", "king", "queen", "child", "forest", "mountain", "sea",
        "ship", "door", "window", "voice", "silence", "memory", "ghost", "gold", "paper",
        "ink", "word", "page", "chapter", "beginning", "end", "stranger", "village",
        "army", "storm", "prisoner", "doctor", "teacher", "artist", "soldier", "painter",
        "think", "know", "believe", "because", "understand", "idea", "reason", "wonder",
        "love", "feel", "happy", "sad", "fear", "joy", "friend", "family", "people",
        "reader", "talk", "share", "community", "author", "time", "day", "week", "month",
        "year", "night", "morning", "hour", "see", "look", "hear", "sound", "watch",
        "eye", "always", "never", "certain", "clear", "sure", "truly", "becomes", "finds",
        "discovers", "returns", "remembers", "hidden", "lost", "ancient", "young", "last",
        "first", "dark", "quiet", "strange", "small", "long", "early", "late", "deep",
    };
    return v;
}

inline const std::vector<std::string>& abs_topic_words() {
    static const std::vector<std::string> v = {
        "success", "habit", "leader", "leadership", "money", "power", "growth", "market",
        "mind", "brain", "change", "goal", "strategy", "focus", "wealth", "business",
        "team", "plan", "work", "health", "energy", "skill", "career", "company", "value",
        "future", "decision", "practice", "discipline", "purpose", "risk", "productivity",
        "investment", "psychology", "motivation", "habits", "performance", "potential",
        "principle", "mindset", "negotiation", "startup", "economy", "innovation",
        "freedom", "confidence", "happiness", "stress", "routine", "vision", "impact",
        "culture", "data", "influence", "network", "profit", "achievement", "courage",
        "lesson", "insight",
    };
    return v;
}

inline const std::vector<std::string>& other_topic_words() {
    static const std::vector<std::string> v = {
        "kingdom", "dragon", "prince", "princess", "curse", "spell", "sword", "throne",
        "castle", "witch", "wizard", "knight", "quest", "prophecy", "realm", "empire",
        "rebel", "assassin", "thief", "demon", "angel", "wolf", "vampire", "academy",
        "heir", "crown", "blade", "oath", "legend", "fate", "destiny", "moon", "star",
        "rose", "thorn", "ash", "ember", "frost", "mist", "dawn", "dusk", "raven",
        "falcon", "serpent", "lion", "tide", "flame", "veil", "echo", "whisper", "vow",
        "exile", "hunter", "guardian", "portal", "relic", "rune", "temple", "tournament",
        "alliance", "betrayal", "bride", "duke", "heiress", "manor", "scandal", "summer",
        "wedding", "reunion", "letters", "orchard", "lighthouse", "harbor", "meadow",
        "detective", "inspector", "clue", "alibi", "motive", "suspect", "witness",
        "archive", "cipher", "manuscript", "expedition", "voyage", "compass", "atlas",
        "colony", "outpost", "signal", "circuit", "android", "comet", "orbit", "galaxy",
        "nebula", "clone", "plague", "bunker", "wasteland", "ruins", "tribe", "hollow",
        "grove", "fen", "marsh", "glen", "vale", "pass", "ridge", "summit", "cavern",
        "depths", "abyss", "spire", "citadel", "bastion", "rampart", "gate", "bridge",
        "crossing", "ford", "mill", "forge",
    };
    return v;
}

// pseudo proper-noun pool: two-syllable combinations, 676 distinct words
inline std::string rare_word(std::uint64_t index) {
    static const std::array<const char*, 26> syllables = {
        "an", "bar", "cor", "del", "en",  "far", "gal", "hol", "ith", "jor",
        "kel", "lum", "mar", "nor", "oth", "pel", "qui", "rav", "sol", "tor",
        "ul",  "ven", "wim", "xan", "yor", "zel"};
    return std::string(syllables[index / 26 % 26]) + syllables[index % 26];
}

inline const std::vector<std::string>& positive_words_pool() {
    static const std::vector<std::string> v = {
        "good", "great", "excellent", "amazing", "wonderful", "love", "loved", "beautiful",
        "enjoyed", "best", "favorite", "fantastic", "compelling", "gripping", "superb",
        "perfect", "fresh", "stunning", "engaging", "vivid", "powerful", "moving",
    };
    return v;
}

inline const std::vector<std::string>& negative_words_pool() {
    static const std::vector<std::string> v = {
        "bad", "terrible", "awful", "boring", "dull", "hated", "worst", "disappointing",
        "weak", "tedious", "poor", "flat", "predictable", "confusing", "annoying",
        "shallow", "bland", "slow", "mediocre", "forgettable",
    };
    return v;
}

// recurring blurb phrases; repeated verbatim across summaries, they give the
// keyword-overlap novelty signal something to latch onto
inline const std::vector<std::string>& shared_boilerplate() {
    static const std::vector<std::string> v = {
        "instant classic", "page turner", "critically acclaimed debut",
        "richly imagined world", "heartbreaking family saga", "sweeping epic tale",
        "unforgettable journey", "stunning conclusion", "long awaited sequel",
        "award winning author", "breathtaking adventure", "haunting portrait",
    };
    return v;
}

inline const std::vector<std::string>& abs_boilerplate() {
    static const std::vector<std::string> v = {
        "practical guide", "proven principles", "step by step framework",
        "life changing habits", "essential lessons", "groundbreaking research",
        "actionable advice", "transform your life",
    };
    return v;
}

inline const std::vector<std::string>& other_boilerplate() {
    static const std::vector<std::string> v = {
        "enemies to lovers", "slow burn romance", "found family",
        "dark academia mystery", "chosen one prophecy", "love triangle",
        "small town secrets", "second chance romance",
    };
    return v;
}

inline const std::vector<std::string>& function_words() {
    static const std::vector<std::string> v = {
        "the", "a", "an", "of", "in", "to", "and", "with", "for", "on", "his",
        "her", "their", "its", "from", "by", "at", "this", "that", "who", "when",
        "where", "after", "before", "into", "is", "was", "are", "has", "will",
    };
    return v;
}

inline const std::vector<std::string>& custom_shelf_pool() {
    static const std::vector<std::string> v = {
        "favorites", "owned", "ebook", "audiobook", "library", "wishlist", "classics",
        "book-club", "abandoned", "kindle", "to-buy", "series", "signed", "ya-shelf",
        "beach-reads", "recommended", "borrowed", "five-stars", "slow-burn", "comfort",
        "dnf", "arc", "netgalley", "buddy-read", "reread-maybe", "translated", "debut",
        "award-winners", "backlist", "new-releases",
    };
    return v;
}

struct TextModel {
    const CohortParams* params;
    const std::vector<std::string>* topic_pool;
    const std::vector<std::string>* boilerplate_pool;

    std::string sample(Rng& rng, std::size_t len_lo, std::size_t len_hi, double topic_rate,
                       double rare_rate, double pos_rate, double neg_rate) const {
        const std::size_t len = len_lo + static_cast<std::size_t>(
            rng.uniform_int(len_hi - len_lo + 1));
        std::string out;
        std::size_t sentence_len = 8 + rng.uniform_int(7);
        std::size_t since_break = 0;
        auto maybe_boilerplate = [&]() {
            if (!rng.bernoulli(params->boilerplate_rate)) return;
            const auto& shared = shared_boilerplate();
            const auto& own = *boilerplate_pool;
            const std::string& phrase = rng.bernoulli(0.6)
                ? shared[rng.uniform_int(shared.size())]
                : own[rng.uniform_int(own.size())];
            if (!out.empty()) out += ' ';
            out += phrase;
            out += '.';
        };
        maybe_boilerplate();
        const std::size_t pool_n = std::min(params->topic_pool_size, topic_pool->size());
        for (std::size_t i = 0; i < len; ++i) {
            if (rng.bernoulli(params->stopword_rate)) {
                if (!out.empty()) out += ' ';
                out += function_words()[rng.uniform_int(function_words().size())];
                if (++since_break >= sentence_len && i + 1 < len) {
                    out += '.';
                    since_break = 0;
                    sentence_len = 8 + rng.uniform_int(7);
                    maybe_boilerplate();
                }
                continue;
            }
            double u = rng.uniform();
            const std::string* w;
            if (u < topic_rate && pool_n > 0) {
                w = &(*topic_pool)[rng.uniform_int(pool_n)];
            } else if (u < topic_rate + rare_rate) {
                static thread_local std::string rare;
                rare = rare_word(rng.next_u64() % 676);
                w = &rare;
            } else if (u < topic_rate + rare_rate + pos_rate) {
                w = &positive_words_pool()[rng.uniform_int(positive_words_pool().size())];
            } else if (u < topic_rate + rare_rate + pos_rate + neg_rate) {
                w = &negative_words_pool()[rng.uniform_int(negative_words_pool().size())];
            } else {
                w = &filler_words()[rng.uniform_int(filler_words().size())];
            }
            if (!out.empty()) out += ' ';
            out += *w;
            if (++since_break >= sentence_len && i + 1 < len) {
                out += '.';
                since_break = 0;
                sentence_len = 8 + rng.uniform_int(7);
                maybe_boilerplate();
            }
        }
        if (!out.empty()) out += '.';
        return out;
    }
};

inline std::size_t lognormal_count(Rng& rng, double mu, double sigma, std::size_t cap = 4000) {
    double v = rng.lognormal(mu, sigma);
    auto n = static_cast<std::size_t>(std::llround(std::max(0.0, v)));
    return std::min(n, cap);
}

// geometric number of extra posts with the given mean
inline std::size_t geometric_extra(Rng& rng, double mean) {
    if (mean <= 0.0) return 0;
    const double p = 1.0 / (1.0 + mean);  // success probability
    double u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    return static_cast<std::size_t>(std::floor(std::log(u) / std::log(1.0 - p)));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Generation
// ---------------------------------------------------------------------------

inline void generate_cohort(Corpus& corpus, const SynthConfig& cfg, const CohortParams& params,
                            CohortTag tag, const std::string& prefix, std::uint64_t cohort_seed) {
    const Instant pub_start = parse_instant(cfg.pub_date_start);
    const Instant pub_end = parse_instant(cfg.pub_date_end);
    const std::int64_t pub_span_days = (pub_end - pub_start) / kSecondsPerDay + 1;

    const auto& topic_pool = (tag == CohortTag::ABS) ? detail::abs_topic_words()
                                                     : detail::other_topic_words();
    const auto& boilerplate = (tag == CohortTag::ABS) ? detail::abs_boilerplate()
                                                      : detail::other_boilerplate();
    detail::TextModel text{&params, &topic_pool, &boilerplate};

    // author pool for the cohort
    const std::size_t n_authors = std::max<std::size_t>(1, params.count * 3 / 5);
    std::vector<std::string> author_ids;
    if (params.count > 0) {
        Rng arng(cohort_seed ^ fnv1a64("authors"));
        for (std::size_t a = 0; a < n_authors; ++a) {
            AuthorRecord rec;
            char idbuf[48];
            std::snprintf(idbuf, sizeof(idbuf), "%s-author-%04zu", prefix.c_str(), a);
            rec.author_id = idbuf;
            rec.name = "Author " + std::to_string(corpus.authors.size() + 1);
            rec.works_count = static_cast<std::int64_t>(
                detail::lognormal_count(arng, params.author_works_mu, params.author_works_sigma, 100000));
            rec.ratings_count = static_cast<std::int64_t>(
                detail::lognormal_count(arng, params.author_ratings_mu, params.author_ratings_sigma, 10000000));
            rec.reviews_count = static_cast<std::int64_t>(
                detail::lognormal_count(arng, params.author_reviews_mu, params.author_reviews_sigma, 1000000));
            rec.fans_count = static_cast<std::int64_t>(
                detail::lognormal_count(arng, params.author_fans_mu, params.author_fans_sigma, 1000000));
            rec.avg_rating = std::clamp(
                arng.normal(params.author_avg_rating_mean, params.author_avg_rating_sd), 0.0, 5.0);
            author_ids.push_back(rec.author_id);
            corpus.author_index.emplace(rec.author_id, corpus.authors.size());
            corpus.authors.push_back(std::move(rec));
        }
    }

    for (std::size_t i = 0; i < params.count; ++i) {
        Rng rng(cohort_seed ^ fnv1a64("book-" + std::to_string(i)));

        BookRecord book;
        char idbuf[48];
        std::snprintf(idbuf, sizeof(idbuf), "%s-%04zu", prefix.c_str(), i);
        book.book_id = idbuf;
        book.title = "Title " + std::string(idbuf);
        book.label = tag;
        book.publication_date = pub_start +
            static_cast<Instant>(rng.uniform_int(static_cast<std::uint64_t>(pub_span_days))) *
                kSecondsPerDay;
        book.author_id = author_ids[rng.uniform_int(author_ids.size())];
        for (const auto& [genre, w] : params.genre_weights) {
            if (rng.bernoulli(w)) book.genres.insert(genre);
        }
        book.about = text.sample(rng, params.about_len_lo, params.about_len_hi,
                                 params.about_topic_rate, params.about_rare_rate,
                                 params.about_sentiment_rate, 0.0);

        auto event_instant = [&](double day_offset) {
            double capped = std::min(day_offset, cfg.max_event_day);
            return book.publication_date + static_cast<Instant>(std::llround(capped * kSecondsPerDay));
        };

        // ratings
        const std::size_t n_ratings = detail::lognormal_count(
            rng, params.rating_volume_mu, params.rating_volume_sigma);
        auto& ratings = corpus.ratings[book.book_id];
        for (std::size_t k = 0; k < n_ratings; ++k) {
            RatingEvent ev;
            ev.book_id = book.book_id;
            ev.user_id = book.book_id + "-r" + std::to_string(k);
            ev.stars = static_cast<int>(rng.categorical(params.star_probs)) + 1;
            ev.timestamp = event_instant(rng.exponential(1.0 / params.event_day_mean));
            ratings.push_back(std::move(ev));
        }

        // reviews
        const std::size_t n_reviews = static_cast<std::size_t>(params.review_volume_offset) +
            detail::lognormal_count(rng, params.review_volume_mu, params.review_volume_sigma);
        auto& reviews = corpus.reviews[book.book_id];
        for (std::size_t k = 0; k < n_reviews; ++k) {
            ReviewRecord ev;
            ev.book_id = book.book_id;
            ev.user_id = book.book_id + "-v" + std::to_string(k);
            ev.timestamp = event_instant(rng.exponential(1.0 / params.event_day_mean));
            ev.text = text.sample(rng, params.review_len_lo, params.review_len_hi, 0.05, 0.02,
                                  params.review_pos_rate, params.review_neg_rate);
            reviews.push_back(std::move(ev));
        }

        // shelves: the three canonical ones, maybe a re-read variant, plus
        // zipf-concentrated custom shelves
        std::vector<std::string> shelf_names = {"to-read", "read", "currently-reading"};
        if (rng.bernoulli(params.re_read_shelf_prob)) shelf_names.push_back("re-reads");
        const auto& custom = detail::custom_shelf_pool();
        std::size_t n_custom = std::min(custom.size(), detail::lognormal_count(
            rng, params.custom_shelves_mu, params.custom_shelves_sigma, custom.size()));
        for (std::size_t k = 0; k < n_custom; ++k) shelf_names.push_back(custom[k]);

        const std::size_t total_users = 2 + detail::lognormal_count(
            rng, params.shelf_users_mu, params.shelf_users_sigma, 2000000);
        std::vector<double> zipf(shelf_names.size());
        for (std::size_t k = 0; k < zipf.size(); ++k) {
            zipf[k] = 1.0 / std::pow(static_cast<double>(k + 1), params.shelf_zipf_exponent);
        }
        double zipf_total = 0.0;
        for (double z : zipf) zipf_total += z;
        auto& shelves = corpus.shelves[book.book_id];
        for (std::size_t k = 0; k < shelf_names.size(); ++k) {
            ShelfPlacement sp;
            sp.book_id = book.book_id;
            sp.shelf_name = shelf_names[k];
            sp.user_count = static_cast<std::int64_t>(
                std::llround(static_cast<double>(total_users) * zipf[k] / zipf_total));
            shelves.push_back(std::move(sp));
        }

        // status streams, one reader at a time
        const std::size_t n_readers = detail::lognormal_count(
            rng, params.readers_mu, params.readers_sigma, 1500);
        auto& statuses = corpus.statuses[book.book_id];
        for (std::size_t r = 0; r < n_readers; ++r) {
            const std::string user = book.book_id + "-s" + std::to_string(r);
            const std::size_t n_posts = 1 + detail::geometric_extra(rng, params.extra_posts_mean);
            const bool finisher = rng.bernoulli(params.finish_prob);
            const std::int64_t total_pages = 180 + static_cast<std::int64_t>(rng.uniform_int(400));

            double day = std::min(rng.exponential(1.0 / params.first_post_day_mean), 34.0);
            double percent = 1.0 + rng.uniform(0.0, 14.0);
            Instant prev_ts = 0;
            bool done = false;
            for (std::size_t p = 0; p < n_posts && !done; ++p) {
                StatusPost sp;
                sp.book_id = book.book_id;
                sp.user_id = user;
                Instant ts = event_instant(day);
                if (p > 0 && ts <= prev_ts) ts = prev_ts + 1;  // strictly increasing per reader
                sp.timestamp = ts;
                prev_ts = ts;

                double rounded = std::min(std::floor(percent), 99.0);
                const bool last_post = p + 1 == n_posts;
                if (finisher && (percent >= 100.0 || last_post)) {
                    rounded = 100.0;
                    done = true;
                }
                // vary the representation: percent, page/total, or finished flag
                double repr = rng.uniform();
                if (rounded >= 100.0 && repr < 0.4) {
                    sp.finished = true;
                } else if (repr < 0.25) {
                    sp.page = static_cast<std::int64_t>(
                        std::llround(rounded / 100.0 * static_cast<double>(total_pages)));
                    sp.total_pages = total_pages;
                    if (rounded >= 100.0) sp.page = total_pages;
                } else {
                    sp.percent_read = rounded;
                }
                if (rng.bernoulli(params.status_comment_prob)) {
                    sp.text = text.sample(rng, 3, 10, 0.05, 0.0, params.status_pos_rate,
                                          params.status_neg_rate);
                }
                statuses.push_back(std::move(sp));

                day += rng.exponential(1.0 / params.inter_post_gap_days);
                percent += rng.uniform(params.percent_increment_lo, params.percent_increment_hi);
            }
        }
        // keep per-book streams chronological so strict reload sees sorted files
        std::stable_sort(statuses.begin(), statuses.end(),
                         [](const StatusPost& a, const StatusPost& b) { return a.timestamp < b.timestamp; });
        std::stable_sort(ratings.begin(), ratings.end(),
                         [](const RatingEvent& a, const RatingEvent& b) { return a.timestamp < b.timestamp; });
        std::stable_sort(reviews.begin(), reviews.end(),
                         [](const ReviewRecord& a, const ReviewRecord& b) { return a.timestamp < b.timestamp; });

        corpus.book_index.emplace(book.book_id, corpus.books.size());
        corpus.books.push_back(std::move(book));
    }
}

inline Corpus generate_corpus(const SynthConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    Corpus corpus;
    generate_cohort(corpus, cfg, cfg.abs, CohortTag::ABS, "abs", seed ^ fnv1a64("cohort-abs"));
    generate_cohort(corpus, cfg, cfg.other, CohortTag::OTHER, "oth", seed ^ fnv1a64("cohort-other"));
    generate_cohort(corpus, cfg, cfg.hrhr, CohortTag::HRHR, "hrhr", seed ^ fnv1a64("cohort-hrhr"));
    generate_cohort(corpus, cfg, cfg.gcan, CohortTag::GCAN, "gcan", seed ^ fnv1a64("cohort-gcan"));
    // books without events keep no map entry, matching what a reload produces
    auto prune = [](auto& map) { std::erase_if(map, [](const auto& kv) { return kv.second.empty(); }); };
    prune(corpus.ratings);
    prune(corpus.reviews);
    prune(corpus.statuses);
    prune(corpus.shelves);
    return corpus;
}

// Validates the config before any file is written, then emits the six JSONL
// files through the corpus serializer.
inline Corpus generate_corpus_files(const SynthConfig& cfg, std::uint64_t seed,
                                    const std::filesystem::path& dir) {
    Corpus corpus = generate_corpus(cfg, seed);
    save_corpus(corpus, dir);
    return corpus;
}

}  // namespace bookcast::synth
