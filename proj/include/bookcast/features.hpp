#pragma once

// Feature extraction: turns a BookObservation into the rating / review /
// shelf / status / genre / novelty blocks and assembles the fixed-order
// vector described by a FeatureManifest. Extraction is a pure function of
// (observation, lexicons, manifest); books can be processed concurrently.

#include <algorithm>
#include <array>
#include <cstdio>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "bookcast/corpus.hpp"
#include "bookcast/stats.hpp"
#include "bookcast/textkit.hpp"

namespace bookcast::features {

// ---------------------------------------------------------------------------
// Genre schema: union of the two top-15 genre columns, 24 normalized names
// ---------------------------------------------------------------------------

struct GenreSchema {
    std::vector<std::string> names;  // ordered, exactly 24 entries

    static const GenreSchema& standard() {
        static const GenreSchema schema{{
            "adult", "adult fiction", "biography", "business", "children",
            "contemporary", "cultural", "fantasy", "fiction", "historical",
            "historical fiction", "history", "literature", "mystery", "nonfiction",
            "novels", "psychology", "reference", "romance", "science",
            "science fiction", "self help", "sequential art", "young adult",
        }};
        return schema;
    }
};

inline std::vector<double> genre_features(const BookRecord& book, const GenreSchema& schema) {
    std::vector<double> v(schema.names.size(), 0.0);
    for (std::size_t i = 0; i < schema.names.size(); ++i) {
        if (book.genres.contains(schema.names[i])) v[i] = 1.0;
    }
    return v;
}

// ---------------------------------------------------------------------------
// Rating block
// ---------------------------------------------------------------------------

struct RatingHistogram {
    std::array<std::int64_t, 5> counts{};  // stars 1..5

    std::int64_t total() const {
        std::int64_t t = 0;
        for (auto c : counts) t += c;
        return t;
    }

    // -sum p_j ln p_j with 0*ln(0) := 0
    double entropy() const {
        std::array<double, 5> w;
        for (std::size_t i = 0; i < 5; ++i) w[i] = static_cast<double>(counts[i]);
        return entropy_nats(w);
    }
};

struct RatingBlock {
    double avg_rating = 0.0;
    double n_ratings = 0.0;
    std::array<double, 5> star_counts{};
    double rating_entropy = 0.0;
};

inline RatingBlock rating_features(const BookObservation& obs) {
    RatingBlock b;
    if (obs.ratings.empty()) return b;  // zero ratings -> all fields 0
    RatingHistogram hist;
    double total_stars = 0.0;
    for (const auto& r : obs.ratings) {
        ++hist.counts[static_cast<std::size_t>(r.stars - 1)];
        total_stars += r.stars;
    }
    b.n_ratings = static_cast<double>(obs.ratings.size());
    b.avg_rating = total_stars / b.n_ratings;
    for (std::size_t i = 0; i < 5; ++i) b.star_counts[i] = static_cast<double>(hist.counts[i]);
    b.rating_entropy = hist.entropy();
    return b;
}

// ---------------------------------------------------------------------------
// Review block
// ---------------------------------------------------------------------------

struct ReviewBlock {
    double n_reviews = 0.0;
    double review_pos = 0.0;
    double review_neg = 0.0;
    // lexicon insertion order, matching the manifest's review_cat_* dims
    std::vector<std::pair<std::string, double>> category_scores;
};

inline ReviewBlock review_features(const BookObservation& obs,
                                   const text::SentimentLexicon& sentiment,
                                   const text::CategoryLexicon& categories) {
    ReviewBlock b;
    b.n_reviews = static_cast<double>(obs.reviews.size());
    std::string concat;
    for (const auto& r : obs.reviews) {
        concat += r.text;
        concat += '\n';
    }
    auto s = text::sentiment_scores(concat, sentiment);
    b.review_pos = s.positive_fraction;
    b.review_neg = s.negative_fraction;
    auto profile = text::category_profile(concat, categories);
    for (const auto& name : categories.category_names()) {
        b.category_scores.emplace_back(name, profile.at(name));
    }
    return b;
}

// ---------------------------------------------------------------------------
// Shelf block
// ---------------------------------------------------------------------------

struct ShelfBlock {
    double n_shelves = 0.0;
    double read_users = 0.0;
    double to_read_users = 0.0;
    double currently_reading_users = 0.0;
    double re_read_users = 0.0;
    double shelf_div = 0.0;
    double selectivity = 0.0;
};

inline bool is_re_read_shelf(const std::string& name) {
    return name == "re-read" || name == "re-reads" || name == "reread" || name == "rereads";
}

inline ShelfBlock shelf_features(const BookObservation& obs, int k) {
    if (k < 1) throw std::invalid_argument("shelf_features: k must be >= 1");
    ShelfBlock b;
    if (obs.shelves.empty()) {
        b.selectivity = 1.0;  // no placements: everything is trivially covered
        return b;
    }
    b.n_shelves = static_cast<double>(obs.shelves.size());

    std::vector<double> weights;
    weights.reserve(obs.shelves.size());
    double total = 0.0;
    for (const auto& s : obs.shelves) {
        weights.push_back(static_cast<double>(s.user_count));
        total += static_cast<double>(s.user_count);
        if (s.shelf_name == "read") b.read_users = static_cast<double>(s.user_count);
        else if (s.shelf_name == "to-read") b.to_read_users = static_cast<double>(s.user_count);
        else if (s.shelf_name == "currently-reading") b.currently_reading_users = static_cast<double>(s.user_count);
        else if (is_re_read_shelf(s.shelf_name)) b.re_read_users += static_cast<double>(s.user_count);
    }
    b.shelf_div = entropy_nats(weights);

    if (total <= 0.0) {
        b.selectivity = 1.0;
        return b;
    }
    // top-k shelves by user_count, count ties broken by name
    std::vector<const ShelfPlacement*> order;
    order.reserve(obs.shelves.size());
    for (const auto& s : obs.shelves) order.push_back(&s);
    std::sort(order.begin(), order.end(), [](const ShelfPlacement* a, const ShelfPlacement* b) {
        if (a->user_count != b->user_count) return a->user_count > b->user_count;
        return a->shelf_name < b->shelf_name;
    });
    double covered = 0.0;
    for (std::size_t i = 0; i < order.size() && i < static_cast<std::size_t>(k); ++i) {
        covered += static_cast<double>(order[i]->user_count);
    }
    b.selectivity = covered / total;
    return b;
}

constexpr int kDefaultSelectivityK = 3;

// ---------------------------------------------------------------------------
// Status block
// ---------------------------------------------------------------------------

struct StatusFeatureBlock {
    Summary posts_per_user;
    double unique_posters = 0.0;
    double multi_posters_2 = 0.0;
    double multi_posters_3 = 0.0;
    double multi_posters_5 = 0.0;
    Summary inter_arrival_days;        // gaps of the pooled per-book stream
    Summary max_stretch_pct;           // per-user largest percent increase
    Summary max_stretch_time_days;     // duration of that largest stretch
    Summary reading_rate_pct_per_day;  // per-user mean of per-gap rates
    Summary fastest_rate;              // per-user max per-gap rate
    Summary time_to_finish_days;
    double has_finisher = 0.0;
    double status_pos_sentiment = 0.0;
    double status_neg_sentiment = 0.0;
};

inline StatusFeatureBlock status_features(const BookObservation& obs,
                                          const text::SentimentLexicon& sentiment) {
    StatusFeatureBlock b;
    const double window_days = static_cast<double>(obs.window.length_days);
    if (obs.statuses.empty()) {
        // imputation: missingness itself is signal
        b.time_to_finish_days = Summary{window_days, window_days, window_days, 0.0};
        return b;
    }

    // pooled inter-arrival gaps (statuses are already chronologically sorted)
    std::vector<double> pooled_gaps;
    for (std::size_t i = 1; i < obs.statuses.size(); ++i) {
        pooled_gaps.push_back(static_cast<double>(obs.statuses[i].timestamp -
                                                  obs.statuses[i - 1].timestamp) /
                              static_cast<double>(kSecondsPerDay));
    }
    b.inter_arrival_days = summarize(pooled_gaps);

    // group posts per user, preserving chronological order
    std::map<std::string, std::vector<const StatusPost*>> by_user;
    for (const auto& s : obs.statuses) by_user[s.user_id].push_back(&s);

    std::vector<double> post_counts, stretches, stretch_times, mean_rates, max_rates, finish_days;
    std::string comment_concat;
    for (const auto& [user, posts] : by_user) {
        post_counts.push_back(static_cast<double>(posts.size()));
        for (const auto* p : posts) {
            if (p->text) {
                comment_concat += *p->text;
                comment_concat += '\n';
            }
        }

        // trajectory: this user's posts that carry an effective percent
        std::vector<std::pair<double, double>> traj;  // (days since first post, percent)
        const Instant t0 = posts.front()->timestamp;
        std::optional<double> finished_at;
        for (const auto* p : posts) {
            auto pct = p->effective_percent();
            if (!pct) continue;
            double days = static_cast<double>(p->timestamp - t0) / static_cast<double>(kSecondsPerDay);
            traj.emplace_back(days, *pct);
            if (!finished_at && *pct >= 100.0) finished_at = days;
        }
        if (finished_at) finish_days.push_back(*finished_at);

        if (traj.size() >= 2) {
            double best_stretch = 0.0, best_stretch_time = 0.0;
            bool first_gap = true;
            std::vector<double> rates;
            for (std::size_t i = 1; i < traj.size(); ++i) {
                const double d_pct = traj[i].second - traj[i - 1].second;
                const double d_days = traj[i].first - traj[i - 1].first;
                if (first_gap || d_pct > best_stretch) {
                    best_stretch = d_pct;
                    best_stretch_time = d_days;
                    first_gap = false;
                }
                if (d_days > 0.0) rates.push_back(d_pct / d_days);
            }
            stretches.push_back(best_stretch);
            stretch_times.push_back(best_stretch_time);
            if (!rates.empty()) {
                mean_rates.push_back(mean_of(rates));
                max_rates.push_back(*std::max_element(rates.begin(), rates.end()));
            }
        }
    }

    b.posts_per_user = summarize(post_counts);
    b.unique_posters = static_cast<double>(by_user.size());
    for (double n : post_counts) {
        if (n >= 2) ++b.multi_posters_2;
        if (n >= 3) ++b.multi_posters_3;
        if (n >= 5) ++b.multi_posters_5;
    }
    b.max_stretch_pct = summarize(stretches);
    b.max_stretch_time_days = summarize(stretch_times);
    b.reading_rate_pct_per_day = summarize(mean_rates);
    b.fastest_rate = summarize(max_rates);

    if (finish_days.empty()) {
        b.time_to_finish_days = Summary{window_days, window_days, window_days, 0.0};
        b.has_finisher = 0.0;
    } else {
        b.time_to_finish_days = summarize(finish_days);
        b.has_finisher = 1.0;
    }

    auto s = text::sentiment_scores(comment_concat, sentiment);
    b.status_pos_sentiment = s.positive_fraction;
    b.status_neg_sentiment = s.negative_fraction;
    return b;
}

// ---------------------------------------------------------------------------
// Novelty block
// ---------------------------------------------------------------------------

struct NoveltyBlock {
    double overlap_novelty = 0.0;
    double kl_novelty = 0.0;
    bool empty_about = false;
};

// Background text per book: the concatenated summaries of strictly
// earlier-published books. Bag-of-phrase statistics do not depend on the
// concatenation order, only on the per-book fragments.
inline std::string background_about(const Corpus& corpus, const BookRecord& book) {
    std::string background;
    for (const auto& other : corpus.books) {
        if (other.publication_date < book.publication_date && !other.about.empty()) {
            background += other.about;
            background += '\n';
        }
    }
    return background;
}

// Incrementally accumulated background corpus. RAKE word frequencies/degrees
// and unigram counts are additive over document fragments (a fragment
// boundary is a phrase delimiter), so adding summaries one by one produces
// exactly the statistics of the full concatenation while keeping extraction
// linear in total text size.
class BackgroundModel {
public:
    explicit BackgroundModel(const text::StopwordSet& stopwords) : stopwords_(&stopwords) {}

    void add_document(std::string_view doc) {
        for (auto& phrase : text::detail::candidate_phrases(doc, *stopwords_)) {
            std::string joined;
            for (const auto& w : phrase) {
                freq_[w] += 1.0;
                degree_[w] += static_cast<double>(phrase.size());
                if (!joined.empty()) joined += ' ';
                joined += w;
            }
            phrases_.try_emplace(std::move(joined), std::move(phrase));
        }
        for (auto& t : text::tokenize(doc)) {
            if (!stopwords_->contains(t)) {
                ++token_counts_[t];
                ++token_total_;
            }
        }
        keywords_dirty_ = true;
    }

    bool empty() const { return token_total_ == 0; }

    // same selection rule as text::extract_keywords on the concatenation
    const text::KeywordSet& keywords() const {
        if (!keywords_dirty_) return keywords_cache_;
        keywords_cache_ = text::KeywordSet{};
        if (!phrases_.empty()) {
            std::vector<std::pair<const std::string*, double>> scored;
            scored.reserve(phrases_.size());
            for (const auto& [joined, words] : phrases_) {
                double score = 0.0;
                for (const auto& w : words) score += degree_.at(w) / freq_.at(w);
                scored.emplace_back(&joined, score);
            }
            const std::size_t keep = (scored.size() + 2) / 3;
            std::nth_element(scored.begin(), scored.begin() + (keep - 1), scored.end(),
                             [](const auto& a, const auto& b) {
                                 if (a.second != b.second) return a.second > b.second;
                                 return *a.first < *b.first;
                             });
            const double cutoff = scored[keep - 1].second;
            for (const auto& [joined, score] : scored) {
                if (score >= cutoff) keywords_cache_.keywords.insert(*joined);
                keywords_cache_.scores[*joined] = score;
            }
        }
        keywords_dirty_ = false;
        return keywords_cache_;
    }

    // KL(P_A || P_background) with the same add-one smoothing over the union
    // vocabulary as text::kl_novelty; iterates the sorted union so the
    // arithmetic matches the direct two-document computation.
    double kl_from(std::string_view doc_a) const {
        std::vector<std::string> tokens_a;
        for (auto& t : text::tokenize(doc_a)) {
            if (!stopwords_->contains(t)) tokens_a.push_back(std::move(t));
        }
        if (tokens_a.empty()) {
            throw std::invalid_argument("kl_novelty: document A empty after stopword removal");
        }
        std::map<std::string, std::size_t> counts_a;
        for (const auto& t : tokens_a) ++counts_a[t];
        std::set<std::string> vocab;
        for (const auto& [w, _] : counts_a) vocab.insert(w);
        for (const auto& [w, _] : token_counts_) vocab.insert(w);

        const double denom_a = static_cast<double>(tokens_a.size() + vocab.size());
        const double denom_b = static_cast<double>(token_total_ + vocab.size());
        double kl = 0.0;
        for (const auto& w : vocab) {
            auto ita = counts_a.find(w);
            const double ca = ita == counts_a.end() ? 0.0 : static_cast<double>(ita->second);
            auto itb = token_counts_.find(w);
            const double cb = itb == token_counts_.end() ? 0.0 : static_cast<double>(itb->second);
            const double pa = (ca + 1.0) / denom_a;
            const double pb = (cb + 1.0) / denom_b;
            kl += pa * std::log(pa / pb);
        }
        return kl;
    }

    const text::StopwordSet& stopwords() const { return *stopwords_; }

private:
    const text::StopwordSet* stopwords_;
    std::unordered_map<std::string, double> freq_, degree_;
    std::map<std::string, std::vector<std::string>> phrases_;  // joined -> words
    std::unordered_map<std::string, std::size_t> token_counts_;
    std::size_t token_total_ = 0;
    mutable text::KeywordSet keywords_cache_;
    mutable bool keywords_dirty_ = true;
};

inline NoveltyBlock novelty_features(const BookRecord& book, const BackgroundModel& background) {
    const auto& stopwords = background.stopwords();
    NoveltyBlock b;
    auto about_tokens = text::tokenize(book.about);
    bool about_empty = true;
    for (const auto& t : about_tokens) {
        if (!stopwords.contains(t)) {
            about_empty = false;
            break;
        }
    }
    if (about_empty) {
        b.empty_about = true;  // both features 0, callers may warn
        return b;
    }

    auto kw_a = text::extract_keywords(book.about, stopwords);
    const auto& kw_b = background.keywords();
    if (kw_a.empty() && kw_b.empty()) {
        b.overlap_novelty = 0.0;  // undefined overlap -> feature value 0
    } else {
        b.overlap_novelty = text::keyword_overlap(kw_a, kw_b);
    }
    b.kl_novelty = background.kl_from(book.about);
    return b;
}

inline NoveltyBlock novelty_features(const BookRecord& book, const std::string& background,
                                     const text::StopwordSet& stopwords) {
    BackgroundModel model(stopwords);
    if (!background.empty()) model.add_document(background);
    return novelty_features(book, model);
}

inline NoveltyBlock novelty_features(const BookRecord& book, const Corpus& corpus,
                                     const text::StopwordSet& stopwords) {
    return novelty_features(book, background_about(corpus, book), stopwords);
}

// ---------------------------------------------------------------------------
// Manifest and vector assembly
// ---------------------------------------------------------------------------

enum class FeatureGroup { Rating, Review, Shelf, Status, Genre, Novelty };

inline const char* to_string(FeatureGroup g) {
    switch (g) {
        case FeatureGroup::Rating: return "rating";
        case FeatureGroup::Review: return "review";
        case FeatureGroup::Shelf: return "shelf";
        case FeatureGroup::Status: return "status";
        case FeatureGroup::Genre: return "genre";
        case FeatureGroup::Novelty: return "novelty";
    }
    return "?";
}

struct FeatureDim {
    std::string name;
    FeatureGroup group;
};

// Feature subsets used for training/evaluation. FULL is the model of record
// (status + genre + novelty); the two baselines are the traditional
// popularity indicators.
enum class FeatureMask { All, Full, BaselineRatings, BaselineReviews };

inline const char* to_string(FeatureMask m) {
    switch (m) {
        case FeatureMask::All: return "all";
        case FeatureMask::Full: return "full";
        case FeatureMask::BaselineRatings: return "ratings";
        case FeatureMask::BaselineReviews: return "reviews";
    }
    return "?";
}

inline std::optional<FeatureMask> mask_from_string(const std::string& s) {
    if (s == "all") return FeatureMask::All;
    if (s == "full") return FeatureMask::Full;
    if (s == "ratings") return FeatureMask::BaselineRatings;
    if (s == "reviews") return FeatureMask::BaselineReviews;
    return std::nullopt;
}

inline bool mask_includes(FeatureMask m, FeatureGroup g) {
    switch (m) {
        case FeatureMask::All: return true;
        case FeatureMask::Full:
            return g == FeatureGroup::Status || g == FeatureGroup::Genre || g == FeatureGroup::Novelty;
        case FeatureMask::BaselineRatings: return g == FeatureGroup::Rating;
        case FeatureMask::BaselineReviews: return g == FeatureGroup::Review;
    }
    return false;
}

struct FeatureManifest {
    std::vector<FeatureDim> dims;
    std::string manifest_id;

    std::size_t size() const { return dims.size(); }

    std::vector<std::size_t> mask_indices(FeatureMask m) const {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < dims.size(); ++i) {
            if (mask_includes(m, dims[i].group)) idx.push_back(i);
        }
        return idx;
    }

    nlohmann::json to_json() const {
        nlohmann::json dims_json = nlohmann::json::array();
        for (std::size_t i = 0; i < dims.size(); ++i) {
            dims_json.push_back({{"index", i}, {"name", dims[i].name}, {"group", to_string(dims[i].group)}});
        }
        return nlohmann::json{{"manifest_id", manifest_id}, {"dimensions", dims_json}};
    }
};

// The manifest depends on the category lexicon (one review dimension per
// category) and on the genre schema; its id fingerprints the dimension list
// so mismatched artifacts are rejected instead of silently misaligned.
inline FeatureManifest build_manifest(const text::CategoryLexicon& categories,
                                      const GenreSchema& schema = GenreSchema::standard()) {
    FeatureManifest m;
    auto add = [&](std::string name, FeatureGroup g) { m.dims.push_back({std::move(name), g}); };
    auto add_summary = [&](const std::string& stem, FeatureGroup g) {
        add(stem + "_mean", g);
        add(stem + "_min", g);
        add(stem + "_max", g);
        add(stem + "_var", g);
    };

    add("avg_rating", FeatureGroup::Rating);
    add("n_ratings", FeatureGroup::Rating);
    for (int s = 1; s <= 5; ++s) add("n_" + std::to_string(s) + "star", FeatureGroup::Rating);
    add("rating_entropy", FeatureGroup::Rating);

    add("n_reviews", FeatureGroup::Review);
    add("review_pos_sentiment", FeatureGroup::Review);
    add("review_neg_sentiment", FeatureGroup::Review);
    for (const auto& name : categories.category_names()) {
        std::string safe = name;
        std::replace(safe.begin(), safe.end(), ' ', '_');
        add("review_cat_" + safe, FeatureGroup::Review);
    }

    add("n_shelves", FeatureGroup::Shelf);
    add("read_users", FeatureGroup::Shelf);
    add("to_read_users", FeatureGroup::Shelf);
    add("currently_reading_users", FeatureGroup::Shelf);
    add("re_read_users", FeatureGroup::Shelf);
    add("shelf_div", FeatureGroup::Shelf);
    add("selectivity_" + std::to_string(kDefaultSelectivityK), FeatureGroup::Shelf);

    add_summary("status_posts_per_user", FeatureGroup::Status);
    add("status_unique_posters", FeatureGroup::Status);
    add("status_multi_posters_2", FeatureGroup::Status);
    add("status_multi_posters_3", FeatureGroup::Status);
    add("status_multi_posters_5", FeatureGroup::Status);
    add_summary("status_inter_arrival_days", FeatureGroup::Status);
    add_summary("status_max_stretch_pct", FeatureGroup::Status);
    add_summary("status_max_stretch_time_days", FeatureGroup::Status);
    add_summary("status_reading_rate", FeatureGroup::Status);
    add_summary("status_fastest_rate", FeatureGroup::Status);
    add_summary("status_time_to_finish_days", FeatureGroup::Status);
    add("status_has_finisher", FeatureGroup::Status);
    add("status_pos_sentiment", FeatureGroup::Status);
    add("status_neg_sentiment", FeatureGroup::Status);

    for (const auto& g : schema.names) {
        std::string safe = g;
        std::replace(safe.begin(), safe.end(), ' ', '_');
        add("genre_" + safe, FeatureGroup::Genre);
    }

    add("novelty_overlap", FeatureGroup::Novelty);
    add("novelty_kl", FeatureGroup::Novelty);

    std::string joined;
    for (const auto& d : m.dims) {
        joined += d.name;
        joined += '|';
        joined += to_string(d.group);
        joined += ';';
    }
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(joined)));
    m.manifest_id = std::string("fv1-") + buf;
    return m;
}

struct FeatureVector {
    std::vector<double> values;
    std::string manifest_id;
};

// All blocks must come from the same observation window; the result is
// checked to be finite in every dimension.
inline FeatureVector assemble_vector(const RatingBlock& rating, const ReviewBlock& review,
                                     const ShelfBlock& shelf, const StatusFeatureBlock& status,
                                     const std::vector<double>& genres, const NoveltyBlock& novelty,
                                     const FeatureManifest& manifest) {
    FeatureVector fv;
    fv.manifest_id = manifest.manifest_id;
    auto& v = fv.values;
    v.reserve(manifest.size());

    v.push_back(rating.avg_rating);
    v.push_back(rating.n_ratings);
    for (double c : rating.star_counts) v.push_back(c);
    v.push_back(rating.rating_entropy);

    v.push_back(review.n_reviews);
    v.push_back(review.review_pos);
    v.push_back(review.review_neg);
    for (const auto& [_, score] : review.category_scores) v.push_back(score);

    v.push_back(shelf.n_shelves);
    v.push_back(shelf.read_users);
    v.push_back(shelf.to_read_users);
    v.push_back(shelf.currently_reading_users);
    v.push_back(shelf.re_read_users);
    v.push_back(shelf.shelf_div);
    v.push_back(shelf.selectivity);

    auto push_summary = [&](const Summary& s) {
        v.push_back(s.mean);
        v.push_back(s.min);
        v.push_back(s.max);
        v.push_back(s.variance);
    };
    push_summary(status.posts_per_user);
    v.push_back(status.unique_posters);
    v.push_back(status.multi_posters_2);
    v.push_back(status.multi_posters_3);
    v.push_back(status.multi_posters_5);
    push_summary(status.inter_arrival_days);
    push_summary(status.max_stretch_pct);
    push_summary(status.max_stretch_time_days);
    push_summary(status.reading_rate_pct_per_day);
    push_summary(status.fastest_rate);
    push_summary(status.time_to_finish_days);
    v.push_back(status.has_finisher);
    v.push_back(status.status_pos_sentiment);
    v.push_back(status.status_neg_sentiment);

    for (double g : genres) v.push_back(g);

    v.push_back(novelty.overlap_novelty);
    v.push_back(novelty.kl_novelty);

    if (v.size() != manifest.size()) {
        throw std::invalid_argument("assemble_vector: blocks do not match manifest (" +
                                    std::to_string(v.size()) + " vs " +
                                    std::to_string(manifest.size()) + " dims)");
    }
    for (double x : v) {
        if (!std::isfinite(x)) throw std::logic_error("assemble_vector: non-finite feature value");
    }
    return fv;
}

// Convenience bundle used by the CLI and tests.
struct ExtractionContext {
    const text::StopwordSet* stopwords;
    const text::SentimentLexicon* sentiment;
    const text::CategoryLexicon* categories;
    const GenreSchema* schema;
    const FeatureManifest* manifest;
};

inline FeatureVector extract_features(const BookObservation& obs, const BackgroundModel& background,
                                      const ExtractionContext& ctx) {
    auto rating = rating_features(obs);
    auto review = review_features(obs, *ctx.sentiment, *ctx.categories);
    auto shelf = shelf_features(obs, kDefaultSelectivityK);
    auto status = status_features(obs, *ctx.sentiment);
    auto genres = genre_features(obs.book, *ctx.schema);
    auto novelty = novelty_features(obs.book, background);
    return assemble_vector(rating, review, shelf, status, genres, novelty, *ctx.manifest);
}

// ---------------------------------------------------------------------------
// Author characterization (analyze export only; not part of the prediction
// vector, which follows the enumerated model feature set)
// ---------------------------------------------------------------------------

struct AuthorProfile {
    double ratings_count = 0.0;
    double reviews_count = 0.0;
    double works_count = 0.0;
    double fans_count = 0.0;
};

inline AuthorProfile author_profile(const AuthorRecord& author) {
    return {static_cast<double>(author.ratings_count), static_cast<double>(author.reviews_count),
            static_cast<double>(author.works_count), static_cast<double>(author.fans_count)};
}

}  // namespace bookcast::features
