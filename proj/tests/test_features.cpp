#include <catch2/catch_amalgamated.hpp>

#include "bookcast/features.hpp"
#include "bookcast/lexicons.hpp"
#include "bookcast/rng.hpp"
#include "oracles.hpp"

using namespace bookcast;
using namespace bookcast::features;

namespace {

constexpr Instant kPub = 14610 * kSecondsPerDay;  // 2010-01-01

BookObservation make_obs(int window_days = 30) {
    BookObservation obs;
    obs.book.book_id = "b1";
    obs.book.publication_date = kPub;
    obs.window = ObservationWindow{window_days};
    return obs;
}

RatingEvent rating(int stars, int day) {
    return {"b1", "u" + std::to_string(day) + "-" + std::to_string(stars), stars,
            kPub + day * kSecondsPerDay};
}

StatusPost status(const std::string& user, double day, std::optional<double> pct,
                  std::optional<std::string> comment = std::nullopt) {
    StatusPost s;
    s.book_id = "b1";
    s.user_id = user;
    s.timestamp = kPub + static_cast<Instant>(day * kSecondsPerDay);
    s.percent_read = pct;
    s.text = std::move(comment);
    return s;
}

text::SentimentLexicon toy_sentiment() {
    text::SentimentLexicon lex;
    lex.add("good", true);
    lex.add("bad", false);
    return lex;
}

}  // namespace

TEST_CASE("rating features") {
    auto obs = make_obs();
    obs.ratings = {rating(5, 1), rating(5, 2), rating(3, 3), rating(3, 4)};
    auto b = rating_features(obs);
    CHECK(b.avg_rating == Catch::Approx(4.0));
    CHECK(b.n_ratings == 4.0);
    CHECK(b.rating_entropy == Catch::Approx(std::log(2.0)).margin(1e-12));
    CHECK(b.star_counts[2] == 2.0);
    CHECK(b.star_counts[4] == 2.0);

    obs.ratings = {rating(4, 1), rating(4, 2), rating(4, 3)};
    CHECK(rating_features(obs).rating_entropy == 0.0);

    obs.ratings = {rating(1, 1), rating(2, 1), rating(3, 1), rating(4, 1), rating(5, 1)};
    CHECK(rating_features(obs).rating_entropy == Catch::Approx(std::log(5.0)).margin(1e-12));

    CHECK(rating_features(make_obs()).n_ratings == 0.0);
    CHECK(rating_features(make_obs()).avg_rating == 0.0);
}

TEST_CASE("rating entropy stays in [0, ln 5] and matches the oracle") {
    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        auto obs = make_obs();
        int n = 1 + static_cast<int>(rng.uniform_int(40));
        std::vector<double> counts(5, 0.0);
        for (int i = 0; i < n; ++i) {
            int s = 1 + static_cast<int>(rng.uniform_int(5));
            counts[s - 1] += 1.0;
            obs.ratings.push_back(rating(s, i % 28));
        }
        double got = rating_features(obs).rating_entropy;
        CHECK(got == Catch::Approx(oracle::entropy(counts)).margin(1e-9));
        CHECK(got >= 0.0);
        CHECK(got <= std::log(5.0) + 1e-12);
    }
}

TEST_CASE("review features concatenate in-window texts") {
    auto lex = toy_sentiment();
    auto cats = text::default_category_lexicon();
    auto obs = make_obs();
    obs.reviews = {{"b1", "u1", kPub + 1, "good good"},
                   {"b1", "u2", kPub + 2, "bad"},
                   {"b1", "u3", kPub + 3, "word"}};
    auto b = review_features(obs, lex, cats);
    CHECK(b.n_reviews == 3.0);
    CHECK(b.review_pos == Catch::Approx(0.5));
    CHECK(b.review_neg == Catch::Approx(0.25));

    auto empty = review_features(make_obs(), lex, cats);
    CHECK(empty.n_reviews == 0.0);
    CHECK(empty.review_pos == 0.0);

    // bag-of-words: permuting review order leaves every score unchanged
    auto permuted = make_obs();
    permuted.reviews = {obs.reviews[2], obs.reviews[0], obs.reviews[1]};
    auto b2 = review_features(permuted, lex, cats);
    CHECK(b2.review_pos == b.review_pos);
    CHECK(b2.review_neg == b.review_neg);
    CHECK(b2.category_scores == b.category_scores);
}

TEST_CASE("shelf features") {
    auto obs = make_obs();
    auto add_shelf = [&](const std::string& name, std::int64_t users) {
        obs.shelves.push_back({"b1", name, users});
    };

    SECTION("uniform placements maximize diversity") {
        for (auto name : {"read", "to-read", "currently-reading", "favorites"}) add_shelf(name, 10);
        auto b = shelf_features(obs, 3);
        CHECK(b.shelf_div == Catch::Approx(std::log(4.0)).margin(1e-12));
        CHECK(b.n_shelves == 4.0);
        CHECK(b.read_users == 10.0);
        CHECK(b.to_read_users == 10.0);
        CHECK(b.currently_reading_users == 10.0);
    }
    SECTION("selectivity covers the top-k user mass") {
        add_shelf("read", 50);
        add_shelf("to-read", 30);
        add_shelf("currently-reading", 20);
        add_shelf("favorites", 10);
        add_shelf("owned", 5);
        CHECK(shelf_features(obs, 3).selectivity == Catch::Approx(100.0 / 115.0));
    }
    SECTION("book in exactly k shelves has selectivity 1") {
        add_shelf("read", 8);
        add_shelf("to-read", 4);
        add_shelf("re-reads", 2);
        auto b = shelf_features(obs, 3);
        CHECK(b.selectivity == 1.0);
        CHECK(b.re_read_users == 2.0);
    }
    SECTION("no placements") {
        auto b = shelf_features(obs, 3);
        CHECK(b.shelf_div == 0.0);
        CHECK(b.selectivity == 1.0);
    }
    SECTION("re-read variants are pooled") {
        add_shelf("re-read", 1);
        add_shelf("rereads", 2);
        add_shelf("reread", 3);
        CHECK(shelf_features(obs, 3).re_read_users == 6.0);
    }
}

TEST_CASE("selectivity is nondecreasing in k and matches the oracle") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        auto obs = make_obs();
        int n = 1 + static_cast<int>(rng.uniform_int(8));
        std::vector<std::pair<std::string, std::int64_t>> shelves;
        std::vector<double> weights;
        for (int i = 0; i < n; ++i) {
            std::int64_t users = static_cast<std::int64_t>(rng.uniform_int(20));
            shelves.push_back({"s" + std::to_string(i), users});
            weights.push_back(static_cast<double>(users));
            obs.shelves.push_back({"b1", "s" + std::to_string(i), users});
        }
        double total = 0.0;
        for (double w : weights) total += w;
        double prev = 0.0;
        for (int k = 1; k <= n + 2; ++k) {
            double got = shelf_features(obs, k).selectivity;
            if (total > 0.0) {
                CHECK(got == Catch::Approx(oracle::selectivity(shelves, k)).margin(1e-9));
            }
            CHECK(got >= prev - 1e-12);
            prev = got;
            if (k >= n) CHECK(got == 1.0);
        }
        CHECK(shelf_features(obs, 3).shelf_div ==
              Catch::Approx(oracle::entropy(weights)).margin(1e-9));
    }
}

TEST_CASE("status features on the single-reader trace") {
    auto lex = toy_sentiment();
    auto obs = make_obs(30);
    obs.statuses = {status("u1", 0.0, 10.0), status("u1", 1.0, 40.0), status("u1", 3.0, 100.0)};
    auto b = status_features(obs, lex);

    CHECK(b.posts_per_user.mean == 3.0);
    CHECK(b.unique_posters == 1.0);
    CHECK(b.multi_posters_2 == 1.0);
    CHECK(b.multi_posters_3 == 1.0);
    CHECK(b.multi_posters_5 == 0.0);
    CHECK(b.inter_arrival_days.mean == Catch::Approx(1.5));
    CHECK(b.inter_arrival_days.min == Catch::Approx(1.0));
    CHECK(b.inter_arrival_days.max == Catch::Approx(2.0));
    CHECK(b.max_stretch_pct.mean == Catch::Approx(60.0));
    CHECK(b.max_stretch_time_days.mean == Catch::Approx(2.0));
    CHECK(b.reading_rate_pct_per_day.mean == Catch::Approx(30.0));
    CHECK(b.fastest_rate.mean == Catch::Approx(30.0));
    CHECK(b.time_to_finish_days.mean == Catch::Approx(3.0));
    CHECK(b.has_finisher == 1.0);
}

TEST_CASE("status features imputation and pooled arrivals") {
    auto lex = toy_sentiment();

    SECTION("no posts") {
        auto b = status_features(make_obs(30), lex);
        CHECK(b.unique_posters == 0.0);
        CHECK(b.posts_per_user.mean == 0.0);
        CHECK(b.time_to_finish_days.mean == 30.0);
        CHECK(b.time_to_finish_days.min == 30.0);
        CHECK(b.time_to_finish_days.max == 30.0);
        CHECK(b.time_to_finish_days.variance == 0.0);
        CHECK(b.has_finisher == 0.0);
    }
    SECTION("two single-post users share one pooled gap") {
        auto obs = make_obs(30);
        obs.statuses = {status("u1", 1.0, 10.0), status("u2", 4.0, 20.0)};
        auto b = status_features(obs, lex);
        CHECK(b.multi_posters_2 == 0.0);
        CHECK(b.unique_posters == 2.0);
        CHECK(b.inter_arrival_days.mean == Catch::Approx(3.0));
        CHECK(b.inter_arrival_days.variance == 0.0);
        // nobody has two percent-bearing posts, so rate families impute to 0
        CHECK(b.reading_rate_pct_per_day.mean == 0.0);
        CHECK(b.time_to_finish_days.mean == 30.0);
    }
    SECTION("page/total_pages and finished drive effective percent") {
        auto obs = make_obs(30);
        StatusPost p1 = status("u1", 0.0, std::nullopt);
        p1.page = 50;
        p1.total_pages = 200;  // 25%
        StatusPost p2 = status("u1", 2.0, std::nullopt);
        p2.finished = true;
        obs.statuses = {p1, p2};
        auto b = status_features(obs, lex);
        CHECK(b.max_stretch_pct.mean == Catch::Approx(75.0));
        CHECK(b.has_finisher == 1.0);
        CHECK(b.time_to_finish_days.mean == Catch::Approx(2.0));
    }
    SECTION("comment sentiment") {
        auto obs = make_obs(30);
        obs.statuses = {status("u1", 1.0, 10.0, "good good bad word")};
        auto b = status_features(obs, lex);
        CHECK(b.status_pos_sentiment == Catch::Approx(0.5));
        CHECK(b.status_neg_sentiment == Catch::Approx(0.25));
    }
}

TEST_CASE("status summaries satisfy min <= mean <= max and variance >= 0") {
    auto lex = toy_sentiment();
    Rng rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        auto obs = make_obs(30);
        int n_users = 1 + static_cast<int>(rng.uniform_int(6));
        for (int u = 0; u < n_users; ++u) {
            double day = rng.uniform(0.0, 10.0);
            double pct = rng.uniform(0.0, 30.0);
            int posts = 1 + static_cast<int>(rng.uniform_int(5));
            for (int p = 0; p < posts; ++p) {
                obs.statuses.push_back(status("u" + std::to_string(u), day,
                                              rng.bernoulli(0.8) ? std::optional<double>(std::min(pct, 100.0))
                                                                 : std::nullopt));
                day += rng.uniform(0.05, 5.0);
                pct += rng.uniform(0.0, 40.0);
            }
        }
        std::sort(obs.statuses.begin(), obs.statuses.end(),
                  [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
        auto b = status_features(obs, lex);
        for (const auto* s : {&b.posts_per_user, &b.inter_arrival_days, &b.max_stretch_pct,
                              &b.max_stretch_time_days, &b.reading_rate_pct_per_day,
                              &b.fastest_rate, &b.time_to_finish_days}) {
            CHECK(s->min <= s->mean + 1e-9);
            CHECK(s->mean <= s->max + 1e-9);
            CHECK(s->variance >= -1e-12);
        }
    }
}

TEST_CASE("genre schema and features") {
    const auto& schema = GenreSchema::standard();
    REQUIRE(schema.names.size() == 24);

    BookRecord book;
    book.genres = {"fiction", "romance"};
    auto v = genre_features(book, schema);
    double hits = 0.0;
    for (std::size_t i = 0; i < schema.names.size(); ++i) {
        if (v[i] == 1.0) {
            ++hits;
            CHECK((schema.names[i] == "fiction" || schema.names[i] == "romance"));
        }
    }
    CHECK(hits == 2.0);

    BookRecord nf;
    nf.genres = {normalize_genre("Non-fiction")};
    auto vnf = genre_features(nf, schema);
    auto it = std::find(schema.names.begin(), schema.names.end(), "nonfiction");
    REQUIRE(it != schema.names.end());
    CHECK(vnf[static_cast<std::size_t>(it - schema.names.begin())] == 1.0);

    BookRecord none;
    auto vzero = genre_features(none, schema);
    CHECK(std::count(vzero.begin(), vzero.end(), 0.0) == 24);
}

TEST_CASE("novelty features") {
    auto sw = text::default_stopwords();

    SECTION("earliest book: empty background") {
        BookRecord b;
        b.about = "silent mountain journey";
        auto n = novelty_features(b, std::string{}, sw);
        CHECK(n.overlap_novelty == 0.0);
        // background smooths to the uniform model over the union vocabulary
        CHECK(n.kl_novelty == Catch::Approx(oracle::kl_divergence(
            {"silent", "mountain", "journey"}, {})).margin(1e-9));
    }
    SECTION("about equal to the whole background") {
        BookRecord b;
        b.about = "silent mountain journey. hidden river song";
        auto n = novelty_features(b, b.about, sw);
        CHECK(n.overlap_novelty == 1.0);
        CHECK(n.kl_novelty == Catch::Approx(0.0).margin(1e-12));
    }
    SECTION("empty about yields zero features with the flag set") {
        BookRecord b;
        b.about = "the of and";  // only stopwords
        auto n = novelty_features(b, std::string{"whatever text"}, sw);
        CHECK(n.empty_about);
        CHECK(n.overlap_novelty == 0.0);
        CHECK(n.kl_novelty == 0.0);
    }
    SECTION("three-book fixture composes the textkit oracles") {
        Corpus c;
        auto add = [&](const std::string& id, int year, const std::string& about) {
            BookRecord b;
            b.book_id = id;
            b.publication_date = days_from_civil(year, 1, 1) * kSecondsPerDay;
            b.about = about;
            c.book_index.emplace(id, c.books.size());
            c.books.push_back(std::move(b));
        };
        add("b1", 2008, "ancient forest kingdom. silver river crossing");
        add("b2", 2010, "forgotten kingdom heir. ancient forest magic");
        add("b3", 2012, "ancient forest kingdom rises again");

        std::string background = c.books[0].about + "\n" + c.books[1].about + "\n";
        auto direct_kw_a = text::extract_keywords(c.books[2].about, sw);
        auto direct_kw_b = text::extract_keywords(background, sw);
        double want_overlap = text::keyword_overlap(direct_kw_a, direct_kw_b);
        double want_kl = text::kl_novelty(c.books[2].about, background, sw);

        auto got = novelty_features(c.books[2], c, sw);
        CHECK(got.overlap_novelty == Catch::Approx(want_overlap).margin(1e-12));
        CHECK(got.kl_novelty == Catch::Approx(want_kl).margin(1e-12));
    }
}

TEST_CASE("incremental background model matches whole-text extraction") {
    auto sw = text::default_stopwords();
    Rng rng(8);
    static const std::vector<std::string> vocab = {
        "ancient", "forest", "kingdom", "river", "song", "the", "and", "of", "heir",
        "magic", "silver", "crossing", "winter", "crown", "ember",
    };
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::string> docs;
        std::string concat;
        for (int d = 0; d < 1 + static_cast<int>(rng.uniform_int(5)); ++d) {
            std::string doc;
            for (int i = 0; i < 4 + static_cast<int>(rng.uniform_int(25)); ++i) {
                if (!doc.empty()) doc += ' ';
                doc += vocab[rng.uniform_int(vocab.size())];
                if (rng.bernoulli(0.15)) doc += '.';
            }
            docs.push_back(doc);
            concat += doc;
            concat += '\n';
        }
        BackgroundModel model(sw);
        for (const auto& d : docs) model.add_document(d);
        auto direct = text::extract_keywords(concat, sw);
        CHECK(model.keywords().keywords == direct.keywords);
        CHECK(model.kl_from("ancient river ember winter") ==
              Catch::Approx(text::kl_novelty("ancient river ember winter", concat, sw)).margin(1e-12));
    }
}

TEST_CASE("vector assembly follows the manifest") {
    auto cats = text::default_category_lexicon();
    auto manifest = build_manifest(cats);
    auto sw = text::default_stopwords();
    auto slex = text::default_sentiment_lexicon();
    ExtractionContext ctx{&sw, &slex, &cats, &GenreSchema::standard(), &manifest};

    auto obs = make_obs(30);
    obs.book.genres = {"fiction"};
    obs.book.about = "quiet river town secret";
    obs.ratings = {rating(4, 1), rating(5, 2)};
    obs.reviews = {{"b1", "u1", kPub + 5, "a good story"}};
    obs.shelves = {{"b1", "read", 4}, {"b1", "to-read", 9}};
    obs.statuses = {status("u1", 0.5, 12.0), status("u1", 1.5, 30.0)};

    BackgroundModel bg(sw);
    bg.add_document("old river tales. winter crossing");
    auto v1 = extract_features(obs, bg, ctx);
    auto v2 = extract_features(obs, bg, ctx);
    CHECK(v1.values == v2.values);  // byte-identical reruns
    CHECK(v1.values.size() == manifest.size());
    CHECK(v1.manifest_id == manifest.manifest_id);
    for (double x : v1.values) CHECK(std::isfinite(x));

    // empty observation still yields a fully finite vector
    BackgroundModel empty_bg(sw);
    auto v_empty = extract_features(make_obs(30), empty_bg, ctx);
    for (double x : v_empty.values) CHECK(std::isfinite(x));

    auto ratings_idx = manifest.mask_indices(FeatureMask::BaselineRatings);
    CHECK(ratings_idx.size() == 8);
    auto full_idx = manifest.mask_indices(FeatureMask::Full);
    CHECK(full_idx.size() == 35 + 24 + 2);
    CHECK(manifest.mask_indices(FeatureMask::All).size() == manifest.size());
}

TEST_CASE("author profile is a pass-through") {
    AuthorRecord zero;
    auto p0 = author_profile(zero);
    CHECK(p0.ratings_count == 0.0);
    CHECK(p0.fans_count == 0.0);

    AuthorRecord a{"a1", "N", 5, 100, 10, 3, 4.2};
    auto p = author_profile(a);
    CHECK(p.works_count == 5.0);
    CHECK(p.ratings_count == 100.0);
    CHECK(p.reviews_count == 10.0);
    CHECK(p.fans_count == 3.0);
}
