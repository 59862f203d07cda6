#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "bookcast/corpus.hpp"
#include "bookcast/rng.hpp"

using namespace bookcast;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("bookcast_corpus_" + std::to_string(Catch::rngSeed()) + "_" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write_lines(const fs::path& p, const std::vector<std::string>& lines) {
    std::ofstream out(p);
    for (const auto& l : lines) out << l << "\n";
}

// six-file fixture; pass empty vectors for files with no records
void write_fixture(const fs::path& dir, const std::vector<std::string>& books,
                   const std::vector<std::string>& ratings = {},
                   const std::vector<std::string>& reviews = {},
                   const std::vector<std::string>& statuses = {},
                   const std::vector<std::string>& shelves = {},
                   const std::vector<std::string>& authors = {}) {
    write_lines(dir / "books.jsonl", books);
    write_lines(dir / "ratings.jsonl", ratings);
    write_lines(dir / "reviews.jsonl", reviews);
    write_lines(dir / "status.jsonl", statuses);
    write_lines(dir / "shelves.jsonl", shelves);
    write_lines(dir / "authors.jsonl", authors);
}

std::string book_line(const std::string& id, const std::string& date,
                      const std::string& extra = "") {
    return R"({"book_id":")" + id + R"(","title":"T","publication_date":")" + date +
           R"(","genres":["fiction"],"about":"a quiet story","author_id":"a1")" + extra + "}";
}

const std::string kAuthorA1 =
    R"({"author_id":"a1","name":"A","works_count":5,"ratings_count":100,"reviews_count":10,"fans_count":3,"avg_rating":4.1})";

}  // namespace

TEST_CASE("empty files load to an empty corpus with zero warnings") {
    TempDir tmp;
    write_fixture(tmp.path, {});
    auto c = load_corpus_dir(tmp.path, true);
    CHECK(c.books.empty());
    CHECK(c.authors.empty());
    CHECK(c.report.warnings_total() == 0);
}

TEST_CASE("out-of-range stars abort in strict mode citing the line") {
    TempDir tmp;
    write_fixture(tmp.path, {book_line("b1", "2010-01-01")},
                  {R"({"book_id":"b1","user_id":"u1","stars":6,"timestamp":"2010-01-02"})"},
                  {}, {}, {}, {kAuthorA1});
    CHECK_THROWS_WITH(load_corpus_dir(tmp.path, true),
                      Catch::Matchers::ContainsSubstring("ratings.jsonl:1"));

    auto lenient = load_corpus_dir(tmp.path, false);
    REQUIRE(lenient.report.malformed.size() == 1);
    CHECK(lenient.report.malformed[0].line == 1);
    CHECK(lenient.ratings.empty());
}

TEST_CASE("dangling author reference is reported, not rejected") {
    TempDir tmp;
    write_fixture(tmp.path,
                  {book_line("b1", "2010-01-01"), book_line("b2", "2011-01-01"),
                   R"({"book_id":"b3","title":"T","publication_date":"2012-01-01","genres":[],"about":"x","author_id":"ghost"})"},
                  {}, {}, {}, {}, {kAuthorA1});
    auto c = load_corpus_dir(tmp.path, false);
    CHECK(c.books.size() == 3);
    REQUIRE(c.report.dangling_author_ids.size() == 1);
    CHECK(c.report.dangling_author_ids[0] == "ghost");
}

TEST_CASE("duplicate book_id aborts in both modes") {
    TempDir tmp;
    write_fixture(tmp.path, {book_line("b1", "2010-01-01"), book_line("b1", "2011-01-01")},
                  {}, {}, {}, {}, {kAuthorA1});
    CHECK_THROWS_WITH(load_corpus_dir(tmp.path, true), Catch::Matchers::ContainsSubstring("duplicate"));
    CHECK_THROWS_WITH(load_corpus_dir(tmp.path, false), Catch::Matchers::ContainsSubstring("duplicate"));
}

TEST_CASE("unknown fields only bump a warning counter") {
    TempDir tmp;
    write_fixture(tmp.path, {book_line("b1", "2010-01-01", R"(,"mystery_field":1)")},
                  {}, {}, {}, {}, {kAuthorA1});
    auto c = load_corpus_dir(tmp.path, true);
    CHECK(c.books.size() == 1);
    CHECK(c.report.unknown_field_warnings == 1);
}

TEST_CASE("duplicate status posts are deduplicated keeping the first") {
    TempDir tmp;
    write_fixture(tmp.path, {book_line("b1", "2010-01-01")}, {}, {},
                  {R"({"book_id":"b1","user_id":"u1","timestamp":"2010-01-02","percent_read":10})",
                   R"({"book_id":"b1","user_id":"u1","timestamp":"2010-01-02","percent_read":55})",
                   R"({"book_id":"b1","user_id":"u1","timestamp":"2010-01-03","percent_read":60})"},
                  {}, {kAuthorA1});
    auto c = load_corpus_dir(tmp.path, false);
    REQUIRE(c.statuses.at("b1").size() == 2);
    CHECK(c.statuses.at("b1")[0].percent_read == 10.0);
    CHECK(c.report.duplicate_statuses_dropped == 1);
}

TEST_CASE("pre-publication events are flagged but kept") {
    TempDir tmp;
    write_fixture(tmp.path, {book_line("b1", "2010-01-01")},
                  {R"({"book_id":"b1","user_id":"u1","stars":4,"timestamp":"2009-12-25"})"},
                  {}, {}, {}, {kAuthorA1});
    auto c = load_corpus_dir(tmp.path, true);
    CHECK(c.ratings.at("b1").size() == 1);
    CHECK(c.report.pre_publication_events == 1);
}

TEST_CASE("window_clip keeps the inclusive [publication, publication+t] range") {
    TempDir tmp;
    write_fixture(tmp.path, {book_line("b1", "2010-01-01")}, {}, {},
                  {R"({"book_id":"b1","user_id":"u1","timestamp":"2010-01-20","percent_read":50})",
                   R"({"book_id":"b1","user_id":"u2","timestamp":"2010-01-16T00:00:00Z","percent_read":10})"},
                  {}, {kAuthorA1});
    auto c = load_corpus_dir(tmp.path, true);
    auto obs = window_clip(c, "b1", ObservationWindow{15});
    REQUIRE(obs.statuses.size() == 1);  // day-15 boundary included, day 19 excluded
    CHECK(obs.statuses[0].user_id == "u2");
    CHECK_THROWS_AS(window_clip(c, "nope", ObservationWindow{15}), NotFoundError);
}

TEST_CASE("window_clip retains exactly the in-window events, sorted") {
    TempDir tmp;
    write_fixture(tmp.path, {book_line("b1", "2010-01-01")},
                  {R"({"book_id":"b1","user_id":"u1","stars":5,"timestamp":"2010-01-09"})",
                   R"({"book_id":"b1","user_id":"u2","stars":3,"timestamp":"2010-02-05"})"},
                  {R"({"book_id":"b1","user_id":"u3","timestamp":"2010-03-01","text":"late"})"},
                  {R"({"book_id":"b1","user_id":"u4","timestamp":"2010-01-03","percent_read":5})",
                   R"({"book_id":"b1","user_id":"u5","timestamp":"2010-01-25","percent_read":9})"},
                  {}, {kAuthorA1});
    auto c = load_corpus_dir(tmp.path, true);
    auto obs = window_clip(c, "b1", ObservationWindow{15});
    CHECK(obs.ratings.size() == 1);
    CHECK(obs.reviews.empty());
    REQUIRE(obs.statuses.size() == 1);
    CHECK(obs.statuses[0].user_id == "u4");
}

TEST_CASE("window monotonicity and clip idempotence") {
    TempDir tmp;
    Rng rng(77);
    std::vector<std::string> statuses;
    for (int i = 0; i < 40; ++i) {
        int day = 1 + static_cast<int>(rng.uniform_int(28));
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      R"({"book_id":"b1","user_id":"u%d","timestamp":"2010-01-%02d","percent_read":%d})",
                      i, day, static_cast<int>(rng.uniform_int(100)));
        statuses.push_back(buf);
    }
    write_fixture(tmp.path, {book_line("b1", "2010-01-01")}, {}, {}, statuses, {}, {kAuthorA1});
    auto c = load_corpus_dir(tmp.path, true);

    auto obs15 = window_clip(c, "b1", ObservationWindow{15});
    auto obs30 = window_clip(c, "b1", ObservationWindow{30});
    CHECK(obs15.statuses.size() <= obs30.statuses.size());
    for (const auto& e : obs15.statuses) {
        CHECK(std::find(obs30.statuses.begin(), obs30.statuses.end(), e) != obs30.statuses.end());
    }
    for (std::size_t i = 1; i < obs30.statuses.size(); ++i) {
        CHECK(obs30.statuses[i - 1].timestamp <= obs30.statuses[i].timestamp);
    }

    // re-clipping an already-clipped observation with the same window is identity
    Corpus clipped;
    clipped.books = {obs15.book};
    clipped.book_index = {{"b1", 0}};
    clipped.statuses["b1"] = obs15.statuses;
    auto again = window_clip(clipped, "b1", ObservationWindow{15});
    CHECK(again.statuses == obs15.statuses);
}

TEST_CASE("cohort selection rules") {
    Corpus c;
    auto add_book = [&](const std::string& id, int year, std::optional<CohortTag> label) {
        BookRecord b;
        b.book_id = id;
        b.title = id;
        b.publication_date = days_from_civil(year, 6, 1) * kSecondsPerDay;
        b.label = label;
        c.book_index.emplace(id, c.books.size());
        c.books.push_back(std::move(b));
    };
    add_book("abs1", 2010, CohortTag::ABS);
    add_book("abs-old", 2001, CohortTag::ABS);  // before cutoff
    add_book("hr1", 2001, CohortTag::OTHER);
    add_book("o1", 2010, CohortTag::OTHER);
    add_book("o2", 2012, std::nullopt);
    add_book("o3", 2013, CohortTag::OTHER);
    add_book("g1", 2011, CohortTag::GCAN);

    // hr1: avg 4.2 over ratings, 950 reviews, published 2001, label OTHER
    for (int i = 0; i < 10; ++i) {
        RatingEvent r;
        r.book_id = "hr1";
        r.user_id = "u" + std::to_string(i);
        r.stars = (i < 1) ? 3 : (i < 7 ? 4 : 5);  // mean 4.2
        r.timestamp = c.books[2].publication_date + i;
        c.ratings["hr1"].push_back(r);
    }
    for (int i = 0; i < 950; ++i) {
        ReviewRecord r;
        r.book_id = "hr1";
        r.user_id = "u" + std::to_string(i);
        r.timestamp = c.books[2].publication_date + i;
        c.reviews["hr1"].push_back(r);
    }

    SECTION("ABS respects the cutoff year") {
        auto abs = select_cohort(c, CohortSpec::abs());
        CHECK(abs == std::vector<std::string>{"abs1"});
    }
    SECTION("HRHR selects by rating/review thresholds") {
        CHECK(lifetime_avg_rating(c, "hr1") >= 4.0);
        auto hrhr = select_cohort(c, CohortSpec::hrhr());
        CHECK(hrhr == std::vector<std::string>{"hr1"});
    }
    SECTION("GCAN selects by label") {
        CHECK(select_cohort(c, CohortSpec::gcan()) == std::vector<std::string>{"g1"});
    }
    SECTION("RANDOM_OTHER basics") {
        CHECK(select_cohort(c, CohortSpec::random_other(0, 7)).empty());
        auto s1 = select_cohort(c, CohortSpec::random_other(3, 42));
        auto s2 = select_cohort(c, CohortSpec::random_other(3, 42));
        CHECK(s1 == s2);
        CHECK(s1.size() == 3);
        CHECK_THROWS_WITH(select_cohort(c, CohortSpec::random_other(9, 1)),
                          Catch::Matchers::ContainsSubstring("pool has 3"));
    }
    SECTION("ABS and RANDOM_OTHER are disjoint for every seed") {
        auto abs = select_cohort(c, CohortSpec::abs());
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            for (const auto& id : select_cohort(c, CohortSpec::random_other(3, seed))) {
                CHECK(std::find(abs.begin(), abs.end(), id) == abs.end());
                CHECK(id != "g1");  // labeled cohorts are excluded from the pool
            }
        }
    }
}

TEST_CASE("corpus save/load round-trip") {
    TempDir tmp;
    write_fixture(tmp.path,
                  {book_line("b1", "2010-01-01", R"(,"label":"ABS")"), book_line("b2", "2011-03-05")},
                  {R"({"book_id":"b1","user_id":"u1","stars":4,"timestamp":"2010-01-02T10:30:00Z"})"},
                  {R"({"book_id":"b1","user_id":"u1","timestamp":"2010-01-04","text":"good read"})"},
                  {R"({"book_id":"b2","user_id":"u9","timestamp":"2011-03-08","page":10,"total_pages":200,"finished":false})"},
                  {R"({"book_id":"b1","shelf_name":"To-Read","user_count":7})"},
                  {kAuthorA1});
    auto loaded = load_corpus_dir(tmp.path, false);
    CHECK(loaded.shelves.at("b1")[0].shelf_name == "to-read");  // normalized on load

    TempDir out;
    save_corpus(loaded, out.path);
    auto reloaded = load_corpus_dir(out.path, true);
    CHECK(reloaded.report.warnings_total() == 0);
    CHECK(loaded.same_content(reloaded));
}
