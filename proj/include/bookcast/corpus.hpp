#pragma once

// Social-reading corpus: record types, line-delimited JSON ingestion with
// validation, observation-window clipping, and cohort selection.
//
// A corpus is immutable after load; every operation below takes const&.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "bookcast/io.hpp"
#include "bookcast/rng.hpp"
#include "bookcast/time.hpp"

namespace bookcast {

// ---------------------------------------------------------------------------
// Record types
// ---------------------------------------------------------------------------

enum class CohortTag { ABS, OTHER, HRHR, GCAN };

inline const char* to_string(CohortTag t) {
    switch (t) {
        case CohortTag::ABS: return "ABS";
        case CohortTag::OTHER: return "OTHER";
        case CohortTag::HRHR: return "HRHR";
        case CohortTag::GCAN: return "GCAN";
    }
    return "?";
}

inline std::optional<CohortTag> cohort_tag_from_string(const std::string& s) {
    if (s == "ABS") return CohortTag::ABS;
    if (s == "OTHER") return CohortTag::OTHER;
    if (s == "HRHR") return CohortTag::HRHR;
    if (s == "GCAN") return CohortTag::GCAN;
    return std::nullopt;
}

// Lowercase, trim, collapse internal whitespace; "non-fiction" and
// "non fiction" fold into "nonfiction" so the genre schema has one entry.
inline std::string normalize_genre(const std::string& raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (char c : raw) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            if (!out.empty()) pending_space = true;
            continue;
        }
        if (pending_space) {
            out += ' ';
            pending_space = false;
        }
        out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    if (out == "non-fiction" || out == "non fiction") return "nonfiction";
    return out;
}

struct BookRecord {
    std::string book_id;
    std::string title;
    Instant publication_date = 0;   // 00:00 UTC of the publication day
    std::set<std::string> genres;   // normalized, no empty strings
    std::string about;
    std::string author_id;
    std::optional<CohortTag> label;

    bool operator==(const BookRecord&) const = default;
};

struct RatingEvent {
    std::string book_id;
    std::string user_id;
    int stars = 0;  // 1..5
    Instant timestamp = 0;

    bool operator==(const RatingEvent&) const = default;
};

struct ReviewRecord {
    std::string book_id;
    std::string user_id;
    Instant timestamp = 0;
    std::string text;

    bool operator==(const ReviewRecord&) const = default;
};

struct StatusPost {
    std::string book_id;
    std::string user_id;
    Instant timestamp = 0;
    std::optional<double> percent_read;      // [0, 100]
    std::optional<std::int64_t> page;        // >= 0
    std::optional<std::int64_t> total_pages; // > 0
    std::optional<std::string> text;
    std::optional<bool> finished;

    // finished => 100; explicit percent wins over page/total_pages.
    std::optional<double> effective_percent() const {
        if (finished && *finished) return 100.0;
        if (percent_read) return std::clamp(*percent_read, 0.0, 100.0);
        if (page && total_pages && *total_pages > 0) {
            double pct = 100.0 * static_cast<double>(*page) / static_cast<double>(*total_pages);
            return std::clamp(pct, 0.0, 100.0);
        }
        return std::nullopt;
    }

    bool operator==(const StatusPost&) const = default;
};

struct ShelfPlacement {
    std::string book_id;
    std::string shelf_name;  // normalized lowercase
    std::int64_t user_count = 0;

    bool operator==(const ShelfPlacement&) const = default;
};

struct AuthorRecord {
    std::string author_id;
    std::string name;
    std::int64_t works_count = 0;
    std::int64_t ratings_count = 0;
    std::int64_t reviews_count = 0;
    std::int64_t fans_count = 0;
    double avg_rating = 0.0;  // [0, 5]

    bool operator==(const AuthorRecord&) const = default;
};

struct ObservationWindow {
    int length_days = 30;  // positive; 15 and 30 are the canonical settings

    bool operator==(const ObservationWindow&) const = default;
};

// All of one book's events clipped to [publication, publication + window],
// inclusive at both ends, each list sorted ascending by timestamp. Shelf
// placements are window-invariant snapshots (the source data carries no
// timestamps for them) and pass through unclipped.
struct BookObservation {
    BookRecord book;
    std::vector<RatingEvent> ratings;
    std::vector<ReviewRecord> reviews;
    std::vector<StatusPost> statuses;
    std::vector<ShelfPlacement> shelves;
    ObservationWindow window;
};

// ---------------------------------------------------------------------------
// Corpus container
// ---------------------------------------------------------------------------

struct ValidationIssue {
    std::string file;
    std::size_t line = 0;  // 1-based
    std::string reason;
};

struct ValidationReport {
    std::vector<ValidationIssue> malformed;     // skipped in lenient mode
    std::vector<std::string> dangling_author_ids;
    std::size_t dangling_event_refs = 0;        // events naming unknown books
    std::size_t pre_publication_events = 0;     // flagged, never rejected
    std::size_t unknown_field_warnings = 0;
    std::size_t duplicate_statuses_dropped = 0;

    std::size_t warnings_total() const {
        return malformed.size() + dangling_author_ids.size() + dangling_event_refs +
               pre_publication_events + unknown_field_warnings + duplicate_statuses_dropped;
    }

    nlohmann::json to_json() const {
        nlohmann::json issues = nlohmann::json::array();
        for (const auto& m : malformed) {
            issues.push_back({{"file", m.file}, {"line", m.line}, {"reason", m.reason}});
        }
        return nlohmann::json{
            {"malformed_lines", issues},
            {"dangling_author_ids", dangling_author_ids},
            {"dangling_event_refs", dangling_event_refs},
            {"pre_publication_events", pre_publication_events},
            {"unknown_field_warnings", unknown_field_warnings},
            {"duplicate_statuses_dropped", duplicate_statuses_dropped},
            {"warnings_total", warnings_total()},
        };
    }
};

struct Corpus {
    std::vector<BookRecord> books;      // file order
    std::vector<AuthorRecord> authors;  // file order

    // events grouped per book, each vector in file order
    std::unordered_map<std::string, std::vector<RatingEvent>> ratings;
    std::unordered_map<std::string, std::vector<ReviewRecord>> reviews;
    std::unordered_map<std::string, std::vector<StatusPost>> statuses;
    std::unordered_map<std::string, std::vector<ShelfPlacement>> shelves;

    std::unordered_map<std::string, std::size_t> book_index;
    std::unordered_map<std::string, std::size_t> author_index;

    ValidationReport report;

    const BookRecord* find_book(const std::string& id) const {
        auto it = book_index.find(id);
        return it == book_index.end() ? nullptr : &books[it->second];
    }

    const AuthorRecord* find_author(const std::string& id) const {
        auto it = author_index.find(id);
        return it == author_index.end() ? nullptr : &authors[it->second];
    }

    bool same_content(const Corpus& other) const {
        return books == other.books && authors == other.authors && ratings == other.ratings &&
               reviews == other.reviews && statuses == other.statuses && shelves == other.shelves;
    }
};

struct CorpusPaths {
    std::filesystem::path books;
    std::filesystem::path ratings;
    std::filesystem::path reviews;
    std::filesystem::path statuses;
    std::filesystem::path shelves;
    std::filesystem::path authors;

    static CorpusPaths in_dir(const std::filesystem::path& dir) {
        return CorpusPaths{dir / "books.jsonl",  dir / "ratings.jsonl", dir / "reviews.jsonl",
                           dir / "status.jsonl", dir / "shelves.jsonl", dir / "authors.jsonl"};
    }
};

// ---------------------------------------------------------------------------
// Loading
// ---------------------------------------------------------------------------

namespace detail {

struct LineContext {
    const char* file;
    std::size_t line;
    bool strict;
    ValidationReport* report;

    // strict: abort citing the line; lenient: record and skip
    bool reject(const std::string& reason) const {
        if (strict) {
            throw DataError(std::string(file) + ":" + std::to_string(line) + ": " + reason);
        }
        report->malformed.push_back({file, line, reason});
        return false;
    }
};

template <typename Fn>
void for_each_jsonl(const std::filesystem::path& path, const char* name, bool strict,
                    ValidationReport& report, Fn&& fn) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        LineContext ctx{name, lineno, strict, &report};
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            ctx.reject("not a JSON object");
            continue;
        }
        fn(j, ctx);
    }
}

inline void count_unknown_fields(const nlohmann::json& j,
                                 const std::unordered_set<std::string>& known,
                                 ValidationReport& report) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!known.contains(it.key())) ++report.unknown_field_warnings;
    }
}

inline bool get_string(const nlohmann::json& j, const char* key, std::string& out,
                       const LineContext& ctx) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string()) return ctx.reject(std::string("missing or non-string '") + key + "'");
    out = it->get<std::string>();
    return true;
}

inline bool get_instant(const nlohmann::json& j, const char* key, Instant& out,
                        const LineContext& ctx) {
    std::string s;
    if (!get_string(j, key, s, ctx)) return false;
    auto t = try_parse_instant(s);
    if (!t) return ctx.reject(std::string("unparseable '") + key + "': " + s);
    out = *t;
    return true;
}

inline bool get_count(const nlohmann::json& j, const char* key, std::int64_t& out,
                      const LineContext& ctx) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_number_integer()) return ctx.reject(std::string("missing or non-integer '") + key + "'");
    out = it->get<std::int64_t>();
    if (out < 0) return ctx.reject(std::string("negative '") + key + "'");
    return true;
}

}  // namespace detail

// Loads the six JSONL files. In strict mode any malformed line aborts with
// its location; lenient mode skips it and records the issue. A duplicate
// book_id aborts in both modes.
inline Corpus load_corpus(const CorpusPaths& paths, bool strict) {
    using nlohmann::json;
    Corpus c;
    auto& report = c.report;

    static const std::unordered_set<std::string> kBookFields{
        "book_id", "title", "publication_date", "genres", "about", "author_id", "label"};
    detail::for_each_jsonl(paths.books, "books.jsonl", strict, report,
                           [&](const json& j, const detail::LineContext& ctx) {
        detail::count_unknown_fields(j, kBookFields, report);
        BookRecord b;
        if (!detail::get_string(j, "book_id", b.book_id, ctx)) return;
        if (!detail::get_string(j, "title", b.title, ctx)) return;
        if (!detail::get_instant(j, "publication_date", b.publication_date, ctx)) return;
        if (auto it = j.find("genres"); it != j.end()) {
            if (!it->is_array()) { ctx.reject("'genres' is not an array"); return; }
            for (const auto& g : *it) {
                if (!g.is_string()) { ctx.reject("non-string genre entry"); return; }
                std::string norm = normalize_genre(g.get<std::string>());
                if (!norm.empty()) b.genres.insert(norm);
            }
        }
        if (auto it = j.find("about"); it != j.end() && it->is_string()) b.about = it->get<std::string>();
        if (auto it = j.find("author_id"); it != j.end() && it->is_string()) b.author_id = it->get<std::string>();
        if (auto it = j.find("label"); it != j.end() && !it->is_null()) {
            if (!it->is_string()) { ctx.reject("'label' is not a string"); return; }
            auto tag = cohort_tag_from_string(it->get<std::string>());
            if (!tag) { ctx.reject("unknown label '" + it->get<std::string>() + "'"); return; }
            b.label = tag;
        }
        if (c.book_index.contains(b.book_id)) {
            throw DataError("books.jsonl:" + std::to_string(ctx.line) +
                            ": duplicate book_id '" + b.book_id + "'");
        }
        c.book_index.emplace(b.book_id, c.books.size());
        c.books.push_back(std::move(b));
    });

    static const std::unordered_set<std::string> kAuthorFields{
        "author_id", "name", "works_count", "ratings_count", "reviews_count",
        "fans_count", "avg_rating"};
    detail::for_each_jsonl(paths.authors, "authors.jsonl", strict, report,
                           [&](const json& j, const detail::LineContext& ctx) {
        detail::count_unknown_fields(j, kAuthorFields, report);
        AuthorRecord a;
        if (!detail::get_string(j, "author_id", a.author_id, ctx)) return;
        if (!detail::get_string(j, "name", a.name, ctx)) return;
        if (!detail::get_count(j, "works_count", a.works_count, ctx)) return;
        if (!detail::get_count(j, "ratings_count", a.ratings_count, ctx)) return;
        if (!detail::get_count(j, "reviews_count", a.reviews_count, ctx)) return;
        if (!detail::get_count(j, "fans_count", a.fans_count, ctx)) return;
        if (auto it = j.find("avg_rating"); it == j.end() || !it->is_number()) {
            ctx.reject("missing or non-numeric 'avg_rating'");
            return;
        } else {
            a.avg_rating = it->get<double>();
            if (a.avg_rating < 0.0 || a.avg_rating > 5.0) { ctx.reject("avg_rating out of [0,5]"); return; }
        }
        if (c.author_index.contains(a.author_id)) {
            throw DataError("authors.jsonl:" + std::to_string(ctx.line) +
                            ": duplicate author_id '" + a.author_id + "'");
        }
        c.author_index.emplace(a.author_id, c.authors.size());
        c.authors.push_back(std::move(a));
    });

    auto check_book_ref = [&](const std::string& book_id, const detail::LineContext& ctx) {
        if (c.book_index.contains(book_id)) return true;
        if (ctx.strict) {
            throw DataError(std::string(ctx.file) + ":" + std::to_string(ctx.line) +
                            ": unknown book_id '" + book_id + "'");
        }
        ++report.dangling_event_refs;
        return false;
    };

    static const std::unordered_set<std::string> kRatingFields{"book_id", "user_id", "stars", "timestamp"};
    detail::for_each_jsonl(paths.ratings, "ratings.jsonl", strict, report,
                           [&](const json& j, const detail::LineContext& ctx) {
        detail::count_unknown_fields(j, kRatingFields, report);
        RatingEvent r;
        if (!detail::get_string(j, "book_id", r.book_id, ctx)) return;
        if (!detail::get_string(j, "user_id", r.user_id, ctx)) return;
        auto it = j.find("stars");
        if (it == j.end() || !it->is_number_integer()) { ctx.reject("missing or non-integer 'stars'"); return; }
        r.stars = it->get<int>();
        if (r.stars < 1 || r.stars > 5) { ctx.reject("stars out of range [1,5]: " + std::to_string(r.stars)); return; }
        if (!detail::get_instant(j, "timestamp", r.timestamp, ctx)) return;
        if (!check_book_ref(r.book_id, ctx)) return;
        c.ratings[r.book_id].push_back(std::move(r));
    });

    static const std::unordered_set<std::string> kReviewFields{"book_id", "user_id", "timestamp", "text"};
    detail::for_each_jsonl(paths.reviews, "reviews.jsonl", strict, report,
                           [&](const json& j, const detail::LineContext& ctx) {
        detail::count_unknown_fields(j, kReviewFields, report);
        ReviewRecord r;
        if (!detail::get_string(j, "book_id", r.book_id, ctx)) return;
        if (!detail::get_string(j, "user_id", r.user_id, ctx)) return;
        if (!detail::get_instant(j, "timestamp", r.timestamp, ctx)) return;
        if (auto it = j.find("text"); it != j.end() && it->is_string()) r.text = it->get<std::string>();
        if (!check_book_ref(r.book_id, ctx)) return;
        c.reviews[r.book_id].push_back(std::move(r));
    });

    static const std::unordered_set<std::string> kStatusFields{
        "book_id", "user_id", "timestamp", "percent_read", "page", "total_pages", "text", "finished"};
    std::unordered_set<std::string> status_keys;  // dedup on (book, user, timestamp)
    detail::for_each_jsonl(paths.statuses, "status.jsonl", strict, report,
                           [&](const json& j, const detail::LineContext& ctx) {
        detail::count_unknown_fields(j, kStatusFields, report);
        StatusPost s;
        if (!detail::get_string(j, "book_id", s.book_id, ctx)) return;
        if (!detail::get_string(j, "user_id", s.user_id, ctx)) return;
        if (!detail::get_instant(j, "timestamp", s.timestamp, ctx)) return;
        if (auto it = j.find("percent_read"); it != j.end() && !it->is_null()) {
            if (!it->is_number()) { ctx.reject("'percent_read' is not a number"); return; }
            double p = it->get<double>();
            if (p < 0.0 || p > 100.0) { ctx.reject("percent_read out of [0,100]"); return; }
            s.percent_read = p;
        }
        if (auto it = j.find("page"); it != j.end() && !it->is_null()) {
            if (!it->is_number_integer() || it->get<std::int64_t>() < 0) { ctx.reject("bad 'page'"); return; }
            s.page = it->get<std::int64_t>();
        }
        if (auto it = j.find("total_pages"); it != j.end() && !it->is_null()) {
            if (!it->is_number_integer() || it->get<std::int64_t>() <= 0) { ctx.reject("bad 'total_pages'"); return; }
            s.total_pages = it->get<std::int64_t>();
        }
        if (auto it = j.find("text"); it != j.end() && it->is_string()) s.text = it->get<std::string>();
        if (auto it = j.find("finished"); it != j.end() && !it->is_null()) {
            if (!it->is_boolean()) { ctx.reject("'finished' is not a boolean"); return; }
            s.finished = it->get<bool>();
        }
        if (!check_book_ref(s.book_id, ctx)) return;
        // crawl artifacts must not inflate count features: keep the first copy
        std::string key = s.book_id + '\x1f' + s.user_id + '\x1f' + std::to_string(s.timestamp);
        if (!status_keys.insert(std::move(key)).second) {
            ++report.duplicate_statuses_dropped;
            return;
        }
        c.statuses[s.book_id].push_back(std::move(s));
    });

    static const std::unordered_set<std::string> kShelfFields{"book_id", "shelf_name", "user_count"};
    std::unordered_set<std::string> shelf_keys;
    detail::for_each_jsonl(paths.shelves, "shelves.jsonl", strict, report,
                           [&](const json& j, const detail::LineContext& ctx) {
        detail::count_unknown_fields(j, kShelfFields, report);
        ShelfPlacement s;
        if (!detail::get_string(j, "book_id", s.book_id, ctx)) return;
        std::string raw;
        if (!detail::get_string(j, "shelf_name", raw, ctx)) return;
        s.shelf_name = normalize_genre(raw);  // same lowercase/trim normalization
        if (s.shelf_name.empty()) { ctx.reject("empty shelf_name"); return; }
        if (!detail::get_count(j, "user_count", s.user_count, ctx)) return;
        if (!check_book_ref(s.book_id, ctx)) return;
        std::string key = s.book_id + '\x1f' + s.shelf_name;
        if (!shelf_keys.insert(std::move(key)).second) {
            ctx.reject("duplicate shelf '" + s.shelf_name + "' for book '" + s.book_id + "'");
            return;
        }
        c.shelves[s.book_id].push_back(std::move(s));
    });

    // cross-reference checks: dangling authors and pre-publication events are
    // flagged, never rejected
    std::set<std::string> dangling;
    for (const auto& b : c.books) {
        if (!b.author_id.empty() && !c.author_index.contains(b.author_id)) dangling.insert(b.author_id);
    }
    report.dangling_author_ids.assign(dangling.begin(), dangling.end());

    for (const auto& b : c.books) {
        auto flag_pre = [&](Instant ts) {
            if (ts < b.publication_date) ++report.pre_publication_events;
        };
        if (auto it = c.ratings.find(b.book_id); it != c.ratings.end())
            for (const auto& e : it->second) flag_pre(e.timestamp);
        if (auto it = c.reviews.find(b.book_id); it != c.reviews.end())
            for (const auto& e : it->second) flag_pre(e.timestamp);
        if (auto it = c.statuses.find(b.book_id); it != c.statuses.end())
            for (const auto& e : it->second) flag_pre(e.timestamp);
    }

    return c;
}

inline Corpus load_corpus_dir(const std::filesystem::path& dir, bool strict) {
    return load_corpus(CorpusPaths::in_dir(dir), strict);
}

// ---------------------------------------------------------------------------
// Saving (deterministic: alphabetical keys, canonical number text)
// ---------------------------------------------------------------------------

inline void save_corpus(const Corpus& c, const std::filesystem::path& dir) {
    using nlohmann::json;
    namespace fs = std::filesystem;
    fs::create_directories(dir);

    auto dump_lines = [&](const fs::path& path, const std::vector<json>& lines) {
        std::string out;
        for (const auto& j : lines) {
            out += j.dump();
            out += '\n';
        }
        write_file_atomic(path, out);
    };

    std::vector<json> lines;
    for (const auto& b : c.books) {
        json j{{"book_id", b.book_id},
               {"title", b.title},
               {"publication_date", format_date(b.publication_date)},
               {"genres", b.genres},
               {"about", b.about},
               {"author_id", b.author_id}};
        if (b.label) j["label"] = to_string(*b.label);
        lines.push_back(std::move(j));
    }
    dump_lines(dir / "books.jsonl", lines);

    lines.clear();
    for (const auto& b : c.books) {
        if (auto it = c.ratings.find(b.book_id); it != c.ratings.end()) {
            for (const auto& r : it->second) {
                lines.push_back(json{{"book_id", r.book_id},
                                     {"user_id", r.user_id},
                                     {"stars", r.stars},
                                     {"timestamp", format_instant(r.timestamp)}});
            }
        }
    }
    dump_lines(dir / "ratings.jsonl", lines);

    lines.clear();
    for (const auto& b : c.books) {
        if (auto it = c.reviews.find(b.book_id); it != c.reviews.end()) {
            for (const auto& r : it->second) {
                lines.push_back(json{{"book_id", r.book_id},
                                     {"user_id", r.user_id},
                                     {"timestamp", format_instant(r.timestamp)},
                                     {"text", r.text}});
            }
        }
    }
    dump_lines(dir / "reviews.jsonl", lines);

    lines.clear();
    for (const auto& b : c.books) {
        if (auto it = c.statuses.find(b.book_id); it != c.statuses.end()) {
            for (const auto& s : it->second) {
                json j{{"book_id", s.book_id},
                       {"user_id", s.user_id},
                       {"timestamp", format_instant(s.timestamp)}};
                if (s.percent_read) j["percent_read"] = *s.percent_read;
                if (s.page) j["page"] = *s.page;
                if (s.total_pages) j["total_pages"] = *s.total_pages;
                if (s.text) j["text"] = *s.text;
                if (s.finished) j["finished"] = *s.finished;
                lines.push_back(std::move(j));
            }
        }
    }
    dump_lines(dir / "status.jsonl", lines);

    lines.clear();
    for (const auto& b : c.books) {
        if (auto it = c.shelves.find(b.book_id); it != c.shelves.end()) {
            for (const auto& s : it->second) {
                lines.push_back(json{{"book_id", s.book_id},
                                     {"shelf_name", s.shelf_name},
                                     {"user_count", s.user_count}});
            }
        }
    }
    dump_lines(dir / "shelves.jsonl", lines);

    lines.clear();
    for (const auto& a : c.authors) {
        lines.push_back(json{{"author_id", a.author_id},
                             {"name", a.name},
                             {"works_count", a.works_count},
                             {"ratings_count", a.ratings_count},
                             {"reviews_count", a.reviews_count},
                             {"fans_count", a.fans_count},
                             {"avg_rating", a.avg_rating}});
    }
    dump_lines(dir / "authors.jsonl", lines);
}

// ---------------------------------------------------------------------------
// Window clipping
// ---------------------------------------------------------------------------

struct NotFoundError : DataError {
    using DataError::DataError;
};

// Retains events with publication <= t <= publication + length_days, both
// ends inclusive (the publication day counts as day 0). Ties keep file
// order, so repeated clips are byte-stable.
inline BookObservation window_clip(const Corpus& c, const std::string& book_id,
                                   ObservationWindow window) {
    const BookRecord* book = c.find_book(book_id);
    if (!book) throw NotFoundError("unknown book_id '" + book_id + "'");
    if (window.length_days <= 0) throw std::invalid_argument("window length_days must be positive");

    BookObservation obs;
    obs.book = *book;
    obs.window = window;
    const Instant lo = book->publication_date;
    const Instant hi = lo + static_cast<Instant>(window.length_days) * kSecondsPerDay;

    auto in_window = [&](Instant t) { return t >= lo && t <= hi; };

    if (auto it = c.ratings.find(book_id); it != c.ratings.end()) {
        for (const auto& e : it->second)
            if (in_window(e.timestamp)) obs.ratings.push_back(e);
        std::stable_sort(obs.ratings.begin(), obs.ratings.end(),
                         [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
    }
    if (auto it = c.reviews.find(book_id); it != c.reviews.end()) {
        for (const auto& e : it->second)
            if (in_window(e.timestamp)) obs.reviews.push_back(e);
        std::stable_sort(obs.reviews.begin(), obs.reviews.end(),
                         [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
    }
    if (auto it = c.statuses.find(book_id); it != c.statuses.end()) {
        for (const auto& e : it->second)
            if (in_window(e.timestamp)) obs.statuses.push_back(e);
        std::stable_sort(obs.statuses.begin(), obs.statuses.end(),
                         [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
    }
    if (auto it = c.shelves.find(book_id); it != c.shelves.end()) obs.shelves = it->second;

    return obs;
}

// Same shape as window_clip but keeps every event from publication onward;
// used for lifetime characterization where no window applies.
inline BookObservation observe_lifetime(const Corpus& c, const std::string& book_id) {
    const BookRecord* book = c.find_book(book_id);
    if (!book) throw NotFoundError("unknown book_id '" + book_id + "'");
    Instant max_ts = book->publication_date;
    auto scan = [&](const auto& map) {
        if (auto it = map.find(book_id); it != map.end())
            for (const auto& e : it->second) max_ts = std::max(max_ts, e.timestamp);
    };
    scan(c.ratings);
    scan(c.reviews);
    scan(c.statuses);
    std::int64_t days = (max_ts - book->publication_date + kSecondsPerDay - 1) / kSecondsPerDay;
    return window_clip(c, book_id, ObservationWindow{static_cast<int>(std::max<std::int64_t>(days, 1))});
}

// ---------------------------------------------------------------------------
// Cohort selection
// ---------------------------------------------------------------------------

constexpr int kDefaultCutoffYear = 2007;

struct CohortSpec {
    enum class Kind { ABS, RANDOM_OTHER, HRHR, GCAN } kind = Kind::ABS;
    int cutoff_year = kDefaultCutoffYear;  // ABS / RANDOM_OTHER
    std::size_t n = 0;                     // RANDOM_OTHER
    std::uint64_t seed = 0;                // RANDOM_OTHER

    static CohortSpec abs(int cutoff = kDefaultCutoffYear) { return {Kind::ABS, cutoff, 0, 0}; }
    static CohortSpec random_other(std::size_t n, std::uint64_t seed, int cutoff = kDefaultCutoffYear) {
        return {Kind::RANDOM_OTHER, cutoff, n, seed};
    }
    static CohortSpec hrhr() { return {Kind::HRHR, 0, 0, 0}; }
    static CohortSpec gcan() { return {Kind::GCAN, 0, 0, 0}; }
};

// Lifetime (unclipped) rating mean and review count, used by the HRHR rule.
inline double lifetime_avg_rating(const Corpus& c, const std::string& book_id) {
    auto it = c.ratings.find(book_id);
    if (it == c.ratings.end() || it->second.empty()) return 0.0;
    double total = 0.0;
    for (const auto& r : it->second) total += r.stars;
    return total / static_cast<double>(it->second.size());
}

inline std::size_t lifetime_review_count(const Corpus& c, const std::string& book_id) {
    auto it = c.reviews.find(book_id);
    return it == c.reviews.end() ? 0 : it->second.size();
}

// Returns book ids in deterministic order (corpus order; sampled order for
// RANDOM_OTHER, which draws uniformly without replacement and never touches
// ABS/HRHR/GCAN-labeled books).
inline std::vector<std::string> select_cohort(const Corpus& c, const CohortSpec& spec) {
    std::vector<std::string> out;
    switch (spec.kind) {
        case CohortSpec::Kind::ABS:
            for (const auto& b : c.books) {
                if (b.label == CohortTag::ABS && year_of(b.publication_date) >= spec.cutoff_year)
                    out.push_back(b.book_id);
            }
            break;
        case CohortSpec::Kind::RANDOM_OTHER: {
            std::vector<std::string> pool;
            for (const auto& b : c.books) {
                bool excluded = b.label == CohortTag::ABS || b.label == CohortTag::HRHR ||
                                b.label == CohortTag::GCAN;
                if (!excluded && year_of(b.publication_date) >= spec.cutoff_year)
                    pool.push_back(b.book_id);
            }
            if (spec.n > pool.size()) {
                throw DataError("RANDOM_OTHER: requested " + std::to_string(spec.n) +
                                " books but eligible pool has " + std::to_string(pool.size()));
            }
            Rng rng(spec.seed);
            rng.shuffle(pool);
            out.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(spec.n));
            break;
        }
        case CohortSpec::Kind::HRHR:
            for (const auto& b : c.books) {
                if (b.label == CohortTag::ABS) continue;
                if (year_of(b.publication_date) < 1995) continue;
                if (lifetime_avg_rating(c, b.book_id) < 4.0) continue;
                if (lifetime_review_count(c, b.book_id) < 900) continue;
                out.push_back(b.book_id);
            }
            break;
        case CohortSpec::Kind::GCAN:
            for (const auto& b : c.books) {
                if (b.label == CohortTag::GCAN) out.push_back(b.book_id);
            }
            break;
    }
    return out;
}

}  // namespace bookcast
