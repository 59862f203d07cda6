// bookcast CLI: orchestrates the pipeline as subcommands with
// machine-readable outputs. Exit codes: 0 success, 1 usage error, 2 data
// error. Every artifact is written via write-then-rename and accompanied by
// a <command>.manifest.json recording flags, seeds, and input digests.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bookcast/corpus.hpp"
#include "bookcast/features.hpp"
#include "bookcast/io.hpp"
#include "bookcast/learn.hpp"
#include "bookcast/lexicons.hpp"
#include "bookcast/pipeline.hpp"
#include "bookcast/rank.hpp"
#include "bookcast/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "0.1.0";

// ---------------------------------------------------------------------------
// Shared flag bundles
// ---------------------------------------------------------------------------

struct CommonOptions {
    std::string corpus_dir;
    std::string out_dir;
    std::string window = "1m";
    std::string mask = "all";
    std::string model = "lr";
    std::string protocol = "balanced";
    std::uint64_t seed = 42;
    std::string cohorts = "abs,other";
    std::string config_file;
    int cutoff_year = bookcast::kDefaultCutoffYear;
    int folds = 10;
    std::string stopwords_file;
    std::string sentiment_file;
    std::string categories_file;
};

int parse_window_days(const std::string& w) {
    if (w == "1m") return 30;
    if (!w.empty() && w.back() == 'd') {
        try {
            int days = std::stoi(w.substr(0, w.size() - 1));
            if (days > 0) return days;
        } catch (...) {
        }
    }
    throw CLI::ValidationError("--window", "expected 15d, 1m, or <N>d");
}

bookcast::pipeline::Lexicons load_lexicons(const CommonOptions& opt) {
    auto lex = bookcast::pipeline::Lexicons::defaults();
    if (!opt.stopwords_file.empty()) lex.stopwords = bookcast::text::load_stopwords(opt.stopwords_file);
    if (!opt.sentiment_file.empty()) lex.sentiment = bookcast::text::load_sentiment_lexicon(opt.sentiment_file);
    if (!opt.categories_file.empty()) lex.categories = bookcast::text::load_category_lexicon(opt.categories_file);
    return lex;
}

bookcast::features::FeatureMask parse_mask(const std::string& s) {
    auto m = bookcast::features::mask_from_string(s);
    if (!m) throw CLI::ValidationError("--mask", "expected all|full|ratings|reviews");
    return *m;
}

bookcast::learn::ModelKind parse_model(const std::string& s) {
    auto k = bookcast::learn::model_kind_from_string(s);
    if (!k) throw CLI::ValidationError("--model", "expected lr|svm");
    return *k;
}

// ---------------------------------------------------------------------------
// Run manifests
// ---------------------------------------------------------------------------

json corpus_input_digests(const std::string& corpus_dir) {
    json inputs = json::array();
    auto paths = bookcast::CorpusPaths::in_dir(corpus_dir);
    for (const auto& p : {paths.books, paths.ratings, paths.reviews, paths.statuses,
                          paths.shelves, paths.authors}) {
        inputs.push_back({{"file", p.filename().string()},
                          {"fnv1a64", bookcast::file_digest_hex(p)}});
    }
    return inputs;
}

void write_run_manifest(const fs::path& out_dir, const std::string& command, const json& flags,
                        const json& inputs, const std::vector<std::string>& outputs) {
    json manifest{
        {"command", command},
        {"tool_version", kToolVersion},
        {"flags", flags},
        {"inputs", inputs},
        {"outputs", outputs},
    };
    bookcast::write_file_atomic(out_dir / (command + ".manifest.json"), manifest.dump(2) + "\n");
}

json flags_json(const CommonOptions& opt) {
    return json{
        {"corpus", opt.corpus_dir},    {"window", opt.window},
        {"mask", opt.mask},            {"model", opt.model},
        {"protocol", opt.protocol},    {"seed", opt.seed},
        {"cohorts", opt.cohorts},      {"cutoff_year", opt.cutoff_year},
        {"folds", opt.folds},
        {"stopwords", opt.stopwords_file},
        {"sentiment", opt.sentiment_file},
        {"categories", opt.categories_file},
    };
}

// ---------------------------------------------------------------------------
// analyze helpers
// ---------------------------------------------------------------------------

// log-binned histogram over nonnegative values: a zero bin plus base-2
// geometric bins (lo, hi]
std::string histogram_rows(const std::string& quantity, const std::string& cohort,
                           const std::vector<double>& values) {
    std::string rows;
    if (values.empty()) return rows;
    std::size_t zeros = 0;
    double max_v = 0.0;
    for (double v : values) {
        if (v <= 0.0) ++zeros;
        max_v = std::max(max_v, v);
    }
    const double total = static_cast<double>(values.size());
    auto emit = [&](double lo, double hi, std::size_t count) {
        if (count == 0) return;
        rows += quantity + ',' + cohort + ',' + bookcast::format_double(lo) + ',' +
                bookcast::format_double(hi) + ',' + std::to_string(count) + ',' +
                bookcast::format_double(static_cast<double>(count) / total) + '\n';
    };
    emit(0.0, 0.0, zeros);
    double lo = 0.0, hi = 1.0;
    while (lo < max_v) {
        std::size_t count = 0;
        for (double v : values) {
            if (v > lo && v <= hi) ++count;
        }
        emit(lo, hi, count);
        lo = hi;
        hi *= 2.0;
    }
    return rows;
}

std::string cdf_rows(const std::string& quantity, const std::string& cohort,
                     std::vector<double> values) {
    std::string rows;
    if (values.empty()) return rows;
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i + 1 < values.size() && values[i + 1] == values[i]) continue;  // last of each run
        rows += quantity + ',' + cohort + ',' + bookcast::format_double(values[i]) + ',' +
                bookcast::format_double(static_cast<double>(i + 1) / n) + '\n';
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Subcommand implementations
// ---------------------------------------------------------------------------

int cmd_validate(const CommonOptions& opt, bool strict) {
    auto corpus = bookcast::load_corpus_dir(opt.corpus_dir, strict);
    json report = corpus.report.to_json();
    report["books"] = corpus.books.size();
    report["authors"] = corpus.authors.size();
    std::cout << report.dump(2) << "\n";
    if (!opt.out_dir.empty()) {
        fs::create_directories(opt.out_dir);
        bookcast::write_file_atomic(fs::path(opt.out_dir) / "validate_report.json",
                                    report.dump(2) + "\n");
        json flags = flags_json(opt);
        flags["strict"] = strict;
        write_run_manifest(opt.out_dir, "validate", flags, corpus_input_digests(opt.corpus_dir),
                           {"validate_report.json"});
    }
    return 0;
}

int cmd_synth(const CommonOptions& opt) {
    bookcast::synth::SynthConfig cfg = bookcast::synth::default_config();
    json inputs = json::array();
    if (!opt.config_file.empty()) {
        json j = json::parse(bookcast::read_file(opt.config_file));
        cfg = bookcast::synth::SynthConfig::from_json(j);
        inputs.push_back({{"file", fs::path(opt.config_file).filename().string()},
                          {"fnv1a64", bookcast::file_digest_hex(opt.config_file)}});
    }
    cfg.validate();  // fail before any file is written
    fs::create_directories(opt.out_dir);
    bookcast::synth::generate_corpus_files(cfg, opt.seed, opt.out_dir);
    json flags{{"seed", opt.seed}, {"config", cfg.to_json()}};
    write_run_manifest(opt.out_dir, "synth", flags, inputs,
                       {"books.jsonl", "ratings.jsonl", "reviews.jsonl", "status.jsonl",
                        "shelves.jsonl", "authors.jsonl"});
    return 0;
}

struct LoadedDataset {
    bookcast::pipeline::ExtractedDataset extracted;
    bookcast::learn::Dataset masked;
    int window_days = 0;
};

LoadedDataset load_and_extract(const CommonOptions& opt, bookcast::features::FeatureMask mask,
                               std::optional<std::size_t> n_negatives = std::nullopt) {
    auto corpus = bookcast::load_corpus_dir(opt.corpus_dir, false);
    auto pair = bookcast::pipeline::parse_cohorts(opt.cohorts);
    auto sel = bookcast::pipeline::select_pair(corpus, pair, opt.seed, opt.cutoff_year, n_negatives);
    auto lex = load_lexicons(opt);
    LoadedDataset out;
    out.window_days = parse_window_days(opt.window);
    out.extracted = bookcast::pipeline::build_dataset(corpus, sel, out.window_days, lex);
    out.masked = bookcast::pipeline::apply_mask(out.extracted, mask);
    return out;
}

int cmd_extract(const CommonOptions& opt) {
    auto mask = parse_mask(opt.mask);
    auto ds = load_and_extract(opt, mask);

    fs::create_directories(opt.out_dir);
    bookcast::write_file_atomic(fs::path(opt.out_dir) / "features.csv",
                                bookcast::pipeline::dataset_to_csv(ds.masked));

    json dims = json::array();
    for (std::size_t i = 0; i < ds.masked.feature_names.size(); ++i) {
        // group of the original dimension
        const auto& full = ds.extracted.manifest;
        auto it = std::find_if(full.dims.begin(), full.dims.end(), [&](const auto& d) {
            return d.name == ds.masked.feature_names[i];
        });
        dims.push_back({{"index", i},
                        {"name", ds.masked.feature_names[i]},
                        {"group", bookcast::features::to_string(it->group)}});
    }
    json manifest{{"manifest_id", ds.masked.manifest_id},
                  {"feature_mask", ds.masked.mask_name},
                  {"window_days", ds.window_days},
                  {"dimensions", dims}};
    bookcast::write_file_atomic(fs::path(opt.out_dir) / "feature_manifest.json",
                                manifest.dump(2) + "\n");
    write_run_manifest(opt.out_dir, "extract", flags_json(opt), corpus_input_digests(opt.corpus_dir),
                       {"features.csv", "feature_manifest.json"});
    return 0;
}

int cmd_analyze(const CommonOptions& opt, bool windowed) {
    auto corpus = bookcast::load_corpus_dir(opt.corpus_dir, false);
    auto pair = bookcast::pipeline::parse_cohorts(opt.cohorts);
    auto sel = bookcast::pipeline::select_pair(corpus, pair, opt.seed, opt.cutoff_year);
    auto lex = load_lexicons(opt);
    const int window_days = windowed ? parse_window_days(opt.window) : 0;

    const auto& schema = bookcast::features::GenreSchema::standard();
    std::string histograms = "quantity,cohort,bin_lo,bin_hi,count,fraction\n";
    std::string cdfs = "quantity,cohort,value,cum_fraction\n";
    std::string genres = "cohort,genre,fraction\n";
    std::string authors_csv = "cohort,author_id,ratings_count,reviews_count,works_count,fans_count\n";

    auto run_cohort = [&](const std::string& cohort, const std::vector<std::string>& ids) {
        std::map<std::string, std::vector<double>> q;  // quantity -> values per book
        std::vector<double> genre_hits(schema.names.size(), 0.0);
        std::set<std::string> author_ids;
        for (const auto& id : ids) {
            auto obs = window_days > 0
                           ? bookcast::window_clip(corpus, id, bookcast::ObservationWindow{window_days})
                           : bookcast::observe_lifetime(corpus, id);
            auto rating = bookcast::features::rating_features(obs);
            q["avg_rating"].push_back(rating.avg_rating);
            q["n_ratings"].push_back(rating.n_ratings);
            q["rating_entropy"].push_back(rating.rating_entropy);
            q["n_reviews"].push_back(static_cast<double>(obs.reviews.size()));
            auto shelf = bookcast::features::shelf_features(obs, bookcast::features::kDefaultSelectivityK);
            q["n_shelves"].push_back(shelf.n_shelves);
            q["read_users"].push_back(shelf.read_users);
            q["to_read_users"].push_back(shelf.to_read_users);
            q["currently_reading_users"].push_back(shelf.currently_reading_users);
            q["re_read_users"].push_back(shelf.re_read_users);
            q["shelf_div"].push_back(shelf.shelf_div);
            q["selectivity_3"].push_back(shelf.selectivity);
            auto status = bookcast::features::status_features(obs, lex.sentiment);
            q["status_posts_per_user_mean"].push_back(status.posts_per_user.mean);
            q["status_unique_posters"].push_back(status.unique_posters);
            q["status_multi_posters_2"].push_back(status.multi_posters_2);
            q["status_inter_arrival_mean_days"].push_back(status.inter_arrival_days.mean);
            q["status_max_stretch_pct_mean"].push_back(status.max_stretch_pct.mean);
            q["status_time_to_finish_mean_days"].push_back(status.time_to_finish_days.mean);
            q["status_has_finisher"].push_back(status.has_finisher);

            const auto& book = *corpus.find_book(id);
            for (std::size_t g = 0; g < schema.names.size(); ++g) {
                if (book.genres.contains(schema.names[g])) genre_hits[g] += 1.0;
            }
            if (!book.author_id.empty()) author_ids.insert(book.author_id);
        }

        std::vector<double> a_ratings, a_reviews, a_works, a_fans;
        for (const auto& aid : author_ids) {
            const auto* a = corpus.find_author(aid);
            if (!a) continue;
            auto prof = bookcast::features::author_profile(*a);
            a_ratings.push_back(prof.ratings_count);
            a_reviews.push_back(prof.reviews_count);
            a_works.push_back(prof.works_count);
            a_fans.push_back(prof.fans_count);
            authors_csv += cohort + ',' + aid + ',' + bookcast::format_double(prof.ratings_count) +
                           ',' + bookcast::format_double(prof.reviews_count) + ',' +
                           bookcast::format_double(prof.works_count) + ',' +
                           bookcast::format_double(prof.fans_count) + '\n';
        }
        q["author_ratings_count"] = a_ratings;
        q["author_reviews_count"] = a_reviews;
        q["author_works_count"] = a_works;
        q["author_fans_count"] = a_fans;

        for (const auto& [quantity, values] : q) {
            histograms += histogram_rows(quantity, cohort, values);
            cdfs += cdf_rows(quantity, cohort, values);
        }
        const double n = static_cast<double>(ids.size());
        for (std::size_t g = 0; g < schema.names.size(); ++g) {
            genres += cohort + ',' + schema.names[g] + ',' +
                      bookcast::format_double(n > 0 ? genre_hits[g] / n : 0.0) + '\n';
        }
    };

    run_cohort("abs", sel.positives);
    run_cohort(pair.negative, sel.negatives);

    fs::create_directories(opt.out_dir);
    bookcast::write_file_atomic(fs::path(opt.out_dir) / "histograms.csv", histograms);
    bookcast::write_file_atomic(fs::path(opt.out_dir) / "cdfs.csv", cdfs);
    bookcast::write_file_atomic(fs::path(opt.out_dir) / "genres.csv", genres);
    bookcast::write_file_atomic(fs::path(opt.out_dir) / "authors.csv", authors_csv);
    json flags = flags_json(opt);
    flags["windowed"] = windowed;
    write_run_manifest(opt.out_dir, "analyze", flags, corpus_input_digests(opt.corpus_dir),
                       {"histograms.csv", "cdfs.csv", "genres.csv", "authors.csv"});
    return 0;
}

int cmd_train(const CommonOptions& opt) {
    auto mask = parse_mask(opt.mask);
    auto kind = parse_model(opt.model);
    auto ds = load_and_extract(opt, mask);

    bookcast::learn::Hyperparameters hyper;
    auto scaler = bookcast::learn::Scaler::fit(ds.masked.x);
    auto x_std = scaler.transform(ds.masked.x);
    bookcast::learn::TrainedModel model =
        kind == bookcast::learn::ModelKind::Logistic
            ? bookcast::learn::train_logistic(x_std, ds.masked.y, hyper, scaler)
            : bookcast::learn::train_linear_svm(x_std, ds.masked.y, hyper, scaler, opt.seed);
    model.seed = opt.seed;

    bookcast::learn::ModelFile file;
    file.model = std::move(model);
    file.manifest_id = ds.masked.manifest_id;
    file.mask_name = ds.masked.mask_name;
    file.window_days = ds.window_days;
    file.feature_names = ds.masked.feature_names;

    fs::create_directories(opt.out_dir);
    bookcast::write_file_atomic(fs::path(opt.out_dir) / "model.json", file.to_json().dump(2) + "\n");
    write_run_manifest(opt.out_dir, "train", flags_json(opt), corpus_input_digests(opt.corpus_dir),
                       {"model.json"});
    return 0;
}

int cmd_evaluate(const CommonOptions& opt) {
    auto mask = parse_mask(opt.mask);
    auto kind = parse_model(opt.model);
    bookcast::learn::Hyperparameters hyper;

    bookcast::learn::EvalReport report;
    if (opt.protocol == "balanced") {
        auto ds = load_and_extract(opt, mask);
        report = bookcast::learn::cross_validate(ds.masked, opt.folds, kind, hyper, opt.seed);
    } else if (opt.protocol == "imbalanced") {
        // the 1:9 test plus balanced train needs a larger negative pool
        auto corpus_probe = bookcast::load_corpus_dir(opt.corpus_dir, false);
        auto n_pos = bookcast::select_cohort(corpus_probe,
                                             bookcast::CohortSpec::abs(opt.cutoff_year)).size();
        auto needed = bookcast::pipeline::imbalanced_negatives_needed(n_pos);
        auto ds = load_and_extract(opt, mask, needed);
        report = bookcast::learn::imbalanced_eval(ds.masked, kind, hyper, opt.seed);
    } else {
        throw CLI::ValidationError("--protocol", "expected balanced|imbalanced");
    }

    fs::create_directories(opt.out_dir);
    json j = report.to_json();
    j["window"] = opt.window;
    j["cohorts"] = opt.cohorts;
    bookcast::write_file_atomic(fs::path(opt.out_dir) / "eval_report.json", j.dump(2) + "\n");
    write_run_manifest(opt.out_dir, "evaluate", flags_json(opt), corpus_input_digests(opt.corpus_dir),
                       {"eval_report.json"});
    return 0;
}

int cmd_rank(const CommonOptions& opt) {
    auto mask = parse_mask(opt.mask);
    auto ds = load_and_extract(opt, mask);
    auto ranking = bookcast::rank::rank_features(ds.masked.x, ds.masked.y, ds.masked.feature_names);

    std::string csv = "rank,feature,chi_square,info_gain\n";
    for (const auto& e : ranking.entries) {
        csv += std::to_string(e.rank) + ',' + e.name + ',' + bookcast::format_double(e.chi_square) +
               ',' + bookcast::format_double(e.info_gain) + '\n';
    }
    fs::create_directories(opt.out_dir);
    bookcast::write_file_atomic(fs::path(opt.out_dir) / "ranking.csv", csv);
    write_run_manifest(opt.out_dir, "rank", flags_json(opt), corpus_input_digests(opt.corpus_dir),
                       {"ranking.csv"});
    return 0;
}

int cmd_predict(const CommonOptions& opt, const std::string& trained_path) {
    auto file = bookcast::learn::ModelFile::from_json(
        json::parse(bookcast::read_file(trained_path)));
    auto corpus = bookcast::load_corpus_dir(opt.corpus_dir, false);
    auto lex = load_lexicons(opt);
    auto manifest = bookcast::features::build_manifest(lex.categories);
    if (manifest.manifest_id != file.manifest_id) {
        throw bookcast::DataError("model manifest " + file.manifest_id +
                                  " does not match current manifest " + manifest.manifest_id +
                                  " (different lexicons?)");
    }
    auto mask = bookcast::features::mask_from_string(file.mask_name);
    if (!mask) throw bookcast::DataError("model file: unknown mask '" + file.mask_name + "'");
    auto idx = manifest.mask_indices(*mask);

    bookcast::features::ExtractionContext ctx{&lex.stopwords, &lex.sentiment, &lex.categories,
                                              &bookcast::features::GenreSchema::standard(), &manifest};

    std::string csv = "book_id,score,predicted\n";
    // date-ordered sweep mirrors build_dataset's background semantics
    std::vector<std::size_t> order(corpus.books.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (corpus.books[a].publication_date != corpus.books[b].publication_date)
            return corpus.books[a].publication_date < corpus.books[b].publication_date;
        return a < b;
    });
    std::map<std::string, std::pair<double, int>> results;
    bookcast::features::BackgroundModel background(lex.stopwords);
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        const auto date = corpus.books[order[i]].publication_date;
        while (j < order.size() && corpus.books[order[j]].publication_date == date) ++j;
        for (std::size_t k = i; k < j; ++k) {
            const auto& book = corpus.books[order[k]];
            auto obs = bookcast::window_clip(corpus, book.book_id,
                                             bookcast::ObservationWindow{file.window_days});
            auto fv = bookcast::features::extract_features(obs, background, ctx);
            std::vector<double> masked;
            masked.reserve(idx.size());
            for (std::size_t d : idx) masked.push_back(fv.values[d]);
            double s = bookcast::learn::score(file.model, masked);
            results[book.book_id] = {s, s >= file.model.threshold() ? 1 : 0};
        }
        for (std::size_t k = i; k < j; ++k) {
            const auto& book = corpus.books[order[k]];
            if (!book.about.empty()) background.add_document(book.about);
        }
        i = j;
    }
    for (const auto& b : corpus.books) {
        const auto& [s, pred] = results.at(b.book_id);
        csv += b.book_id + ',' + bookcast::format_double(s) + ',' + std::to_string(pred) + '\n';
    }

    fs::create_directories(opt.out_dir);
    bookcast::write_file_atomic(fs::path(opt.out_dir) / "predictions.csv", csv);
    json flags = flags_json(opt);
    flags["trained"] = trained_path;
    json inputs = corpus_input_digests(opt.corpus_dir);
    inputs.push_back({{"file", fs::path(trained_path).filename().string()},
                      {"fnv1a64", bookcast::file_digest_hex(trained_path)}});
    write_run_manifest(opt.out_dir, "predict", flags, inputs, {"predictions.csv"});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bookcast: social-reading signals to best-seller prediction"};
    app.require_subcommand(1);

    CommonOptions opt;
    bool strict = false;
    bool windowed_analyze = false;
    std::string trained_path;

    auto add_corpus = [&](CLI::App* cmd) {
        cmd->add_option("--corpus", opt.corpus_dir, "corpus directory with the six JSONL files")
            ->required();
    };
    auto add_out = [&](CLI::App* cmd, bool required = true) {
        auto* o = cmd->add_option("--out", opt.out_dir, "output directory");
        if (required) o->required();
    };
    auto add_lexicons = [&](CLI::App* cmd) {
        cmd->add_option("--stopwords", opt.stopwords_file, "stopwords.txt (one word per line)");
        cmd->add_option("--sentiment", opt.sentiment_file, "sentiment.tsv (word<TAB>pos|neg)");
        cmd->add_option("--categories", opt.categories_file, "categories.tsv (category<TAB>pattern)");
    };
    auto add_selection = [&](CLI::App* cmd) {
        cmd->add_option("--window", opt.window, "observation window: 15d, 1m, or <N>d");
        cmd->add_option("--cohorts", opt.cohorts, "abs,other|abs,hrhr|abs,gcan");
        cmd->add_option("--seed", opt.seed, "random seed");
        cmd->add_option("--cutoff-year", opt.cutoff_year, "publication cutoff year for abs/other");
    };

    auto* validate = app.add_subcommand("validate", "load a corpus and report validation issues");
    add_corpus(validate);
    add_out(validate, false);
    validate->add_flag("--strict", strict, "abort on the first malformed line");

    auto* synth = app.add_subcommand("synth", "generate a synthetic corpus");
    add_out(synth);
    synth->add_option("--seed", opt.seed, "random seed");
    synth->add_option("--config", opt.config_file, "SynthConfig JSON overriding defaults");

    auto* extract = app.add_subcommand("extract", "extract the feature matrix as CSV");
    add_corpus(extract);
    add_out(extract);
    add_selection(extract);
    add_lexicons(extract);
    extract->add_option("--mask", opt.mask, "all|full|ratings|reviews");

    auto* analyze = app.add_subcommand("analyze", "export per-cohort distribution tables");
    add_corpus(analyze);
    add_out(analyze);
    add_selection(analyze);
    add_lexicons(analyze);
    analyze->add_flag("--windowed", windowed_analyze,
                      "clip to --window instead of lifetime statistics");

    auto* train = app.add_subcommand("train", "train a model on the full selection");
    add_corpus(train);
    add_out(train);
    add_selection(train);
    add_lexicons(train);
    train->add_option("--mask", opt.mask, "all|full|ratings|reviews")->default_str("full");
    train->add_option("--model", opt.model, "lr|svm");

    auto* evaluate = app.add_subcommand("evaluate", "run an evaluation protocol");
    add_corpus(evaluate);
    add_out(evaluate);
    add_selection(evaluate);
    add_lexicons(evaluate);
    evaluate->add_option("--mask", opt.mask, "all|full|ratings|reviews")->default_str("full");
    evaluate->add_option("--model", opt.model, "lr|svm");
    evaluate->add_option("--protocol", opt.protocol, "balanced|imbalanced");
    evaluate->add_option("--folds", opt.folds, "folds for the balanced protocol");

    auto* rankcmd = app.add_subcommand("rank", "rank features by discriminative power");
    add_corpus(rankcmd);
    add_out(rankcmd);
    add_selection(rankcmd);
    add_lexicons(rankcmd);
    rankcmd->add_option("--mask", opt.mask, "all|full|ratings|reviews");

    auto* predict = app.add_subcommand("predict", "score every book with a trained model");
    add_corpus(predict);
    add_out(predict);
    add_lexicons(predict);
    predict->add_option("--trained", trained_path, "model.json from `train`")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        // defaults differ per command for the mask
        if ((train->parsed() || evaluate->parsed()) && !train->count("--mask") &&
            !evaluate->count("--mask") && opt.mask == "all") {
            opt.mask = "full";
        }
        if (validate->parsed()) return cmd_validate(opt, strict);
        if (synth->parsed()) return cmd_synth(opt);
        if (extract->parsed()) return cmd_extract(opt);
        if (analyze->parsed()) return cmd_analyze(opt, windowed_analyze);
        if (train->parsed()) return cmd_train(opt);
        if (evaluate->parsed()) return cmd_evaluate(opt);
        if (rankcmd->parsed()) return cmd_rank(opt);
        if (predict->parsed()) return cmd_predict(opt, trained_path);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
