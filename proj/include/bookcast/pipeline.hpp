#pragma once

// Glue between corpus selection and the learn/rank layers: cohort-pair
// parsing, dataset extraction over an observation window (with the
// earlier-published-summaries background computed in one date-ordered
// sweep), feature masking, and CSV emission.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bookcast/corpus.hpp"
#include "bookcast/features.hpp"
#include "bookcast/io.hpp"
#include "bookcast/learn.hpp"
#include "bookcast/lexicons.hpp"

namespace bookcast::pipeline {

struct Lexicons {
    text::StopwordSet stopwords;
    text::SentimentLexicon sentiment;
    text::CategoryLexicon categories;

    static Lexicons defaults() {
        return {text::default_stopwords(), text::default_sentiment_lexicon(),
                text::default_category_lexicon()};
    }
};

// "abs,other" | "abs,hrhr" | "abs,gcan" — positives are always the
// best-seller cohort
struct CohortPair {
    std::string negative = "other";
};

inline CohortPair parse_cohorts(const std::string& s) {
    if (s == "abs,other") return {"other"};
    if (s == "abs,hrhr") return {"hrhr"};
    if (s == "abs,gcan") return {"gcan"};
    throw DataError("unknown cohort pair '" + s + "' (expected abs,other|abs,hrhr|abs,gcan)");
}

struct CohortSelection {
    std::vector<std::string> positives;  // ABS books
    std::vector<std::string> negatives;
};

// Negative count for the imbalanced protocol: the test takes round(P/16)
// positives with nine negatives each, the rest train against an equal
// number of downsampled negatives.
inline std::size_t imbalanced_negatives_needed(std::size_t n_pos) {
    std::size_t p_test = std::max<std::size_t>(1, static_cast<std::size_t>(
        std::llround(static_cast<double>(n_pos) / 16.0)));
    return 9 * p_test + (n_pos - p_test);
}

inline CohortSelection select_pair(const Corpus& corpus, const CohortPair& pair,
                                   std::uint64_t seed, int cutoff_year,
                                   std::optional<std::size_t> n_negatives = std::nullopt) {
    CohortSelection sel;
    sel.positives = select_cohort(corpus, CohortSpec::abs(cutoff_year));
    if (sel.positives.empty()) throw DataError("cohort selection: no ABS books on/after cutoff year");
    if (pair.negative == "other") {
        std::size_t n = n_negatives.value_or(sel.positives.size());
        sel.negatives = select_cohort(corpus, CohortSpec::random_other(n, seed, cutoff_year));
    } else if (pair.negative == "hrhr") {
        sel.negatives = select_cohort(corpus, CohortSpec::hrhr());
    } else {
        sel.negatives = select_cohort(corpus, CohortSpec::gcan());
    }
    if (sel.negatives.empty()) throw DataError("cohort selection: empty negative cohort '" + pair.negative + "'");
    return sel;
}

// ---------------------------------------------------------------------------
// Dataset extraction
// ---------------------------------------------------------------------------

struct ExtractedDataset {
    learn::Dataset data;                 // all feature groups, rows = pos then neg
    features::FeatureManifest manifest;  // full manifest
};

// Window of 0 days means lifetime observation (characterization mode).
inline ExtractedDataset build_dataset(const Corpus& corpus, const CohortSelection& sel,
                                      int window_days, const Lexicons& lex) {
    ExtractedDataset out;
    out.manifest = features::build_manifest(lex.categories);
    features::ExtractionContext ctx{&lex.stopwords, &lex.sentiment, &lex.categories,
                                    &features::GenreSchema::standard(), &out.manifest};

    std::unordered_map<std::string, int> wanted;  // book_id -> label
    for (const auto& id : sel.positives) wanted.emplace(id, 1);
    for (const auto& id : sel.negatives) {
        if (!wanted.emplace(id, 0).second) {
            throw DataError("book '" + id + "' appears in both cohorts");
        }
    }

    // single date-ordered sweep so each book sees exactly the summaries of
    // strictly earlier-published books as background
    std::vector<std::size_t> order(corpus.books.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (corpus.books[a].publication_date != corpus.books[b].publication_date)
            return corpus.books[a].publication_date < corpus.books[b].publication_date;
        return a < b;
    });

    std::unordered_map<std::string, features::FeatureVector> rows;
    features::BackgroundModel background(lex.stopwords);
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        const Instant date = corpus.books[order[i]].publication_date;
        while (j < order.size() && corpus.books[order[j]].publication_date == date) ++j;
        for (std::size_t k = i; k < j; ++k) {
            const auto& book = corpus.books[order[k]];
            if (!wanted.contains(book.book_id)) continue;
            BookObservation obs = window_days > 0 ? window_clip(corpus, book.book_id,
                                                                ObservationWindow{window_days})
                                                  : observe_lifetime(corpus, book.book_id);
            rows.emplace(book.book_id, features::extract_features(obs, background, ctx));
        }
        for (std::size_t k = i; k < j; ++k) {
            const auto& book = corpus.books[order[k]];
            if (!book.about.empty()) background.add_document(book.about);
        }
        i = j;
    }

    auto& data = out.data;
    data.manifest_id = out.manifest.manifest_id;
    data.mask_name = "all";
    for (const auto& dim : out.manifest.dims) data.feature_names.push_back(dim.name);
    auto append = [&](const std::vector<std::string>& ids, int label) {
        for (const auto& id : ids) {
            data.x.push_back(rows.at(id).values);
            data.y.push_back(label);
            data.ids.push_back(id);
        }
    };
    append(sel.positives, 1);
    append(sel.negatives, 0);
    return out;
}

inline learn::Dataset apply_mask(const ExtractedDataset& extracted, features::FeatureMask mask) {
    auto idx = extracted.manifest.mask_indices(mask);
    learn::Dataset out;
    out.y = extracted.data.y;
    out.ids = extracted.data.ids;
    out.manifest_id = extracted.data.manifest_id;
    out.mask_name = features::to_string(mask);
    for (std::size_t i : idx) out.feature_names.push_back(extracted.data.feature_names[i]);
    out.x.reserve(extracted.data.x.size());
    for (const auto& row : extracted.data.x) {
        std::vector<double> masked;
        masked.reserve(idx.size());
        for (std::size_t i : idx) masked.push_back(row[i]);
        out.x.push_back(std::move(masked));
    }
    return out;
}

// ---------------------------------------------------------------------------
// CSV emission
// ---------------------------------------------------------------------------

inline std::string dataset_to_csv(const learn::Dataset& data) {
    std::string csv = "book_id,label";
    for (const auto& name : data.feature_names) {
        csv += ',';
        csv += name;
    }
    csv += '\n';
    for (std::size_t i = 0; i < data.x.size(); ++i) {
        csv += data.ids.empty() ? std::to_string(i) : data.ids[i];
        csv += ',';
        csv += std::to_string(data.y[i]);
        for (double v : data.x[i]) {
            csv += ',';
            csv += format_double(v);
        }
        csv += '\n';
    }
    return csv;
}

}  // namespace bookcast::pipeline
