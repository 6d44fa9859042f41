#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "corpus.hpp"
#include "decimal.hpp"
#include "errors.hpp"

namespace pra::io {

struct ResultRow {
    std::string train;
    std::string test;
    std::string metric;
    std::string algorithm;
    Decimal value;

    friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

struct ResultsFile {
    std::vector<ResultRow> rows;

    friend bool operator==(const ResultsFile&, const ResultsFile&) = default;
};

inline constexpr std::string_view kResultsHeader =
    "train_dataset,test_dataset,metric,algorithm,value";

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

} // namespace detail

/// Parse a results CSV. The file is rejected as a whole if anything is wrong,
/// and the ValidationError lists *every* problem found, not just the first:
/// a hand-assembled results file tends to have the same mistake repeated on
/// forty lines, and fixing them one resubmit at a time is miserable.
inline ResultsFile parse_results(std::string_view text) {
    std::vector<std::string> issues;
    ResultsFile file;

    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) nl = text.size();
        auto line = text.substr(start, nl - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = nl + 1;
    }
    // A trailing newline produces one final empty entry; drop it.
    if (!lines.empty() && lines.back().empty()) lines.pop_back();

    if (lines.empty()) {
        issues.push_back("line 1: missing header; expected '" + std::string(kResultsHeader) + "'");
        throw ValidationError(std::move(issues));
    }
    if (lines.front() != kResultsHeader)
        issues.push_back("line 1: bad header '" + std::string(lines.front()) + "'; expected '" +
                         std::string(kResultsHeader) + "'");

    std::set<std::tuple<std::string, std::string, std::string, std::string>> seen;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto line_no = std::to_string(k + 1);
        const auto line = lines[k];
        if (line.empty()) {
            issues.push_back("line " + line_no + ": blank line");
            continue;
        }
        const auto fields = detail::split_fields(line);
        if (fields.size() != 5) {
            issues.push_back("line " + line_no + ": expected 5 fields, got " +
                             std::to_string(fields.size()));
            continue;
        }
        ResultRow row;
        row.train = std::string(fields[0]);
        row.test = std::string(fields[1]);
        row.metric = std::string(fields[2]);
        row.algorithm = std::string(fields[3]);
        bool ok = true;
        const char* names[] = {"train_dataset", "test_dataset", "metric", "algorithm"};
        for (int f = 0; f < 4; ++f) {
            if (fields[f].empty()) {
                issues.push_back("line " + line_no + ": empty " + names[f] + " field");
                ok = false;
            }
        }
        try {
            row.value = Decimal::parse(fields[4]);
        } catch (const BadNumber& e) {
            issues.push_back("line " + line_no + ": " + e.what());
            ok = false;
        }
        if (!ok) continue;

        auto key = std::make_tuple(row.train, row.test, row.metric, row.algorithm);
        if (!seen.insert(key).second) {
            issues.push_back("line " + line_no + ": duplicate entry for (" + row.train + ", " +
                             row.test + ", " + row.metric + ", " + row.algorithm + ")");
            continue;
        }
        file.rows.push_back(std::move(row));
    }

    if (!issues.empty()) throw ValidationError(std::move(issues));
    return file;
}

/// Canonical serialization: header plus one line per row in stored order,
/// values in minimal decimal form. parse_results(serialize_results(f)) == f.
inline std::string serialize_results(const ResultsFile& file) {
    std::string out{kResultsHeader};
    out += '\n';
    for (const auto& row : file.rows) {
        out += row.train;
        out += ',';
        out += row.test;
        out += ',';
        out += row.metric;
        out += ',';
        out += row.algorithm;
        out += ',';
        out += row.value.str();
        out += '\n';
    }
    return out;
}

/// Assemble validated rows into the pipeline's corpus shape.
///
/// Algorithm order is first appearance in the file; metric order likewise
/// unless the caller pins it (the config's metric list does exactly that).
/// Rejects ragged data: every (train, test, metric) cell must cover the full
/// algorithm roster, and every (train, test) must cover every metric it
/// covers anywhere, otherwise rank vectors would silently misalign.
inline ResultCorpus build_corpus(const ResultsFile& file,
                                 const std::vector<std::string>& metrics = {}) {
    std::vector<std::string> issues;
    ResultCorpus corpus;

    corpus.metrics = metrics;
    for (const auto& row : file.rows) {
        bool known_algorithm = false;
        for (const auto& a : corpus.algorithms) known_algorithm |= (a == row.algorithm);
        if (!known_algorithm) corpus.algorithms.push_back(row.algorithm);
        bool known_metric = false;
        for (const auto& m : corpus.metrics) known_metric |= (m == row.metric);
        if (!known_metric) {
            if (metrics.empty())
                corpus.metrics.push_back(row.metric);
            else
                issues.push_back("metric '" + row.metric +
                                 "' appears in the results but not in the configured metric list");
        }
    }

    // (train, test, metric) -> algorithm -> value
    std::map<std::tuple<std::string, std::string, std::string>, std::map<std::string, Decimal>>
        cells;
    for (const auto& row : file.rows)
        cells[{row.train, row.test, row.metric}][row.algorithm] = row.value;

    std::set<std::pair<std::string, std::string>> combos;
    std::set<std::string> metrics_seen;
    for (const auto& [key, _] : cells) {
        combos.insert({std::get<0>(key), std::get<1>(key)});
        metrics_seen.insert(std::get<2>(key));
    }

    for (const auto& [key, scores] : cells) {
        const auto& [train, test, metric] = key;
        ScoreVector vec;
        for (const auto& algorithm : corpus.algorithms) {
            auto it = scores.find(algorithm);
            if (it == scores.end()) {
                issues.push_back("ragged results: no value for algorithm '" + algorithm +
                                 "' at (" + train + ", " + test + ", " + metric + ")");
                continue;
            }
            vec.push_back(it->second);
        }
        corpus.tables[train][metric][test] = std::move(vec);
    }

    for (const auto& [train, test] : combos) {
        for (const auto& metric : metrics_seen) {
            if (!cells.count({train, test, metric}))
                issues.push_back("ragged results: metric '" + metric + "' missing at (" + train +
                                 ", " + test + ")");
        }
    }

    if (!issues.empty()) throw ValidationError(std::move(issues));
    return corpus;
}

/// Flatten a corpus back into rows (canonical order: train, metric, test,
/// algorithm, all in their respective list/registry orders where defined).
inline ResultsFile corpus_to_rows(const ResultCorpus& corpus) {
    ResultsFile file;
    for (const auto& [train, by_metric] : corpus.tables) {
        for (const auto& metric : corpus.metrics) {
            auto m = by_metric.find(metric);
            if (m == by_metric.end()) continue;
            for (const auto& [test, scores] : m->second)
                for (std::size_t i = 0; i < scores.size(); ++i)
                    file.rows.push_back({train, test, metric, corpus.algorithms[i], scores[i]});
        }
    }
    return file;
}

} // namespace pra::io
