#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "errors.hpp"
#include "numfmt.hpp"
#include "pipeline.hpp"

namespace pra::io {

enum class Format { text, json, csv };

inline const char* to_string(stats::Decision d) {
    return d == stats::Decision::accept_null ? "accept-null" : "reject-null";
}

// All floats in the JSON report are rounded to six fractional digits before
// they are stored, so emit(parse(emit(r))) == emit(r) byte for byte.
inline double json_num(double v) { return round_to(v, 6); }

inline nlohmann::ordered_json report_to_json(const PRAReport& report) {
    using nlohmann::ordered_json;
    ordered_json root;

    root["tau_table"] = ordered_json::array();
    for (const auto& e : report.tau_table) {
        ordered_json row;
        row["train"] = e.key.train;
        row["test_a"] = e.key.test_a;
        row["test_b"] = e.key.test_b;
        row["metric"] = e.key.metric;
        row["tau"] = json_num(e.record.tau);
        row["n_concordant"] = e.record.n_concordant;
        row["n_discordant"] = e.record.n_discordant;
        row["n0"] = e.record.n0;
        row["n1"] = e.record.n1;
        row["n2"] = e.record.n2;
        row["n_xy_tied"] = e.record.n_xy_tied;
        root["tau_table"].push_back(row);
    }

    root["groups"] = ordered_json::array();
    for (const auto& g : report.groups) {
        ordered_json grp;
        grp["metric"] = g.metric;
        for (const char* side : {"reference", "inspecting"}) {
            const auto& entries = side == std::string("reference") ? g.reference : g.inspecting;
            grp[side] = ordered_json::array();
            for (const auto& e : entries) {
                ordered_json row;
                row["train"] = e.key.train;
                row["test_a"] = e.key.test_a;
                row["test_b"] = e.key.test_b;
                row["tau"] = json_num(e.tau);
                grp[side].push_back(row);
            }
        }
        root["groups"].push_back(grp);
    }

    root["summaries"] = ordered_json::array();
    for (const auto& [metric, s] : report.summaries) {
        ordered_json row;
        row["metric"] = metric;
        row["reference"] = {{"mean", json_num(s.reference.mean)},
                            {"stddev", json_num(s.reference.stddev)}};
        row["inspecting"] = {{"mean", json_num(s.inspecting.mean)},
                             {"stddev", json_num(s.inspecting.stddev)}};
        root["summaries"].push_back(row);
    }

    root["ks"] = ordered_json::array();
    for (const auto& [metric, k] : report.ks) {
        ordered_json row;
        row["metric"] = metric;
        row["d_statistic"] = json_num(k.d_statistic);
        row["n"] = k.n;
        row["m"] = k.m;
        row["alpha"] = json_num(k.alpha);
        row["threshold"] = json_num(k.threshold);
        row["p_value"] = json_num(k.p_value);
        row["p_method"] = to_string(k.p_method_used);
        row["decision"] = to_string(k.decision);
        row["threshold_decision"] = to_string(k.threshold_decision);
        row["rules_agree"] = k.rules_agree;
        root["ks"].push_back(row);
    }

    root["verdicts"] = ordered_json::array();
    for (const auto& [metric, v] : report.verdicts)
        root["verdicts"].push_back({{"metric", metric}, {"verdict", pra::to_string(v)}});

    root["diagnostics"] = ordered_json::object();
    root["diagnostics"]["crossings"] = ordered_json::array();
    for (const auto& [key, count] : report.crossings) {
        ordered_json row;
        row["train"] = key.train;
        row["test_a"] = key.test_a;
        row["test_b"] = key.test_b;
        row["metric"] = key.metric;
        row["count"] = count;
        root["diagnostics"]["crossings"].push_back(row);
    }

    const auto& p = report.provenance;
    ordered_json prov;
    prov["tool"] = p.tool;
    prov["version"] = p.version;
    prov["sources"] = p.sources;
    prov["alpha"] = json_num(p.alpha);
    prov["p_method"] = to_string(p.p_method_requested);
    if (p.tau_rounding)
        prov["tau_rounding"] = *p.tau_rounding;
    else
        prov["tau_rounding"] = nullptr;
    prov["exact_budget"] = p.exact_budget;
    prov["mc_trials"] = p.mc_trials;
    prov["mc_seed"] = p.mc_seed;
    prov["metrics"] = p.metrics;
    prov["datasets"] = ordered_json::array();
    for (const auto& d : p.datasets) {
        ordered_json row;
        row["id"] = d.id;
        row["realm"] = pra::to_string(d.realm);
        row["train_only"] = d.train_only;
        row["role"] = pra::to_string(d.role);
        prov["datasets"].push_back(row);
    }
    root["provenance"] = prov;
    return root;
}

inline PRAReport report_from_json(const std::string& text) {
    using nlohmann::json;
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError({std::string("report: ") + e.what()});
    }

    const auto decision = [](const std::string& s) {
        return s == "reject-null" ? stats::Decision::reject_null : stats::Decision::accept_null;
    };

    PRAReport report;
    try {
        for (const auto& row : root.at("tau_table")) {
            TauEntry e;
            e.key = {row.at("train"), row.at("test_a"), row.at("test_b"), row.at("metric")};
            e.record.tau = row.at("tau");
            e.record.n_concordant = row.at("n_concordant");
            e.record.n_discordant = row.at("n_discordant");
            e.record.n0 = row.at("n0");
            e.record.n1 = row.at("n1");
            e.record.n2 = row.at("n2");
            e.record.n_xy_tied = row.at("n_xy_tied");
            report.tau_table.push_back(std::move(e));
        }
        for (const auto& grp : root.at("groups")) {
            GroupedSamples g;
            g.metric = grp.at("metric");
            for (const char* side : {"reference", "inspecting"}) {
                auto& target = side == std::string("reference") ? g.reference : g.inspecting;
                for (const auto& row : grp.at(side)) {
                    GroupEntry e;
                    e.key = {row.at("train"), row.at("test_a"), row.at("test_b"), g.metric};
                    e.tau = row.at("tau");
                    target.push_back(std::move(e));
                }
            }
            report.groups.push_back(std::move(g));
        }
        for (const auto& row : root.at("summaries")) {
            MetricSummaries s;
            s.reference.mean = row.at("reference").at("mean");
            s.reference.stddev = row.at("reference").at("stddev");
            s.inspecting.mean = row.at("inspecting").at("mean");
            s.inspecting.stddev = row.at("inspecting").at("stddev");
            report.summaries.emplace_back(row.at("metric"), s);
        }
        for (const auto& row : root.at("ks")) {
            stats::KSResult k;
            k.d_statistic = row.at("d_statistic");
            k.n = row.at("n");
            k.m = row.at("m");
            k.alpha = row.at("alpha");
            k.threshold = row.at("threshold");
            k.p_value = row.at("p_value");
            if (auto m = pmethod_from_string(row.at("p_method")))
                k.p_method_used = *m;
            k.decision = decision(row.at("decision"));
            k.threshold_decision = decision(row.at("threshold_decision"));
            k.rules_agree = row.at("rules_agree");
            report.ks.emplace_back(row.at("metric"), k);
        }
        for (const auto& row : root.at("verdicts"))
            report.verdicts.emplace_back(row.at("metric"),
                                         row.at("verdict") == "different" ? Verdict::different
                                                                          : Verdict::identical);
        for (const auto& row : root.at("diagnostics").at("crossings")) {
            PairKey key{row.at("train"), row.at("test_a"), row.at("test_b"), row.at("metric")};
            report.crossings.emplace_back(std::move(key), row.at("count").get<std::int64_t>());
        }
        const auto& prov = root.at("provenance");
        report.provenance.tool = prov.at("tool");
        report.provenance.version = prov.at("version");
        report.provenance.sources = prov.at("sources").get<std::vector<std::string>>();
        report.provenance.alpha = prov.at("alpha");
        if (auto m = pmethod_from_string(prov.at("p_method")))
            report.provenance.p_method_requested = *m;
        if (!prov.at("tau_rounding").is_null())
            report.provenance.tau_rounding = prov.at("tau_rounding").get<int>();
        report.provenance.exact_budget = prov.at("exact_budget");
        report.provenance.mc_trials = prov.at("mc_trials");
        report.provenance.mc_seed = prov.at("mc_seed");
        report.provenance.metrics = prov.at("metrics").get<std::vector<std::string>>();
        for (const auto& row : prov.at("datasets")) {
            DatasetDescriptor d;
            d.id = row.at("id");
            d.realm = row.at("realm") == "synthetic" ? Realm::synthetic : Realm::real_world;
            d.train_only = row.at("train_only");
            const std::string role = row.at("role");
            d.role = role == "reference"    ? RoleTag::reference
                     : role == "inspecting" ? RoleTag::inspecting
                                            : RoleTag::neither;
            report.provenance.datasets.push_back(std::move(d));
        }
    } catch (const json::exception& e) {
        throw ValidationError({std::string("report: ") + e.what()});
    }
    return report;
}

namespace detail {

/// Rows = pairs (lexicographic), columns = training datasets (their order in
/// `trains`), one matrix per metric. Inadmissible cells print as "--".
inline std::string render_matrix(const PRAReport& report, const std::string& metric,
                                 const std::vector<std::string>& trains, bool crossings) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& e : report.tau_table) {
        if (e.key.metric != metric) continue;
        std::pair<std::string, std::string> p{e.key.test_a, e.key.test_b};
        if (std::find(pairs.begin(), pairs.end(), p) == pairs.end()) pairs.push_back(p);
    }
    std::sort(pairs.begin(), pairs.end());

    const auto cell = [&](const std::string& train, const std::string& a,
                          const std::string& b) -> std::string {
        for (const auto& e : report.tau_table)
            if (e.key.metric == metric && e.key.train == train && e.key.test_a == a &&
                e.key.test_b == b)
                return crossings ? std::to_string(e.record.n_discordant)
                                 : format_fixed(e.record.tau, 2);
        return "--";
    };

    std::size_t label_width = 4;
    for (const auto& [a, b] : pairs) label_width = std::max(label_width, a.size() + b.size() + 3);
    std::vector<std::size_t> widths;
    for (const auto& t : trains) widths.push_back(std::max<std::size_t>(t.size(), 5));

    std::string out = "  ";
    out += std::string(label_width, ' ');
    for (std::size_t c = 0; c < trains.size(); ++c) {
        out += "  ";
        out += std::string(widths[c] - trains[c].size(), ' ');
        out += trains[c];
    }
    out += '\n';
    for (const auto& [a, b] : pairs) {
        const std::string label = a + " / " + b;
        out += "  " + label + std::string(label_width - label.size(), ' ');
        for (std::size_t c = 0; c < trains.size(); ++c) {
            const auto text = cell(trains[c], a, b);
            out += "  ";
            out += std::string(widths[c] - text.size(), ' ');
            out += text;
        }
        out += '\n';
    }
    return out;
}

} // namespace detail

inline std::string emit_report_text(const PRAReport& report) {
    std::string out;
    out += "pairwise ranking analysis (" + report.provenance.tool + " " +
           report.provenance.version + ")\n";
    out += "source: ";
    for (std::size_t i = 0; i < report.provenance.sources.size(); ++i) {
        if (i) out += ", ";
        out += report.provenance.sources[i];
    }
    if (report.provenance.sources.empty()) out += "(unspecified)";
    out += '\n';
    out += "alpha = " + format_fixed(report.provenance.alpha, 4) +
           ", p-method = " + to_string(report.provenance.p_method_requested) +
           ", tau rounding = " +
           (report.provenance.tau_rounding ? std::to_string(*report.provenance.tau_rounding) +
                                                 " decimals"
                                           : std::string("none")) +
           "\n\n";

    // Training columns in registry order, but only datasets that actually
    // appear as trains in the tau table.
    std::vector<std::string> trains;
    for (const auto& d : report.provenance.datasets) {
        bool used = false;
        for (const auto& e : report.tau_table) used |= (e.key.train == d.id);
        if (used) trains.push_back(d.id);
    }

    for (const auto& g : report.groups) {
        out += "== metric " + g.metric + " ==\n\n";
        out += "tau by test pair (rows) and training dataset (columns):\n";
        out += detail::render_matrix(report, g.metric, trains, false);
        out += '\n';

        for (const auto& [metric, s] : report.summaries) {
            if (metric != g.metric) continue;
            out += "  reference group  (n = " + std::to_string(g.reference.size() ) +
                   "): mean tau " + format_fixed(s.reference.mean, 4) + ", std " +
                   format_fixed(s.reference.stddev, 3) + "\n";
            out += "  inspecting group (m = " + std::to_string(g.inspecting.size()) +
                   "): mean tau " + format_fixed(s.inspecting.mean, 4) + ", std " +
                   format_fixed(s.inspecting.stddev, 3) + "\n";
        }
        for (const auto& [metric, k] : report.ks) {
            if (metric != g.metric) continue;
            out += "  KS: D = " + format_fixed(k.d_statistic, 4) +
                   ", threshold = " + format_fixed(k.threshold, 4) +
                   ", p = " + format_fixed(k.p_value, 4) + " (" + to_string(k.p_method_used) +
                   ")\n";
            out += std::string("  decision: ") + to_string(k.decision) + " (threshold rule: " +
                   to_string(k.threshold_decision) + ")";
            if (!k.rules_agree) out += "  << decision rules disagree";
            out += '\n';
        }
        for (const auto& [metric, v] : report.verdicts) {
            if (metric != g.metric) continue;
            out += std::string("  verdict: ranking distributions ") + pra::to_string(v) + "\n";
        }
        out += '\n';
        out += "crossings (discordant algorithm pairs):\n";
        out += detail::render_matrix(report, g.metric, trains, true);
        out += '\n';
    }

    out += "datasets:\n";
    for (const auto& d : report.provenance.datasets) {
        out += "  " + d.id + std::string(d.id.size() < 16 ? 16 - d.id.size() : 1, ' ') +
               pra::to_string(d.realm) + std::string(d.realm == Realm::synthetic ? 3 : 2, ' ') +
               pra::to_string(d.role) + (d.train_only ? "  (train only)" : "") + "\n";
    }
    return out;
}

/// CSV form of the report: the full tau table, one row per (train, pair,
/// metric), with counts. Group membership is derivable from the dataset
/// roles; the scalar KS numbers live in the json and text forms.
inline std::string emit_report_csv(const PRAReport& report) {
    std::string out =
        "train_dataset,test_a,test_b,metric,tau,n_concordant,n_discordant,n0,n1,n2,n_xy_tied\n";
    for (const auto& e : report.tau_table) {
        out += e.key.train + ',' + e.key.test_a + ',' + e.key.test_b + ',' + e.key.metric + ',';
        out += format_fixed(e.record.tau, 6) + ',';
        out += std::to_string(e.record.n_concordant) + ',';
        out += std::to_string(e.record.n_discordant) + ',';
        out += std::to_string(e.record.n0) + ',';
        out += std::to_string(e.record.n1) + ',';
        out += std::to_string(e.record.n2) + ',';
        out += std::to_string(e.record.n_xy_tied) + '\n';
    }
    return out;
}

inline std::string emit_report(const PRAReport& report, Format format) {
    switch (format) {
    case Format::json: return report_to_json(report).dump(2) + "\n";
    case Format::csv: return emit_report_csv(report);
    default: return emit_report_text(report);
    }
}

/// Slope-graph data for one (train, metric) table: per algorithm, the score
/// and rank on every admissible test dataset. Rank 1 is the best score;
/// tied scores share the smallest rank of their run. Crossings reported by
/// the pipeline are exactly the line crossings a plot of these rank columns
/// would show between any two tests.
inline std::string emit_plot_data(const ResultCorpus& corpus, const DatasetRegistry& registry,
                                  const std::string& train, const std::string& metric) {
    if (!registry.find(train)) throw UnknownDataset("dataset '" + train + "' is not registered");
    auto t = corpus.tables.find(train);
    if (t == corpus.tables.end())
        throw UnknownDataset("no results for training dataset '" + train + "'");
    auto m = t->second.find(metric);
    if (m == t->second.end())
        throw UnknownDataset("no metric '" + metric + "' under training dataset '" + train + "'");

    std::vector<std::string> tests;
    for (const auto& [test, scores] : m->second) {
        (void)scores;
        if (test == train) continue;
        const auto* d = registry.find(test);
        if (!d) throw UnknownDataset("test dataset '" + test + "' is not registered");
        if (d->train_only) continue;
        tests.push_back(test);
    }
    std::sort(tests.begin(), tests.end());

    std::string out = "algorithm";
    for (const auto& test : tests) out += ",score:" + test + ",rank:" + test;
    out += '\n';
    for (std::size_t i = 0; i < corpus.algorithms.size(); ++i) {
        out += corpus.algorithms[i];
        for (const auto& test : tests) {
            const auto& scores = m->second.at(test);
            int rank = 1;
            for (const auto& other : scores)
                if (scores[i] < other) ++rank;
            out += ',' + scores[i].str() + ',' + std::to_string(rank);
        }
        out += '\n';
    }
    return out;
}

} // namespace pra::io
