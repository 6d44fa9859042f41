#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "corpus.hpp"
#include "errors.hpp"
#include "kendall.hpp"
#include "ks.hpp"
#include "numfmt.hpp"
#include "registry.hpp"
#include "summary.hpp"

namespace pra {

/// Identity of one correlation cell: the rankings of `test_a` and `test_b`
/// under models trained on `train`, scored by `metric`. The two test ids are
/// stored in lexicographic order so that the pair is unordered by
/// construction; {A,B} and {B,A} are the same key.
struct PairKey {
    std::string train;
    std::string test_a;
    std::string test_b;
    std::string metric;

    friend auto operator<=>(const PairKey&, const PairKey&) = default;

    std::string label() const {
        return train + ": (" + test_a + ", " + test_b + ") [" + metric + "]";
    }
};

inline PairKey make_pair_key(std::string train, std::string x, std::string y,
                             std::string metric) {
    if (x == y)
        throw InvalidSample("pair must consist of two distinct test datasets, got '" + x +
                            "' twice");
    if (y < x) std::swap(x, y);
    return PairKey{std::move(train), std::move(x), std::move(y), std::move(metric)};
}

struct TauEntry {
    PairKey key;
    stats::TauRecord record;
};

/// All admissible (train, test pair, metric) combinations in canonical order:
/// metrics by corpus order, training datasets by registry order, pairs
/// lexicographic. A pair is admissible when both members are registered,
/// neither is the training dataset itself, and neither is train_only.
inline std::vector<PairKey> enumerate_pairs(const ResultCorpus& corpus,
                                            const DatasetRegistry& registry) {
    for (const auto& [train, rest] : corpus.tables) {
        (void)rest;
        if (!registry.find(train))
            throw UnknownDataset("training dataset '" + train + "' is not registered");
    }

    std::vector<PairKey> keys;
    for (const auto& metric : corpus.metrics) {
        for (const auto& descriptor : registry.entries()) {
            const auto& train = descriptor.id;
            auto t = corpus.tables.find(train);
            if (t == corpus.tables.end()) continue;
            auto m = t->second.find(metric);
            if (m == t->second.end()) continue;

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
            for (std::size_t i = 0; i + 1 < tests.size(); ++i)
                for (std::size_t j = i + 1; j < tests.size(); ++j)
                    keys.push_back(PairKey{train, tests[i], tests[j], metric});
        }
    }
    return keys;
}

/// Kendall tau-b for every key, in the order given. A degenerate score
/// vector is a real data problem, so the error is re-raised with the cell
/// that triggered it spelled out.
inline std::vector<TauEntry> compute_taus(const ResultCorpus& corpus,
                                          const std::vector<PairKey>& keys) {
    std::vector<TauEntry> out;
    out.reserve(keys.size());
    for (const auto& key : keys) {
        const auto& x = corpus.scores(key.train, key.test_a, key.metric);
        const auto& y = corpus.scores(key.train, key.test_b, key.metric);
        try {
            out.push_back({key, stats::kendall_tau_b(x, y)});
        } catch (const DegenerateVector& e) {
            throw DegenerateVector(std::string(e.what()) + " (at " + key.label() + ")");
        }
    }
    return out;
}

struct GroupEntry {
    PairKey key;
    double tau = 0.0;
};

/// Per-metric split of the tau table into the two comparison groups.
struct GroupedSamples {
    std::string metric;
    std::vector<GroupEntry> reference;  // both members are reference datasets
    std::vector<GroupEntry> inspecting; // one member reference, one inspecting
};

/// Assign each tau to a group by the role tags of its two test datasets.
/// Pairs involving a `neither` dataset are dropped; two inspecting datasets
/// would also land nowhere (the design has exactly one inspected world, but
/// nothing downstream depends on that count). Throws EmptyGroup when a
/// metric ends up with an empty side, because a one-sided KS comparison is
/// meaningless.
inline std::vector<GroupedSamples> group_taus(const std::vector<TauEntry>& entries,
                                              const DatasetRegistry& registry) {
    std::vector<GroupedSamples> groups;
    auto slot = [&groups](const std::string& metric) -> GroupedSamples& {
        for (auto& g : groups)
            if (g.metric == metric) return g;
        groups.push_back(GroupedSamples{metric, {}, {}});
        return groups.back();
    };

    for (const auto& entry : entries) {
        const auto* a = registry.find(entry.key.test_a);
        const auto* b = registry.find(entry.key.test_b);
        if (!a || !b)
            throw UnknownDataset("pair member missing from registry at " + entry.key.label());
        auto& g = slot(entry.key.metric);
        const int refs = (a->role == RoleTag::reference) + (b->role == RoleTag::reference);
        const int insp = (a->role == RoleTag::inspecting) + (b->role == RoleTag::inspecting);
        if (refs == 2)
            g.reference.push_back({entry.key, entry.record.tau});
        else if (refs == 1 && insp == 1)
            g.inspecting.push_back({entry.key, entry.record.tau});
    }

    for (const auto& g : groups) {
        if (g.reference.empty())
            throw EmptyGroup("metric '" + g.metric + "': reference group is empty");
        if (g.inspecting.empty())
            throw EmptyGroup("metric '" + g.metric + "': inspecting group is empty");
    }
    return groups;
}

/// Number of discordant pairs ("crossings") between two test rankings: how
/// many algorithm pairs the two benchmarks order oppositely. The geometric
/// reading is line crossings in a slope graph of the two rankings.
inline std::int64_t crossing_count(const ResultCorpus& corpus, const DatasetRegistry& registry,
                                   const std::string& train, const std::string& test_a,
                                   const std::string& test_b, const std::string& metric) {
    for (const auto* id : {&train, &test_a, &test_b}) {
        const auto* d = registry.find(*id);
        if (!d) throw UnknownDataset("dataset '" + *id + "' is not registered");
    }
    const auto key = make_pair_key(train, test_a, test_b, metric);
    const auto& x = corpus.scores(key.train, key.test_a, key.metric);
    const auto& y = corpus.scores(key.train, key.test_b, key.metric);
    return stats::kendall_tau_b(x, y).n_discordant;
}

struct PRAConfig {
    double alpha = 0.05;
    stats::PMethod p_method = stats::PMethod::auto_select;
    std::optional<int> tau_rounding; // decimals to round taus to before grouping
    std::size_t exact_budget = 10'000;
    std::uint64_t mc_trials = stats::kDefaultMcTrials;
    std::uint64_t mc_seed = stats::kDefaultMcSeed;
};

enum class Verdict { identical, different };

inline const char* to_string(Verdict v) {
    return v == Verdict::identical ? "identical" : "different";
}

struct MetricSummaries {
    stats::Summary reference;
    stats::Summary inspecting;
};

struct Provenance {
    std::string tool = "pra";
    std::string version;
    std::vector<std::string> sources; // input files, or "fixture"
    double alpha = 0.05;
    stats::PMethod p_method_requested = stats::PMethod::auto_select;
    std::optional<int> tau_rounding;
    std::size_t exact_budget = 10'000;
    std::uint64_t mc_trials = stats::kDefaultMcTrials;
    std::uint64_t mc_seed = stats::kDefaultMcSeed;
    std::vector<std::string> metrics;
    std::vector<DatasetDescriptor> datasets;
};

/// Complete output of one analysis run. Vectors, not maps: each section is
/// already in canonical order and must stay that way through serialization,
/// so the report is byte-identical across runs on the same input.
struct PRAReport {
    std::vector<TauEntry> tau_table;
    std::vector<GroupedSamples> groups;
    std::vector<std::pair<std::string, MetricSummaries>> summaries; // by metric
    std::vector<std::pair<std::string, stats::KSResult>> ks;        // by metric
    std::vector<std::pair<std::string, Verdict>> verdicts;          // by metric
    std::vector<std::pair<PairKey, std::int64_t>> crossings;        // diagnostics
    Provenance provenance;
};

inline constexpr const char* kVersion = "1.0.0";

/// The whole pipeline: enumerate admissible pairs, correlate, optionally
/// round the taus (to study how much printed-precision tables distort the
/// comparison), group by role, summarize, and KS-test reference against
/// inspecting per metric. The verdict follows the p-value rule; the fixed
/// threshold rule travels along in each KSResult for cross-checking.
inline PRAReport run_pra(const ResultCorpus& corpus, const DatasetRegistry& registry,
                         const PRAConfig& config = {}) {
    if (!(config.alpha > 0.0) || !(config.alpha < 1.0))
        throw InvalidAlpha("run_pra: alpha must lie in (0, 1), got " +
                           std::to_string(config.alpha));

    PRAReport report;
    const auto keys = enumerate_pairs(corpus, registry);
    report.tau_table = compute_taus(corpus, keys);

    auto grouped = report.tau_table;
    if (config.tau_rounding)
        for (auto& entry : grouped)
            entry.record.tau = round_to(entry.record.tau, *config.tau_rounding);
    report.groups = group_taus(grouped, registry);
    if (report.groups.empty())
        throw EmptyGroup("no admissible test-dataset pairs to analyze");

    stats::KSOptions ks_options;
    ks_options.alpha = config.alpha;
    ks_options.p_method = config.p_method;
    ks_options.exact_budget = config.exact_budget;
    ks_options.mc_trials = config.mc_trials;
    ks_options.mc_seed = config.mc_seed;

    for (const auto& g : report.groups) {
        std::vector<double> ref, insp;
        for (const auto& e : g.reference) ref.push_back(e.tau);
        for (const auto& e : g.inspecting) insp.push_back(e.tau);

        MetricSummaries s;
        s.reference = stats::summarize(ref);
        s.inspecting = stats::summarize(insp);
        report.summaries.emplace_back(g.metric, s);

        const auto ks = stats::run_ks_test(ref, insp, ks_options);
        report.ks.emplace_back(g.metric, ks);
        report.verdicts.emplace_back(g.metric, ks.decision == stats::Decision::accept_null
                                                   ? Verdict::identical
                                                   : Verdict::different);
    }

    for (const auto& entry : report.tau_table)
        report.crossings.emplace_back(entry.key, entry.record.n_discordant);

    report.provenance.version = kVersion;
    report.provenance.alpha = config.alpha;
    report.provenance.p_method_requested = config.p_method;
    report.provenance.tau_rounding = config.tau_rounding;
    report.provenance.exact_budget = config.exact_budget;
    report.provenance.mc_trials = config.mc_trials;
    report.provenance.mc_seed = config.mc_seed;
    report.provenance.metrics = corpus.metrics;
    report.provenance.datasets = registry.entries();
    return report;
}

} // namespace pra
