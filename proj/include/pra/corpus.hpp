#pragma once

#include <map>
#include <string>
#include <vector>

#include "decimal.hpp"
#include "errors.hpp"

namespace pra {

/// All benchmark results, organized for the pipeline: for each training
/// dataset and metric, a table mapping test dataset -> scores, one score per
/// algorithm in `algorithms` order. Every ScoreVector in a complete corpus
/// has exactly algorithms.size() entries; build_corpus() in results_csv.hpp
/// enforces that, and load_fixture() constructs it that way.
struct ResultCorpus {
    std::vector<std::string> algorithms; // fixed order, defines vector index
    std::vector<std::string> metrics;    // fixed order (config / first appearance)

    // train -> metric -> test -> scores
    std::map<std::string, std::map<std::string, std::map<std::string, ScoreVector>>> tables;

    const ScoreVector& scores(const std::string& train, const std::string& test,
                              const std::string& metric) const {
        auto t = tables.find(train);
        if (t == tables.end())
            throw UnknownDataset("no results for training dataset '" + train + "'");
        auto m = t->second.find(metric);
        if (m == t->second.end())
            throw UnknownDataset("no metric '" + metric + "' under training dataset '" +
                                 train + "'");
        auto s = m->second.find(test);
        if (s == m->second.end())
            throw UnknownDataset("no results for test dataset '" + test +
                                 "' under training dataset '" + train + "'");
        return s->second;
    }

    std::size_t algorithm_index(const std::string& algorithm) const {
        for (std::size_t i = 0; i < algorithms.size(); ++i)
            if (algorithms[i] == algorithm) return i;
        throw UnknownDataset("unknown algorithm '" + algorithm + "'");
    }

    Decimal score(const std::string& train, const std::string& test,
                  const std::string& metric, const std::string& algorithm) const {
        return scores(train, test, metric)[algorithm_index(algorithm)];
    }
};

} // namespace pra
