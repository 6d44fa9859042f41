// pra: pairwise ranking analysis over benchmark result tables.
//
// Exit codes: 0 success (or gate pass), 1 gate fail, 2 input error.
// Reports go to stdout (or --out); diagnostics go to stderr.

#include <pra/pra.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace {

using namespace pra;

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// Everything the user asked for lands on stdout unless --out names a file.
/// Only the report is redirected; diagnostics always stay on stderr.
void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + out_path);
    out << text;
    if (!out) throw Error("write failed: " + out_path);
}

/// Raw sample files: whitespace-separated decimal numbers, nothing else.
std::vector<double> read_sample_file(const std::string& path) {
    const std::string text = read_text_file(path);
    std::vector<double> values;
    std::vector<std::string> issues;
    std::istringstream in(text);
    std::string token;
    std::size_t index = 0;
    while (in >> token) {
        ++index;
        try {
            std::size_t used = 0;
            const double v = std::stod(token, &used);
            if (used != token.size())
                throw std::invalid_argument("trailing characters");
            if (!std::isfinite(v))
                throw std::invalid_argument("not finite");
            values.push_back(v);
        } catch (const std::exception&) {
            issues.push_back(path + ": value " + std::to_string(index) + ": not a number: '" +
                             token + "'");
        }
    }
    if (values.empty() && issues.empty()) issues.push_back(path + ": no numeric values");
    if (!issues.empty()) throw ValidationError(issues);
    return values;
}

struct InputFlags {
    bool fixture = false;
    std::vector<std::string> results;
    std::string config;
};

void add_input_flags(CLI::App* cmd, InputFlags& in) {
    cmd->add_flag("--fixture", in.fixture, "use the built-in re-identification corpus");
    cmd->add_option("--results", in.results, "long-form results CSV (repeatable)");
    cmd->add_option("--config", in.config, "dataset-role configuration JSON");
}

struct Loaded {
    ResultCorpus corpus;
    DatasetRegistry registry;
    PRAConfig config;
    std::vector<std::string> sources;
};

/// Merge any number of results files into one corpus. Per-file parse issues
/// are prefixed with the file name; duplicates are also caught across files,
/// which the per-file parser cannot see.
io::ResultsFile merge_results(const std::vector<std::string>& paths,
                              std::vector<std::string>& issues) {
    io::ResultsFile merged;
    std::set<std::tuple<std::string, std::string, std::string, std::string>> seen;
    for (const auto& path : paths) {
        io::ResultsFile one;
        try {
            one = io::parse_results(read_text_file(path));
        } catch (const ValidationError& e) {
            for (const auto& issue : e.issues) issues.push_back(path + ": " + issue);
            continue;
        }
        for (auto& row : one.rows) {
            if (!seen.insert({row.train, row.test, row.metric, row.algorithm})
                     .second) {
                issues.push_back(path + ": duplicate entry across files: " + row.train +
                                 "," + row.test + "," + row.metric + "," + row.algorithm);
                continue;
            }
            merged.rows.push_back(std::move(row));
        }
    }
    return merged;
}

Loaded load_inputs(const InputFlags& in) {
    if (in.fixture && (!in.results.empty() || !in.config.empty()))
        throw ValidationError({"--fixture cannot be combined with --results or --config"});

    Loaded loaded;
    if (in.fixture) {
        auto [corpus, registry] = load_fixture();
        loaded.corpus = std::move(corpus);
        loaded.registry = std::move(registry);
        loaded.sources = {"fixture"};
        return loaded;
    }
    if (in.config.empty())
        throw ValidationError({"a --config file is required unless --fixture is given"});
    if (in.results.empty())
        throw ValidationError({"at least one --results file is required unless --fixture is given"});

    const io::ConfigFile cfg = io::parse_config(read_text_file(in.config));

    std::vector<std::string> issues;
    const io::ResultsFile merged = merge_results(in.results, issues);
    if (!issues.empty()) throw ValidationError(issues);

    loaded.corpus = io::build_corpus(merged, cfg.metrics);
    loaded.registry = cfg.registry();
    loaded.config = cfg.pra_config();
    loaded.sources = in.results;
    return loaded;
}

struct Overrides {
    double alpha = -1.0; // negative = keep configured value
    std::string p_method;
    int round_taus = -1;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::uint64_t trials = 0;
    bool trials_set = false;
};

void apply_overrides(PRAConfig& config, const Overrides& o) {
    if (o.alpha >= 0.0) config.alpha = o.alpha;
    if (!o.p_method.empty()) {
        const auto m = io::pmethod_from_string(o.p_method);
        if (!m)
            throw ValidationError({"--p-method must be auto, exact, asymptotic or montecarlo; got '" +
                                   o.p_method + "'"});
        config.p_method = *m;
    }
    if (o.round_taus >= 0) {
        if (o.round_taus > 9) throw ValidationError({"--round-taus must lie in [0, 9]"});
        config.tau_rounding = o.round_taus;
    }
    if (o.seed_set) config.mc_seed = o.seed;
    if (o.trials_set) config.mc_trials = o.trials;
}

io::Format parse_format(const std::string& name) {
    if (name.empty() || name == "text") return io::Format::text;
    if (name == "json") return io::Format::json;
    if (name == "csv") return io::Format::csv;
    throw ValidationError({"--format must be text, json or csv; got '" + name + "'"});
}

int cmd_analyze(const InputFlags& in, const Overrides& o, const std::string& format,
                bool gate, const std::string& out) {
    Loaded loaded = load_inputs(in);
    apply_overrides(loaded.config, o);
    const io::Format fmt = parse_format(format);

    PRAReport report = run_pra(loaded.corpus, loaded.registry, loaded.config);
    report.provenance.sources = loaded.sources;
    write_output(out, io::emit_report(report, fmt));

    if (!gate) return 0;
    for (const auto& [metric, verdict] : report.verdicts)
        if (verdict != Verdict::identical) return 1;
    return 0;
}

int cmd_tau(const InputFlags& in, const std::string& metric, int round_taus,
            const std::string& format, const std::string& out) {
    Loaded loaded = load_inputs(in);
    if (round_taus > 9) throw ValidationError({"--round-taus must lie in [0, 9]"});
    const io::Format fmt = parse_format(format);

    const auto keys = enumerate_pairs(loaded.corpus, loaded.registry);
    auto entries = compute_taus(loaded.corpus, keys);

    if (!metric.empty()) {
        bool known = false;
        for (const auto& m : loaded.corpus.metrics) known |= (m == metric);
        if (!known) throw ValidationError({"metric '" + metric + "' is not in the corpus"});
        std::erase_if(entries, [&](const TauEntry& e) { return e.key.metric != metric; });
    }
    if (round_taus >= 0)
        for (auto& e : entries) e.record.tau = round_to(e.record.tau, round_taus);
    const int digits = round_taus >= 0 ? round_taus : 6;

    std::string text;
    if (fmt == io::Format::csv) {
        text = "train_dataset,test_a,test_b,metric,tau\n";
        for (const auto& e : entries)
            text += e.key.train + ',' + e.key.test_a + ',' + e.key.test_b + ',' + e.key.metric +
                    ',' + format_fixed(e.record.tau, digits) + '\n';
    } else if (fmt == io::Format::json) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& e : entries) {
            nlohmann::ordered_json row;
            row["train"] = e.key.train;
            row["test_a"] = e.key.test_a;
            row["test_b"] = e.key.test_b;
            row["metric"] = e.key.metric;
            row["tau"] = io::json_num(e.record.tau);
            rows.push_back(std::move(row));
        }
        text = rows.dump(2) + "\n";
    } else if (entries.empty()) {
        text = "no admissible test pairs\n";
    } else {
        // Reuse the report renderer: it only looks at the tau table and the
        // dataset order.
        PRAReport view;
        view.tau_table = entries;
        std::vector<std::string> trains;
        for (const auto& d : loaded.registry.entries()) {
            bool used = false;
            for (const auto& e : entries) used |= (e.key.train == d.id);
            if (used) trains.push_back(d.id);
        }
        std::vector<std::string> metrics;
        for (const auto& e : entries)
            if (std::find(metrics.begin(), metrics.end(), e.key.metric) == metrics.end())
                metrics.push_back(e.key.metric);
        for (const auto& m : metrics) {
            text += "== metric " + m + " ==\n\n";
            text += "tau by test pair (rows) and training dataset (columns):\n";
            text += io::detail::render_matrix(view, m, trains, false);
            text += '\n';
        }
    }
    write_output(out, text);
    return 0;
}

int cmd_ks(const std::string& file_a, const std::string& file_b, const Overrides& o,
           const std::string& format, const std::string& out) {
    const auto a = read_sample_file(file_a);
    const auto b = read_sample_file(file_b);

    PRAConfig config;
    apply_overrides(config, o);
    stats::KSOptions options;
    options.alpha = config.alpha;
    options.p_method = config.p_method;
    options.exact_budget = config.exact_budget;
    options.mc_trials = config.mc_trials;
    options.mc_seed = config.mc_seed;
    const stats::KSResult r = stats::run_ks_test(a, b, options);

    const io::Format fmt = parse_format(format);
    std::string text;
    if (fmt == io::Format::json) {
        nlohmann::ordered_json j;
        j["d_statistic"] = io::json_num(r.d_statistic);
        j["n"] = r.n;
        j["m"] = r.m;
        j["alpha"] = io::json_num(r.alpha);
        j["threshold"] = io::json_num(r.threshold);
        j["p_value"] = io::json_num(r.p_value);
        j["p_method"] = io::to_string(r.p_method_used);
        j["decision"] = io::to_string(r.decision);
        j["threshold_decision"] = io::to_string(r.threshold_decision);
        j["rules_agree"] = r.rules_agree;
        text = j.dump(2) + "\n";
    } else {
        text += "n = " + std::to_string(r.n) + "\n";
        text += "m = " + std::to_string(r.m) + "\n";
        text += "D = " + format_fixed(r.d_statistic, 6) + "\n";
        text += "alpha = " + format_fixed(r.alpha, 6) + "\n";
        text += "threshold = " + format_fixed(r.threshold, 6) + "\n";
        text += "p = " + format_fixed(r.p_value, 6) + "\n";
        text += std::string("p-method = ") + io::to_string(r.p_method_used) + "\n";
        text += std::string("decision = ") + io::to_string(r.decision) + "\n";
        text += std::string("threshold-decision = ") + io::to_string(r.threshold_decision) + "\n";
    }
    write_output(out, text);
    return 0;
}

int cmd_plot_data(const InputFlags& in, const std::string& train, const std::string& metric,
                  const std::string& out) {
    Loaded loaded = load_inputs(in);
    write_output(out, io::emit_plot_data(loaded.corpus, loaded.registry, train, metric));
    return 0;
}

int cmd_validate(const std::vector<std::string>& results, const std::string& config_path) {
    if (results.empty() && config_path.empty())
        throw ValidationError({"nothing to validate: give --results and/or --config"});

    std::vector<std::string> issues;
    io::ConfigFile cfg;
    bool have_config = false;
    if (!config_path.empty()) {
        try {
            cfg = io::parse_config(read_text_file(config_path));
            have_config = true;
        } catch (const ValidationError& e) {
            for (const auto& issue : e.issues) issues.push_back(config_path + ": " + issue);
        } catch (const Error& e) {
            issues.push_back(e.what());
        }
    }

    std::size_t row_count = 0;
    if (!results.empty()) {
        const io::ResultsFile merged = merge_results(results, issues);
        row_count = merged.rows.size();
        if (issues.empty()) {
            try {
                const auto corpus =
                    io::build_corpus(merged, have_config ? cfg.metrics : std::vector<std::string>{});
                if (have_config) {
                    const auto registry = cfg.registry();
                    for (const auto& [train, by_metric] : corpus.tables) {
                        if (!registry.find(train))
                            issues.push_back("training dataset '" + train +
                                             "' is not in the config");
                        for (const auto& [metric, by_test] : by_metric)
                            for (const auto& [test, scores] : by_test)
                                if (!registry.find(test))
                                    issues.push_back("test dataset '" + test +
                                                     "' is not in the config");
                    }
                    std::sort(issues.begin(), issues.end());
                    issues.erase(std::unique(issues.begin(), issues.end()), issues.end());
                }
            } catch (const ValidationError& e) {
                for (const auto& issue : e.issues) issues.push_back(issue);
            }
        }
    }

    if (!issues.empty()) {
        for (const auto& issue : issues) std::cerr << issue << '\n';
        return 2;
    }
    std::string ok = "OK";
    if (!results.empty()) ok += ": " + std::to_string(row_count) + " rows";
    if (have_config) ok += (results.empty() ? ": " : ", ") +
                           std::to_string(cfg.datasets.size()) + " datasets, " +
                           std::to_string(cfg.metrics.size()) + " metrics";
    std::cout << ok << '\n';
    return 0;
}

int cmd_mc_oracle(const std::string& file_a, const std::string& file_b, const InputFlags& in,
                  const std::string& metric, std::uint64_t trials, std::uint64_t seed,
                  const std::string& out) {
    std::vector<double> a, b;
    if (in.fixture) {
        if (!file_a.empty() || !file_b.empty())
            throw ValidationError({"--fixture replaces the two sample files"});
        if (metric.empty())
            throw ValidationError({"--fixture needs --metric to pick the tau groups"});
        Loaded loaded = load_inputs(in);
        const auto keys = enumerate_pairs(loaded.corpus, loaded.registry);
        const auto groups = group_taus(compute_taus(loaded.corpus, keys), loaded.registry);
        bool found = false;
        for (const auto& g : groups) {
            if (g.metric != metric) continue;
            for (const auto& e : g.reference) a.push_back(e.tau);
            for (const auto& e : g.inspecting) b.push_back(e.tau);
            found = true;
        }
        if (!found) throw ValidationError({"metric '" + metric + "' is not in the corpus"});
    } else {
        if (file_a.empty() || file_b.empty())
            throw ValidationError({"mc-oracle needs two sample files (or --fixture with --metric)"});
        a = read_sample_file(file_a);
        b = read_sample_file(file_b);
    }

    const double d = stats::ks_statistic(a, b);
    const double estimate = stats::ks_pvalue_montecarlo(a, b, trials, seed);
    const double sigma = std::sqrt(estimate * (1.0 - estimate) / static_cast<double>(trials));

    std::string text;
    text += "n = " + std::to_string(a.size()) + "\n";
    text += "m = " + std::to_string(b.size()) + "\n";
    text += "D = " + format_fixed(d, 6) + "\n";
    text += "trials = " + std::to_string(trials) + "\n";
    text += "seed = " + std::to_string(seed) + "\n";
    text += "estimate = " + format_fixed(estimate, 6) + "\n";
    text += "sigma = " + format_fixed(sigma, 6) + "\n";
    text += "interval-3sigma = [" + format_fixed(estimate - 3.0 * sigma, 6) + ", " +
            format_fixed(estimate + 3.0 * sigma, 6) + "]\n";
    write_output(out, text);
    return 0;
}

int cmd_fixture(const std::string& format, const std::string& out) {
    const io::Format fmt = parse_format(format);
    if (fmt == io::Format::json) {
        // The json form is the matching analysis config for the embedded
        // corpus; csv (default) is the corpus itself in results form.
        io::ConfigFile cfg;
        cfg.datasets = fixture_registry().entries();
        cfg.metrics = {"R1", "mAP"};
        write_output(out, io::serialize_config(cfg));
    } else {
        write_output(out, io::serialize_results(io::corpus_to_rows(fixture_corpus())));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pairwise ranking analysis: rank correlations between benchmark "
                 "algorithm rankings, grouped by dataset role and compared with a "
                 "two-sample Kolmogorov-Smirnov test"};
    app.require_subcommand(1);

    InputFlags analyze_in, tau_in, plot_in, oracle_in;
    Overrides analyze_o, ks_o;
    std::string format_analyze, format_tau, format_ks, format_fixture;
    std::string out_analyze, out_tau, out_ks, out_plot, out_oracle, out_fixture;
    bool gate = false;

    auto* analyze = app.add_subcommand("analyze", "run the full analysis and print a report");
    add_input_flags(analyze, analyze_in);
    analyze->add_option("--alpha", analyze_o.alpha, "significance level in (0, 1)");
    analyze->add_option("--p-method", analyze_o.p_method, "auto|exact|asymptotic|montecarlo");
    analyze->add_option("--round-taus", analyze_o.round_taus,
                        "round taus to this many decimals before grouping");
    analyze->add_option("--seed", analyze_o.seed, "Monte Carlo seed");
    analyze->add_option("--trials", analyze_o.trials, "Monte Carlo trials (>= 1000)");
    analyze->add_option("--format", format_analyze, "text|json|csv");
    analyze->add_flag("--gate", gate, "exit 1 unless every metric verdict is 'identical'");
    analyze->add_option("--out", out_analyze, "write the report to this file");

    std::string tau_metric;
    int tau_round = -1;
    auto* tau = app.add_subcommand("tau", "compute the tau table only");
    add_input_flags(tau, tau_in);
    tau->add_option("--metric", tau_metric, "restrict to one metric");
    tau->add_option("--round-taus", tau_round, "round taus to this many decimals");
    tau->add_option("--format", format_tau, "text|json|csv");
    tau->add_option("--out", out_tau, "write the table to this file");

    std::string ks_a, ks_b;
    auto* ks = app.add_subcommand("ks", "two-sample KS test on two raw sample files");
    ks->add_option("sample_a", ks_a, "first sample file (whitespace-separated numbers)")
        ->required();
    ks->add_option("sample_b", ks_b, "second sample file")->required();
    ks->add_option("--alpha", ks_o.alpha, "significance level in (0, 1)");
    ks->add_option("--p-method", ks_o.p_method, "auto|exact|asymptotic|montecarlo");
    ks->add_option("--seed", ks_o.seed, "Monte Carlo seed");
    ks->add_option("--trials", ks_o.trials, "Monte Carlo trials (>= 1000)");
    ks->add_option("--format", format_ks, "text|json");
    ks->add_option("--out", out_ks, "write the result to this file");

    std::string plot_train, plot_metric;
    auto* plot = app.add_subcommand("plot-data",
                                    "scores and ranks per algorithm for one training dataset");
    add_input_flags(plot, plot_in);
    plot->add_option("--train", plot_train, "training dataset")->required();
    plot->add_option("--metric", plot_metric, "metric")->required();
    plot->add_option("--out", out_plot, "write the table to this file");

    std::vector<std::string> validate_results;
    std::string validate_config;
    auto* validate = app.add_subcommand("validate", "check inputs and report every issue");
    validate->add_option("--results", validate_results, "results CSV (repeatable)");
    validate->add_option("--config", validate_config, "configuration JSON");

    std::string oracle_a, oracle_b, oracle_metric;
    std::uint64_t oracle_trials = stats::kDefaultMcTrials;
    std::uint64_t oracle_seed = stats::kDefaultMcSeed;
    auto* oracle = app.add_subcommand(
        "mc-oracle", "Monte Carlo permutation estimate of the KS p-value, with 3-sigma interval");
    oracle->add_option("sample_a", oracle_a, "first sample file");
    oracle->add_option("sample_b", oracle_b, "second sample file");
    oracle->add_flag("--fixture", oracle_in.fixture,
                     "use the built-in corpus tau groups as the two samples");
    oracle->add_option("--metric", oracle_metric, "metric for --fixture");
    oracle->add_option("--trials", oracle_trials, "Monte Carlo trials (>= 1000)");
    oracle->add_option("--seed", oracle_seed, "Monte Carlo seed");
    oracle->add_option("--out", out_oracle, "write the estimate to this file");

    auto* fixture = app.add_subcommand("fixture", "dump the built-in corpus");
    fixture->add_option("--format", format_fixture,
                        "csv (results rows, default) or json (matching config)");
    fixture->add_option("--out", out_fixture, "write the dump to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    // count() is the only reliable "was it given" signal: 0 is a legal seed.
    analyze_o.seed_set = analyze->count("--seed") > 0;
    analyze_o.trials_set = analyze->count("--trials") > 0;
    ks_o.seed_set = ks->count("--seed") > 0;
    ks_o.trials_set = ks->count("--trials") > 0;

    try {
        if (app.got_subcommand(analyze))
            return cmd_analyze(analyze_in, analyze_o, format_analyze, gate, out_analyze);
        if (app.got_subcommand(tau))
            return cmd_tau(tau_in, tau_metric, tau_round, format_tau, out_tau);
        if (app.got_subcommand(ks)) return cmd_ks(ks_a, ks_b, ks_o, format_ks, out_ks);
        if (app.got_subcommand(plot))
            return cmd_plot_data(plot_in, plot_train, plot_metric, out_plot);
        if (app.got_subcommand(validate)) return cmd_validate(validate_results, validate_config);
        if (app.got_subcommand(oracle))
            return cmd_mc_oracle(oracle_a, oracle_b, oracle_in, oracle_metric, oracle_trials,
                                 oracle_seed, out_oracle);
        if (app.got_subcommand(fixture)) return cmd_fixture(format_fixture, out_fixture);
    } catch (const ValidationError& e) {
        for (const auto& issue : e.issues) std::cerr << "error: " << issue << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
