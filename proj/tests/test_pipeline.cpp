#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "pra/fixture.hpp"
#include "pra/pipeline.hpp"
#include "pra/report_io.hpp"

using namespace pra;
using namespace pra::stats;

namespace {

// Tiny synthetic corpus: two training-only sources, three reference tests
// with identical orderings, one inspected test with the reverse ordering.
std::pair<ResultCorpus, DatasetRegistry> adversarial() {
    DatasetRegistry registry;
    registry.add({"RefA", Realm::real_world, false, RoleTag::reference});
    registry.add({"RefB", Realm::real_world, false, RoleTag::reference});
    registry.add({"RefC", Realm::real_world, false, RoleTag::reference});
    registry.add({"TrainX", Realm::synthetic, true, RoleTag::neither});
    registry.add({"TrainY", Realm::synthetic, true, RoleTag::neither});
    registry.add({"Probe", Realm::synthetic, false, RoleTag::inspecting});

    ResultCorpus corpus;
    corpus.algorithms = {"a1", "a2", "a3", "a4", "a5"};
    corpus.metrics = {"score"};
    for (const char* train : {"TrainX", "TrainY"}) {
        for (const char* test : {"RefA", "RefB", "RefC", "Probe"}) {
            ScoreVector v;
            const bool reversed = std::string(test) == "Probe";
            for (int i = 0; i < 5; ++i) {
                const int rank = reversed ? 5 - i : i + 1;
                v.push_back(Decimal::from_int(rank * 10));
            }
            corpus.tables[train]["score"][test] = std::move(v);
        }
    }
    return {corpus, registry};
}

} // namespace

TEST_CASE("make_pair_key normalizes member order") {
    const auto k1 = make_pair_key("T", "X", "Y", "m");
    const auto k2 = make_pair_key("T", "Y", "X", "m");
    CHECK(k1 == k2);
    CHECK(k1.test_a == "X");
    CHECK_THROWS_AS(make_pair_key("T", "X", "X", "m"), InvalidSample);
}

TEST_CASE("fixture pair enumeration: counts, exclusions, canonical order") {
    const auto [corpus, registry] = load_fixture();
    const auto keys = enumerate_pairs(corpus, registry);
    REQUIRE(keys.size() == 42); // 21 per metric

    std::set<std::string> trains;
    for (const auto& k : keys) {
        trains.insert(k.train);
        CHECK(k.test_a < k.test_b);
        // No pair touches the training dataset or a train-only dataset.
        CHECK(k.test_a != k.train);
        CHECK(k.test_b != k.train);
        for (const auto& member : {k.test_a, k.test_b}) {
            const auto* d = registry.find(member);
            REQUIRE(d != nullptr);
            CHECK_FALSE(d->train_only);
        }
    }
    CHECK(trains == std::set<std::string>{"CUHK03", "Market-1501", "MSMT17", "RandPerson",
                                          "UnrealPerson"});

    // Canonical order: metric block first (corpus order R1, mAP), trains in
    // registry order inside a block, pairs lexicographic inside a train.
    CHECK(keys.front().metric == "R1");
    CHECK(keys.front().train == "MSMT17");
    CHECK(keys.front().test_a == "CUHK03");
    CHECK(keys.front().test_b == "ClonedPerson");
    CHECK(keys[21].metric == "mAP");
    for (std::size_t i = 1; i < 21; ++i) {
        const auto pa = registry.position(keys[i - 1].train);
        const auto pb = registry.position(keys[i].train);
        CHECK(*pa <= *pb);
    }
}

TEST_CASE("grouping by role tags") {
    const auto [corpus, registry] = load_fixture();
    const auto taus = compute_taus(corpus, enumerate_pairs(corpus, registry));
    const auto groups = group_taus(taus, registry);
    REQUIRE(groups.size() == 2);
    for (const auto& g : groups) {
        CHECK(g.reference.size() == 9);
        CHECK(g.inspecting.size() == 12);
        for (const auto& e : g.reference) {
            CHECK(registry.find(e.key.test_a)->role == RoleTag::reference);
            CHECK(registry.find(e.key.test_b)->role == RoleTag::reference);
        }
        for (const auto& e : g.inspecting) {
            const bool a_is_probe = registry.find(e.key.test_a)->role == RoleTag::inspecting;
            const bool b_is_probe
                = registry.find(e.key.test_b)->role == RoleTag::inspecting;
            CHECK(a_is_probe != b_is_probe);
        }
    }
}

TEST_CASE("full run on the built-in corpus reproduces the published analysis") {
    const auto [corpus, registry] = load_fixture();
    PRAConfig config;
    const auto report = run_pra(corpus, registry, config);

    REQUIRE(report.summaries.size() == 2);
    const auto& [m_r1, s_r1] = report.summaries[0];
    CHECK(m_r1 == "R1");
    CHECK(s_r1.reference.mean == Catch::Approx(0.870084427).margin(1e-8));
    CHECK(s_r1.reference.stddev == Catch::Approx(0.069917759).margin(1e-8));
    CHECK(s_r1.inspecting.mean == Catch::Approx(0.865651837).margin(1e-8));
    CHECK(s_r1.inspecting.stddev == Catch::Approx(0.088444085).margin(1e-8));
    const auto& [m_map, s_map] = report.summaries[1];
    CHECK(m_map == "mAP");
    CHECK(s_map.reference.mean == Catch::Approx(0.890604862).margin(1e-8));
    CHECK(s_map.reference.stddev == Catch::Approx(0.073392043).margin(1e-8));
    CHECK(s_map.inspecting.mean == Catch::Approx(0.892074124).margin(1e-8));
    CHECK(s_map.inspecting.stddev == Catch::Approx(0.086090113).margin(1e-8));

    REQUIRE(report.ks.size() == 2);
    const auto& k_r1 = report.ks[0].second;
    CHECK(k_r1.n == 9);
    CHECK(k_r1.m == 12);
    CHECK(k_r1.d_statistic == Catch::Approx(6.0 / 36.0).margin(1e-12));
    CHECK(k_r1.threshold == Catch::Approx(0.598866477638).margin(1e-9));
    CHECK(k_r1.p_value == Catch::Approx(0.994121049229).margin(1e-9));
    CHECK(k_r1.p_method_used == PMethod::exact);
    CHECK(k_r1.decision == Decision::accept_null);
    CHECK(k_r1.rules_agree);

    const auto& k_map = report.ks[1].second;
    CHECK(k_map.d_statistic == Catch::Approx(8.0 / 36.0).margin(1e-12));
    CHECK(k_map.p_value == Catch::Approx(0.931766066751).margin(1e-9));
    CHECK(k_map.decision == Decision::accept_null);

    REQUIRE(report.verdicts.size() == 2);
    CHECK(report.verdicts[0].second == Verdict::identical);
    CHECK(report.verdicts[1].second == Verdict::identical);

    // Crossing diagnostics mirror the discordant counts one to one.
    REQUIRE(report.crossings.size() == report.tau_table.size());
    for (std::size_t i = 0; i < report.crossings.size(); ++i) {
        CHECK(report.crossings[i].first == report.tau_table[i].key);
        CHECK(report.crossings[i].second == report.tau_table[i].record.n_discordant);
    }
}

TEST_CASE("tau rounding happens before grouping and shifts the KS statistic") {
    const auto [corpus, registry] = load_fixture();
    PRAConfig config;
    config.tau_rounding = 2;
    const auto report = run_pra(corpus, registry, config);
    for (const auto& g : report.groups)
        for (const auto* side : {&g.reference, &g.inspecting})
            for (const auto& e : *side)
                CHECK(e.tau == Catch::Approx(round_to(e.tau, 2)).margin(1e-12));
    // The unrounded tau table is preserved alongside.
    bool any_unrounded = false;
    for (const auto& e : report.tau_table)
        any_unrounded |= std::abs(e.record.tau - round_to(e.record.tau, 2)) > 1e-9;
    CHECK(any_unrounded);
}

TEST_CASE("crossing_count validates and matches tau records") {
    const auto [corpus, registry] = load_fixture();
    CHECK(crossing_count(corpus, registry, "CUHK03", "MSMT17", "Market-1501", "R1") == 1);
    CHECK(crossing_count(corpus, registry, "CUHK03", "Market-1501", "MSMT17", "R1") == 1);
    CHECK_THROWS_AS(crossing_count(corpus, registry, "Nope", "MSMT17", "Market-1501", "R1"),
                    UnknownDataset);
    CHECK_THROWS_AS(crossing_count(corpus, registry, "CUHK03", "MSMT17", "MSMT17", "R1"),
                    InvalidSample);

    const auto taus = compute_taus(corpus, enumerate_pairs(corpus, registry));
    for (const auto& e : taus) {
        CHECK(crossing_count(corpus, registry, e.key.train, e.key.test_a, e.key.test_b,
                             e.key.metric) == e.record.n_discordant);
    }
}

TEST_CASE("clearly shifted inspecting group flips the verdict") {
    const auto [corpus, registry] = adversarial();
    const auto report = run_pra(corpus, registry, {});
    REQUIRE(report.groups.size() == 1);
    CHECK(report.groups[0].reference.size() == 6);  // 2 trains x C(3,2)
    CHECK(report.groups[0].inspecting.size() == 6); // 2 trains x 3
    for (const auto& e : report.groups[0].reference) CHECK(e.tau == 1.0);
    for (const auto& e : report.groups[0].inspecting) CHECK(e.tau == -1.0);

    const auto& ks = report.ks[0].second;
    CHECK(ks.d_statistic == 1.0);
    CHECK(ks.p_value < 0.05);
    CHECK(ks.decision == Decision::reject_null);
    CHECK(ks.threshold_decision == Decision::reject_null);
    CHECK(report.verdicts[0].second == Verdict::different);
}

TEST_CASE("error paths: unknown datasets, empty groups, bad alpha") {
    auto [corpus, registry] = load_fixture();

    DatasetRegistry missing;
    missing.add({"MSMT17", Realm::real_world, false, RoleTag::reference});
    CHECK_THROWS_AS(enumerate_pairs(corpus, missing), UnknownDataset);

    // All roles neither: pairs enumerate but no group can form.
    DatasetRegistry no_roles;
    for (const auto& d : registry.entries())
        no_roles.add({d.id, d.realm, d.train_only, RoleTag::neither});
    const auto taus = compute_taus(corpus, enumerate_pairs(corpus, no_roles));
    CHECK_THROWS_AS(group_taus(taus, no_roles), EmptyGroup);

    // A single test dataset admits no pairs, so the analysis has nothing to
    // compare; that is an input defect, not an empty success.
    ResultCorpus single;
    single.algorithms = {"a", "b"};
    single.metrics = {"acc"};
    single.tables["X"]["acc"]["Y"] = {Decimal::parse("1"), Decimal::parse("2")};
    DatasetRegistry xy;
    xy.add({"X", Realm::synthetic, true, RoleTag::neither});
    xy.add({"Y", Realm::real_world, false, RoleTag::reference});
    CHECK(enumerate_pairs(single, xy).empty());
    CHECK_THROWS_AS(run_pra(single, xy), EmptyGroup);

    PRAConfig bad;
    bad.alpha = 0.0;
    CHECK_THROWS_AS(run_pra(corpus, registry, bad), InvalidAlpha);
    bad.alpha = 1.0;
    CHECK_THROWS_AS(run_pra(corpus, registry, bad), InvalidAlpha);

    // A degenerate score vector names the offending cell.
    auto broken = corpus;
    ScoreVector flat;
    for (int i = 0; i < 10; ++i) flat.push_back(Decimal::from_int(5));
    broken.tables["CUHK03"]["R1"]["MSMT17"] = flat;
    CHECK_THROWS_WITH(compute_taus(broken, enumerate_pairs(broken, registry)),
                      Catch::Matchers::ContainsSubstring("CUHK03") &&
                          Catch::Matchers::ContainsSubstring("MSMT17"));
}

TEST_CASE("registry invariants") {
    DatasetRegistry registry;
    registry.add({"A", Realm::real_world, false, RoleTag::reference});
    CHECK_THROWS_AS(registry.add({"A", Realm::synthetic, false, RoleTag::neither}),
                    InvalidRegistry);
    CHECK_THROWS_AS(registry.add({"B", Realm::synthetic, true, RoleTag::inspecting}),
                    InvalidRegistry);
    CHECK(registry.find("A") != nullptr);
    CHECK(registry.find("B") == nullptr);
    CHECK(registry.position("A") == 0);
    CHECK_FALSE(registry.position("zzz").has_value());
}

TEST_CASE("two runs emit byte-identical reports") {
    const auto [corpus, registry] = load_fixture();
    const auto r1 = run_pra(corpus, registry, {});
    const auto r2 = run_pra(corpus, registry, {});
    CHECK(io::emit_report(r1, io::Format::json) == io::emit_report(r2, io::Format::json));
    CHECK(io::emit_report(r1, io::Format::text) == io::emit_report(r2, io::Format::text));
    CHECK(io::emit_report(r1, io::Format::csv) == io::emit_report(r2, io::Format::csv));
}
