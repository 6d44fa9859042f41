#pragma once

#include <array>
#include <utility>

#include "corpus.hpp"
#include "registry.hpp"

namespace pra {

namespace fixture_detail {

// Scores are stored in tenths (46.9 -> 469) so the table stays integral and
// compact; load_fixture() rescales into exact fixed-point decimals. Column
// order everywhere is the algorithm order in kFixtureAlgorithms.
struct Block {
    const char* train;
    const char* test;
    std::array<int, 10> r1;
    std::array<int, 10> map;
};

inline constexpr std::array<const char*, 10> kFixtureAlgorithms = {
    "PCB",       "MLFN",      "Resnet50mid", "OSNet", "OSNet-IBN",
    "OSNet-AIN", "AGW",       "MGN",         "QAConv-GS", "TransMatcher",
};

inline constexpr std::array<Block, 17> kFixtureBlocks = {{
    {"CUHK03", "MSMT17",
     {{61, 77, 83, 110, 279, 275, 161, 280, 469, 468}},
     {{16, 24, 25, 34, 91, 89, 52, 93, 157, 157}}},
    {"CUHK03", "Market-1501",
     {{379, 404, 432, 474, 589, 585, 575, 639, 685, 700}},
     {{171, 191, 206, 227, 310, 301, 328, 374, 371, 405}}},
    {"CUHK03", "ClonedPerson",
     {{109, 107, 102, 153, 209, 213, 218, 289, 328, 414}},
     {{8, 8, 7, 11, 22, 22, 21, 35, 40, 53}}},
    {"Market-1501", "MSMT17",
     {{72, 87, 82, 121, 237, 247, 158, 324, 476, 480}},
     {{21, 27, 26, 40, 79, 83, 56, 120, 177, 186}}},
    {"Market-1501", "CUHK03",
     {{52, 41, 44, 72, 109, 110, 110, 196, 184, 208}},
     {{54, 39, 44, 77, 104, 104, 108, 193, 177, 201}}},
    {"Market-1501", "ClonedPerson",
     {{135, 126, 132, 209, 308, 317, 281, 392, 412, 501}},
     {{12, 13, 13, 21, 42, 45, 32, 62, 68, 92}}},
    {"MSMT17", "Market-1501",
     {{409, 414, 436, 580, 639, 637, 632, 738, 784, 802}},
     {{183, 190, 207, 295, 326, 331, 359, 439, 497, 521}}},
    {"MSMT17", "CUHK03",
     {{73, 91, 102, 143, 146, 156, 171, 218, 196, 228}},
     {{74, 93, 107, 138, 140, 152, 186, 226, 204, 224}}},
    {"MSMT17", "ClonedPerson",
     {{159, 158, 162, 269, 287, 294, 312, 392, 441, 518}},
     {{17, 18, 18, 34, 39, 40, 48, 63, 78, 90}}},
    {"RandPerson", "MSMT17",
     {{79, 61, 57, 86, 153, 171, 92, 185, 444, 452}},
     {{24, 18, 17, 26, 47, 53, 28, 58, 153, 162}}},
    {"RandPerson", "Market-1501",
     {{431, 374, 366, 464, 502, 514, 481, 572, 755, 772}},
     {{201, 166, 164, 219, 247, 261, 240, 314, 464, 488}}},
    {"RandPerson", "CUHK03",
     {{64, 53, 48, 79, 96, 92, 76, 88, 171, 192}},
     {{64, 56, 50, 71, 87, 90, 71, 84, 152, 178}}},
    {"RandPerson", "ClonedPerson",
     {{380, 353, 343, 439, 496, 501, 494, 594, 653, 678}},
     {{64, 58, 56, 81, 120, 124, 90, 171, 199, 221}}},
    {"UnrealPerson", "MSMT17",
     {{119, 116, 99, 147, 243, 252, 190, 272, 525, 520}},
     {{38, 34, 30, 45, 80, 82, 64, 92, 200, 213}}},
    {"UnrealPerson", "Market-1501",
     {{450, 438, 402, 521, 618, 617, 590, 681, 797, 816}},
     {{219, 212, 196, 253, 332, 345, 335, 417, 526, 595}}},
    {"UnrealPerson", "CUHK03",
     {{54, 45, 58, 71, 109, 121, 98, 129, 173, 218}},
     {{55, 43, 58, 68, 99, 106, 88, 120, 161, 205}}},
    {"UnrealPerson", "ClonedPerson",
     {{254, 236, 241, 283, 403, 412, 411, 534, 569, 660}},
     {{36, 27, 35, 33, 74, 83, 64, 116, 151, 200}}},
}};

} // namespace fixture_detail

/// Registry matching the shipped corpus: three real-world reference datasets,
/// two synthetic training-only sources, and the synthetic world under
/// inspection. Registry order fixes the training-column order of reports.
inline DatasetRegistry fixture_registry() {
    DatasetRegistry registry;
    registry.add({"MSMT17", Realm::real_world, false, RoleTag::reference});
    registry.add({"Market-1501", Realm::real_world, false, RoleTag::reference});
    registry.add({"CUHK03", Realm::real_world, false, RoleTag::reference});
    registry.add({"RandPerson", Realm::synthetic, true, RoleTag::neither});
    registry.add({"UnrealPerson", Realm::synthetic, true, RoleTag::neither});
    registry.add({"ClonedPerson", Realm::synthetic, false, RoleTag::inspecting});
    return registry;
}

/// The built-in corpus: ten person re-identification algorithms evaluated on
/// 17 (train, test) combinations under two metrics, R1 and mAP. 340 scores.
inline ResultCorpus fixture_corpus() {
    using fixture_detail::kFixtureAlgorithms;
    using fixture_detail::kFixtureBlocks;

    ResultCorpus corpus;
    corpus.algorithms.assign(kFixtureAlgorithms.begin(), kFixtureAlgorithms.end());
    corpus.metrics = {"R1", "mAP"};
    for (const auto& block : kFixtureBlocks) {
        ScoreVector r1, map;
        for (int v : block.r1) r1.push_back(Decimal::from_micro(v * 100'000LL));
        for (int v : block.map) map.push_back(Decimal::from_micro(v * 100'000LL));
        corpus.tables[block.train]["R1"][block.test] = std::move(r1);
        corpus.tables[block.train]["mAP"][block.test] = std::move(map);
    }
    return corpus;
}

inline std::pair<ResultCorpus, DatasetRegistry> load_fixture() {
    return {fixture_corpus(), fixture_registry()};
}

} // namespace pra
