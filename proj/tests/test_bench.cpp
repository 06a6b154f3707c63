#include "avgcase/bench.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

using namespace avgcase;

namespace {

std::string csv_of(const std::vector<BenchRecord>& recs) {
    std::ostringstream out;
    write_csv(out, recs);
    return out.str();
}

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Estimate, ConstantTask) {
    const TaskFn unit = [](const Word&) { return TaskOutcome{1, "only"}; };
    const auto rec = avgcase_estimate("unit", unit, 2, 10, SamplingModel::Reduced, 500, Seed{1});
    EXPECT_EQ(rec.mean_cost, 1.0);
    EXPECT_EQ(rec.std_cost, 0.0);
    EXPECT_EQ(rec.p50, 1U);
    EXPECT_EQ(rec.p95, 1U);
    EXPECT_EQ(rec.max_cost, 1U);
    ASSERT_EQ(rec.strata.size(), 1U);
    EXPECT_EQ(rec.strata[0].frequency, 1.0);
    EXPECT_THROW(avgcase_estimate("unit", unit, 2, 10, SamplingModel::Reduced, 0, Seed{1}), validation_error);
}

TEST(Estimate, QuantilesOfLengthCost) {
    // Cost = index of the trial word's first letter symbol; check against a direct recomputation.
    const TaskFn first = [](const Word& w) {
        return TaskOutcome{static_cast<std::uint64_t>(symbol_index(w.letters()[0], w.rank())), "x"};
    };
    const auto rec = avgcase_estimate("first", first, 3, 5, SamplingModel::AllWords, 1001, Seed{2});
    std::vector<std::uint64_t> costs;
    for (std::uint64_t t = 0; t < 1001; ++t) {
        SplitMix64 rng = trial_rng(Seed{2}, t);
        costs.push_back(first(sample_word(3, 5, SamplingModel::AllWords, rng)).cost);
    }
    std::sort(costs.begin(), costs.end());
    EXPECT_EQ(rec.p50, costs[500]);
    EXPECT_EQ(rec.p95, costs[static_cast<std::size_t>(std::ceil(0.95 * 1001)) - 1]);
    EXPECT_EQ(rec.max_cost, costs.back());
}

TEST(Estimate, DecompositionIdentity) {
    for (Task t : {Task::PrimitivityComposite, Task::PrimitivityWhiteheadOnly, Task::FastCheckOnly, Task::WpHeisenberg}) {
        const auto model = t == Task::WpHeisenberg ? SamplingModel::AllWords : SamplingModel::CyclicallyReduced;
        const auto rec = avgcase_estimate(t, 2, 12, model, 3000, Seed{6});
        EXPECT_LE(rec.decomposition_gap(), 1e-9 * rec.mean_cost) << to_string(t);
        double freq = 0;
        for (const auto& s : rec.strata) freq += s.frequency;
        EXPECT_NEAR(freq, 1.0, 1e-12);
    }
}

TEST(Estimate, MonteCarloAgreesWithExhaustiveAverage) {
    const auto exact = exhaustive_average(Task::PrimitivityComposite, 2, 8, SamplingModel::CyclicallyReduced);
    EXPECT_EQ(exact.count, static_cast<std::uint64_t>(count_cyclically_reduced(2, 8)));
    const double mu = exact.mean().convert_to<double>();
    const auto rec = avgcase_estimate(Task::PrimitivityComposite, 2, 8, SamplingModel::CyclicallyReduced, 100'000, Seed{77});
    EXPECT_NEAR(rec.mean_cost, mu, 3 * rec.standard_error());
    for (const auto& row : rec.strata) {
        const auto it = exact.strata.find(row.label);
        ASSERT_NE(it, exact.strata.end()) << row.label;
        const double f = static_cast<double>(it->second.first) / static_cast<double>(exact.count);
        EXPECT_NEAR(row.frequency, f, 3 * std::sqrt(f * (1 - f) / 100'000.0) + 1e-12) << row.label;
    }
}

TEST(Estimate, HeisenbergExactRecomputation) {
    const auto exact = exhaustive_average(Task::WpHeisenberg, 2, 6, SamplingModel::AllWords);
    BigInt total = 0;
    std::uint64_t tier2 = 0;
    for_each_word(2, 6, SamplingModel::AllWords, [&](const Word& w) {
        const auto abel = abelianization(w);
        const bool zero = abel[0] == 0 && abel[1] == 0;
        WPCost c;
        c.letters_read = w.size();
        c.arithmetic = 2;
        if (zero) {
            ++tier2;
            heisenberg_eval(w, &c);
            c.arithmetic += 3;
        }
        total += c.total();
    });
    EXPECT_EQ(exact.count, 4096U);
    EXPECT_EQ(exact.total_cost, total);
    EXPECT_EQ(exact.strata.at("Tier2Exact").first, tier2);
    // 6-step walks on Z^2 returning to the origin: C(6,3)^2.
    EXPECT_EQ(tier2, 400U);
}

TEST(Estimate, Determinism) {
    const auto a = avgcase_estimate(Task::PrimitivityComposite, 2, 20, SamplingModel::CyclicallyReduced, 500, Seed{5});
    const auto b = avgcase_estimate(Task::PrimitivityComposite, 2, 20, SamplingModel::CyclicallyReduced, 500, Seed{5});
    EXPECT_EQ(csv_of({a}), csv_of({b}));
}

TEST(Tasks, InvalidCombinations) {
    EXPECT_THROW(make_task(Task::FastCheckOnly, 2, SamplingModel::Reduced, 10), validation_error);
    EXPECT_THROW(make_task(Task::FastCheckOnly, 2, SamplingModel::CyclicallyReduced, 2), validation_error);
    EXPECT_THROW(make_task(Task::WpHeisenberg, 3, SamplingModel::AllWords, 10), validation_error);
    EXPECT_THROW(make_task(Task::PrimitivityComposite, 6, SamplingModel::CyclicallyReduced, 10), budget_exceeded);
    EXPECT_THROW(parse_task("nope"), validation_error);
    EXPECT_EQ(parse_task("wp_free"), Task::WpFree);
}

TEST(Csv, HeaderOnlyForNoRecords) {
    EXPECT_EQ(csv_of({}), std::string(csv_header) + "\n");
}

TEST(Csv, RowsPerStratum) {
    BenchRecord r;
    r.task = "t";
    r.model = SamplingModel::Reduced;
    r.n = 4;
    r.trials = 10;
    r.seed = 3;
    r.mean_cost = 2.5;
    r.std_cost = 0.5;
    r.p50 = 2;
    r.p95 = 3;
    r.max_cost = 3;
    r.strata = {{"X", 5, 0.5, 2.0}, {"Y", 5, 0.5, 3.0}};
    const std::string s = csv_of({r});
    EXPECT_EQ(line_count(s), 4U);
    EXPECT_NE(s.find("t,Reduced,4,10,3,2.5,0.5,2,3,3,X,0.5,2\n"), std::string::npos) << s;
    EXPECT_NE(s.find(",ALL,1,2.5\n"), std::string::npos);
    EXPECT_EQ(s.find('\r'), std::string::npos);
}

TEST(Csv, FileOutputIsByteIdentical) {
    const auto rec = avgcase_estimate(Task::WpHeisenberg, 2, 30, SamplingModel::AllWords, 300, Seed{8});
    const std::string p1 = ::testing::TempDir() + "bench_a.csv";
    const std::string p2 = ::testing::TempDir() + "bench_b.csv";
    emit_csv({rec}, p1);
    emit_csv({avgcase_estimate(Task::WpHeisenberg, 2, 30, SamplingModel::AllWords, 300, Seed{8})}, p2);
    auto slurp = [](const std::string& p) {
        std::ifstream f(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(f), {});
    };
    EXPECT_EQ(slurp(p1), slurp(p2));
    EXPECT_EQ(slurp(p1), csv_of({rec}));
    std::remove(p1.c_str());
    std::remove(p2.c_str());
    EXPECT_THROW(emit_csv({rec}, "/nonexistent-dir/x.csv"), std::runtime_error);
}

TEST(Json, MirrorsCsvRows) {
    const auto rec = avgcase_estimate(Task::PrimitivityComposite, 2, 10, SamplingModel::CyclicallyReduced, 200, Seed{4});
    const auto j = records_to_json({rec});
    ASSERT_EQ(j.size(), rec.strata.size() + 1);
    EXPECT_EQ(j.back()["stratum"], "ALL");
    EXPECT_EQ(j.back()["mean_cost"].get<double>(), rec.mean_cost);
    EXPECT_EQ(j[0]["task"], "primitivity_composite");
    std::vector<std::string> keys;
    for (const auto& [k, v] : j[0].items()) keys.push_back(k);
    std::string joined;
    for (const auto& k : keys) joined += (joined.empty() ? "" : ",") + k;
    EXPECT_EQ(joined, csv_header);
}
