// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "avgcase/avgcase.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#ifndef AVGCASE_CLI_PATH
#error "AVGCASE_CLI_PATH must name the CLI binary"
#endif

using namespace avgcase;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
    if (!ok) ++failures;
    std::cout << (ok ? "PASS" : "FAIL") << " [" << id << "] " << what << ": " << detail << std::endl;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string f(double v) { return format_double(v); }

void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto gb = growth_base(pattern_series(ProductWord::parse("AB"), 200, 2, 2));
    const double secs = seconds_since(t0);
    const double target = 1 + std::sqrt(2.0);
    const double rel = std::abs(gb.base / target - 1);
    report(1, rel <= 0.01 && secs < 1.0, "growth (2,2) of (AB)^(n/2)",
           "base=" + f(gb.base) + " target=" + f(target) + " rel_err=" + f(rel) + " time=" + f(secs) + "s");
}

void criterion2() {
    const auto gb = growth_base(pattern_series(ProductWord::parse("ABBA"), 200, 2, -2));
    const double target = std::sqrt(2 + std::sqrt(3.0));
    const double rel = std::abs(gb.base / target - 1);
    double worst = 0;
    for (const auto& [n, v] : pattern_series(ProductWord::parse("AB"), 1000, 2, -2)) {
        worst = std::max(worst, v.convert_to<double>() / static_cast<double>(n));
    }
    report(2, rel <= 0.01 && worst <= 3.0, "growth (2,-2) of (ABBA)^(n/4), linear (AB)^(n/2)",
           "base=" + f(gb.base) + " target=" + f(target) + " rel_err=" + f(rel) + " max(entry/n)=" + f(worst) + " (C=3)");
}

void criterion3() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto s = random_product_stats(1000, 1000, 2, 2, Seed{2024});
    const double secs = seconds_since(t0);
    const double base = s.generic_base.value_or(0);
    const bool ok = s.median >= 273 && s.median <= 287 && base >= 1.88 && base <= 1.93 && secs < 120;
    report(3, ok, "random products (2,2), n=1000, 1000 trials",
           "median_log10=" + f(s.median) + " generic_base=" + f(base) + " time=" + f(secs) + "s");

    // Informational bands for (2,-2): measured, not asserted.
    const auto m = random_product_stats(1000, 1000, 2, -2, Seed{2024});
    const auto e = expected_entries_recurrence(1000, 2, -2);
    auto abs_q = [](const BigRational& q) { return q < 0 ? BigRational(-q) : q; };
    const BigRational top = std::max(abs_q(e.mean_a), abs_q(e.mean_b));
    const double expected_base =
        std::exp((log_abs(numerator(top)) - log_abs(denominator(top))) / 1000.0);
    std::cout << "INFO (2,-2) n=1000: expected_entry_base=" << f(expected_base) << " (band [1.30, 1.52])"
              << " mean_max_entry_base=" << f(m.average_base.value_or(0))
              << " generic_base=" << f(m.generic_base.value_or(0)) << " (band [1.60, 1.76])" << std::endl;
}

void criterion4() {
    bool ok = true;
    std::string detail;
    for (std::size_t n : {10U, 14U, 16U}) {
        const auto e = exact_average_entries(n, 2, 2);
        const BigInt want = ipow(BigInt(2), n - 1);
        ok = ok && e.mean_a == BigRational(want) && e.mean_b == BigRational(want);
        detail += "n=" + std::to_string(n) + ": E[a]=" + numerator(e.mean_a).str() + "/" + denominator(e.mean_a).str() +
                  " E[b]=" + numerator(e.mean_b).str() + "/" + denominator(e.mean_b).str() + "; ";
    }
    report(4, ok, "exact first-row averages at (2,2) equal 2^(n-1)", detail);
}

void criterion5() {
    const auto u = ProductWord::parse("ABA");
    const auto v = ProductWord::parse("BAB");
    const Mat2 m = eval_product(u, 1, -1);
    const bool ok = check_relation(u, v, 1, -1) && m == Mat2{0, 1, -1, 0} && !check_relation(u, v, 2, 2);
    report(5, ok, "braid relation", "(1,-1): " + format_matrix(m) + "; (2,2) equal=" +
                                        (check_relation(u, v, 2, 2) ? "true" : "false"));
}

void criterion6() {
    const std::uint64_t p = 1000003;
    const auto rep = collision_free_bound(p, 2, 2);
    const auto prof = max_entry_profile(16, 2, 2);
    const bool cross = prof[15].max_entry < BigInt(p) && prof[16].max_entry >= BigInt(p);
    const bool none15 = !shortest_collision_bfs(p, 2, 2, 15).has_value();
    bool consistent = true;
    std::string bad;
    for (std::uint64_t q = 5; q <= 31; ++q) {
        if (!is_prime_u64(q)) continue;
        const auto r = collision_free_bound(q, 2, 2);
        const auto c = shortest_collision_bfs(q, 2, 2, 18);
        if (c && c->length <= r.collision_free_length) {
            consistent = false;
            bad += " p=" + std::to_string(q);
        }
    }
    report(6, rep.collision_free_length == 15 && cross && none15 && consistent, "girth bound p=1000003, (2,2)",
           "N=" + std::to_string(rep.collision_free_length) + " exhaustive(15)=" + prof[15].max_entry.str() +
               " exhaustive(16)=" + prof[16].max_entry.str() + " bfs_none_upto_15=" + (none15 ? "yes" : "no") +
               " small_primes_consistent=" + (consistent ? "yes" : "no" + bad) +
               " log_s_p=" + f(rep.heuristic_bound.value_or(0)));
}

void criterion7() {
    std::string detail;
    double m50 = 0, m400 = 0;
    for (std::size_t n : {50U, 100U, 200U, 400U}) {
        const auto rec = avgcase_estimate(Task::PrimitivityComposite, 2, n, SamplingModel::CyclicallyReduced, 10'000, Seed{7});
        if (n == 50) m50 = rec.mean_cost;
        if (n == 400) m400 = rec.mean_cost;
        detail += "mean(" + std::to_string(n) + ")=" + f(rec.mean_cost) + " ";
    }
    const auto r300 = avgcase_estimate(Task::PrimitivityComposite, 2, 300, SamplingModel::CyclicallyReduced, 10'000, Seed{7});
    double fast = 0;
    for (const auto& s : r300.strata) {
        if (s.label == "FastCheckT") fast = s.frequency;
    }
    const double ratio = m400 / m50;
    report(7, ratio < 1.5 && fast >= 0.99, "bounded average primitivity cost",
           detail + "ratio=" + f(ratio) + " fastcheck_freq(300)=" + f(fast));
}

void criterion8() {
    const auto inc = EdgeCoverageCounter::incomplete_counts_upto(60);
    std::vector<double> xs, ys;
    for (std::size_t L = 20; L <= 60; ++L) {
        xs.push_back(static_cast<double>(L));
        ys.push_back(log_ratio(inc[L], count_reduced(2, L)));
    }
    const auto fit = least_squares(xs, ys);
    const double s = std::exp(fit.slope);

    // Automaton vs direct filtering, L <= 8.
    const std::vector<std::vector<const char*>> sets{{"aa"}, {"ab", "ba"}, {"aba", "bab"}, {"aabba"}, {"aB", "Ba", "bb"}};
    std::size_t mismatches = 0;
    for (const auto& raw : sets) {
        std::vector<Word> forb;
        for (const char* p : raw) forb.push_back(parse_word(p, 2));
        const auto counts = build_avoidance_automaton(2, forb).counts_upto(8);
        for (std::size_t L = 0; L <= 8; ++L) {
            BigInt direct = 0;
            for_each_word(2, L, SamplingModel::Reduced, [&](const Word& w) {
                for (const auto& p : forb) {
                    if (std::search(w.vec().begin(), w.vec().end(), p.vec().begin(), p.vec().end()) != w.vec().end()) return;
                }
                ++direct;
            });
            if (direct != counts[L]) ++mismatches;
        }
    }
    // The incomplete-graph DP against a direct scan as well.
    for (std::size_t L = 0; L <= 8; ++L) {
        BigInt direct = 0;
        for_each_word(2, L, SamplingModel::Reduced, [&](const Word& w) {
            if (!analyze_graph(whitehead_graph(w, false)).complete) ++direct;
        });
        if (direct != inc[L]) ++mismatches;
    }
    report(8, fit.r_squared > 0.99 && s < 1 && mismatches == 0, "exponential negligibility of incomplete graphs",
           "s=" + f(s) + " R2=" + f(fit.r_squared) + " count_mismatches=" + std::to_string(mismatches));
}

void criterion9() {
    const auto oracle = primitive_orbit_oracle(2, 10);
    std::size_t disagree = 0, criterion_miss = 0, complete_primitive = 0, words = 0;
    for (std::size_t n = 1; n <= 10; ++n) {
        for_each_word(2, n, SamplingModel::CyclicallyReduced, [&](const Word& w) {
            ++words;
            const bool truth = oracle.count(w) != 0;
            const bool comp = primitivity_composite(w).verdict == Primitivity::Primitive;
            const bool wh = primitivity_whitehead(w).verdict == Primitivity::Primitive;
            if (comp != truth || wh != truth) ++disagree;
            const auto g = analyze_graph(whitehead_graph(w, true));
            if (truth && n > 2 && !(g.has_isolated_edge || g.has_cut_vertex)) ++criterion_miss;
            if (analyze_graph(whitehead_graph(w, false)).complete && truth) ++complete_primitive;
        });
    }
    report(9, disagree == 0 && criterion_miss == 0 && complete_primitive == 0, "primitivity ground truth, F2, length <= 10",
           "words=" + std::to_string(words) + " primitives=" + std::to_string(oracle.size()) +
               " disagreements=" + std::to_string(disagree) + " criterion_misses=" + std::to_string(criterion_miss) +
               " complete_but_primitive=" + std::to_string(complete_primitive));
}

void criterion10() {
    std::size_t wrong = 0;
    for (std::size_t n = 0; n <= 8; ++n) {
        for_each_word(2, n, SamplingModel::AllWords, [&](const Word& w) {
            // Explicit 3x3 unitriangular product as the reference.
            long a = 0, b = 0, c = 0;
            for (Letter l : w.letters()) {
                const long gb = l == 2 ? 1 : l == -2 ? -1 : 0;
                c += a * gb;
                a += l == 1 ? 1 : l == -1 ? -1 : 0;
                b += gb;
            }
            if (wp_composite(GroupKind::Heisenberg, w).is_identity != (a == 0 && b == 0 && c == 0)) ++wrong;
        });
    }
    const auto f100 = tier2_frequency(100, 200'000, Seed{10}).frequency();
    const auto f400 = tier2_frequency(400, 200'000, Seed{10}).frequency();
    const double ratio = f100 > 0 ? f400 / f100 : 0;
    const double rel = ratio / 0.25;
    const auto c1 = avgcase_estimate(Task::WpHeisenberg, 2, 1024, SamplingModel::AllWords, 2000, Seed{10});
    const auto c2 = avgcase_estimate(Task::WpHeisenberg, 2, 2048, SamplingModel::AllWords, 2000, Seed{10});
    const double cost_ratio = c2.mean_cost / c1.mean_cost;
    report(10, wrong == 0 && rel >= 0.5 && rel <= 2.0 && cost_ratio >= 1.7 && cost_ratio <= 2.5,
           "two-tier Heisenberg word problem",
           "mismatches=" + std::to_string(wrong) + " tier2(100)=" + f(f100) + " tier2(400)=" + f(f400) +
               " ratio=" + f(ratio) + " (1/n predicts 0.25)" + " cost_ratio(2048/1024)=" + f(cost_ratio));
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

void criterion11() {
    const std::filesystem::path dir = std::filesystem::temp_directory_path() / "avgcase_acceptance";
    std::filesystem::create_directories(dir);
    const std::vector<std::string> commands{
        "sample --rank 3 --n 20 --model reduced --count 100 --seed 11",
        "avgcase --task primitivity_composite --rank 2 --n 50,100 --model cyclic --trials 1000 --seed 11",
        "avgcase --task wp_heisenberg --rank 2 --n 64 --model all --trials 1000 --seed 11",
        "subwords --rank 2 --forbidden aa,bab --maxlen 40",
        "subwords --rank 2 --incomplete-graph --maxlen 30 --trials 500 --seed 11",
        "matgrowth exhaustive --n 14 --x 2 --y -2",
        "matgrowth pattern --pattern AB --n 200 --x 2 --y 2",
        "matgrowth random --n 300 --trials 100 --x 2 --y 2 --seed 11",
        "matgrowth average --n 14 --x 2 --y 2",
        "wp bench --group heisenberg --lens 128,256 --trials 500 --seed 11",
    };
    std::size_t differ = 0;
    std::string bad;
    for (std::size_t i = 0; i < commands.size(); ++i) {
        std::string out[2];
        for (int run = 0; run < 2; ++run) {
            const auto path = dir / ("cmd" + std::to_string(i) + "_" + std::to_string(run) + ".csv");
            std::filesystem::remove(path);
            const std::string cmd = std::string("\"") + AVGCASE_CLI_PATH + "\" " + commands[i] + " --csv \"" +
                                    path.string() + "\" > /dev/null 2>&1";
            if (std::system(cmd.c_str()) != 0) out[run] = "<exit failure>";
            else out[run] = slurp(path);
        }
        if (out[0] != out[1] || out[0].empty() || out[0] == "<exit failure>") {
            ++differ;
            bad += " [" + commands[i] + "]";
        }
    }
    std::filesystem::remove_all(dir);
    report(11, differ == 0, "byte-identical CSV across reruns",
           std::to_string(commands.size()) + " commands, " + std::to_string(differ) + " differing" + bad);
}

}  // namespace

int main() {
    const std::vector<std::function<void()>> all{criterion1, criterion2, criterion3, criterion4, criterion5, criterion6,
                                                 criterion7, criterion8, criterion9, criterion10, criterion11};
    for (std::size_t i = 0; i < all.size(); ++i) {
        try {
            all[i]();
        } catch (const std::exception& e) {
            report(static_cast<int>(i + 1), false, "exception", e.what());
        }
    }
    std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
    return failures == 0 ? 0 : 1;
}
