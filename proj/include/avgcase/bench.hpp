#pragma once

/**
 * @file bench.hpp
 * @brief Average-case cost estimation over uniform length-n inputs.
 *
 * A task maps a word to an integer step count plus a stratum label naming
 * the sub-algorithm that decided it. Records report the overall cost
 * distribution together with the per-stratum split, whose weighted sum
 * reproduces the overall mean:
 *
 *     mean = sum_j freq_j * mean_j.
 */

#include "avgcase/bigint.hpp"
#include "avgcase/error.hpp"
#include "avgcase/rng.hpp"
#include "avgcase/stats.hpp"
#include "avgcase/whitehead.hpp"
#include "avgcase/wordproblem.hpp"
#include "avgcase/words.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace avgcase {

struct TaskOutcome {
    std::uint64_t cost = 0;
    std::string stratum;
};

using TaskFn = std::function<TaskOutcome(const Word&)>;

enum class Task { PrimitivityComposite, PrimitivityWhiteheadOnly, FastCheckOnly, WpFree, WpAbelian, WpHeisenberg };

inline std::string_view to_string(Task t) {
    switch (t) {
        case Task::PrimitivityComposite: return "primitivity_composite";
        case Task::PrimitivityWhiteheadOnly: return "primitivity_whitehead_only";
        case Task::FastCheckOnly: return "fast_check_only";
        case Task::WpFree: return "wp_free";
        case Task::WpAbelian: return "wp_abelian";
        case Task::WpHeisenberg: return "wp_heisenberg";
    }
    return "?";
}

inline Task parse_task(std::string_view s) {
    for (Task t : {Task::PrimitivityComposite, Task::PrimitivityWhiteheadOnly, Task::FastCheckOnly, Task::WpFree,
                   Task::WpAbelian, Task::WpHeisenberg}) {
        if (s == to_string(t)) return t;
    }
    throw validation_error("unknown task '" + std::string(s) + "'");
}

/// Resolves a named task, rejecting combinations its algorithm cannot accept.
inline TaskFn make_task(Task task, int r, SamplingModel model, std::size_t n) {
    detail::require(r >= 1, "rank must be >= 1");
    switch (task) {
        case Task::PrimitivityComposite:
            detail::require_budget(r <= max_whitehead_rank, "primitivity tasks support rank <= 5");
            return [](const Word& w) {
                const auto v = primitivity_composite(w);
                return TaskOutcome{v.cost.total(), std::string(to_string(v.decided_by))};
            };
        case Task::PrimitivityWhiteheadOnly:
            detail::require_budget(r <= max_whitehead_rank, "primitivity tasks support rank <= 5");
            return [](const Word& w) {
                const auto v = primitivity_whitehead(w);
                return TaskOutcome{v.cost.total(), std::string(to_string(v.decided_by))};
            };
        case Task::FastCheckOnly:
            detail::require(model == SamplingModel::CyclicallyReduced && n > 2,
                            "fast_check_only requires the CyclicallyReduced model and n > 2");
            detail::require(r <= max_whitehead_rank, "fast check supports rank <= 5");
            return [](const Word& w) {
                const auto t = fast_check(w);
                return TaskOutcome{t.cost.total(), t.not_primitive ? "FastCheckT" : "Inconclusive"};
            };
        case Task::WpFree:
            return [](const Word& w) {
                const auto v = wp_composite(GroupKind::Free, w);
                return TaskOutcome{v.cost.total(), std::string(to_string(v.decided_by))};
            };
        case Task::WpAbelian:
            return [](const Word& w) {
                const auto v = wp_composite(GroupKind::FreeAbelian, w);
                return TaskOutcome{v.cost.total(), std::string(to_string(v.decided_by))};
            };
        case Task::WpHeisenberg:
            detail::require(r == 2, "wp_heisenberg requires rank 2");
            return [](const Word& w) {
                const auto v = wp_composite(GroupKind::Heisenberg, w);
                return TaskOutcome{v.cost.total(), std::string(to_string(v.decided_by))};
            };
    }
    throw validation_error("unknown task");
}

struct StratumRow {
    std::string label;
    std::uint64_t count = 0;
    double frequency = 0.0;
    double mean_cost = 0.0;
};

struct BenchRecord {
    std::string task;
    SamplingModel model = SamplingModel::AllWords;
    int rank = 1;
    std::size_t n = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double mean_cost = 0.0;
    double std_cost = 0.0;
    std::uint64_t p50 = 0;
    std::uint64_t p95 = 0;
    std::uint64_t max_cost = 0;
    std::vector<StratumRow> strata;  ///< sorted by label

    double standard_error() const {
        return trials == 0 ? 0.0 : std_cost / std::sqrt(static_cast<double>(trials));
    }

    /// |mean - sum_j freq_j * mean_j|.
    double decomposition_gap() const {
        double s = 0.0;
        for (const auto& row : strata) s += row.frequency * row.mean_cost;
        return std::abs(mean_cost - s);
    }
};

/**
 * Monte Carlo estimate of the mean cost over uniform inputs. Trial t runs
 * the task on a word drawn from trial_rng(seed, t). Summaries are computed
 * from per-trial results in trial order (quantiles from the sorted costs),
 * so the record does not depend on evaluation order.
 */
inline BenchRecord avgcase_estimate(std::string task_name, const TaskFn& task, int r, std::size_t n,
                                    SamplingModel model, std::uint64_t trials, Seed seed) {
    detail::require(trials >= 1, "trials must be >= 1");
    std::vector<TaskOutcome> outcomes;
    outcomes.reserve(trials);
    for (std::uint64_t t = 0; t < trials; ++t) {
        SplitMix64 rng = trial_rng(seed, t);
        outcomes.push_back(task(sample_word(r, n, model, rng)));
    }

    BenchRecord rec;
    rec.task = std::move(task_name);
    rec.model = model;
    rec.rank = r;
    rec.n = n;
    rec.trials = trials;
    rec.seed = seed.master;

    std::vector<double> costs;
    std::vector<std::uint64_t> sorted;
    costs.reserve(trials);
    sorted.reserve(trials);
    std::map<std::string, std::pair<std::uint64_t, double>> by_stratum;
    for (const auto& o : outcomes) {
        costs.push_back(static_cast<double>(o.cost));
        sorted.push_back(o.cost);
        auto& slot = by_stratum[o.stratum];
        ++slot.first;
        slot.second += static_cast<double>(o.cost);
    }
    std::sort(sorted.begin(), sorted.end());
    rec.mean_cost = mean_of(costs);
    rec.std_cost = stddev_of(costs);
    rec.p50 = nearest_rank<std::uint64_t>(sorted, 0.50);
    rec.p95 = nearest_rank<std::uint64_t>(sorted, 0.95);
    rec.max_cost = sorted.back();
    for (const auto& [label, slot] : by_stratum) {
        rec.strata.push_back({label, slot.first, static_cast<double>(slot.first) / static_cast<double>(trials),
                              slot.second / static_cast<double>(slot.first)});
    }
    return rec;
}

inline BenchRecord avgcase_estimate(Task task, int r, std::size_t n, SamplingModel model, std::uint64_t trials, Seed seed) {
    return avgcase_estimate(std::string(to_string(task)), make_task(task, r, model, n), r, n, model, trials, seed);
}

struct ExactAverage {
    BigInt total_cost = 0;
    std::uint64_t count = 0;
    std::map<std::string, std::pair<std::uint64_t, BigInt>> strata;  ///< label -> (words, summed cost)

    BigRational mean() const { return count == 0 ? BigRational(0) : BigRational(total_cost, BigInt(count)); }
};

/// The literal finite average: every length-n word under the model, equally weighted.
inline ExactAverage exhaustive_average(const TaskFn& task, int r, std::size_t n, SamplingModel model,
                                       std::uint64_t budget = std::uint64_t{1} << 20U) {
    ExactAverage out;
    for_each_word(r, n, model, [&](const Word& w) {
        const TaskOutcome o = task(w);
        out.total_cost += o.cost;
        ++out.count;
        auto& slot = out.strata[o.stratum];
        ++slot.first;
        slot.second += o.cost;
    }, budget);
    return out;
}

inline ExactAverage exhaustive_average(Task task, int r, std::size_t n, SamplingModel model,
                                       std::uint64_t budget = std::uint64_t{1} << 20U) {
    return exhaustive_average(make_task(task, r, model, n), r, n, model, budget);
}

// ---------------------------------------------------------------------------
// Output

/// Shortest round-trip decimal form; independent of locale.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline constexpr std::string_view csv_header =
    "task,model,n,trials,seed,mean_cost,std_cost,p50,p95,max_cost,stratum,stratum_freq,stratum_mean";

/// One row per (record, stratum), then a stratum=ALL row per record. LF line endings.
inline void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
    out << csv_header << '\n';
    for (const auto& r : records) {
        const std::string prefix = r.task + "," + std::string(to_string(r.model)) + "," + std::to_string(r.n) + "," +
                                   std::to_string(r.trials) + "," + std::to_string(r.seed) + "," +
                                   format_double(r.mean_cost) + "," + format_double(r.std_cost) + "," +
                                   std::to_string(r.p50) + "," + std::to_string(r.p95) + "," +
                                   std::to_string(r.max_cost) + ",";
        for (const auto& s : r.strata) {
            out << prefix << s.label << ',' << format_double(s.frequency) << ',' << format_double(s.mean_cost) << '\n';
        }
        out << prefix << "ALL," << format_double(1.0) << ',' << format_double(r.mean_cost) << '\n';
    }
}

inline void emit_csv(const std::vector<BenchRecord>& records, const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_csv(f, records);
    f.flush();
    if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

/// The CSV rows as JSON objects with the same keys.
inline nlohmann::ordered_json records_to_json(const std::vector<BenchRecord>& records) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        auto row = [&](const std::string& label, double freq, double mean) {
            nlohmann::ordered_json j;
            j["task"] = r.task;
            j["model"] = std::string(to_string(r.model));
            j["n"] = r.n;
            j["trials"] = r.trials;
            j["seed"] = r.seed;
            j["mean_cost"] = r.mean_cost;
            j["std_cost"] = r.std_cost;
            j["p50"] = r.p50;
            j["p95"] = r.p95;
            j["max_cost"] = r.max_cost;
            j["stratum"] = label;
            j["stratum_freq"] = freq;
            j["stratum_mean"] = mean;
            rows.push_back(std::move(j));
        };
        for (const auto& s : r.strata) row(s.label, s.frequency, s.mean_cost);
        row("ALL", 1.0, r.mean_cost);
    }
    return rows;
}

}  // namespace avgcase
