// avgcase: command-line front end for the average-case toolkit.

#include "avgcase/avgcase.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace avgcase;

namespace {

struct Globals {
    std::uint64_t seed = 0;
    std::string csv;
    bool json = false;
};

/// Integers and decimals become JSON numbers; anything else (big integers, fractions, words) stays a string.
nlohmann::ordered_json json_cell(const std::string& cell) {
    const char* first = cell.data();
    const char* last = first + cell.size();
    if (cell.empty()) return cell;
    std::int64_t i = 0;
    if (auto [p, ec] = std::from_chars(first, last, i); ec == std::errc() && p == last) return i;
    if (cell.size() < 20 || cell.find_first_of(".e") != std::string::npos) {
        double d = 0;
        if (auto [p, ec] = std::from_chars(first, last, d); ec == std::errc() && p == last) return d;
    }
    return cell;
}

/// A plain table; rendered as CSV or as a JSON array of row objects.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void write_csv(std::ostream& out) const {
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
            out << '\n';
        };
        line(header);
        for (const auto& r : rows) line(r);
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            nlohmann::ordered_json o;
            for (std::size_t i = 0; i < header.size(); ++i) o[header[i]] = json_cell(r[i]);
            arr.push_back(std::move(o));
        }
        return arr;
    }
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << content;
    f.flush();
    if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

/// CSV to --csv if given, JSON to stdout with --json, otherwise CSV to stdout.
void emit_table(const Globals& g, const Table& t) {
    if (!g.csv.empty()) {
        std::ostringstream s;
        t.write_csv(s);
        write_file(g.csv, s.str());
    }
    if (g.json) {
        std::cout << t.to_json().dump(2) << '\n';
    } else if (g.csv.empty()) {
        t.write_csv(std::cout);
    }
}

void emit_records(const Globals& g, const std::vector<BenchRecord>& recs) {
    if (!g.csv.empty()) emit_csv(recs, g.csv);
    if (g.json) {
        std::cout << records_to_json(recs).dump(2) << '\n';
    } else if (g.csv.empty()) {
        write_csv(std::cout, recs);
    }
}

std::string fmt(double v) { return format_double(v); }
std::string fmt(const BigInt& v) { return v.str(); }
std::string fmt(const BigRational& v) {
    return denominator(v) == 1 ? numerator(v).str() : numerator(v).str() + "/" + denominator(v).str();
}

double ratio_of(const BigInt& num, const BigInt& den) {
    if (num == 0) return 0.0;
    if (limb_count(den) <= 15) return BigRational(num, den).convert_to<double>();
    return std::exp(log_ratio(num, den));
}

void print_cost(const StepCost& c) {
    std::cout << "letters_read: " << c.letters_read << '\n'
              << "edge_updates: " << c.edge_updates << '\n'
              << "auto_applications: " << c.auto_applications << '\n'
              << "letters_rewritten: " << c.letters_rewritten << '\n'
              << "total_cost: " << c.total() << '\n';
}

// --- subcommand bodies ------------------------------------------------------

struct SampleArgs {
    int rank = 2;
    std::size_t n = 10;
    std::string model = "reduced";
    std::uint64_t count = 1;
};

void run_sample(const Globals& g, const SampleArgs& a) {
    const SamplingModel m = parse_model(a.model);
    Table t{{"index", "word"}, {}};
    for (std::uint64_t i = 0; i < a.count; ++i) {
        SplitMix64 rng = trial_rng(Seed{g.seed}, i);
        t.rows.push_back({std::to_string(i), format_word(sample_word(a.rank, a.n, m, rng))});
    }
    if (g.csv.empty() && !g.json) {
        for (const auto& r : t.rows) std::cout << r[1] << '\n';
        return;
    }
    emit_table(g, t);
}

struct PrimitiveArgs {
    int rank = 2;
    std::string word;
    bool trace = false;
};

void run_primitive(const PrimitiveArgs& a) {
    const Word w = parse_word(a.word, a.rank);
    detail::require_budget(a.rank <= max_whitehead_rank, "primitivity supports rank <= 5");
    std::vector<DescentStep> steps;
    const auto v = primitivity_composite(w, a.trace ? &steps : nullptr);
    const Word u = cyclic_reduce(w);
    std::cout << "word: " << format_word(w) << '\n'
              << "cyclic_reduction: " << format_word(u) << '\n'
              << "verdict: " << to_string(v.verdict) << '\n'
              << "decided_by: " << to_string(v.decided_by) << '\n';
    print_cost(v.cost);
    std::cout << "descent_steps: " << v.descent_steps << '\n';
    if (!a.trace) return;
    if (u.size() > 2) {
        const auto t = fast_check(u);
        std::cout << "fast_check: " << (t.not_primitive ? "complete graph at prefix " + std::to_string(t.prefix_len)
                                                         : std::string("inconclusive"))
                  << '\n';
    }
    for (std::size_t i = 0; i < steps.size(); ++i) {
        std::cout << "step " << i + 1 << ": " << steps[i].automorphism << " -> " << format_word(steps[i].result) << '\n';
    }
}

struct AvgArgs {
    std::string task = "primitivity_composite";
    int rank = 2;
    std::vector<std::size_t> lens{10};
    std::string model = "cyclic";
    std::uint64_t trials = 1000;
};

void run_avgcase(const Globals& g, const AvgArgs& a) {
    const Task task = parse_task(a.task);
    const SamplingModel m = parse_model(a.model);
    std::vector<BenchRecord> recs;
    for (std::size_t n : a.lens) recs.push_back(avgcase_estimate(task, a.rank, n, m, a.trials, Seed{g.seed}));
    emit_records(g, recs);
}

struct SubwordArgs {
    int rank = 2;
    std::string forbidden;
    std::size_t maxlen = 10;
    bool incomplete = false;
    std::uint64_t trials = 0;
};

std::vector<Word> split_patterns(const std::string& text, int rank) {
    std::vector<Word> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        out.push_back(parse_word(item, rank));
    }
    return out;
}

void run_subwords(const Globals& g, const SubwordArgs& a) {
    std::vector<BigInt> counts;
    Table t;
    if (a.incomplete) {
        detail::require(a.rank == 2, "--incomplete-graph requires rank 2");
        counts = EdgeCoverageCounter::incomplete_counts_upto(a.maxlen);
        t.header = {"L", "incomplete", "reduced", "ratio", "cr_t_inconclusive_freq"};
    } else {
        counts = build_avoidance_automaton(a.rank, split_patterns(a.forbidden, a.rank)).counts_upto(a.maxlen);
        t.header = {"L", "avoiding", "reduced", "ratio"};
    }
    std::vector<BigInt> base;
    for (std::size_t L = 0; L <= a.maxlen; ++L) {
        base.push_back(count_reduced(a.rank, L));
        std::vector<std::string> row{std::to_string(L), fmt(counts[L]), fmt(base[L]),
                                     fmt(ratio_of(counts[L], base[L]))};
        if (a.incomplete) {
            // Monte Carlo: fraction of uniform cyclically reduced words on which the fast check is inconclusive.
            std::string cell;
            if (a.trials > 0 && L > 2) {
                std::uint64_t hits = 0;
                for (std::uint64_t i = 0; i < a.trials; ++i) {
                    SplitMix64 rng = trial_rng(Seed{g.seed}, i);
                    if (!fast_check(sample_word(2, L, SamplingModel::CyclicallyReduced, rng)).not_primitive) ++hits;
                }
                cell = fmt(static_cast<double>(hits) / static_cast<double>(a.trials));
            }
            row.push_back(cell);
        }
        t.rows.push_back(std::move(row));
    }
    emit_table(g, t);
    bool positive = counts.size() >= 3;
    for (const auto& c : counts) positive = positive && c > 0;
    if (positive && !g.json) {
        const auto d = decay_rate(counts, base);
        std::cerr << "decay s=" << fmt(d.s) << " over L=" << d.window_begin << ".." << d.window_end << '\n';
    }
}

struct MatArgs {
    std::size_t n = 10;
    std::int64_t x = 2;
    std::int64_t y = 2;
    std::uint64_t trials = 100;
    std::string pattern = "AB";
    std::string u = "ABA";
    std::string v = "BAB";
};

void run_mat_exhaustive(const Globals& g, const MatArgs& a) {
    const auto prof = max_entry_profile(a.n, a.x, a.y);
    Table t{{"n", "max_entry", "argmax"}, {}};
    for (std::size_t n = 0; n < prof.size(); ++n) t.rows.push_back({std::to_string(n), fmt(prof[n].max_entry), prof[n].argmax.str()});
    emit_table(g, t);
}

void run_mat_pattern(const Globals& g, const MatArgs& a) {
    const auto series = pattern_series(ProductWord::parse(a.pattern), a.n, a.x, a.y);
    Table t{{"n", "max_entry"}, {}};
    for (const auto& [n, v] : series) t.rows.push_back({std::to_string(n), fmt(v)});
    emit_table(g, t);
    if (series.size() >= 2 && !g.json) {
        const auto gb = growth_base(series);
        std::cerr << "growth base " << fmt(gb.base) << " over n=" << gb.n_from << ".." << gb.n_to << '\n';
    }
}

void run_mat_random(const Globals& g, const MatArgs& a) {
    const auto s = random_product_stats(a.n, a.trials, a.x, a.y, Seed{g.seed});
    Table t{{"n", "trials", "seed", "x", "y", "median_log10", "mean_log10", "min_log10", "max_log10", "generic_base", "average_base"},
            {}};
    t.rows.push_back({std::to_string(s.n), std::to_string(s.trials), std::to_string(g.seed), std::to_string(a.x),
                      std::to_string(a.y), fmt(s.median), fmt(s.mean), fmt(s.min), fmt(s.max),
                      s.generic_base ? fmt(*s.generic_base) : "", s.average_base ? fmt(*s.average_base) : ""});
    emit_table(g, t);
}

void run_mat_average(const Globals& g, const MatArgs& a) {
    Table t{{"n", "mean_a", "mean_b", "exact_mean_a", "exact_mean_b"}, {}};
    for (std::size_t n = 0; n <= a.n; ++n) {
        const auto r = expected_entries_recurrence(n, a.x, a.y);
        std::vector<std::string> row{std::to_string(n), fmt(r.mean_a), fmt(r.mean_b), "", ""};
        if (n <= 16) {
            const auto e = exact_average_entries(n, a.x, a.y);
            row[3] = fmt(e.mean_a);
            row[4] = fmt(e.mean_b);
        }
        t.rows.push_back(std::move(row));
    }
    emit_table(g, t);
}

void run_mat_relation(const MatArgs& a) {
    const auto u = ProductWord::parse(a.u);
    const auto v = ProductWord::parse(a.v);
    std::cout << "u: " << u.str() << " = " << format_matrix(eval_product(u, a.x, a.y)) << '\n'
              << "v: " << v.str() << " = " << format_matrix(eval_product(v, a.x, a.y)) << '\n'
              << "equal: " << (check_relation(u, v, a.x, a.y) ? "true" : "false") << '\n';
}

struct HashArgs {
    std::uint64_t p = 1000003;
    std::int64_t x = 2;
    std::int64_t y = 2;
    std::string bits;
    std::size_t maxlen = 16;
};

void run_hash_digest(const HashArgs& a) { std::cout << hash_bits(ProductWord::parse(a.bits), a.p, a.x, a.y).digest() << '\n'; }

void run_hash_bound(const HashArgs& a) {
    const auto r = collision_free_bound(a.p, a.x, a.y);
    std::cout << "p: " << r.p << '\n'
              << "collision_free_length: " << r.collision_free_length << '\n'
              << "nonnegative: " << (r.nonnegative ? "true" : "false") << '\n'
              << "exhaustive_depth: " << r.exhaustive_depth << '\n'
              << "pattern_based: " << (r.pattern_based ? "true" : "false") << '\n'
              << "lower_bound_only: " << (r.lower_bound_only ? "true" : "false") << '\n';
    if (r.base) std::cout << "growth_base: " << fmt(*r.base) << '\n';
    if (r.heuristic_bound) std::cout << "log_s_p: " << fmt(*r.heuristic_bound) << '\n';
}

void run_hash_collide(const HashArgs& a) {
    const auto c = shortest_collision_bfs(a.p, a.x, a.y, a.maxlen);
    if (!c) {
        std::cout << "no collision up to length " << a.maxlen << '\n';
        return;
    }
    std::cout << "length: " << c->length << '\n' << "u: " << c->u.str() << '\n' << "v: " << c->v.str() << '\n'
              << "digest: " << hash_bits(c->u, a.p, a.x, a.y).digest() << '\n';
}

struct WpArgs {
    std::string group = "heisenberg";
    std::string word;
    bool trace = false;
    std::vector<std::size_t> lens{64};
    std::uint64_t trials = 1000;
};

void run_wp(const WpArgs& a) {
    const GroupKind g = parse_group(a.group);
    const Word w = parse_word(a.word, 2);
    const auto v = wp_composite(g, w);
    std::cout << "group: " << to_string(g) << '\n'
              << "is_identity: " << (v.is_identity ? "true" : "false") << '\n'
              << "decided_by: " << to_string(v.decided_by) << '\n'
              << "letters_read: " << v.cost.letters_read << '\n'
              << "arithmetic: " << v.cost.arithmetic << '\n'
              << "total_cost: " << v.cost.total() << '\n';
    if (!a.trace) return;
    const auto ab = abelianization(w);
    std::cout << "abelianization: " << ab[0] << " " << ab[1] << '\n';
    if (g == GroupKind::Heisenberg) {
        const auto h = heisenberg_eval(w);
        std::cout << "heisenberg: " << h.a.str() << " " << h.b.str() << " " << h.c.str() << '\n';
    } else if (g == GroupKind::Free) {
        std::cout << "reduced: " << format_word(reduce(w)) << '\n';
    }
}

void run_wp_bench(const Globals& gl, const WpArgs& a) {
    const GroupKind g = parse_group(a.group);
    const Task task = g == GroupKind::Free ? Task::WpFree : g == GroupKind::FreeAbelian ? Task::WpAbelian : Task::WpHeisenberg;
    std::vector<BenchRecord> recs;
    for (std::size_t n : a.lens) recs.push_back(avgcase_estimate(task, 2, n, SamplingModel::AllWords, a.trials, Seed{gl.seed}));
    emit_records(gl, recs);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Average-case complexity toolkit for free-group and matrix-group algorithms", "avgcase"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
    app.add_option("--csv", g.csv, "Write CSV output to this path");
    app.add_flag("--json", g.json, "Print JSON rows mirroring the CSV to stdout");
    app.fallthrough();

    SampleArgs sa;
    auto* sample = app.add_subcommand("sample", "Draw uniform random words");
    sample->add_option("--rank", sa.rank)->capture_default_str();
    sample->add_option("--n", sa.n)->capture_default_str();
    sample->add_option("--model", sa.model, "all|reduced|cyclic")->capture_default_str();
    sample->add_option("--count", sa.count)->capture_default_str();

    PrimitiveArgs pa;
    auto* prim = app.add_subcommand("primitive", "Decide primitivity with the composite algorithm");
    prim->add_option("--rank", pa.rank)->capture_default_str();
    prim->add_option("--word", pa.word)->required();
    prim->add_flag("--trace", pa.trace);

    AvgArgs aa;
    auto* avg = app.add_subcommand("avgcase", "Monte Carlo average cost of a task");
    avg->add_option("--task", aa.task)->capture_default_str();
    avg->add_option("--rank", aa.rank)->capture_default_str();
    avg->add_option("--n,--lens", aa.lens, "Lengths, comma separated")->delimiter(',');
    avg->add_option("--model", aa.model)->capture_default_str();
    avg->add_option("--trials", aa.trials)->capture_default_str();

    SubwordArgs swa;
    auto* sub = app.add_subcommand("subwords", "Exact counts of reduced words avoiding forbidden subwords");
    sub->add_option("--rank", swa.rank)->capture_default_str();
    sub->add_option("--forbidden", swa.forbidden, "Comma separated patterns");
    sub->add_option("--maxlen", swa.maxlen)->capture_default_str();
    sub->add_flag("--incomplete-graph", swa.incomplete, "Count words with incomplete Whitehead graph (rank 2)");
    sub->add_option("--trials", swa.trials, "Monte Carlo trials per L for the fast-check column");

    MatArgs ma;
    auto* mat = app.add_subcommand("matgrowth", "Entry growth of products of A(x), B(y)");
    mat->require_subcommand(1);
    auto add_mat_opts = [&](CLI::App* c) {
        c->add_option("--n", ma.n)->capture_default_str();
        c->add_option("--x", ma.x)->capture_default_str();
        c->add_option("--y", ma.y)->capture_default_str();
    };
    auto* m_ex = mat->add_subcommand("exhaustive", "Max entry over all products of each length");
    add_mat_opts(m_ex);
    auto* m_pat = mat->add_subcommand("pattern", "Max entry of powers of a pattern");
    add_mat_opts(m_pat);
    m_pat->add_option("--pattern", ma.pattern)->capture_default_str();
    auto* m_rand = mat->add_subcommand("random", "Random product statistics");
    add_mat_opts(m_rand);
    m_rand->add_option("--trials", ma.trials)->capture_default_str();
    auto* m_avg = mat->add_subcommand("average", "Expected first-row entries");
    add_mat_opts(m_avg);
    auto* m_rel = mat->add_subcommand("relation", "Compare two products");
    m_rel->add_option("--x", ma.x)->capture_default_str();
    m_rel->add_option("--y", ma.y)->capture_default_str();
    m_rel->add_option("--u", ma.u)->capture_default_str();
    m_rel->add_option("--v", ma.v)->capture_default_str();

    HashArgs ha;
    auto* hash = app.add_subcommand("hash", "Matrix hashing over F_p");
    hash->require_subcommand(1);
    auto add_hash_opts = [&](CLI::App* c) {
        c->add_option("--p", ha.p)->capture_default_str();
        c->add_option("--x", ha.x)->capture_default_str();
        c->add_option("--y", ha.y)->capture_default_str();
    };
    auto* h_dig = hash->add_subcommand("digest", "Hash a bit string");
    add_hash_opts(h_dig);
    h_dig->add_option("--bits", ha.bits)->required();
    auto* h_bound = hash->add_subcommand("bound", "Certified collision-free length");
    add_hash_opts(h_bound);
    auto* h_col = hash->add_subcommand("collide", "Shortest collision by brute force");
    add_hash_opts(h_col);
    h_col->add_option("--maxlen", ha.maxlen)->capture_default_str();

    WpArgs wa;
    auto* wp = app.add_subcommand("wp", "Word problem in free, free abelian or Heisenberg groups");
    wp->require_subcommand(0, 1);
    wp->add_option("--group", wa.group)->capture_default_str();
    wp->add_option("--word", wa.word);
    wp->add_flag("--trace", wa.trace);
    auto* wp_bench = wp->add_subcommand("bench", "Average cost over uniform words");
    wp_bench->add_option("--group", wa.group)->capture_default_str();
    wp_bench->add_option("--lens", wa.lens)->delimiter(',');
    wp_bench->add_option("--trials", wa.trials)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*sample) run_sample(g, sa);
        else if (*prim) run_primitive(pa);
        else if (*avg) run_avgcase(g, aa);
        else if (*sub) run_subwords(g, swa);
        else if (*m_ex) run_mat_exhaustive(g, ma);
        else if (*m_pat) run_mat_pattern(g, ma);
        else if (*m_rand) run_mat_random(g, ma);
        else if (*m_avg) run_mat_average(g, ma);
        else if (*m_rel) run_mat_relation(ma);
        else if (*h_dig) run_hash_digest(ha);
        else if (*h_bound) run_hash_bound(ha);
        else if (*h_col) run_hash_collide(ha);
        else if (*wp_bench) run_wp_bench(g, wa);
        else if (*wp) {
            if (wa.word.empty() && wp->count("--word") == 0) throw validation_error("wp requires --word or the bench subcommand");
            run_wp(wa);
        }
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const budget_exceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
