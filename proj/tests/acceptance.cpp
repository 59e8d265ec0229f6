// Acceptance gate: every release-blocking behavior of the library and CLI,
// one pass/fail line each, exit 0 only if all pass. Each check pins its own
// seeds so the whole run is reproducible bit for bit.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "spm/cli.hpp"
#include "spm/compare.hpp"
#include "spm/generator.hpp"
#include "spm/matcher.hpp"
#include "spm/oracle.hpp"

using namespace spm;
using namespace spmtest;
namespace fs = std::filesystem;

namespace {

constexpr u64 kMaster = 20260817;

using Clock = std::chrono::steady_clock;

long ms_since(Clock::time_point start) {
    return static_cast<long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count());
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, pattern);
    std::vsnprintf(buf, sizeof buf, pattern, ap);
    va_end(ap);
    return buf;
}

// ---------------------------------------------------------------- criterion 1

Outcome counterexample_rejection() {
    Clock::time_point start = Clock::now();
    FixturePair p = counterexample();
    if (naive_prev_sets(p.s1) != naive_prev_sets(p.s2))
        return {false, "naive prev multisets were expected to collide"};
    if (exact_compare(p.s1, p.s2)) return {false, "offset comparison accepted the pair"};
    for (u64 seed = 0; seed < 1000; ++seed) {
        HashParams params = select_primes(p.s1.length(), p.s1.length(), 4, seed);
        if (compare_setstrings(p.s1, p.s2, params))
            return {false, fmt("hashed comparison accepted the pair at seed %llu",
                               static_cast<unsigned long long>(seed))};
    }
    long ms = ms_since(start);
    if (ms >= 1000) return {false, fmt("took %ld ms, limit 1000", ms)};
    return {true, fmt("1000 seeds rejected; naive prev multisets collide; %ld ms", ms)};
}

// -------------------------------------------------------- criteria 2, 3 and 7

struct PairCase {
    SetString s1;
    SetString s2;
    u32 sigma = 1;
    u64 seed = 0;
};

// One deterministic corpus shared by the equivalence, recurrence and
// op-budget checks so they all see the same instances.
std::vector<PairCase> small_pair_corpus() {
    std::vector<PairCase> out;
    out.reserve(10000);
    Rng rng(derive_seed(kMaster, 2));
    for (int t = 0; t < 10000; ++t) {
        PairCase c;
        c.sigma = static_cast<u32>(rng.in_range(1, 6));
        u64 n = rng.in_range(0, 20);
        double density = 0.5 + rng.unit() * (std::min(3.0, static_cast<double>(c.sigma)) - 0.5);
        c.s1 = random_setstring(rng, n, c.sigma, density);
        switch (t % 3) {
            case 0: c.s2 = random_setstring(rng, n, c.sigma, density); break;
            case 1: c.s2 = apply_bijection(c.s1, random_bijection(rng, c.sigma)); break;
            default:
                c.s2 = apply_bijection(c.s1, random_bijection(rng, c.sigma));
                if (n > 0) c.s2 = mutate_one(rng, c.s2, c.sigma);
                break;
        }
        c.seed = rng.next();
        out.push_back(std::move(c));
    }
    return out;
}

Outcome compare_vs_enumeration() {
    Clock::time_point start = Clock::now();
    u64 disagreements = 0, matches = 0;
    for (const PairCase& c : small_pair_corpus()) {
        bool exact = exact_compare(c.s1, c.s2);
        bool brute = bijection_enumerate_compare(c.s1, c.s2);
        if (exact != brute) ++disagreements;
        if (exact) ++matches;
    }
    long ms = ms_since(start);
    if (disagreements > 0)
        return {false, fmt("%llu of 10000 pairs disagree with enumeration",
                           static_cast<unsigned long long>(disagreements))};
    if (ms >= 60000) return {false, fmt("took %ld ms, limit 60000", ms)};
    return {true, fmt("10000 pairs, 0 disagreements (%llu matching), %ld ms",
                      static_cast<unsigned long long>(matches), ms)};
}

Outcome start_count_routes() {
    Clock::time_point start = Clock::now();
    u64 groups = 0;
    int instances = 0;
    for (const PairCase& c : small_pair_corpus()) {
        // start_counts internally derives the table twice (direct grouping
        // and the cancellation recurrence) and throws on any disagreement.
        for (const SetString* s : {&c.s1, &c.s2}) {
            StartCountTable table;
            try {
                table = start_counts(*s);
            } catch (const std::logic_error& e) {
                return {false, fmt("instance %d: %s", instances, e.what())};
            }
            u64 weighted = 0;
            for (const auto& [key, count] : table.counts)
                weighted += static_cast<u64>(count) * key.second.size();
            if (weighted != s->char_count)
                return {false, fmt("instance %d: table drops occurrences", instances)};
            groups += table.counts.size();
            ++instances;
        }
    }
    return {true, fmt("%d instances, both routes agree (%llu groups), %ld ms", instances,
                      static_cast<unsigned long long>(groups), ms_since(start))};
}

Outcome compare_op_budget() {
    Clock::time_point start = Clock::now();
    u64 worst_num = 0, worst_den = 1;
    for (const PairCase& c : small_pair_corpus()) {
        u64 n = std::max<u64>(c.s1.length(), 1);
        HashParams params = select_primes(n, n, c.sigma, c.seed);
        CompareStats stats;
        if (c.s1.length() > 0) compare_setstrings(c.s1, c.s2, params, &stats);
        u64 budget = 8 * (c.s1.char_count + c.s2.char_count);
        if (stats.char_position_ops > budget)
            return {false, fmt("ops %llu exceed budget %llu (chars %llu)",
                               static_cast<unsigned long long>(stats.char_position_ops),
                               static_cast<unsigned long long>(budget),
                               static_cast<unsigned long long>(c.s1.char_count +
                                                               c.s2.char_count))};
        if (stats.char_position_ops * worst_den > worst_num * (c.s1.char_count + c.s2.char_count)) {
            worst_num = stats.char_position_ops;
            worst_den = std::max<u64>(1, c.s1.char_count + c.s2.char_count);
        }
    }
    return {true, fmt("ops <= 8*(chars) on all 10000 pairs; worst ratio %.2f; %ld ms",
                      static_cast<double>(worst_num) / static_cast<double>(worst_den),
                      ms_since(start))};
}

// ---------------------------------------------------------------- criterion 4

Outcome matcher_vs_oracle() {
    Clock::time_point start = Clock::now();
    Rng rng(derive_seed(kMaster, 4));
    u64 false_positives = 0, exact_hits = 0;
    for (int t = 0; t < 2000; ++t) {
        u32 sigma = static_cast<u32>(rng.in_range(1, 6));
        u64 m = rng.in_range(1, 8);
        u64 n = rng.in_range(m, 40);
        double density = 0.5 + rng.unit() * (std::min(3.0, static_cast<double>(sigma)) - 0.5);
        SetString pattern, text;
        if (t % 2 == 0) {
            GenSpec spec;
            spec.n = n;
            spec.m = m;
            spec.sigma = sigma;
            spec.density = density;
            spec.planted = 1;
            spec.seed = rng.next();
            GeneratedInstance inst = generate_instance(spec);
            pattern = std::move(inst.pattern);
            text = std::move(inst.text);
        } else {
            pattern = random_setstring(rng, m, sigma, density);
            text = random_setstring(rng, n, sigma, density);
        }
        HashParams params = select_primes(n, m, sigma, rng.next(), 2.0);
        std::vector<u32> candidates = find_matches(pattern, text, sigma, params, false).candidates;
        std::vector<u32> truth = oracle_find_matches(pattern, text);
        if (!std::includes(candidates.begin(), candidates.end(), truth.begin(), truth.end()))
            return {false, fmt("trial %d: a true occurrence is missing from the candidates", t)};
        false_positives += candidates.size() - truth.size();
        exact_hits += truth.size();
    }
    long ms = ms_since(start);
    if (false_positives > 1)
        return {false, fmt("%llu false positives across the suite, at most 1 allowed",
                           static_cast<unsigned long long>(false_positives))};
    if (ms >= 120000) return {false, fmt("took %ld ms, limit 120000", ms)};
    return {true, fmt("2000 trials, no misses, %llu false positives (%llu true matches), %ld ms",
                      static_cast<unsigned long long>(false_positives),
                      static_cast<unsigned long long>(exact_hits), ms)};
}

// ---------------------------------------------------------------- criterion 5

Outcome incremental_vs_scratch() {
    Clock::time_point start = Clock::now();
    Rng rng(derive_seed(kMaster, 5));
    u64 windows = 0;
    for (int t = 0; t < 500; ++t) {
        u32 sigma = static_cast<u32>(rng.in_range(1, 12));
        u32 m = static_cast<u32>(rng.in_range(1, 50));
        u32 n = static_cast<u32>(rng.in_range(m, 200));
        double density = 0.3 + rng.unit() * 2.7;
        SetString text = random_setstring(rng, n, sigma, density);
        for (int s = 0; s < 10; ++s) {
            HashParams params = select_primes(n, m, sigma, rng.next());
            OccurrenceLists occ = OccurrenceLists::build(text, sigma);
            MatcherState state = init_state(text, m, params, occ);
            if (state.h_window != window_hash_scratch(text, 1, m, params))
                return {false, fmt("text %d seed %d: first window diverges", t, s)};
            ++windows;
            for (u32 i = 1; i + m <= n; ++i) {
                advance(state, text, occ, params);
                if (state.h_window != window_hash_scratch(text, i + 1, m, params))
                    return {false, fmt("text %d seed %d: window %u diverges", t, s, i + 1)};
                ++windows;
            }
        }
    }
    return {true, fmt("500 texts x 10 seeds, %llu windows all equal, %ld ms",
                      static_cast<unsigned long long>(windows), ms_since(start))};
}

// ---------------------------------------------------------------- criterion 6

Outcome step_scaling() {
    Clock::time_point start = Clock::now();
    const double density = 2.0;
    const u64 m = 50;

    auto run_steps = [&](u64 target_chars, u32 sigma, u64 gen_seed) {
        u64 n = static_cast<u64>(std::llround(static_cast<double>(target_chars) / density));
        GenSpec spec{n, m, sigma, density, 0, gen_seed};
        GeneratedInstance inst = generate_instance(spec);
        HashParams params = select_primes(n, m, sigma, kMaster);
        params.repetitions = 1;
        MatchReport report = find_matches(inst.pattern, inst.text, sigma, params, false);
        return report.stats.total_steps();
    };

    std::vector<u64> steps;
    for (u32 s = 0; s < 3; ++s)
        steps.push_back(run_steps(100000ull << s, 64, derive_seed(kMaster, 100 + s)));
    std::string ratios;
    for (size_t s = 1; s < steps.size(); ++s) {
        double ratio = static_cast<double>(steps[s]) / static_cast<double>(steps[s - 1]);
        ratios += fmt(s == 1 ? "%.3f" : ", %.3f", ratio);
        if (ratio < 1.8 || ratio > 2.5)
            return {false, fmt("doubling ratio %.3f outside [1.8, 2.5]", ratio)};
    }

    u64 lo = ~0ull, hi = 0;
    for (u32 sigma : {4u, 64u, 4096u}) {
        u64 st = run_steps(100000, sigma, derive_seed(kMaster, 200));
        lo = std::min(lo, st);
        hi = std::max(hi, st);
    }
    double variation = static_cast<double>(hi - lo) / static_cast<double>(lo);
    if (variation >= 0.10)
        return {false, fmt("step variation %.4f across alphabets, limit 0.10", variation)};
    return {true, fmt("doubling ratios [%s]; alphabet variation %.4f; %ld ms", ratios.c_str(),
                      variation, ms_since(start))};
}

// ---------------------------------------------------------------- criterion 8

Outcome layer1_collision_rate() {
    Clock::time_point start = Clock::now();
    const u64 p1 = 101;
    const u32 universe = 50;
    Rng rng(derive_seed(kMaster, 8));
    auto draw_offsets = [&]() {
        // Offset sets always contain 0; the other 49 slots are a random mask.
        u64 mask = rng.next() & ((1ull << (universe - 1)) - 1);
        std::vector<u32> out{0};
        for (u32 k = 1; k < universe; ++k)
            if (mask & (1ull << (k - 1))) out.push_back(k);
        return out;
    };
    u64 collisions = 0;
    const u64 trials = 100000;
    for (u64 t = 0; t < trials; ++t) {
        std::vector<u32> o1 = draw_offsets();
        std::vector<u32> o2 = draw_offsets();
        while (o2 == o1) o2 = draw_offsets();
        FieldParams f = FieldParams::make(p1, rng.in_range(1, p1 - 1));
        if (multiset_hash(o1, f) == multiset_hash(o2, f)) ++collisions;
    }
    double rate = static_cast<double>(collisions) / static_cast<double>(trials);
    double limit = 3.0 * static_cast<double>(universe) / static_cast<double>(p1);
    if (rate > limit) return {false, fmt("collision rate %.5f above limit %.3f", rate, limit)};
    return {true, fmt("rate %.5f over 100000 distinct pairs (limit %.3f), %ld ms", rate, limit,
                      ms_since(start))};
}

// ---------------------------------------------------------------- criterion 9

Outcome deterministic_reports() {
    Clock::time_point start = Clock::now();
    fs::path dir = fs::temp_directory_path() / "spm_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);

    auto run = [](const std::vector<std::string>& args, int* code = nullptr) {
        std::ostringstream out, err;
        int c = run_cli(args, out, err);
        if (code) *code = c;
        return out.str();
    };
    auto slurp = [](const fs::path& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };

    std::string p1 = (dir / "i1").string(), p2 = (dir / "i2").string();
    std::vector<std::string> gen = {"gen",  "--n",       "500", "--m",    "20",
                                    "--sigma", "12",     "--density", "1.5", "--planted",
                                    "2",    "--seed",    "11",  "--out",  p1};
    int gc1 = 0, gc2 = 0;
    run(gen, &gc1);
    gen.back() = p2;
    run(gen, &gc2);
    if (gc1 != 0 || gc2 != 0) return {false, "instance generation failed"};
    for (const char* suffix : {".pattern.txt", ".text.txt", ".manifest.jsonl"})
        if (slurp(p1 + suffix) != slurp(p2 + suffix))
            return {false, fmt("regenerated %s differs", suffix)};

    std::string pattern = p1 + ".pattern.txt", text = p1 + ".text.txt";
    for (const char* format : {"text", "json"}) {
        std::vector<std::string> match = {"match", pattern, text,     "--verify", "--seed", "5",
                                          "--reps", "3",    "--format", format};
        int c1 = 0, c2 = 0;
        std::string first = run(match, &c1);
        if (run(match, &c2) != first || c1 != c2)
            return {false, fmt("repeated %s match run differs", format)};
        std::vector<std::string> jobs1 = match, jobs3 = match;
        jobs1.insert(jobs1.end(), {"--jobs", "1"});
        jobs3.insert(jobs3.end(), {"--jobs", "3"});
        if (run(jobs1) != run(jobs3)) return {false, fmt("%s report depends on --jobs", format)};
        if (run(jobs1) != first) return {false, fmt("%s report changes when jobs are set", format)};
    }

    std::vector<std::string> compare = {"compare", pattern, pattern, "--verify", "--seed", "7"};
    if (run(compare) != run(compare)) return {false, "repeated compare run differs"};

    fs::remove_all(dir);
    return {true, fmt("gen, match and compare byte-identical across runs and jobs, %ld ms",
                      ms_since(start))};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> check;
    };
    const std::vector<Criterion> criteria = {
        {"counterexample-rejection", counterexample_rejection},
        {"compare-vs-enumeration", compare_vs_enumeration},
        {"start-count-routes", start_count_routes},
        {"matcher-vs-oracle", matcher_vs_oracle},
        {"incremental-vs-scratch", incremental_vs_scratch},
        {"step-scaling", step_scaling},
        {"compare-op-budget", compare_op_budget},
        {"layer1-collision-rate", layer1_collision_rate},
        {"deterministic-reports", deterministic_reports},
    };

    bool all_pass = true;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Outcome outcome;
        try {
            outcome = criteria[i].check();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        all_pass = all_pass && outcome.pass;
        std::printf("[%zu] %-26s %s (%s)\n", i + 1, criteria[i].name,
                    outcome.pass ? "PASS" : "FAIL", outcome.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%s\n", all_pass ? "ALL CRITERIA PASS" : "ACCEPTANCE FAILED");
    return all_pass ? 0 : 1;
}
