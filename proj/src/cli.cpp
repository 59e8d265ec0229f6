#include "spm/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "spm/compare.hpp"
#include "spm/generator.hpp"
#include "spm/matcher.hpp"
#include "spm/oracle.hpp"

namespace spm {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct CommonOpts {
    u64 seed = 0;
    u32 reps = 0;  // 0 = auto from the prime schedule
    bool verify = false;
    u32 jobs = 1;
    std::string format = "text";
    bool normalize = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_jobs) {
    cmd->add_option("--seed", opts.seed, "master seed for all hash draws");
    cmd->add_option("--reps", opts.reps, "override repetition count (0 = auto)");
    cmd->add_flag("--verify", opts.verify, "check candidates exactly and emit witnesses");
    if (with_jobs) cmd->add_option("--jobs", opts.jobs, "worker threads across repetitions");
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_flag("--normalize-alphabet", opts.normalize,
                  "renumber char ids in sorted token order");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct LoadedPair {
    Alphabet alphabet;
    SetString first;
    SetString second;
};

LoadedPair load_pair(const std::string& path1, const std::string& path2, bool normalize) {
    LoadedPair out;
    out.first = parse_setstring(read_file(path1), out.alphabet).str;
    out.second = parse_setstring(read_file(path2), out.alphabet).str;
    if (normalize) {
        Renumbering renum = sorted_renumbering(out.alphabet);
        out.first = apply_bijection(out.first, renum.old_to_new);
        out.second = apply_bijection(out.second, renum.old_to_new);
        out.alphabet = std::move(renum.alphabet);
    }
    return out;
}

std::string params_line(const HashParams& p, u32 rep) {
    std::ostringstream os;
    os << "# params rep=" << rep << " p1=" << p.layer1.p << " r1=" << p.layer1.r
       << " p2=" << p.layer2.p << " r2=" << p.layer2.r << " p3=" << p.layer3.p
       << " r3=" << p.layer3.r;
    return os.str();
}

json params_json(const HashParams& p, u32 rep) {
    return json{{"rep", rep},          {"p1", p.layer1.p}, {"r1", p.layer1.r},
                {"p2", p.layer2.p},    {"r2", p.layer2.r}, {"p3", p.layer3.p},
                {"r3", p.layer3.r}};
}

std::string witness_text(const Bijection& pi, const Alphabet& alphabet) {
    std::string out;
    for (u32 id = 1; id <= pi.size(); ++id) {
        if (id > 1) out += ' ';
        out += alphabet.token(id);
        out += "->";
        out += alphabet.token(pi.forward[id]);
    }
    return out;
}

json witness_json(const Bijection& pi, const Alphabet& alphabet) {
    json out = json::object();
    for (u32 id = 1; id <= pi.size(); ++id)
        out[alphabet.token(id)] = alphabet.token(pi.forward[id]);
    return out;
}

std::string fixed3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string fixed4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string gram(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

long elapsed_ms(Clock::time_point start) {
    return static_cast<long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count());
}

int cmd_compare(const std::string& path1, const std::string& path2, const CommonOpts& opts,
                std::ostream& out, std::ostream& err) {
    LoadedPair in = load_pair(path1, path2, opts.normalize);
    if (in.first.length() != in.second.length()) {
        err << "error: compare needs equal lengths, got " << in.first.length() << " and "
            << in.second.length() << "\n";
        return 2;
    }
    const u64 n = in.first.length();
    const u32 sigma = std::max<u32>(1, in.alphabet.size());
    Clock::time_point start = Clock::now();

    bool match = true;
    bool exact = true;
    std::optional<Bijection> witness;
    CompareStats stats;
    HashParams params;
    if (n > 0) {
        params = select_primes(n, n, sigma, opts.seed);
        if (opts.reps > 0) params.repetitions = opts.reps;
        match = compare_setstrings(in.first, in.second, params, &stats);
    }
    if (opts.verify) {
        exact = exact_compare(in.first, in.second);
        if (exact) witness = construct_bijection(in.first, in.second, sigma);
    }
    const u32 reps = n > 0 ? params.repetitions : 0;

    if (opts.format == "json") {
        json j{{"command", "compare"},
               {"n", n},
               {"sigma", sigma},
               {"N1", in.first.char_count},
               {"N2", in.second.char_count},
               {"seed", opts.seed},
               {"reps", reps}};
        j["params"] = json::array();
        for (u32 rep = 0; rep < reps; ++rep)
            j["params"].push_back(params_json(for_repetition(params, rep), rep));
        j["match"] = match;
        j["char_position_ops"] = stats.char_position_ops;
        if (opts.verify) {
            j["exact_match"] = exact;
            j["witness"] = witness ? witness_json(*witness, in.alphabet) : json(nullptr);
        }
        out << j.dump() << "\n";
    } else {
        out << "# spm compare\n";
        out << "n=" << n << " sigma=" << sigma << " N1=" << in.first.char_count
            << " N2=" << in.second.char_count << " seed=" << opts.seed << " reps=" << reps
            << "\n";
        for (u32 rep = 0; rep < reps; ++rep)
            out << params_line(for_repetition(params, rep), rep) << "\n";
        out << "result=" << (match ? "match" : "no-match") << "\n";
        out << "char_position_ops=" << stats.char_position_ops << "\n";
        if (opts.verify) {
            out << "exact=" << (exact ? "match" : "no-match") << "\n";
            if (witness) out << "witness: " << witness_text(*witness, in.alphabet) << "\n";
        }
    }
    err << "# elapsed_ms=" << elapsed_ms(start) << "\n";
    return (opts.verify ? exact : match) ? 0 : 1;
}

int cmd_match(const std::string& pattern_path, const std::string& text_path,
              const CommonOpts& opts, std::ostream& out, std::ostream& err) {
    LoadedPair in = load_pair(pattern_path, text_path, opts.normalize);
    const SetString& pattern = in.first;
    const SetString& text = in.second;
    if (pattern.length() == 0) {
        err << "error: empty pattern\n";
        return 2;
    }
    if (pattern.length() > text.length()) {
        err << "error: pattern longer than text (" << pattern.length() << " > " << text.length()
            << ")\n";
        return 2;
    }
    const u32 sigma = std::max<u32>(1, in.alphabet.size());
    Clock::time_point start = Clock::now();
    HashParams params = select_primes(text.length(), pattern.length(), sigma, opts.seed);
    if (opts.reps > 0) params.repetitions = opts.reps;
    MatchReport report = find_matches(pattern, text, sigma, params, opts.verify, opts.jobs);

    u64 verified_true = 0;
    for (bool ok : report.candidate_ok) verified_true += ok ? 1 : 0;

    if (opts.format == "json") {
        for (std::size_t c = 0; c < report.candidates.size(); ++c) {
            json j{{"type", "candidate"}, {"pos", report.candidates[c]}};
            if (report.verified) {
                j["verified"] = static_cast<bool>(report.candidate_ok[c]);
                j["witness"] = report.witnesses[c] ? witness_json(*report.witnesses[c], in.alphabet)
                                                   : json(nullptr);
            }
            out << j.dump() << "\n";
        }
        json j{{"type", "summary"},
               {"command", "match"},
               {"n", text.length()},
               {"m", pattern.length()},
               {"sigma", sigma},
               {"N", text.char_count},
               {"M", pattern.char_count},
               {"seed", opts.seed},
               {"reps", params.repetitions},
               {"candidates", report.candidates.size()}};
        if (report.verified) j["verified_true"] = verified_true;
        j["windows"] = report.stats.windows;
        j["preprocess_ops"] = report.stats.preprocess_ops;
        j["transition_steps"] = report.stats.transition_steps;
        j["total_steps"] = report.stats.total_steps();
        j["params"] = json::array();
        for (u32 rep = 0; rep < params.repetitions; ++rep)
            j["params"].push_back(params_json(report.params_per_rep[rep], rep));
        out << j.dump() << "\n";
    } else {
        out << "# spm match\n";
        out << "n=" << text.length() << " m=" << pattern.length() << " sigma=" << sigma
            << " N=" << text.char_count << " M=" << pattern.char_count << " seed=" << opts.seed
            << " reps=" << params.repetitions << "\n";
        for (u32 rep = 0; rep < params.repetitions; ++rep)
            out << params_line(report.params_per_rep[rep], rep) << "\n";
        for (std::size_t c = 0; c < report.candidates.size(); ++c) {
            out << "match pos=" << report.candidates[c];
            if (report.verified) {
                out << " verified=" << (report.candidate_ok[c] ? "true" : "false");
                if (report.witnesses[c])
                    out << " witness: " << witness_text(*report.witnesses[c], in.alphabet);
            }
            out << "\n";
        }
        out << "candidates=" << report.candidates.size();
        if (report.verified) out << " verified_true=" << verified_true;
        out << "\n";
        out << "windows=" << report.stats.windows
            << " preprocess_ops=" << report.stats.preprocess_ops
            << " transition_steps=" << report.stats.transition_steps
            << " total_steps=" << report.stats.total_steps() << "\n";
    }
    err << "# elapsed_ms=" << elapsed_ms(start) << "\n";
    bool found = report.verified ? verified_true > 0 : !report.candidates.empty();
    return found ? 0 : 1;
}

int cmd_oracle(const std::string& pattern_path, const std::string& text_path,
               const CommonOpts& opts, const OracleBudget& budget, bool crosscheck,
               std::ostream& out, std::ostream& err) {
    LoadedPair in = load_pair(pattern_path, text_path, opts.normalize);
    const SetString& pattern = in.first;
    const SetString& text = in.second;
    if (pattern.length() == 0) {
        err << "error: empty pattern\n";
        return 2;
    }
    if (pattern.length() > text.length()) {
        err << "error: pattern longer than text\n";
        return 2;
    }
    Clock::time_point start = Clock::now();
    std::vector<u32> positions = oracle_find_matches(pattern, text, budget, crosscheck);

    if (opts.format == "json") {
        for (u32 pos : positions) out << json{{"type", "candidate"}, {"pos", pos}}.dump() << "\n";
        out << json{{"type", "summary"},
                    {"command", "oracle"},
                    {"n", text.length()},
                    {"m", pattern.length()},
                    {"N", text.char_count},
                    {"M", pattern.char_count},
                    {"matches", positions.size()},
                    {"crosscheck", crosscheck}}
                   .dump()
            << "\n";
    } else {
        out << "# spm oracle\n";
        out << "n=" << text.length() << " m=" << pattern.length() << " N=" << text.char_count
            << " M=" << pattern.char_count << " crosscheck=" << (crosscheck ? "true" : "false")
            << "\n";
        for (u32 pos : positions) out << "match pos=" << pos << "\n";
        out << "matches=" << positions.size() << "\n";
    }
    err << "# elapsed_ms=" << elapsed_ms(start) << "\n";
    return positions.empty() ? 1 : 0;
}

int cmd_gen(const GenSpec& spec, const std::string& prefix, const std::string& format,
            std::ostream& out, std::ostream& err) {
    GeneratedInstance inst = generate_instance(spec);
    const std::string pattern_path = prefix + ".pattern.txt";
    const std::string text_path = prefix + ".text.txt";
    const std::string manifest_path = prefix + ".manifest.jsonl";

    auto write_out = [&err](const std::string& path, const std::string& content) {
        std::ofstream f(path, std::ios::binary);
        f << content;
        if (!f) {
            err << "error: cannot write " << path << "\n";
            return false;
        }
        return true;
    };
    std::string manifest;
    for (const Plant& plant : inst.plants) {
        json j{{"pos", plant.pos}, {"bijection", witness_json(plant.bijection, inst.alphabet)}};
        manifest += j.dump();
        manifest += '\n';
    }
    if (!write_out(pattern_path, serialize_setstring(inst.pattern, inst.alphabet)) ||
        !write_out(text_path, serialize_setstring(inst.text, inst.alphabet)) ||
        !write_out(manifest_path, manifest))
        return 2;

    if (format == "json") {
        out << json{{"command", "gen"},
                    {"n", spec.n},
                    {"m", spec.m},
                    {"sigma", spec.sigma},
                    {"density", spec.density},
                    {"planted", spec.planted},
                    {"seed", spec.seed},
                    {"N", inst.text.char_count},
                    {"M", inst.pattern.char_count},
                    {"pattern", pattern_path},
                    {"text", text_path},
                    {"manifest", manifest_path}}
                   .dump()
            << "\n";
    } else {
        out << "# spm gen\n";
        out << "n=" << spec.n << " m=" << spec.m << " sigma=" << spec.sigma
            << " density=" << gram(spec.density) << " planted=" << spec.planted
            << " seed=" << spec.seed << "\n";
        out << "N=" << inst.text.char_count << " M=" << inst.pattern.char_count << "\n";
        out << "pattern=" << pattern_path << " text=" << text_path << " manifest=" << manifest_path
            << "\n";
    }
    return 0;
}

struct BenchOpts {
    u64 base_chars = 100000;
    u32 doublings = 2;
    u64 m = 50;
    double density = 2.0;
    u32 sigma = 64;
    std::vector<u32> sweep = {4, 64, 4096};
    u64 seed = 0;
    u32 reps = 1;
    std::string format = "text";
};

struct BenchRow {
    u64 requested = 0;
    u64 chars = 0;
    u64 n = 0;
    u32 sigma = 0;
    u64 steps = 0;
    u64 candidates = 0;
    long ms = 0;
};

BenchRow bench_run(u64 target_chars, u32 sigma, const BenchOpts& opts, u64 gen_seed) {
    BenchRow row;
    row.requested = target_chars;
    row.sigma = sigma;
    // Never below one window: a degenerate size request still measures setup.
    row.n = std::max<u64>(
        opts.m, static_cast<u64>(std::llround(static_cast<double>(target_chars) / opts.density)));
    GenSpec gs{row.n, opts.m, sigma, opts.density, 0, gen_seed};
    GeneratedInstance inst = generate_instance(gs);
    row.chars = inst.text.char_count;
    HashParams params = select_primes(row.n, opts.m, sigma, opts.seed);
    params.repetitions = opts.reps;
    Clock::time_point start = Clock::now();
    MatchReport report = find_matches(inst.pattern, inst.text, sigma, params, false, 1);
    row.ms = elapsed_ms(start);
    row.steps = report.stats.total_steps();
    row.candidates = report.candidates.size();
    return row;
}

int cmd_bench(const BenchOpts& opts, std::ostream& out, std::ostream& err) {
    if (opts.reps == 0) throw std::invalid_argument("bench: reps must be >= 1");
    std::vector<BenchRow> scales;
    for (u32 s = 0; s <= opts.doublings; ++s)
        scales.push_back(bench_run(opts.base_chars << s, opts.sigma, opts,
                                   derive_seed(opts.seed, 100 + s)));
    // One shared gen seed across the sweep: the size draws use their own
    // stream, so the per-position set sizes (and so the step counts) line up
    // across alphabet sizes.
    std::vector<BenchRow> sweep;
    for (u32 sigma : opts.sweep)
        sweep.push_back(bench_run(opts.base_chars, sigma, opts, derive_seed(opts.seed, 200)));

    if (opts.format == "json") {
        for (const BenchRow& row : scales) {
            out << json{{"type", "scale"},
                        {"requested_chars", row.requested},
                        {"chars", row.chars},
                        {"n", row.n},
                        {"sigma", row.sigma},
                        {"steps", row.steps},
                        {"candidates", row.candidates}}
                       .dump()
                << "\n";
        }
        for (std::size_t s = 1; s < scales.size(); ++s) {
            double ratio = static_cast<double>(scales[s].steps) / scales[s - 1].steps;
            out << json{{"type", "ratio"}, {"step", s}, {"value", fixed3(ratio)}}.dump() << "\n";
        }
        for (const BenchRow& row : sweep) {
            out << json{{"type", "sweep"},
                        {"sigma", row.sigma},
                        {"chars", row.chars},
                        {"steps", row.steps}}
                       .dump()
                << "\n";
        }
        if (!sweep.empty()) {
            u64 lo = sweep[0].steps, hi = sweep[0].steps;
            for (const BenchRow& row : sweep) {
                lo = std::min(lo, row.steps);
                hi = std::max(hi, row.steps);
            }
            double var = lo == 0 ? 0.0 : static_cast<double>(hi - lo) / static_cast<double>(lo);
            out << json{{"type", "sweep_variation"}, {"value", fixed4(var)}}.dump() << "\n";
        }
    } else {
        out << "# spm bench seed=" << opts.seed << " reps=" << opts.reps << " m=" << opts.m
            << " density=" << gram(opts.density) << " sigma=" << opts.sigma << "\n";
        for (const BenchRow& row : scales)
            out << "scale chars=" << row.chars << " n=" << row.n << " steps=" << row.steps
                << " candidates=" << row.candidates << "\n";
        for (std::size_t s = 1; s < scales.size(); ++s) {
            double ratio = static_cast<double>(scales[s].steps) / scales[s - 1].steps;
            out << "ratio " << s << " = " << fixed3(ratio) << "\n";
        }
        for (const BenchRow& row : sweep)
            out << "sweep sigma=" << row.sigma << " chars=" << row.chars
                << " steps=" << row.steps << "\n";
        if (!sweep.empty()) {
            u64 lo = sweep[0].steps, hi = sweep[0].steps;
            for (const BenchRow& row : sweep) {
                lo = std::min(lo, row.steps);
                hi = std::max(hi, row.steps);
            }
            double var = lo == 0 ? 0.0 : static_cast<double>(hi - lo) / static_cast<double>(lo);
            out << "sweep_variation=" << fixed4(var) << "\n";
        }
    }
    for (const BenchRow& row : scales)
        err << "# scale chars=" << row.chars << " elapsed_ms=" << row.ms << "\n";
    for (const BenchRow& row : sweep)
        err << "# sweep sigma=" << row.sigma << " elapsed_ms=" << row.ms << "\n";
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"set parameterized matching over set-strings"};
    app.name("spm");
    app.require_subcommand(1);

    CommonOpts compare_opts, match_opts, oracle_opts;
    std::string cmp_a, cmp_b, match_p, match_t, oracle_p, oracle_t;

    CLI::App* compare = app.add_subcommand(
        "compare", "decide whether two equal-length set-strings match under a bijection");
    compare->add_option("first", cmp_a, "set-string file")->required();
    compare->add_option("second", cmp_b, "set-string file")->required();
    add_common(compare, compare_opts, false);

    CLI::App* match = app.add_subcommand(
        "match", "report all text windows matching the pattern under a bijection");
    match->add_option("pattern", match_p, "pattern set-string file")->required();
    match->add_option("text", match_t, "text set-string file")->required();
    add_common(match, match_opts, true);

    OracleBudget budget;
    bool crosscheck = false;
    CLI::App* oracle =
        app.add_subcommand("oracle", "brute-force window scan (testing ground truth)");
    oracle->add_option("pattern", oracle_p, "pattern set-string file")->required();
    oracle->add_option("text", oracle_t, "text set-string file")->required();
    oracle->add_option("--max-alphabet", budget.max_alphabet,
                       "largest occurring alphabet enumerated");
    oracle->add_option("--max-work", budget.max_work, "enumeration work cap");
    oracle->add_flag("--crosscheck", crosscheck, "settle every window by enumeration too");
    add_common(oracle, oracle_opts, false);

    GenSpec gen_spec;
    std::string gen_prefix, gen_format = "text";
    CLI::App* gen = app.add_subcommand("gen", "generate a random instance with optional plants");
    gen->add_option("--n", gen_spec.n, "text length")->required();
    gen->add_option("--m", gen_spec.m, "pattern length")->required();
    gen->add_option("--sigma", gen_spec.sigma, "alphabet size")->required();
    gen->add_option("--density", gen_spec.density, "expected set size per position")->required();
    gen->add_option("--planted", gen_spec.planted, "pattern copies planted in the text");
    gen->add_option("--seed", gen_spec.seed, "generator seed");
    gen->add_option("--out", gen_prefix, "output path prefix")->required();
    gen->add_option("--format", gen_format, "output format")->check(CLI::IsMember({"text", "json"}));

    BenchOpts bench_opts;
    CLI::App* bench = app.add_subcommand("bench", "step-count scaling across sizes and alphabets");
    bench->add_option("--base-chars", bench_opts.base_chars, "char count at the smallest scale");
    bench->add_option("--doublings", bench_opts.doublings, "number of times to double");
    bench->add_option("--m", bench_opts.m, "pattern length");
    bench->add_option("--density", bench_opts.density, "expected set size per position");
    bench->add_option("--sigma", bench_opts.sigma, "alphabet size for the doubling runs");
    bench->add_option("--sigma-sweep", bench_opts.sweep, "alphabet sizes swept at the base scale")
        ->delimiter(',');
    bench->add_option("--seed", bench_opts.seed, "master seed");
    bench->add_option("--reps", bench_opts.reps, "repetitions per scan (fixed, default 1)");
    bench->add_option("--format", bench_opts.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (compare->parsed()) return cmd_compare(cmp_a, cmp_b, compare_opts, out, err);
        if (match->parsed()) return cmd_match(match_p, match_t, match_opts, out, err);
        if (oracle->parsed())
            return cmd_oracle(oracle_p, oracle_t, oracle_opts, budget, crosscheck, out, err);
        if (gen->parsed()) return cmd_gen(gen_spec, gen_prefix, gen_format, out, err);
        if (bench->parsed()) return cmd_bench(bench_opts, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand\n";
    return 2;
}

}  // namespace spm
