// Command-line front end: every library operation behind deterministic,
// machine-readable verbs. JSON output is a strict single line per run so
// shell pipelines and the acceptance suite can compare bytes.
#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "sumset/json_io.hpp"

namespace {

using sumset::SearchConfig;
using sumset::SetWindow;
using sumset::Verdict;
namespace io = sumset::io;

constexpr int kExitOk = 0;
constexpr int kExitIrreducible = 1;
constexpr int kExitLimit = 2;
constexpr int kExitUsage = 64;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read set literal file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return text;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// Set literal grammar (auto-detected): comma list "0,2,5"; binary string
// "b:101001" with index 0 leftmost; "@path" for a file holding either form;
// "-" or an empty string for the empty set. The window is --window when
// given, else the largest element (b: form: string length - 1).
SetWindow parse_set_literal(std::string text, std::optional<std::int64_t> window) {
    text = trim(text);
    if (!text.empty() && text[0] == '@') text = trim(read_file(text.substr(1)));
    if (text == "-") text = "";
    if (text.rfind("b:", 0) == 0) {
        const std::string bits = text.substr(2);
        if (bits.empty()) throw std::invalid_argument("empty binary set literal");
        const std::int64_t inferred = static_cast<std::int64_t>(bits.size()) - 1;
        const std::int64_t n = window.value_or(inferred);
        if (n < inferred)
            throw std::invalid_argument("--window smaller than the binary literal");
        SetWindow s(n);
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] == '1')
                s.set(static_cast<std::int64_t>(i));
            else if (bits[i] != '0')
                throw std::invalid_argument("binary set literal admits only 0 and 1");
        }
        return s;
    }
    std::vector<std::int64_t> elems;
    std::int64_t max_elem = -1;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string tok = trim(text.substr(pos, comma - pos));
        if (!tok.empty()) {
            std::size_t used = 0;
            const long long v = std::stoll(tok, &used);
            if (used != tok.size() || v < 0)
                throw std::invalid_argument("bad set element: " + tok);
            elems.push_back(v);
            max_elem = std::max<std::int64_t>(max_elem, v);
        }
        pos = comma + 1;
    }
    if (!window && max_elem < 0)
        throw std::invalid_argument("empty set literal needs an explicit --window");
    const std::int64_t n = window.value_or(max_elem);
    if (max_elem > n) throw std::invalid_argument("--window smaller than the largest element");
    return SetWindow::from_elements(n, elems);
}

struct ConfigFlags {
    int min_size = 2;
    std::int64_t budget = 0;
    std::int64_t size_cap = -1;
    std::int64_t node_limit = -1;
    int threads = 0;

    SearchConfig to_config() const {
        SearchConfig cfg;
        cfg.min_size = min_size;
        cfg.budget = budget;
        if (size_cap >= 0) cfg.size_cap = static_cast<int>(size_cap);
        if (node_limit >= 0) cfg.node_limit = static_cast<std::uint64_t>(node_limit);
        cfg.threads = threads;
        return cfg;
    }
};

void add_config_flags(CLI::App* cmd, ConfigFlags& flags, bool with_budget = true) {
    cmd->add_option("--min-size", flags.min_size, "lower bound on |Y| and |Z| (default 2)");
    if (with_budget)
        cmd->add_option("--budget", flags.budget, "tolerated flips |A xor A'| (default 0)");
    cmd->add_option("--size-cap", flags.size_cap, "upper bound on |Y| and |Z|");
    cmd->add_option("--node-limit", flags.node_limit,
                    "search-effort guard; exceeding it reports 'inconclusive'");
}

void print_witness_text(const sumset::BudgetedWitness& w) {
    std::cout << "Y = " << w.decomposition.y.to_string() << "\n";
    std::cout << "Z = " << w.decomposition.z.to_string() << "\n";
    std::cout << "A' = " << w.a_prime.to_string() << "\n";
    std::cout << "flips (" << w.flips.size() << ") = "
              << SetWindow::from_elements(
                     w.flips.empty() ? 0 : w.flips.back(),
                     w.flips)
                     .to_string()
              << "\n";
}

std::uint64_t wall_ms_since(std::chrono::steady_clock::time_point start) {
    return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                          std::chrono::steady_clock::now() - start)
                                          .count());
}

void append_line(const std::string& path, const std::string& line) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cannot open results file: " + path);
    out << line << "\n";
}

void append_csv(const std::string& path, const std::string& row) {
    const bool fresh = !std::ifstream(path).good();
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cannot open csv file: " + path);
    if (fresh) out << io::estimate_csv_header() << "\n";
    out << row << "\n";
}

int exit_code_for(Verdict v, bool quiet) {
    if (v == Verdict::inconclusive) return kExitLimit;
    if (!quiet) return kExitOk;
    return v == Verdict::decomposable ? kExitOk : kExitIrreducible;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-window sumset decomposability toolkit"};
    app.require_subcommand(1);

    bool json_mode = false;
    app.add_flag("--json", json_mode, "emit strict single-line JSON on stdout");

    // ---- decide ----------------------------------------------------------
    auto* decide = app.add_subcommand("decide", "decide window-sumset decomposability");
    std::string decide_set;
    decide->add_option("set", decide_set, "set literal")->required();
    std::int64_t decide_window = -1;
    decide->add_option("--window", decide_window, "window end n (default: max element)");
    ConfigFlags decide_flags;
    add_config_flags(decide, decide_flags);
    bool decide_quiet = false;
    decide->add_flag("--quiet", decide_quiet,
                     "no output; exit 0 decomposable, 1 irreducible, 2 inconclusive");

    // ---- census ----------------------------------------------------------
    auto* census_cmd = app.add_subcommand("census", "exhaustive census of windows over [0, n]");
    std::int64_t census_n = 0;
    census_cmd->add_option("--n", census_n, "window end")->required();
    ConfigFlags census_flags;
    add_config_flags(census_cmd, census_flags);
    census_cmd->add_option("--threads", census_flags.threads, "worker count (0 = all)");
    bool census_force = false;
    census_cmd->add_flag("--force", census_force, "allow n > 16 despite the cost");

    // ---- sample ----------------------------------------------------------
    auto* sample = app.add_subcommand("sample", "seeded Monte Carlo estimation");
    sample->require_subcommand(1);
    std::int64_t sample_n = 0;
    std::int64_t sample_trials = 0;
    std::uint64_t sample_seed = 0;
    bool sample_seed_given = false;
    std::string sample_out, sample_csv;
    int sample_threads = 0;
    std::int64_t sample_node_limit = -1;

    auto add_sample_common = [&](CLI::App* cmd, bool with_node_limit) {
        cmd->add_option("--n", sample_n, "window end")->required();
        cmd->add_option("--trials", sample_trials, "number of samples")->required();
        cmd->add_option("--seed", sample_seed, "64-bit seed")
            ->each([&](const std::string&) { sample_seed_given = true; });
        cmd->add_option("--out", sample_out, "append one JSON record to this file");
        cmd->add_option("--csv", sample_csv, "append one CSV row to this file");
        cmd->add_option("--threads", sample_threads, "worker count (0 = all)");
        if (with_node_limit)
            cmd->add_option("--node-limit", sample_node_limit,
                            "per-trial decider effort guard");
    };
    auto* sample_event = sample->add_subcommand("event", "estimate P(E_n) for parameter k");
    std::int64_t sample_k = 0;
    sample_event->add_option("--k", sample_k, "event parameter k")->required();
    add_sample_common(sample_event, true);
    auto* sample_decide = sample->add_subcommand("decide", "estimate decomposable fraction");
    ConfigFlags sample_flags;
    add_config_flags(sample_decide, sample_flags);
    add_sample_common(sample_decide, false);

    // ---- bounds ----------------------------------------------------------
    auto* bounds_cmd = app.add_subcommand("bounds", "exact counting bounds and constants");
    std::int64_t bounds_n = -1, bounds_k = -1;
    bounds_cmd->add_option("--n", bounds_n, "window end for w and p_bound");
    bounds_cmd->add_option("--k", bounds_k, "parameter k");
    bool bounds_find_k = false;
    bounds_cmd->add_flag("--find-k", bounds_find_k,
                         "smallest k with alpha_k below 2^(1/3), with brackets");
    std::int64_t tail_from = -1;
    bounds_cmd->add_option("--tail-from", tail_from, "certify c and the geometric tail from n0");
    double bounds_c = -1.0;
    bounds_cmd->add_option("--c", bounds_c, "candidate envelope constant in (1/2, 1)");

    // ---- game ------------------------------------------------------------
    auto* game_cmd = app.add_subcommand("game", "Banach-Mazur play of the cylinder strategy");
    sumset::game::GameParams params;
    std::string game_f0, game_adversary = "minimal";
    std::int64_t game_rounds = 1;
    std::uint64_t game_seed = 0;
    bool game_seed_given = false;
    double game_alpha = 0.25, game_beta = 0.8;
    std::int64_t game_k0 = 0;
    game_cmd->add_option("--rounds", game_rounds, "number of rounds")->required();
    game_cmd->add_option("--alpha", game_alpha, "alpha in (0, 1/3) for verification budgets");
    game_cmd->add_option("--beta", game_beta, "beta in (3/4, 1)");
    game_cmd->add_option("--f0", game_f0, "Player I's opening base (set literal)")->required();
    game_cmd->add_option("--k0", game_k0, "Player I's opening k")->required();
    game_cmd->add_option("--adversary", game_adversary, "minimal | random | sumsetish");
    game_cmd->add_option("--seed", game_seed, "64-bit seed")
        ->each([&](const std::string&) { game_seed_given = true; });
    bool game_verify = false;
    game_cmd->add_flag("--verify", game_verify, "run the budgeted decider on every round");
    ConfigFlags game_flags;
    game_flags.node_limit = 100000000;
    add_config_flags(game_cmd, game_flags, /*with_budget=*/false);

    // ---- freq ------------------------------------------------------------
    auto* freq = app.add_subcommand("freq", "block-pattern frequency in a window");
    std::string freq_set, freq_pattern;
    std::int64_t freq_pattern_window = 0, freq_n = -1, freq_window = -1;
    freq->add_option("set", freq_set, "set literal for A")->required();
    freq->add_option("--pattern", freq_pattern, "set literal for F")->required();
    freq->add_option("--pattern-window", freq_pattern_window, "interval length |I|")->required();
    freq->add_option("--n", freq_n, "number of shifts minus one")->required();
    freq->add_option("--window", freq_window, "window end of A");

    // ---- oracle ----------------------------------------------------------
    auto* oracle_cmd = app.add_subcommand("oracle", "enumerate all achievable sumset masks");
    std::int64_t oracle_n = 0;
    oracle_cmd->add_option("--n", oracle_n, "window end (at most 13)")->required();
    int oracle_min_size = 2;
    oracle_cmd->add_option("--min-size", oracle_min_size, "lower bound on factor sizes");
    std::int64_t oracle_cap = -1;
    oracle_cmd->add_option("--size-cap", oracle_cap, "upper bound on factor sizes");
    int oracle_threads = 0;
    oracle_cmd->add_option("--threads", oracle_threads, "worker count (0 = all)");
    bool oracle_dump = false;
    oracle_cmd->add_flag("--dump", oracle_dump, "list the achievable masks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*decide) {
            SetWindow a = parse_set_literal(
                decide_set, decide_window >= 0 ? std::optional(decide_window) : std::nullopt);
            const SearchConfig cfg = decide_flags.to_config();
            const sumset::DecideResult res = sumset::decide_budgeted(a, cfg);
            if (json_mode) {
                std::cout << io::decide_to_json(a, cfg, res).dump() << "\n";
            } else if (!decide_quiet) {
                std::cout << "verdict: " << to_string(res.verdict) << " (nodes " << res.nodes
                          << ")\n";
                if (res.witness) print_witness_text(*res.witness);
            }
            return exit_code_for(res.verdict, decide_quiet);
        }

        if (*census_cmd) {
            const SearchConfig cfg = census_flags.to_config();
            const sumset::CensusResult res = sumset::census(census_n, cfg, census_force);
            if (json_mode) {
                std::cout << io::census_to_json(res, cfg).dump() << "\n";
            } else {
                std::cout << "n " << res.n << ": " << res.decomposable << " of " << res.total
                          << " decomposable (fraction " << res.fraction << ", inconclusive "
                          << res.inconclusive << ")\n";
            }
            return res.inconclusive > 0 ? kExitLimit : kExitOk;
        }

        if (*sample) {
            if (json_mode && !sample_seed_given)
                throw std::invalid_argument("--json sampling requires an explicit --seed");
            const auto start = std::chrono::steady_clock::now();
            std::optional<std::uint64_t> limit;
            if (sample_node_limit >= 0) limit = static_cast<std::uint64_t>(sample_node_limit);
            sumset::mc::Estimate est;
            std::optional<double> pb;
            if (*sample_event) {
                est = sumset::mc::estimate_event(sample_n, sample_k,
                                                 static_cast<std::uint64_t>(sample_trials),
                                                 sample_seed, sample_threads, limit);
                pb = sumset::bounds::p_bound(sample_n, sample_k);
            } else {
                SearchConfig cfg = sample_flags.to_config();
                cfg.threads = sample_threads;
                if (limit) cfg.node_limit = limit;
                est = sumset::mc::estimate_decomposable(
                    sample_n, cfg, static_cast<std::uint64_t>(sample_trials), sample_seed);
            }
            const io::json j = io::estimate_to_json(est, pb);
            if (!sample_out.empty()) {
                io::json rec = j;
                rec["wall_ms"] = wall_ms_since(start);
                append_line(sample_out, rec.dump());
            }
            if (!sample_csv.empty()) append_csv(sample_csv, io::estimate_csv_row(est, pb));
            if (json_mode) {
                std::cout << j.dump() << "\n";
            } else {
                std::cout << "p_hat " << est.p_hat << " (" << est.hits << "/" << est.trials
                          << " hits, " << est.inconclusive << " inconclusive), 95% CI ["
                          << est.ci_low << ", " << est.ci_high << "]";
                if (pb) std::cout << ", p_bound " << *pb;
                std::cout << "\n";
            }
            return est.inconclusive > 0 ? kExitLimit : kExitOk;
        }

        if (*bounds_cmd) {
            io::json j;
            if (bounds_find_k) {
                const std::int64_t k = sumset::bounds::find_k();
                j = bounds_n >= 0 ? io::bounds_to_json(bounds_n, k) : io::json{};
                j["command"] = "bounds";
                j["k"] = k;
                const auto a16 = sumset::bounds::alpha_k(k - 1);
                const auto a17 = sumset::bounds::alpha_k(k);
                const auto thr = sumset::bounds::cbrt2();
                j["threshold"] = "2^(1/3)";
                j["threshold_lo"] = thr.lo;
                j["threshold_hi"] = thr.hi;
                j["alpha_below"] = {{"k", k}, {"lo", a17.lo}, {"hi", a17.hi}};
                j["alpha_above"] = {{"k", k - 1}, {"lo", a16.lo}, {"hi", a16.hi}};
            } else {
                if (bounds_n < 0 || bounds_k < 1)
                    throw std::invalid_argument("bounds needs --n and --k (or --find-k)");
                j = io::bounds_to_json(bounds_n, bounds_k);
            }
            if (tail_from >= 0) {
                if (bounds_k < 2 && !bounds_find_k)
                    throw std::invalid_argument("--tail-from needs --k or --find-k");
                const std::int64_t k = bounds_find_k ? j["k"].get<std::int64_t>() : bounds_k;
                const auto cert = sumset::bounds::tail_and_c(
                    tail_from, k, bounds_c > 0 ? std::optional(bounds_c) : std::nullopt);
                io::json t;
                t["n0"] = cert.n0;
                t["c"] = cert.c;
                t["checked_through"] = cert.checked_through;
                t["rate_lo"] = cert.rate.lo;
                t["rate_hi"] = cert.rate.hi;
                t["tail_lo"] = cert.tail.lo;
                t["tail_hi"] = cert.tail.hi;
                t["note"] = cert.note;
                j["tail"] = t;
            }
            if (json_mode) {
                std::cout << j.dump() << "\n";
            } else {
                for (auto& [key, value] : j.items())
                    if (key != "command") std::cout << key << ": " << value.dump() << "\n";
            }
            return kExitOk;
        }

        if (*game_cmd) {
            if (json_mode && game_adversary != "minimal" && !game_seed_given)
                throw std::invalid_argument(
                    "--json with a randomized adversary requires an explicit --seed");
            params.alpha = game_alpha;
            params.beta = game_beta;
            params.rounds = game_rounds;
            params.adversary = sumset::game::adversary_from_string(game_adversary);
            params.seed = game_seed;
            params.f0 = parse_set_literal(game_f0, std::nullopt);
            params.k0 = game_k0;
            const auto transcript = sumset::game::play(params);
            io::json j = io::transcript_to_json(transcript);
            bool inconclusive_seen = false;
            if (game_verify) {
                SearchConfig cfg = game_flags.to_config();
                const auto report = sumset::game::verify_prefix(transcript, params.alpha, cfg);
                j["verify"] = io::verify_to_json(report);
                for (const auto& r : report.rounds)
                    inconclusive_seen |= r.verdict == Verdict::inconclusive;
            }
            if (json_mode) {
                std::cout << j.dump() << "\n";
            } else {
                for (const auto& m : transcript.moves) {
                    std::cout << "round " << m.m << ": k " << m.k << ", t " << m.t
                              << ", window_end " << m.window_end << ", prefix "
                              << m.prefix.to_string() << "\n";
                }
                if (game_verify)
                    for (const auto& r : j["verify"]["rounds"])
                        std::cout << "verify round " << r["m"] << ": n " << r["n"] << ", budget "
                                  << r["budget"] << " -> " << r["verdict"].get<std::string>()
                                  << "\n";
            }
            return inconclusive_seen ? kExitLimit : kExitOk;
        }

        if (*freq) {
            SetWindow f = parse_set_literal(
                freq_pattern,
                freq_pattern_window >= 1 ? std::optional(freq_pattern_window - 1) : std::nullopt);
            std::optional<std::int64_t> window;
            if (freq_window >= 0)
                window = freq_window;
            else if (freq_n >= 0)
                window = freq_n + freq_pattern_window - 1;  // tightest legal window
            SetWindow a = parse_set_literal(freq_set, window);
            const std::int64_t count = sumset::pattern_frequency(a, freq_pattern_window, f, freq_n);
            if (json_mode) {
                io::json j;
                j["command"] = "freq";
                j["n"] = freq_n;
                j["pattern_window"] = freq_pattern_window;
                j["pattern"] = io::set_to_json(f);
                j["count"] = count;
                j["fraction"] = static_cast<double>(count) / static_cast<double>(freq_n + 1);
                j["expected_uniform"] = std::pow(0.5, static_cast<double>(freq_pattern_window));
                std::cout << j.dump() << "\n";
            } else {
                std::cout << count << " of " << freq_n + 1 << " shifts match ("
                          << static_cast<double>(count) / static_cast<double>(freq_n + 1)
                          << "; uniform expectation "
                          << std::pow(0.5, static_cast<double>(freq_pattern_window)) << ")\n";
            }
            return kExitOk;
        }

        if (*oracle_cmd) {
            const auto res = sumset::oracle_decomposable_masks(
                oracle_n, oracle_min_size,
                oracle_cap >= 0 ? std::optional(static_cast<int>(oracle_cap)) : std::nullopt,
                oracle_threads);
            if (json_mode) {
                io::json j;
                j["command"] = "oracle";
                j["n"] = res.n;
                j["min_size"] = oracle_min_size;
                j["size_cap"] = oracle_cap >= 0 ? io::json(oracle_cap) : io::json(nullptr);
                j["count"] = res.count;
                if (oracle_dump) {
                    io::json masks = io::json::array();
                    for (std::size_t m = 0; m < res.achievable.size(); ++m)
                        if (res.achievable[m]) masks.push_back(m);
                    j["masks"] = masks;
                }
                std::cout << j.dump() << "\n";
            } else {
                std::cout << res.count << " of " << res.achievable.size()
                          << " masks achievable\n";
                if (oracle_dump)
                    for (std::size_t m = 0; m < res.achievable.size(); ++m)
                        if (res.achievable[m])
                            std::cout << SetWindow::from_words(oracle_n, {m}).to_string() << "\n";
            }
            return kExitOk;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitLimit;
    }
    return kExitOk;
}
