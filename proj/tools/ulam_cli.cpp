// Command-line front end: distance queries, median computation with
// algorithm selection, perturbation-model generation and reconstruction, and
// seeded benchmark grids. JSON/CSV go to stdout, human-readable notes to
// stderr, so pipelines stay clean.
//
// Exit codes: 0 success, 2 usage/parse error, 3 cap exceeded, 4 I/O error.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ulam/distance.hpp"
#include "ulam/exact_dp.hpp"
#include "ulam/io.hpp"
#include "ulam/median_approx.hpp"
#include "ulam/oracle.hpp"
#include "ulam/prob_model.hpp"
#include "ulam/random.hpp"
#include "ulam/rational.hpp"

namespace {

using ulam::io::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;
constexpr int kExitIo = 4;

struct Options {
    std::string metric = "ulam";
    std::string algo = "combined";
    std::string alpha = "0.1";
    std::string strategy = "per-vertex";
    std::string epsilon;
    std::string format = "json";
    int n = 0;
    int m = 0;
    std::optional<std::uint64_t> seed;
    std::optional<int> cap_n;
    std::optional<int> cap_m;
    bool timing = false;
    std::string input_path;
    std::string out_path;
    std::string source_path;
    std::string config_path;
};

double elapsed_ms_since(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

ulam::CycleStrategy parse_strategy(const std::string& name) {
    if (name == "global-min") return ulam::CycleStrategy::GlobalMin;
    if (name == "per-vertex") return ulam::CycleStrategy::PerVertex;
    throw std::invalid_argument("unknown strategy '" + name + "'");
}

ulam::DpCaps make_caps(const Options& opt) {
    ulam::DpCaps caps;
    if (opt.cap_n) caps.n_cap = *opt.cap_n;
    if (opt.cap_m) caps.m_cap = *opt.cap_m;
    return caps;
}

int run_dist(const Options& opt) {
    const auto raw = ulam::io::read_sequences_file(opt.input_path);
    if (raw.size() != 2) {
        throw ulam::io::parse_error("expected exactly 2 sequences, found " + std::to_string(raw.size()));
    }
    int d = 0;
    if (opt.metric == "ulam") {
        const auto perms = ulam::io::as_permutations(raw);
        d = ulam::ulam_distance(perms[0], perms[1]);
    } else {
        const auto strings = ulam::io::as_strings(raw);
        d = ulam::edit_distance_indel(strings[0], strings[1]);
    }
    std::cout << d << "\n";
    return kExitOk;
}

int run_median(const Options& opt) {
    const auto start = std::chrono::steady_clock::now();
    const auto raw = ulam::io::read_sequences_file(opt.input_path);
    if (raw.empty()) throw ulam::io::parse_error("no sequences in input");

    ordered_json params;
    params["metric"] = opt.metric;
    params["m"] = raw.size();

    ulam::MedianResult result;
    if (opt.metric == "edit") {
        const auto strings = ulam::io::as_strings(raw);
        if (opt.algo == "best") {
            result = ulam::best_from_input(strings);
        } else if (opt.algo == "brute") {
            ulam::oracle::StringSpace space;
            space.sigma = strings.front().sigma();
            space.length = strings.front().length();
            const auto r = ulam::oracle::brute_force_median(strings, space);
            result.median = r.optimum;
            result.metric = ulam::Metric::EditIndel;
            result.objective = r.opt_value;
            result.algorithm = "brute-force";
            params["search_space"] = r.search_space_size;
        } else {
            throw std::invalid_argument("algorithm '" + opt.algo + "' needs the ulam metric");
        }
        params["n"] = strings.front().length();
    } else {
        const auto perms = ulam::io::as_permutations(raw);
        params["n"] = perms.front().size();
        const auto alpha = ulam::Rational::parse(opt.alpha);
        if (opt.algo == "best") {
            result = ulam::best_from_input(perms);
        } else if (opt.algo == "relorder") {
            const auto p = ulam::relative_order(perms, alpha, parse_strategy(opt.strategy));
            result.median = p.elems();
            result.objective = ulam::objective(perms, p);
            result.algorithm = "relative-order";
            params["alpha"] = alpha.to_string();
            params["strategy"] = opt.strategy;
        } else if (opt.algo == "combined") {
            result = ulam::ulam_median_approx(perms, alpha, parse_strategy(opt.strategy));
            params["alpha"] = alpha.to_string();
            params["strategy"] = opt.strategy;
        } else if (opt.algo == "exact3") {
            if (perms.size() != 3) {
                throw std::invalid_argument("exact3 needs exactly 3 permutations, found " +
                                            std::to_string(perms.size()));
            }
            result = ulam::exact_median_3(perms[0], perms[1], perms[2], make_caps(opt));
        } else if (opt.algo == "dp-m") {
            result = ulam::median_m_dp(perms, make_caps(opt));
        } else if (opt.algo == "brute") {
            const auto r = ulam::oracle::brute_force_median(perms);
            result.median = r.optimum;
            result.objective = r.opt_value;
            result.algorithm = "brute-force";
            params["search_space"] = r.search_space_size;
        } else {
            throw std::invalid_argument("unknown algorithm '" + opt.algo + "'");
        }
    }

    if (result.source_index) params["source_index"] = *result.source_index;
    if (opt.format == "text") {
        std::cout << "algorithm: " << result.algorithm << "\n"
                  << "median: " << ulam::io::format_sequence(result.median) << "\n"
                  << "objective: " << result.objective << "\n";
        if (opt.timing) std::cout << "elapsed_ms: " << elapsed_ms_since(start) << "\n";
        return kExitOk;
    }
    ordered_json doc;
    doc["algorithm"] = result.algorithm;
    doc["median"] = result.median;
    doc["objective"] = result.objective;
    if (opt.timing) doc["elapsed_ms"] = elapsed_ms_since(start);
    doc["params"] = params;
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
}

int run_gen(Options opt) {
    if (!opt.seed) {
        opt.seed = std::random_device{}();
        std::cerr << "note: no --seed given, drew " << *opt.seed << " from entropy\n";
    }
    ulam::ModelParams params;
    params.epsilon = ulam::Rational::parse(opt.epsilon);
    params.m = opt.m;
    params.seed = *opt.seed;

    ulam::Permutation source = ulam::Permutation::identity(std::max(opt.n, 1));
    if (!opt.source_path.empty()) {
        const auto raw = ulam::io::read_sequences_file(opt.source_path);
        if (raw.size() != 1) throw ulam::io::parse_error("source file must hold exactly 1 permutation");
        source = ulam::Permutation(raw.front());
    } else if (opt.n < 1) {
        throw std::invalid_argument("--n must be positive");
    }

    const auto set = ulam::generate(source, params);
    ulam::io::write_text_file(opt.out_path, ulam::io::sampleset_to_json(set).dump(2) + "\n");

    double mean_moves = 0, mean_dist = 0;
    for (int i = 0; i < params.m; ++i) {
        mean_moves += static_cast<double>(set.records[static_cast<std::size_t>(i)].moves.size());
        mean_dist += ulam::ulam_distance(source, set.samples[static_cast<std::size_t>(i)]);
    }
    mean_moves /= params.m;
    mean_dist /= params.m;

    ordered_json doc;
    doc["out"] = opt.out_path;
    doc["n"] = source.size();
    doc["epsilon"] = params.epsilon.to_string();
    doc["m"] = params.m;
    doc["seed"] = params.seed;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", mean_moves);
    doc["mean_moved"] = buf;
    std::snprintf(buf, sizeof buf, "%.4f", mean_dist);
    doc["mean_distance"] = buf;
    std::cout << doc.dump(2) << "\n";
    std::cerr << "wrote " << opt.out_path << ": mean |Sigma_i| = " << mean_moves
              << ", mean d(x, x_i) = " << mean_dist << "\n";
    return kExitOk;
}

int run_reconstruct(const Options& opt) {
    const auto set = ulam::io::read_sampleset_file(opt.input_path);
    const int n = set.source.size();
    const int m = static_cast<int>(set.samples.size());
    const bool large = ulam::uses_large_m_branch(n, m);
    const auto reconstruction = ulam::reconstruct(set.samples, set.params.epsilon);

    if (opt.format == "text") {
        std::cout << "branch: " << (large ? "large-m" : "small-m") << "\n"
                  << "reconstruction: " << ulam::io::format_sequence(reconstruction.elems()) << "\n"
                  << "distance_to_source: " << ulam::ulam_distance(set.source, reconstruction) << "\n"
                  << "objective: " << ulam::objective(set.samples, reconstruction) << "\n";
        return kExitOk;
    }
    ordered_json doc;
    doc["branch"] = large ? "large-m" : "small-m";
    doc["n"] = n;
    doc["m"] = m;
    doc["epsilon"] = set.params.epsilon.to_string();
    doc["reconstruction"] = reconstruction.elems();
    doc["distance_to_source"] = ulam::ulam_distance(set.source, reconstruction);
    doc["objective"] = ulam::objective(set.samples, reconstruction);
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
}

struct BenchGrid {
    int n = 0;
    int m = 0;
    int instances = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> algorithms;
    std::optional<bool> oracle;
};

std::vector<BenchGrid> parse_bench_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ulam::io::io_error("cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ulam::io::parse_error(std::string("invalid JSON in '") + path + "': " + e.what());
    }
    std::vector<nlohmann::json> grids;
    if (doc.is_array()) {
        grids.assign(doc.begin(), doc.end());
    } else {
        grids.push_back(doc);
    }
    std::vector<BenchGrid> out;
    for (const auto& g : grids) {
        BenchGrid grid;
        try {
            grid.n = g.at("n").get<int>();
            grid.m = g.at("m").get<int>();
            grid.instances = g.at("instances").get<int>();
            if (!g.contains("seed")) {
                throw ulam::io::parse_error("bench config must pin an explicit seed");
            }
            grid.seed = g.at("seed").get<std::uint64_t>();
            grid.algorithms = g.value("algorithms", std::vector<std::string>{});
            if (g.contains("oracle")) grid.oracle = g.at("oracle").get<bool>();
        } catch (const nlohmann::json::exception& e) {
            throw ulam::io::parse_error(std::string("bad bench config: ") + e.what());
        }
        if (grid.n < 1 || grid.m < 1 || grid.instances < 0) {
            throw ulam::io::parse_error("bench config needs n >= 1, m >= 1, instances >= 0");
        }
        out.push_back(std::move(grid));
    }
    return out;
}

int run_bench(const Options& opt) {
    const auto grids = parse_bench_config(opt.config_path);
    std::cout << "instance_id,n,m,algorithm,objective,opt,ratio,elapsed_ms\n";
    long long instance_id = 0;
    for (const auto& grid : grids) {
        const bool want_oracle = grid.oracle.value_or(grid.n <= ulam::oracle::PermutationSpace::kMaxN);
        for (int inst = 0; inst < grid.instances; ++inst, ++instance_id) {
            auto eng = ulam::substream_engine(grid.seed, static_cast<std::uint64_t>(inst));
            std::vector<ulam::Permutation> S;
            S.reserve(static_cast<std::size_t>(grid.m));
            for (int i = 0; i < grid.m; ++i) S.push_back(ulam::random_permutation(eng, grid.n));

            std::optional<ulam::oracle::OracleResult> oracle_result;
            if (want_oracle && !grid.algorithms.empty()) {
                oracle_result = ulam::oracle::brute_force_median(S);
            }

            for (const auto& algo : grid.algorithms) {
                const auto start = std::chrono::steady_clock::now();
                long long obj = 0;
                if (algo == "best") {
                    obj = ulam::best_from_input(S).objective;
                } else if (algo == "relorder") {
                    obj = ulam::objective(S, ulam::relative_order(S, ulam::Rational::parse(opt.alpha),
                                                                  parse_strategy(opt.strategy)));
                } else if (algo == "combined") {
                    obj = ulam::ulam_median_approx(S, ulam::Rational::parse(opt.alpha),
                                                   parse_strategy(opt.strategy))
                              .objective;
                } else if (algo == "exact3") {
                    if (grid.m != 3) throw std::invalid_argument("exact3 needs m == 3 in the grid");
                    obj = ulam::exact_median_3(S[0], S[1], S[2], make_caps(opt)).objective;
                } else if (algo == "dp-m") {
                    obj = ulam::median_m_dp(S, make_caps(opt)).objective;
                } else if (algo == "brute") {
                    obj = ulam::oracle::brute_force_median(S).opt_value;
                } else {
                    throw std::invalid_argument("unknown algorithm '" + algo + "' in bench config");
                }
                const double ms = elapsed_ms_since(start);

                std::cout << instance_id << ',' << grid.n << ',' << grid.m << ',' << algo << ','
                          << obj << ',';
                if (oracle_result) std::cout << oracle_result->opt_value;
                std::cout << ',';
                if (oracle_result) {
                    const double ratio = oracle_result->opt_value == 0
                                             ? (obj == 0 ? 1.0 : std::numeric_limits<double>::infinity())
                                             : static_cast<double>(obj) /
                                                   static_cast<double>(oracle_result->opt_value);
                    char buf[32];
                    std::snprintf(buf, sizeof buf, "%.6f", ratio);
                    std::cout << buf;
                }
                std::cout << ',';
                if (opt.timing) {
                    char buf[32];
                    std::snprintf(buf, sizeof buf, "%.3f", ms);
                    std::cout << buf;
                }
                std::cout << '\n';
            }
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Median permutations under the Ulam metric: approximation algorithms, "
                 "an exact 3-input median, a perturbation model with reconstruction, and "
                 "brute-force oracles"};
    app.require_subcommand(1);
    Options opt;

    auto* dist = app.add_subcommand("dist", "distance between the two sequences in a file");
    dist->add_option("file", opt.input_path, "input file with exactly two sequences")->required();
    dist->add_option("--metric", opt.metric, "ulam|edit")->check(CLI::IsMember({"ulam", "edit"}));

    auto* median = app.add_subcommand("median", "median of the permutations in a file");
    median->add_option("file", opt.input_path, "input file, one permutation per line")->required();
    median->add_option("--algo", opt.algo, "best|relorder|combined|exact3|dp-m|brute")
        ->check(CLI::IsMember({"best", "relorder", "combined", "exact3", "dp-m", "brute"}));
    median->add_option("--metric", opt.metric, "ulam|edit")->check(CLI::IsMember({"ulam", "edit"}));
    median->add_option("--alpha", opt.alpha, "majority threshold parameter (default 0.1)");
    median->add_option("--strategy", opt.strategy, "global-min|per-vertex")
        ->check(CLI::IsMember({"global-min", "per-vertex"}));
    median->add_option("--cap-n", opt.cap_n, "override the DP dimension cap");
    median->add_option("--cap-m", opt.cap_m, "override the DP input-count cap");
    median->add_option("--format", opt.format, "json|text")->check(CLI::IsMember({"json", "text"}));
    median->add_flag("--timing", opt.timing, "include elapsed_ms in the output");

    auto* gen = app.add_subcommand("gen", "draw perturbed copies of a source permutation");
    gen->add_option("--n", opt.n, "dimension (ignored with --source)");
    gen->add_option("--epsilon", opt.epsilon, "per-symbol move probability, e.g. 0.05 or 1/20")
        ->required();
    gen->add_option("--m", opt.m, "number of samples")->required()->check(CLI::PositiveNumber);
    gen->add_option("--seed", opt.seed, "RNG seed (drawn from entropy and echoed when omitted)");
    gen->add_option("--out", opt.out_path, "output sample-set path")->required();
    gen->add_option("--source", opt.source_path, "file holding the source permutation");

    auto* rec = app.add_subcommand("reconstruct", "reconstruct the source from a sample set");
    rec->add_option("sampleset", opt.input_path, "sample-set JSON file")->required();
    rec->add_option("--format", opt.format, "json|text")->check(CLI::IsMember({"json", "text"}));

    auto* bench = app.add_subcommand("bench", "run a seeded benchmark grid, CSV on stdout");
    bench->add_option("--config", opt.config_path, "grid config JSON")->required();
    bench->add_option("--alpha", opt.alpha, "majority threshold parameter (default 0.1)");
    bench->add_option("--strategy", opt.strategy, "global-min|per-vertex")
        ->check(CLI::IsMember({"global-min", "per-vertex"}));
    bench->add_option("--cap-n", opt.cap_n, "override the DP dimension cap");
    bench->add_option("--cap-m", opt.cap_m, "override the DP input-count cap");
    bench->add_flag("--timing", opt.timing, "fill the elapsed_ms column");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (dist->parsed()) return run_dist(opt);
        if (median->parsed()) return run_median(opt);
        if (gen->parsed()) return run_gen(opt);
        if (rec->parsed()) return run_reconstruct(opt);
        if (bench->parsed()) return run_bench(opt);
    } catch (const ulam::cap_exceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCap;
    } catch (const ulam::io::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ulam::io::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
