#include "mn/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "mn/dataset.hpp"
#include "mn/eval.hpp"
#include "mn/gsmn.hpp"
#include "mn/ibmap_hc.hpp"
#include "mn/ibmap_ts.hpp"
#include "mn/ibscore.hpp"
#include "mn/report.hpp"
#include "mn/rng.hpp"
#include "mn/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace mn {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since)
        .count();
}

// Seed-stream tags, so that every task draws from an independent stream of
// the root seed.
enum SeedStream : std::uint64_t {
    kStructureStream = 1,
    kParameterStream = 2,
    kSamplerStream = 3,
    kSubsampleStream = 4,
    kTripletStream = 5,
};

struct GenerateArgs {
    int n = 0;
    int tau = 0;
    int graphs = 10;
    std::vector<long> sizes;
    std::uint64_t seed = 0;
    int burn_in = 1000;
    int thin = 10;
    std::string out_dir;
};

std::string data_file_name(int graph, long size) {
    return "data_g" + std::to_string(graph) + "_n" + std::to_string(size) + ".csv";
}

int run_generate(const GenerateArgs& a) {
    fs::create_directories(a.out_dir);
    const long master_size = *std::max_element(a.sizes.begin(), a.sizes.end());

    json files = json::array();
    for (int g = 0; g < a.graphs; ++g) {
        const Structure truth = random_structure(a.n, a.tau, mix_seed(a.seed, kStructureStream, g));
        const PairwiseModel model = random_parameters(truth, mix_seed(a.seed, kParameterStream, g));
        const Dataset master =
            gibbs_sample(model, master_size, mix_seed(a.seed, kSamplerStream, g), a.burn_in, a.thin);

        const std::string structure_file = "structure_g" + std::to_string(g) + ".txt";
        const std::string weights_file = "weights_g" + std::to_string(g) + ".txt";
        save_structure((fs::path(a.out_dir) / structure_file).string(), truth);
        {
            std::ofstream out(fs::path(a.out_dir) / weights_file);
            write_weights(out, model);
        }
        json entry{{"graph", g}, {"structure", structure_file}, {"weights", weights_file},
                   {"datasets", json::array()}};
        for (long size : a.sizes) {
            const Dataset d = subsample(master, size, mix_seed(a.seed, kSubsampleStream, g, size));
            const std::string data_file = data_file_name(g, size);
            save_dataset_file((fs::path(a.out_dir) / data_file).string(), d);
            entry["datasets"].push_back({{"N", size}, {"file", data_file}});
        }
        files.push_back(std::move(entry));
    }

    json manifest{{"command", "generate"}, {"n", a.n},         {"tau", a.tau},
                  {"graphs", a.graphs},    {"sizes", a.sizes}, {"seed", a.seed},
                  {"burn_in", a.burn_in},  {"thin", a.thin},   {"files", files}};
    write_json_file((fs::path(a.out_dir) / "manifest.json").string(), manifest);
    std::cout << "generated " << a.graphs << " networks x " << a.sizes.size()
              << " dataset sizes under " << a.out_dir << "\n";
    return 0;
}

struct LearnArgs {
    std::string algorithm;
    std::string data_file;
    std::string schema_file;
    std::string test_name = "bayes";
    std::string truth_file;
    std::string start_file;
    std::string out_prefix = "run";
    std::string expansion_log;
    std::string trace_log;
    double alpha = 0.05;
    double p_hi = 0.99;
    long max_iters = -1;
    long subsample_rows = 0; // 0: learn on the full dataset
    std::size_t node_budget = std::size_t{1} << 20;
    std::uint64_t seed = 0;
    bool and_rule = false;
    bool force = false;
};

struct BoundTest {
    std::unique_ptr<Dataset> data;
    std::unique_ptr<Structure> truth;
    std::unique_ptr<IndependenceTest> backend;
    std::unique_ptr<TestCache> cache;
    std::unique_ptr<CachedTest> cached;
};

BoundTest bind_test(const std::string& test_name, const std::string& data_file,
                    const std::string& schema_file, const std::string& truth_file,
                    double alpha, double p_hi) {
    BoundTest b;
    b.data = std::make_unique<Dataset>(
        schema_file.empty() ? load_dataset_file(data_file)
                            : load_dataset_file(data_file, schema_file));
    if (test_name == "bayes") {
        b.backend = std::make_unique<BayesianTest>(*b.data);
    } else if (test_name == "chi2") {
        b.backend = std::make_unique<ChiSquareTest>(*b.data, alpha);
    } else if (test_name == "oracle") {
        if (truth_file.empty())
            throw std::runtime_error("oracle mode requires --truth with the true structure");
        b.truth = std::make_unique<Structure>(load_structure(truth_file));
        if (b.truth->node_count() != b.data->var_count())
            throw std::runtime_error("truth structure and dataset disagree on n");
        b.backend = std::make_unique<OracleTest>(*b.truth, p_hi);
    } else {
        throw std::runtime_error("unknown test backend: " + test_name);
    }
    b.cache = std::make_unique<TestCache>();
    b.cached = std::make_unique<CachedTest>(*b.backend, *b.cache);
    return b;
}

int run_learn(const LearnArgs& a) {
    BoundTest bound = bind_test(a.test_name, a.data_file, a.schema_file, a.truth_file,
                                a.alpha, a.p_hi);
    if (a.subsample_rows > 0) {
        // Learn on a smaller slice (the 1/3 and 1/5 protocols); evaluation
        // against the complete dataset stays a separate command.
        *bound.data = subsample(*bound.data, a.subsample_rows,
                                mix_seed(a.seed, kSubsampleStream, a.subsample_rows));
    }
    const int n = bound.data->var_count();

    if (a.algorithm == "ibmap-ts" && n > 14 && !a.force) {
        std::cerr << "ibmap-ts expands a decision tree whose size grows exponentially "
                     "with the trace length; refusing n = "
                  << n << " > 14 (pass --force to override)\n";
        return 1;
    }

    RunReport report;
    report.algorithm = a.algorithm;
    report.n = n;
    report.N = bound.data->row_count();
    report.options = json{{"data", a.data_file},     {"test", a.test_name},
                          {"alpha", a.alpha},        {"p_hi", a.p_hi},
                          {"seed", a.seed},          {"max_iters", a.max_iters},
                          {"node_budget", a.node_budget}, {"and_rule", a.and_rule},
                          {"subsample", a.subsample_rows}};
    report.options["variables"] = bound.data->variable_names();
    report.options["arities"] = bound.data->arities();
    if (!a.truth_file.empty())
        report.options["truth"] = a.truth_file;
    if (!a.start_file.empty())
        report.options["start"] = a.start_file;

    const auto t0 = std::chrono::steady_clock::now();
    Structure learned(n);
    if (a.algorithm == "gsmn") {
        GsmnResult r = gsmn_learn(n, *bound.cached, a.and_rule);
        learned = std::move(r.structure);
        report.log_score = ib_score(learned, *bound.cached);
        report.extra = json{{"trace_length", r.trace.size()}};
        if (!a.trace_log.empty()) {
            std::ofstream out(a.trace_log);
            write_trace(out, r.trace);
        }
    } else if (a.algorithm == "ibmap-hc") {
        HcOptions opts;
        opts.max_iters = a.max_iters;
        opts.and_rule = a.and_rule;
        if (!a.start_file.empty())
            opts.start = load_structure(a.start_file);
        HcResult r = ibmap_hc_search(n, *bound.cached, opts);
        learned = std::move(r.structure);
        report.log_score = r.log_score;
        report.ascents = r.ascents;
        report.truncated = r.truncated;
        report.extra = json{{"start_score", r.start_score},
                            {"iteration_deltas", r.iteration_deltas}};
    } else if (a.algorithm == "ibmap-ts") {
        TsOptions opts;
        opts.node_budget = a.node_budget;
        opts.and_rule = a.and_rule;
        std::ofstream expansion_out;
        if (!a.expansion_log.empty()) {
            expansion_out.open(a.expansion_log);
            opts.on_expand = [&expansion_out](std::size_t depth, double cost, const Triplet& t,
                                              bool value) {
                expansion_out << depth << " " << cost << " " << t.x() << " " << t.y() << " |";
                for (int v : t.z())
                    expansion_out << " " << v;
                expansion_out << " " << (value ? "I" : "D") << "\n";
            };
        }
        TsResult r = ibmap_ts_search(n, *bound.cached, opts);
        if (!r.found) {
            std::cerr << "ibmap-ts exhausted its node budget of " << a.node_budget
                      << " expansions without reaching a goal\n";
            return 1;
        }
        learned = std::move(r.structure);
        report.path_cost = r.path_cost;
        report.log_score = -r.path_cost; // closure product, in log space
        report.budget_exhausted = r.budget_exhausted;
        report.extra = json{{"expansions", r.expansions}, {"closure_length", r.closure.size()}};
    } else {
        std::cerr << "unknown algorithm: " << a.algorithm << "\n";
        return 1;
    }
    report.wall_ms = elapsed_ms(t0);
    report.tests = stats_of(*bound.cache);

    if (!a.truth_file.empty()) {
        const Structure truth =
            bound.truth ? *bound.truth : load_structure(a.truth_file);
        if (truth.node_count() == n) {
            report.extra["edge_hamming_to_truth"] = edge_hamming(learned, truth);
            if (n >= 3) {
                const TripletSample ts =
                    sample_triplets(n, 2000, mix_seed(a.seed, kTripletStream));
                report.extra["independence_hamming_to_truth"] =
                    independence_hamming_structure(learned, truth, ts);
            }
        }
    }

    const std::string structure_path = a.out_prefix + ".structure.txt";
    save_structure(structure_path, learned);
    write_json_file(a.out_prefix + ".report.json", report.to_json());

    std::cout << a.algorithm << ": n=" << n << " N=" << report.N
              << " edges=" << learned.edge_count() << " log-score=" << format_score(report.log_score);
    if (a.algorithm == "ibmap-hc")
        std::cout << " M=" << report.ascents;
    std::cout << " -> " << structure_path << "\n";
    return 0;
}

struct EvaluateArgs {
    std::string learned_file;
    std::string metric;
    std::string truth_file;
    std::string data_file;
    std::string schema_file;
    std::string test_name = "bayes";
    std::string out_file;
    double alpha = 0.05;
    long triplets = 2000;
    std::uint64_t seed = 0;
};

int run_evaluate(const EvaluateArgs& a) {
    const Structure learned = load_structure(a.learned_file);
    json record{{"command", "evaluate"}, {"metric", a.metric},
                {"learned", a.learned_file}, {"n", learned.node_count()},
                {"seed", a.seed}};

    if (a.metric == "he") {
        if (a.truth_file.empty())
            throw std::runtime_error("metric he needs --truth with the reference structure");
        const Structure truth = load_structure(a.truth_file);
        record["value"] = edge_hamming(learned, truth);
    } else if (a.metric == "hi-structure") {
        if (a.truth_file.empty())
            throw std::runtime_error("metric hi-structure needs --truth");
        const Structure truth = load_structure(a.truth_file);
        const TripletSample ts = sample_triplets(learned.node_count(), a.triplets,
                                                 mix_seed(a.seed, kTripletStream));
        record["triplets"] = a.triplets;
        record["value"] = independence_hamming_structure(learned, truth, ts);
    } else if (a.metric == "hi-data") {
        if (a.data_file.empty())
            throw std::runtime_error("metric hi-data needs --data with the complete dataset");
        BoundTest bound = bind_test(a.test_name, a.data_file, a.schema_file, "", a.alpha, 0.99);
        if (bound.data->var_count() != learned.node_count())
            throw std::runtime_error("dataset and structure disagree on n");
        const TripletSample ts = sample_triplets(learned.node_count(), a.triplets,
                                                 mix_seed(a.seed, kTripletStream));
        record["triplets"] = a.triplets;
        record["N"] = bound.data->row_count();
        record["test"] = a.test_name;
        record["value"] = independence_hamming_data(learned, *bound.cached, ts);
    } else {
        throw std::runtime_error("unknown metric: " + a.metric);
    }

    std::cout << record.dump() << "\n";
    if (!a.out_file.empty())
        write_json_file(a.out_file, record);
    return 0;
}

struct BenchArgs {
    std::string config_file;
    std::string out_dir;
    int workers = 1;
};

struct CellKey {
    int n;
    int tau;
    long N;
};

struct GraphRun {
    // per algorithm: H_E, H_I, M; empty error string on success
    std::map<std::string, long> he;
    std::map<std::string, double> hi;
    long ascents = 0;
    std::string error;
};

int run_bench(const BenchArgs& a) {
    const json cfg = read_json_file(a.config_file);
    for (const char* key : {"taus", "sizes"})
        if (!cfg.contains(key))
            throw std::runtime_error("bench config: missing required key '" +
                                     std::string(key) + "'");
    if (!cfg.contains("n") && !cfg.contains("ns"))
        throw std::runtime_error("bench config: provide 'n' or 'ns'");
    std::vector<int> ns;
    if (cfg.contains("ns"))
        ns = cfg.at("ns").get<std::vector<int>>();
    else
        ns = {cfg.at("n").get<int>()};
    const auto taus = cfg.at("taus").get<std::vector<int>>();
    const auto sizes = cfg.at("sizes").get<std::vector<long>>();
    const int graphs = cfg.value("graphs", 10);
    const std::uint64_t seed = cfg.value("seed", std::uint64_t{0});
    const std::string test_name = cfg.value("test", "bayes");
    // The baseline may run a different decision backend than the scored
    // searches (the classic baseline uses chi-square decisions).
    const std::string gsmn_test_name = cfg.value("gsmn_test", test_name);
    const double alpha = cfg.value("alpha", 0.05);
    const auto algorithms = cfg.value("algorithms", std::vector<std::string>{"gsmn", "ibmap-hc"});
    const long triplets = cfg.value("triplets", 2000L);
    const int burn_in = cfg.value("burn_in", 1000);
    const int thin = cfg.value("thin", 10);
    const long max_iters = cfg.value("max_iters", -1L);
    const std::size_t node_budget = cfg.value("node_budget", std::size_t{1} << 20);
    const int ts_max_n = cfg.value("ts_max_n", 12);

    const std::string out_dir = !a.out_dir.empty() ? a.out_dir : cfg.value("out", "bench_out");
    fs::create_directories(out_dir);

    struct Task {
        int n;
        int tau;
        int graph;
    };
    std::vector<Task> tasks;
    for (int n : ns)
        for (int tau : taus)
            for (int g = 0; g < graphs; ++g)
                tasks.push_back({n, tau, g});

    // results[task][N][alg]
    std::vector<std::map<long, GraphRun>> results(tasks.size());

    auto run_task = [&](const Task& task) {
        std::map<long, GraphRun> by_size;
        const std::uint64_t graph_tag =
            mix_seed(seed, static_cast<std::uint64_t>(task.n) << 16 | task.tau, task.graph);
        try {
            const Structure truth =
                random_structure(task.n, task.tau, mix_seed(graph_tag, kStructureStream));
            const PairwiseModel model =
                random_parameters(truth, mix_seed(graph_tag, kParameterStream));
            const long master_size = *std::max_element(sizes.begin(), sizes.end());
            const Dataset master =
                gibbs_sample(model, master_size, mix_seed(graph_tag, kSamplerStream), burn_in, thin);

            for (long N : sizes) {
                GraphRun run;
                try {
                    const Dataset d = subsample(master, N, mix_seed(graph_tag, kSubsampleStream, N));
                    auto make_backend = [&](const std::string& name)
                        -> std::unique_ptr<IndependenceTest> {
                        if (name == "bayes")
                            return std::make_unique<BayesianTest>(d);
                        if (name == "chi2")
                            return std::make_unique<ChiSquareTest>(d, alpha);
                        throw std::runtime_error("bench supports bayes or chi2 backends");
                    };
                    std::unique_ptr<IndependenceTest> backend = make_backend(test_name);
                    TestCache cache;
                    CachedTest test(*backend, cache);
                    std::unique_ptr<IndependenceTest> gsmn_backend;
                    std::unique_ptr<TestCache> gsmn_cache;
                    std::unique_ptr<CachedTest> gsmn_cached;
                    if (gsmn_test_name != test_name) {
                        gsmn_backend = make_backend(gsmn_test_name);
                        gsmn_cache = std::make_unique<TestCache>();
                        gsmn_cached = std::make_unique<CachedTest>(*gsmn_backend, *gsmn_cache);
                    }
                    const IndependenceTest& gsmn_test =
                        gsmn_cached ? static_cast<const IndependenceTest&>(*gsmn_cached)
                                    : static_cast<const IndependenceTest&>(test);

                    const TripletSample ts =
                        sample_triplets(task.n, triplets, mix_seed(graph_tag, kTripletStream, N));

                    std::optional<Structure> gsmn_structure;
                    for (const std::string& alg : algorithms) {
                        if (alg == "gsmn") {
                            GsmnResult r = gsmn_learn(task.n, gsmn_test);
                            gsmn_structure = r.structure;
                            run.he[alg] = edge_hamming(r.structure, truth);
                            run.hi[alg] = independence_hamming_structure(r.structure, truth, ts);
                        } else if (alg == "ibmap-hc") {
                            HcOptions opts;
                            opts.max_iters = max_iters;
                            if (gsmn_structure)
                                opts.start = *gsmn_structure;
                            HcResult r = ibmap_hc_search(task.n, test, opts);
                            run.he[alg] = edge_hamming(r.structure, truth);
                            run.hi[alg] = independence_hamming_structure(r.structure, truth, ts);
                            run.ascents = r.ascents;
                        } else if (alg == "ibmap-ts") {
                            if (task.n > ts_max_n)
                                continue;
                            TsOptions opts;
                            opts.node_budget = node_budget;
                            TsResult r = ibmap_ts_search(task.n, test, opts);
                            if (!r.found)
                                throw std::runtime_error("ibmap-ts budget exhausted");
                            run.he[alg] = edge_hamming(r.structure, truth);
                            run.hi[alg] = independence_hamming_structure(r.structure, truth, ts);
                        } else {
                            throw std::runtime_error("unknown algorithm in config: " + alg);
                        }
                    }
                } catch (const std::exception& e) {
                    run.error = e.what();
                }
                by_size.emplace(N, std::move(run));
            }
        } catch (const std::exception& e) {
            for (long N : sizes) {
                GraphRun run;
                run.error = e.what();
                by_size.emplace(N, std::move(run));
            }
        }
        return by_size;
    };

    const int workers = std::max(1, a.workers);
    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= tasks.size())
                return;
            results[i] = run_task(tasks[i]);
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }

    // Aggregate per (n, tau, N).
    json aggregates = json::array();
    std::ofstream table(fs::path(out_dir) / "bench_table.tsv");
    table << "n\ttau\tN\talgorithm\the_mean\the_sd\thi_mean\thi_sd\tre\tri\tM_mean\terrors\n";
    auto mean_sd = [](const std::vector<double>& xs) {
        double mean = 0.0, sd = 0.0;
        if (!xs.empty()) {
            for (double x : xs)
                mean += x;
            mean /= static_cast<double>(xs.size());
            if (xs.size() > 1) {
                for (double x : xs)
                    sd += (x - mean) * (x - mean);
                sd = std::sqrt(sd / static_cast<double>(xs.size() - 1));
            }
        }
        return std::pair<double, double>{mean, sd};
    };

    for (int n : ns) {
        for (int tau : taus) {
            for (long N : sizes) {
                json cell{{"n", n}, {"tau", tau}, {"N", N}};
                long failures = 0;
                json errors = json::array();
                json runs = json::array();
                std::map<std::string, std::vector<double>> he, hi;
                std::vector<double> ascents;
                for (std::size_t i = 0; i < tasks.size(); ++i) {
                    if (tasks[i].n != n || tasks[i].tau != tau)
                        continue;
                    const GraphRun& run = results[i].at(N);
                    if (!run.error.empty()) {
                        ++failures;
                        errors.push_back({{"graph", tasks[i].graph}, {"error", run.error}});
                        continue;
                    }
                    for (const auto& [alg, v] : run.he) {
                        he[alg].push_back(static_cast<double>(v));
                        json record{{"name", alg},  {"graph", tasks[i].graph}, {"n", n},
                                    {"tau", tau},   {"N", N},                  {"he", v},
                                    {"hi", run.hi.at(alg)}};
                        if (alg == "ibmap-hc")
                            record["M"] = run.ascents;
                        runs.push_back(std::move(record));
                    }
                    for (const auto& [alg, v] : run.hi)
                        hi[alg].push_back(v);
                    if (run.he.count("ibmap-hc"))
                        ascents.push_back(static_cast<double>(run.ascents));
                }
                cell["runs"] = runs;
                cell["failures"] = failures;
                if (!errors.empty())
                    cell["errors"] = errors;
                json per_alg = json::object();
                for (const auto& [alg, values] : he) {
                    const auto [hm, hs] = mean_sd(values);
                    const auto [im, is] = mean_sd(hi[alg]);
                    json entry{{"he", format_mean_sd(hm, hs)}, {"hi", format_mean_sd(im, is)}};
                    std::string re = "-", ri = "-";
                    if (alg != "gsmn" && he.count("gsmn")) {
                        re = ratio_report(values, he["gsmn"]).formatted();
                        ri = ratio_report(hi[alg], hi["gsmn"]).formatted();
                        entry["re"] = re;
                        entry["ri"] = ri;
                    }
                    double m_mean = 0.0;
                    if (alg == "ibmap-hc" && !ascents.empty()) {
                        m_mean = mean_sd(ascents).first;
                        entry["M_mean"] = m_mean;
                    }
                    per_alg[alg] = entry;
                    table << n << "\t" << tau << "\t" << N << "\t" << alg << "\t" << hm << "\t"
                          << hs << "\t" << im << "\t" << is << "\t" << re << "\t" << ri << "\t"
                          << m_mean << "\t" << failures << "\n";
                }
                cell["algorithms"] = per_alg;
                aggregates.push_back(cell);
            }
        }
    }

    json resolved{{"ns", ns},
                  {"taus", taus},
                  {"sizes", sizes},
                  {"graphs", graphs},
                  {"seed", seed},
                  {"test", test_name},
                  {"gsmn_test", gsmn_test_name},
                  {"alpha", alpha},
                  {"algorithms", algorithms},
                  {"triplets", triplets},
                  {"burn_in", burn_in},
                  {"thin", thin},
                  {"max_iters", max_iters},
                  {"node_budget", node_budget},
                  {"ts_max_n", ts_max_n}};
    json out{{"command", "bench"}, {"config", cfg}, {"resolved", resolved},
             {"aggregates", aggregates}};
    write_json_file((fs::path(out_dir) / "bench_results.json").string(), out);

    for (const auto& cell : aggregates) {
        std::cout << "n=" << cell["n"] << " tau=" << cell["tau"] << " N=" << cell["N"];
        for (const auto& [alg, entry] : cell["algorithms"].items()) {
            std::cout << "  " << alg << " he=" << entry["he"].get<std::string>();
            if (entry.contains("re"))
                std::cout << " re=" << entry["re"].get<std::string>();
        }
        std::cout << "\n";
    }
    return 0;
}

} // namespace

int cli_main(int argc, char** argv) {
    CLI::App app{"Markov network structure discovery toolkit"};
    app.require_subcommand(1);

    GenerateArgs gen;
    CLI::App* generate = app.add_subcommand("generate", "sample benchmark networks and data");
    generate->add_option("--n", gen.n, "variable count")->required();
    generate->add_option("--tau", gen.tau, "neighbors per node")->required();
    generate->add_option("--graphs", gen.graphs, "number of random networks");
    generate->add_option("--sizes", gen.sizes, "dataset sizes")->required()->delimiter(',');
    generate->add_option("--seed", gen.seed, "root seed");
    generate->add_option("--burn-in", gen.burn_in, "Gibbs burn-in sweeps");
    generate->add_option("--thin", gen.thin, "Gibbs sweeps between kept rows");
    generate->add_option("--out", gen.out_dir, "output directory")->required();

    LearnArgs learn;
    CLI::App* learn_cmd = app.add_subcommand("learn", "learn a structure from data");
    learn_cmd->add_option("--algorithm", learn.algorithm, "gsmn | ibmap-hc | ibmap-ts")
        ->required()
        ->check(CLI::IsMember({"gsmn", "ibmap-hc", "ibmap-ts"}));
    learn_cmd->add_option("--data", learn.data_file, "dataset csv")->required();
    learn_cmd->add_option("--schema", learn.schema_file, "sidecar schema (name:arity lines)");
    learn_cmd->add_option("--test", learn.test_name, "bayes | chi2 | oracle")
        ->check(CLI::IsMember({"bayes", "chi2", "oracle"}));
    learn_cmd->add_option("--truth", learn.truth_file, "true structure (oracle mode)");
    learn_cmd->add_option("--start", learn.start_file, "starting structure (ibmap-hc)");
    learn_cmd->add_option("--alpha", learn.alpha, "chi2 significance level");
    learn_cmd->add_option("--p-hi", learn.p_hi, "oracle confidence");
    learn_cmd->add_option("--max-iters", learn.max_iters, "hill climbing cap (default 10n)");
    learn_cmd->add_option("--node-budget", learn.node_budget, "tree search expansion cap");
    learn_cmd->add_option("--subsample", learn.subsample_rows,
                          "learn on this many uniformly drawn rows");
    learn_cmd->add_option("--seed", learn.seed, "seed for the subsample draw");
    learn_cmd->add_option("--out", learn.out_prefix, "output prefix");
    learn_cmd->add_option("--expansion-log", learn.expansion_log, "tree search expansion dump");
    learn_cmd->add_option("--trace-log", learn.trace_log, "query trace dump (gsmn)");
    learn_cmd->add_flag("--and-rule", learn.and_rule, "blanket intersection edge rule");
    learn_cmd->add_flag("--force", learn.force, "run ibmap-ts past the n cap");

    EvaluateArgs eval;
    CLI::App* eval_cmd = app.add_subcommand("evaluate", "score a learned structure");
    eval_cmd->add_option("--learned", eval.learned_file, "learned structure file")->required();
    eval_cmd->add_option("--metric", eval.metric, "he | hi-structure | hi-data")
        ->required()
        ->check(CLI::IsMember({"he", "hi-structure", "hi-data"}));
    eval_cmd->add_option("--truth", eval.truth_file, "reference structure");
    eval_cmd->add_option("--data", eval.data_file, "complete dataset (hi-data)");
    eval_cmd->add_option("--schema", eval.schema_file, "sidecar schema");
    eval_cmd->add_option("--test", eval.test_name, "bayes | chi2")
        ->check(CLI::IsMember({"bayes", "chi2"}));
    eval_cmd->add_option("--alpha", eval.alpha, "chi2 significance level");
    eval_cmd->add_option("--triplets", eval.triplets, "sampled triplet count");
    eval_cmd->add_option("--seed", eval.seed, "triplet sampling seed");
    eval_cmd->add_option("--out", eval.out_file, "also write the record here");

    BenchArgs bench;
    CLI::App* bench_cmd = app.add_subcommand("bench", "run a (tau, N, seeds) grid");
    bench_cmd->add_option("--config", bench.config_file, "grid config json")->required();
    bench_cmd->add_option("--out", bench.out_dir, "output directory (overrides config)");
    bench_cmd->add_option("--workers", bench.workers, "concurrent grid tasks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (generate->parsed())
            return run_generate(gen);
        if (learn_cmd->parsed())
            return run_learn(learn);
        if (eval_cmd->parsed())
            return run_evaluate(eval);
        if (bench_cmd->parsed())
            return run_bench(bench);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

int cli_main(const std::vector<std::string>& args) {
    std::vector<std::string> owned = args;
    std::vector<char*> argv;
    static std::string program = "mnlearn";
    argv.push_back(program.data());
    for (std::string& s : owned)
        argv.push_back(s.data());
    return cli_main(static_cast<int>(argv.size()), argv.data());
}

} // namespace mn
