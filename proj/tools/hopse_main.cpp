// Command-line front end: lift graphs, expand neighborhoods, precompute
// encoding bundles, count routes, run the training demo and the scaling
// benchmark. Exit codes: 0 success, 1 total failure, 2 bad configuration.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "hopse/pipeline.hpp"
#include "hopse/routes.hpp"

namespace fs = std::filesystem;
using namespace hopse;

namespace {

std::string file_stem(const NeighborhoodFunction& nf) {
    if (nf.kind == NfKind::Incidence)
        return "I_" + std::to_string(nf.source_rank) + "to" + std::to_string(nf.target_rank);
    return "A_" + std::to_string(nf.target_rank) + "_" + std::to_string(nf.via_rank());
}

std::vector<NeighborhoodFunction> parse_nbhd_list(const std::string& text) {
    // either a taxonomy name or a '+'-separated list of neighborhood names
    try {
        return taxonomy_set(text);
    } catch (const UnknownSet&) {
    }
    std::vector<NeighborhoodFunction> nfs;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, '+'))
        if (!item.empty()) nfs.push_back(NeighborhoodFunction::parse(item));
    if (nfs.empty()) throw ParseError("empty neighborhood list '" + text + "'");
    return nfs;
}

int cmd_lift(const std::string& mode, int max_rank, int max_cycle_len,
             const std::string& input, const std::string& output) {
    InputGraph g = load_graph(input);
    CombinatorialComplex cc;
    if (mode == "clique")
        cc = clique_lift(g, max_rank);
    else if (mode == "cycle")
        cc = cycle_lift(g, max_cycle_len);
    else
        throw ParseError("unknown lift mode '" + mode + "'");
    save_complex(output, cc);
    std::cout << "lifted " << input << " -> " << output << ": " << cc.num_cells()
              << " cells, dim " << cc.dim() << '\n';
    return 0;
}

int cmd_expand(const std::string& nbhd, bool include_self, const std::string& out_dir,
               const std::string& input) {
    CombinatorialComplex cc = load_complex(input);
    fs::create_directories(out_dir);
    for (const auto& nf : parse_nbhd_list(nbhd)) {
        HasseGraph h = hasse_graph(cc, nf, include_self);
        std::string stem = (fs::path(out_dir) / file_stem(nf)).string();
        std::ofstream gf(stem + ".hasse");
        if (!gf) throw IoError("cannot write " + stem + ".hasse");
        write_hasse_graph(gf, h);
        std::ofstream mf(stem + ".map");
        if (!mf) throw IoError("cannot write " + stem + ".map");
        write_hasse_mapping(mf, h);
        std::cout << nf.name() << ": " << h.nodes.size() << " nodes, " << h.arcs.size()
                  << " arcs -> " << stem << ".hasse\n";
    }
    return 0;
}

int cmd_encode(const std::string& nbhd, const std::string& pse, int max_rank,
               const std::string& complex_path, const std::string& out,
               const std::vector<std::string>& graphs, const std::string& lift_mode,
               int lift_max_rank, int max_cycle_len, const std::string& out_dir,
               const std::string& dump_dir, const std::string& format,
               std::uint64_t seed, int threads, bool directed_rwse) {
    PipelineConfig cfg;
    cfg.taxonomy = nbhd;
    try {
        cfg.nfs = taxonomy_set(nbhd);
    } catch (const UnknownSet&) {
        cfg.nfs = parse_nbhd_list(nbhd);
        cfg.taxonomy = "custom";
    }
    cfg.kinds = PseKind::parse_list(pse);
    if (directed_rwse)
        for (auto& kind : cfg.kinds)
            if (kind.tag == PseKind::Tag::RWSE) kind.directed = true;
    cfg.bundle_max_rank = max_rank;
    cfg.seed = seed;
    cfg.threads = threads;

    if (!graphs.empty()) {
        if (lift_mode == "clique")
            cfg.lift_mode = PipelineConfig::LiftMode::Clique;
        else if (lift_mode == "cycle")
            cfg.lift_mode = PipelineConfig::LiftMode::Cycle;
        else
            throw ParseError("unknown lift mode '" + lift_mode + "'");
        cfg.lift_max_rank = lift_max_rank;
        cfg.max_cycle_len = max_cycle_len;
        cfg.out_dir = out_dir;
        PipelineReport rep = run_pipeline(cfg, graphs);
        std::ofstream mf(fs::path(out_dir) / "manifest.json");
        if (!mf) throw IoError("cannot write manifest");
        write_manifest(mf, cfg, rep);
        for (const auto& job : rep.jobs) {
            std::cout << (job.ok ? "ok   " : "FAIL ") << job.input;
            if (job.ok)
                std::cout << " -> " << job.bundle_path << " (" << job.num_cells << " cells)";
            else
                std::cout << " (" << job.error << ")";
            std::cout << '\n';
        }
        std::cout << rep.jobs.size() - rep.num_failed << "/" << rep.jobs.size()
                  << " graphs encoded; manifest written\n";
        return rep.num_failed == rep.jobs.size() && !rep.jobs.empty() ? 1 : 0;
    }

    if (complex_path.empty()) throw ParseError("encode needs --complex or --graphs");
    CombinatorialComplex cc = load_complex(complex_path);
    RankFeatureBundle bundle = precompute_bundle(cc, cfg.nfs, cfg.kinds, InitPolicy::ones(),
                                                 max_rank, cfg.taxonomy);
    save_bundle(out, bundle);
    std::cout << "bundle " << out << ": ranks 0.." << bundle.max_rank << ", "
              << cc.num_cells() << " cells, hash 0x" << std::hex << bundle.complex_hash
              << std::dec << '\n';

    if (!dump_dir.empty()) {
        fs::create_directories(dump_dir);
        for (const auto& nf : cfg.nfs) {
            HasseGraph h = hasse_graph(cc, nf);
            if (h.empty()) continue;
            for (const auto& kind : cfg.kinds) {
                EncodingMatrix enc = encode(h, kind);
                std::string name = file_stem(nf) + "." +
                                   (kind.name().substr(0, kind.name().find(':')));
                std::string path = (fs::path(dump_dir) / name).string();
                if (format == "text") {
                    std::ofstream f(path + ".txt");
                    write_encoding_text(f, enc, cc.content_hash());
                } else {
                    std::ofstream f(path + ".enc", std::ios::binary);
                    write_encoding_binary(f, enc, cc.content_hash());
                }
            }
        }
        std::cout << "per-neighborhood encodings dumped to " << dump_dir << '\n';
    }
    return 0;
}

int cmd_count_routes(int max_rank, bool enumerate) {
    std::cout << "R\tneighborhoods\tminimal\textended\n";
    for (int r = 0; r <= max_rank; ++r) {
        std::cout << r << '\t' << count_neighborhoods(r) << '\t' << count_minimal_routes(r)
                  << '\t' << count_extended_routes(r) << '\n';
    }
    if (enumerate) {
        auto routes = enumerate_minimal_routes(max_rank);
        std::cout << routes.size() << " minimal routes at R=" << max_rank << ":\n";
        for (const auto& route : routes) {
            for (size_t i = 0; i < route.steps.size(); ++i)
                std::cout << (i ? " " : "") << route.steps[i].name();
            if (route.steps.empty()) std::cout << "(empty route)";
            std::cout << '\n';
        }
    }
    return 0;
}

int cmd_train_demo(const std::string& task, int epochs, std::uint64_t seed, int samples,
                   double lr, int hidden, int depth, const std::string& out) {
    if (task != "synth-2cell") throw ParseError("unknown task '" + task + "'");
    auto dataset = synth_two_cell_dataset(samples, seed);
    TrainConfig cfg;
    cfg.steps = epochs;
    cfg.learning_rate = lr;
    cfg.seed = seed;
    cfg.hidden = hidden;
    cfg.depth = depth;
    TrainResult res = train(dataset, TaskKind::classification(2), cfg);
    double acc = accuracy(res.model, dataset);
    std::cout << "task synth-2cell: " << samples << " samples, " << epochs << " steps, seed "
              << seed << '\n';
    if (!res.loss_trace.empty())
        std::cout << "loss " << res.loss_trace.front() << " -> " << res.loss_trace.back()
                  << '\n';
    std::cout << "train accuracy " << acc * 100 << "%\n";
    if (!out.empty()) {
        save_checkpoint(out, res.model);
        std::cout << "checkpoint written to " << out << '\n';
    }
    return acc == 1.0 ? 0 : 1;
}

int cmd_verify(bool run_grad_check, const std::string& manifest, std::uint64_t seed) {
    int rc = 0;
    if (run_grad_check) {
        auto dataset = synth_two_cell_dataset(2, seed);
        ModelConfig mc = ModelConfig::from_bundle(dataset[0].first, 8, 1,
                                                  TaskKind::classification(2));
        HopseModel model = make_model(mc, seed);
        double err = grad_check(model, dataset[0].first, dataset[0].second);
        bool ok = err < 1e-4;
        std::cout << "grad-check: max relative error " << err << " over "
                  << model.num_params() << " params -> " << (ok ? "ok" : "FAIL") << '\n';
        if (!ok) rc = 1;
    }
    if (!manifest.empty()) {
        size_t bad = verify_manifest(manifest);
        std::cout << "manifest: " << (bad ? "FAIL, " + std::to_string(bad) + " bad bundles"
                                          : std::string("all bundle hashes match"))
                  << '\n';
        if (bad) rc = 1;
    }
    return rc;
}

int cmd_bench(const std::string& sizes_csv, int reps, const std::string& nbhd,
              const std::string& pse, std::uint64_t seed) {
    std::vector<size_t> sizes;
    std::istringstream is(sizes_csv);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (item.empty()) continue;
        try {
            sizes.push_back(static_cast<size_t>(std::stoull(item)));
        } catch (const std::exception&) {
            throw ParseError("bad size '" + item + "'");
        }
    }
    if (sizes.empty()) throw ParseError("no sizes given");
    if (!std::is_sorted(sizes.begin(), sizes.end()))
        throw ParseError("sizes must be ascending");
    BenchReport rep = bench_scaling(sizes, reps, parse_nbhd_list(nbhd),
                                    PseKind::parse_list(pse), seed);
    write_bench_report(std::cout, rep);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"higher-order positional/structural encoding pipeline"};
    app.require_subcommand(1);

    auto* lift = app.add_subcommand("lift", "lift a graph into a combinatorial complex");
    std::string lift_mode = "clique", lift_in, lift_out;
    int lift_max_rank = 2, lift_cycle_len = 6;
    lift->add_option("--mode", lift_mode, "clique|cycle")->capture_default_str();
    lift->add_option("--max-rank", lift_max_rank, "clique lift rank cap")->capture_default_str();
    lift->add_option("--max-cycle-len", lift_cycle_len, "cycle lift length cap")
        ->capture_default_str();
    lift->add_option("input", lift_in, "edge-list file")->required();
    lift->add_option("output", lift_out, "complex file")->required();

    auto* expand = app.add_subcommand("expand", "write Hasse graphs per neighborhood");
    std::string exp_nbhd = "Inc-1", exp_dir = ".", exp_in;
    bool exp_self = false;
    expand->add_option("--nbhd", exp_nbhd, "taxonomy name or A_{t,s}+I_{s->t} list")
        ->capture_default_str();
    expand->add_flag("--include-self", exp_self, "keep cells in their own adjacency");
    expand->add_option("--out-dir", exp_dir)->capture_default_str();
    expand->add_option("input", exp_in, "complex file")->required();

    auto* encode = app.add_subcommand("encode", "precompute encoding bundles");
    std::string enc_nbhd = "Inc-1", enc_pse = "rwse:K=8", enc_complex, enc_out = "bundle.hb";
    std::vector<std::string> enc_graphs;
    std::string enc_lift = "clique", enc_dir = "bundles", enc_dump, enc_format = "bin";
    int enc_max_rank = 2, enc_lift_rank = 2, enc_cycle_len = 6, enc_threads = 0;
    std::uint64_t enc_seed = 0;
    encode->add_option("--taxonomy,--nbhd", enc_nbhd)->capture_default_str();
    encode->add_option("--pse", enc_pse, "channels, e.g. rwse:K=16,lap:i=4,hk:K=16,elstatic")
        ->capture_default_str();
    encode->add_option("--max-rank", enc_max_rank, "bundle rank span")->capture_default_str();
    encode->add_option("--complex", enc_complex, "single complex file");
    encode->add_option("--out", enc_out, "bundle output path")->capture_default_str();
    encode->add_option("--graphs", enc_graphs, "edge-list files (pipeline mode)");
    encode->add_option("--lift", enc_lift, "clique|cycle (pipeline mode)")
        ->capture_default_str();
    encode->add_option("--lift-max-rank", enc_lift_rank)->capture_default_str();
    encode->add_option("--max-cycle-len", enc_cycle_len)->capture_default_str();
    encode->add_option("--out-dir", enc_dir, "bundle directory (pipeline mode)")
        ->capture_default_str();
    encode->add_option("--dump-encodings", enc_dump, "also write per-neighborhood encodings");
    encode->add_option("--format", enc_format, "text|bin for dumped encodings")
        ->capture_default_str();
    encode->add_option("--seed", enc_seed)->capture_default_str();
    encode->add_option("--threads", enc_threads, "worker cap (0: HOPSE_THREADS or cores)")
        ->capture_default_str();
    bool enc_directed_rwse = false;
    encode->add_flag("--directed-rwse", enc_directed_rwse,
                     "run random walks on the raw arcs instead of the symmetrized graph");

    auto* routes = app.add_subcommand("count-routes", "route combinatorics table");
    int routes_rank = 2;
    bool routes_enum = false;
    routes->add_option("--max-rank", routes_rank)->capture_default_str();
    routes->add_flag("--enumerate", routes_enum, "list the minimal routes");

    auto* demo = app.add_subcommand("train-demo", "train on the synthetic two-cell task");
    std::string demo_task = "synth-2cell", demo_out;
    int demo_epochs = 200, demo_samples = 128, demo_hidden = 16, demo_depth = 1;
    double demo_lr = 1e-2;
    std::uint64_t demo_seed = 7;
    demo->add_option("--task", demo_task)->capture_default_str();
    demo->add_option("--epochs", demo_epochs)->capture_default_str();
    demo->add_option("--seed", demo_seed)->capture_default_str();
    demo->add_option("--samples", demo_samples)->capture_default_str();
    demo->add_option("--lr", demo_lr)->capture_default_str();
    demo->add_option("--hidden", demo_hidden)->capture_default_str();
    demo->add_option("--depth", demo_depth)->capture_default_str();
    demo->add_option("--out", demo_out, "checkpoint path");

    auto* verify = app.add_subcommand("verify", "gradient and manifest checks");
    bool verify_grad = false;
    std::string verify_manifest_path;
    std::uint64_t verify_seed = 7;
    verify->add_flag("--grad-check", verify_grad);
    verify->add_option("--manifest", verify_manifest_path);
    verify->add_option("--seed", verify_seed)->capture_default_str();

    auto* bench = app.add_subcommand("bench", "linear-scaling benchmark");
    std::string bench_sizes = "10,20,40,80,160,320", bench_nbhd = "Inc-1",
                bench_pse = "rwse:K=8";
    int bench_reps = 5;
    std::uint64_t bench_seed = 0;
    bench->add_option("--sizes", bench_sizes, "ascending cell counts")->capture_default_str();
    bench->add_option("--reps", bench_reps)->capture_default_str();
    bench->add_option("--nbhd", bench_nbhd)->capture_default_str();
    bench->add_option("--pse", bench_pse)->capture_default_str();
    bench->add_option("--seed", bench_seed)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (lift->parsed())
            return cmd_lift(lift_mode, lift_max_rank, lift_cycle_len, lift_in, lift_out);
        if (expand->parsed()) return cmd_expand(exp_nbhd, exp_self, exp_dir, exp_in);
        if (encode->parsed())
            return cmd_encode(enc_nbhd, enc_pse, enc_max_rank, enc_complex, enc_out,
                              enc_graphs, enc_lift, enc_lift_rank, enc_cycle_len, enc_dir,
                              enc_dump, enc_format, enc_seed, enc_threads,
                              enc_directed_rwse);
        if (routes->parsed()) return cmd_count_routes(routes_rank, routes_enum);
        if (demo->parsed())
            return cmd_train_demo(demo_task, demo_epochs, demo_seed, demo_samples, demo_lr,
                                  demo_hidden, demo_depth, demo_out);
        if (verify->parsed())
            return cmd_verify(verify_grad, verify_manifest_path, verify_seed);
        if (bench->parsed())
            return cmd_bench(bench_sizes, bench_reps, bench_nbhd, bench_pse, bench_seed);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const UnknownSet& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
