#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hopse/pipeline.hpp"
#include "oracles.hpp"

using namespace hopse;
namespace fs = std::filesystem;

namespace {

std::string read_bytes(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("fused triangle ring geometry") {
    // k=3 is special: the three anchors close a triangle of their own
    auto g3 = fused_triangle_ring(3);
    CHECK(g3.num_vertices == 6);
    CHECK(g3.edges.size() == 9);
    CHECK(clique_lift(g3, 2).num_cells_of_rank(2) == 4);

    auto g4 = fused_triangle_ring(4);
    auto cc4 = clique_lift(g4, 2);
    CHECK(g4.num_vertices == 8);
    CHECK(g4.edges.size() == 12);
    CHECK(cc4.num_cells_of_rank(2) == 4);
    CHECK(cc4.num_cells() == 24);

    auto cc2 = clique_lift(fused_triangle_ring(2), 2);
    CHECK(cc2.num_cells_of_rank(2) == 2);

    // degree stays bounded as k grows
    auto g50 = fused_triangle_ring(50);
    auto adj = g50.adjacency();
    for (const auto& nbrs : adj) CHECK(nbrs.size() <= 4);
    CHECK(clique_lift(g50, 2).num_cells() == 300);
}

TEST_CASE("run_pipeline: bundles plus manifest, deterministic bytes") {
    TempDir dir("hopse_pipe_test");
    std::vector<std::string> inputs;
    for (int i = 0; i < 3; ++i) {
        auto g = oracle::gnp_graph(6, 0.5, static_cast<std::uint64_t>(i) + 400);
        std::string path = (dir.path / ("g" + std::to_string(i) + ".el")).string();
        save_graph(path, g);
        inputs.push_back(path);
    }
    PipelineConfig cfg;
    cfg.lift_mode = PipelineConfig::LiftMode::Clique;
    cfg.taxonomy = "Adj-1";
    cfg.kinds = {PseKind::rwse(4)};
    cfg.out_dir = (dir.path / "out").string();

    auto rep = run_pipeline(cfg, inputs);
    REQUIRE(rep.jobs.size() == 3);
    CHECK(rep.num_failed == 0);
    std::vector<std::string> first_bytes;
    for (const auto& job : rep.jobs) {
        CHECK(job.ok);
        CHECK(fs::exists(job.bundle_path));
        CHECK(job.bundle_hash == hash_file(job.bundle_path));
        first_bytes.push_back(read_bytes(job.bundle_path));
    }

    // rerun writes byte-identical bundles
    auto rep2 = run_pipeline(cfg, inputs);
    for (size_t i = 0; i < 3; ++i) {
        CHECK(read_bytes(rep2.jobs[i].bundle_path) == first_bytes[i]);
        CHECK(rep2.jobs[i].bundle_hash == rep.jobs[i].bundle_hash);
    }

    std::ostringstream manifest;
    write_manifest(manifest, cfg, rep);
    CHECK(manifest.str().find("\"num_failed\": 0") != std::string::npos);
}

TEST_CASE("run_pipeline isolates malformed inputs") {
    TempDir dir("hopse_pipe_bad");
    auto g = oracle::gnp_graph(5, 0.5, 42);
    std::string good = (dir.path / "good.el").string();
    save_graph(good, g);
    std::string bad = (dir.path / "bad.el").string();
    {
        std::ofstream f(bad);
        f << "3 2\n0 1\nnot_an_edge\n";
    }
    PipelineConfig cfg;
    cfg.out_dir = (dir.path / "out").string();
    auto rep = run_pipeline(cfg, {good, bad});
    REQUIRE(rep.jobs.size() == 2);
    CHECK(rep.jobs[0].ok);
    CHECK_FALSE(rep.jobs[1].ok);
    CHECK(rep.num_failed == 1);
    CHECK(!rep.jobs[1].error.empty());
}

TEST_CASE("manifest verification detects corruption") {
    TempDir dir("hopse_manifest");
    auto g = oracle::gnp_graph(5, 0.5, 7);
    std::string input = (dir.path / "g.el").string();
    save_graph(input, g);
    PipelineConfig cfg;
    cfg.out_dir = (dir.path / "out").string();
    auto rep = run_pipeline(cfg, {input});
    REQUIRE(rep.num_failed == 0);
    std::string manifest_path = (dir.path / "manifest.json").string();
    {
        std::ofstream f(manifest_path);
        write_manifest(f, cfg, rep);
    }
    CHECK(verify_manifest(manifest_path) == 0);
    {
        std::ofstream f(rep.jobs[0].bundle_path, std::ios::binary | std::ios::app);
        f.put('\0');
    }
    CHECK(verify_manifest(manifest_path) == 1);
}

TEST_CASE("synthetic two-cell task: labels match topology, deterministic") {
    auto graphs = synth_two_cell_graphs(16, 5);
    REQUIRE(graphs.size() == 16);
    int ones = 0;
    for (auto& [g, label] : graphs) {
        auto cc = cycle_lift(g, 6);
        if (label == 1) {
            CHECK(cc.num_cells_of_rank(2) > 0);
            ++ones;
        } else {
            CHECK(cc.num_cells_of_rank(2) == 0);
        }
    }
    CHECK(ones == 8);

    auto again = synth_two_cell_graphs(16, 5);
    for (size_t i = 0; i < graphs.size(); ++i) {
        CHECK(graphs[i].first.edges == again[i].first.edges);
        CHECK(graphs[i].second == again[i].second);
    }
    auto other = synth_two_cell_graphs(16, 6);
    bool any_different = false;
    for (size_t i = 0; i < graphs.size(); ++i)
        if (graphs[i].first.edges != other[i].first.edges) any_different = true;
    CHECK(any_different);
}

TEST_CASE("synthetic dataset bundles are shape-consistent") {
    auto data = synth_two_cell_dataset(8, 3);
    REQUIRE(data.size() == 8);
    for (const auto& [bundle, target] : data) {
        CHECK(bundle.max_rank == 2);
        CHECK(bundle.channels[0][0].cols() == data[0].first.channels[0][0].cols());
        CHECK(bundle.channels[1][0].cols() == data[0].first.channels[1][0].cols());
        CHECK(bundle.channels[2][0].cols() == data[0].first.channels[2][0].cols());
    }
}

TEST_CASE("bench: single size has undefined slope") {
    auto rep = bench_scaling({30}, 2, taxonomy_set("Adj-1"), {PseKind::rwse(2)}, 0);
    REQUIRE(rep.points.size() == 1);
    CHECK_FALSE(rep.slope.has_value());
    std::ostringstream os;
    write_bench_report(os, rep);
    CHECK(os.str().find("undefined") != std::string::npos);
}

TEST_CASE("bench: duplicate sizes report medians, slope undefined") {
    auto rep = bench_scaling({30, 30}, 2, taxonomy_set("Adj-1"), {PseKind::rwse(2)}, 0);
    REQUIRE(rep.points.size() == 2);
    CHECK(rep.points[0].cells == rep.points[1].cells);
    CHECK_FALSE(rep.slope.has_value());
}

TEST_CASE("HOPSE_THREADS env var caps the worker pool") {
    TempDir dir("hopse_env");
    auto g = oracle::gnp_graph(5, 0.5, 314);
    std::string input = (dir.path / "g.el").string();
    save_graph(input, g);
    PipelineConfig cfg;
    cfg.out_dir = (dir.path / "out").string();
    cfg.threads = 0; // defer to the environment
    setenv("HOPSE_THREADS", "2", 1);
    auto rep = run_pipeline(cfg, {input, input, input});
    unsetenv("HOPSE_THREADS");
    REQUIRE(rep.jobs.size() == 3);
    CHECK(rep.num_failed == 0);
    CHECK(rep.jobs[0].bundle_hash == rep.jobs[2].bundle_hash);
}

TEST_CASE("worker pool output is independent of thread count") {
    TempDir dir("hopse_pool");
    std::vector<std::string> inputs;
    for (int i = 0; i < 6; ++i) {
        auto g = oracle::gnp_graph(6, 0.5, static_cast<std::uint64_t>(i) + 700);
        std::string path = (dir.path / ("g" + std::to_string(i) + ".el")).string();
        save_graph(path, g);
        inputs.push_back(path);
    }
    PipelineConfig serial;
    serial.out_dir = (dir.path / "serial").string();
    serial.threads = 1;
    PipelineConfig pooled;
    pooled.out_dir = (dir.path / "pooled").string();
    pooled.threads = 3;
    auto a = run_pipeline(serial, inputs);
    auto b = run_pipeline(pooled, inputs);
    REQUIRE(a.jobs.size() == b.jobs.size());
    for (size_t i = 0; i < a.jobs.size(); ++i) {
        CHECK(a.jobs[i].input == b.jobs[i].input);
        CHECK(a.jobs[i].bundle_hash == b.jobs[i].bundle_hash);
    }
}

TEST_CASE("bundles carry the directed-walk flag through serialization") {
    TempDir dir("hopse_dirwalk");
    auto cc = clique_lift(fused_triangle_ring(2), 2);
    auto b = precompute_bundle(cc, taxonomy_set("Inc-1"), {PseKind::rwse_directed(4)},
                               InitPolicy::ones(), 2, "Inc-1");
    std::string path = (dir.path / "d.hb").string();
    save_bundle(path, b);
    auto back = load_bundle(path);
    CHECK(back.kinds[0] == PseKind::rwse_directed(4));
    CHECK(back == b);
}

TEST_CASE("pipeline config resolves taxonomy names") {
    PipelineConfig cfg;
    cfg.taxonomy = "Mix-2";
    CHECK(cfg.resolved_nfs().size() == 6);
    cfg.nfs = {NeighborhoodFunction::adjacency(0, 1)};
    CHECK(cfg.resolved_nfs().size() == 1);
}
