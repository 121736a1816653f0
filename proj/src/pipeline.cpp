#include "hopse/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace hopse {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::vector<NeighborhoodFunction> PipelineConfig::resolved_nfs() const {
    if (!nfs.empty()) return nfs;
    return taxonomy_set(taxonomy);
}

std::uint64_t hash_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path);
    std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return fnv1a(bytes.data(), bytes.size());
}

namespace {

int pool_size(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("HOPSE_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

CombinatorialComplex lift_input(const PipelineConfig& cfg, const std::string& path) {
    if (cfg.lift_mode == PipelineConfig::LiftMode::None) return load_complex(path);
    InputGraph g = load_graph(path);
    if (cfg.lift_mode == PipelineConfig::LiftMode::Clique)
        return clique_lift(g, cfg.lift_max_rank);
    return cycle_lift(g, cfg.max_cycle_len);
}

GraphJob run_one(const PipelineConfig& cfg, const std::string& path) {
    GraphJob job;
    job.input = path;
    auto t0 = std::chrono::steady_clock::now();
    try {
        CombinatorialComplex cc = lift_input(cfg, path);
        RankFeatureBundle bundle =
            precompute_bundle(cc, cfg.resolved_nfs(), cfg.kinds, cfg.init,
                              cfg.bundle_max_rank, cfg.taxonomy);
        std::string stem = fs::path(path).stem().string();
        job.bundle_path = (fs::path(cfg.out_dir) / (stem + ".hb")).string();
        save_bundle(job.bundle_path, bundle);
        job.bundle_hash = hash_file(job.bundle_path);
        job.complex_hash = cc.content_hash();
        job.num_cells = cc.num_cells();
        job.ok = true;
    } catch (const std::exception& e) {
        job.ok = false;
        job.error = e.what();
    }
    job.millis = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
    return job;
}

} // namespace

PipelineReport run_pipeline(const PipelineConfig& cfg,
                            const std::vector<std::string>& graph_paths) {
    fs::create_directories(cfg.out_dir);
    PipelineReport rep;
    rep.jobs.resize(graph_paths.size());

    const int workers =
        std::min<int>(pool_size(cfg.threads), std::max<size_t>(graph_paths.size(), 1));
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= graph_paths.size()) return;
            rep.jobs[i] = run_one(cfg, graph_paths[i]);
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (const auto& j : rep.jobs)
        if (!j.ok) ++rep.num_failed;
    return rep;
}

namespace {

std::string hex64(std::uint64_t v) {
    char buf[19];
    std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(v));
    return buf;
}

} // namespace

void write_manifest(std::ostream& os, const PipelineConfig& cfg, const PipelineReport& rep) {
    json j;
    j["version"] = 1;
    json cj;
    cj["lift"] = cfg.lift_mode == PipelineConfig::LiftMode::Clique  ? "clique"
                 : cfg.lift_mode == PipelineConfig::LiftMode::Cycle ? "cycle"
                                                                    : "none";
    cj["taxonomy"] = cfg.taxonomy;
    json nfs = json::array();
    for (const auto& nf : cfg.resolved_nfs()) nfs.push_back(nf.name());
    cj["neighborhoods"] = nfs;
    json kinds = json::array();
    for (const auto& k : cfg.kinds) kinds.push_back(k.name());
    cj["channels"] = kinds;
    cj["bundle_max_rank"] = cfg.bundle_max_rank;
    cj["seed"] = cfg.seed;
    j["config"] = cj;

    json graphs = json::array();
    for (const auto& job : rep.jobs) {
        json g;
        g["input"] = job.input;
        g["ok"] = job.ok;
        if (job.ok) {
            g["bundle"] = job.bundle_path;
            g["bundle_hash"] = hex64(job.bundle_hash);
            g["complex_hash"] = hex64(job.complex_hash);
            g["cells"] = job.num_cells;
        } else {
            g["error"] = job.error;
        }
        g["millis"] = job.millis;
        graphs.push_back(g);
    }
    j["graphs"] = graphs;
    j["num_failed"] = rep.num_failed;
    os << j.dump(2) << '\n';
}

size_t verify_manifest(const std::string& manifest_path) {
    std::ifstream f(manifest_path);
    if (!f) throw IoError("cannot open " + manifest_path);
    json j = json::parse(f);
    size_t bad = 0;
    for (const auto& g : j.at("graphs")) {
        if (!g.at("ok").get<bool>()) continue;
        std::string bundle = g.at("bundle").get<std::string>();
        std::string recorded = g.at("bundle_hash").get<std::string>();
        try {
            if (hex64(hash_file(bundle)) != recorded) ++bad;
        } catch (const std::exception&) {
            ++bad;
        }
    }
    return bad;
}

InputGraph fused_triangle_ring(int k) {
    if (k < 2) throw ParseError("fused triangle ring needs k >= 2");
    // anchors 0..k-1, middles k..2k-1; triangle i = {a_i, m_i, a_{i+1}}
    std::set<std::pair<VertexId, VertexId>> edges;
    for (int i = 0; i < k; ++i) {
        int a = i;
        int b = (i + 1) % k;
        int mid = k + i;
        edges.emplace(std::min(a, mid), std::max(a, mid));
        edges.emplace(std::min(mid, b), std::max(mid, b));
        edges.emplace(std::min(a, b), std::max(a, b));
    }
    return InputGraph::make(2 * k, {edges.begin(), edges.end()});
}

BenchReport bench_scaling(const std::vector<size_t>& sizes, int reps,
                          const std::vector<NeighborhoodFunction>& nfs,
                          const std::vector<PseKind>& kinds, std::uint64_t seed) {
    if (reps < 1) reps = 1;
    BenchReport rep;
    rep.reps = reps;
    for (size_t target : sizes) {
        int k = std::max<int>(2, static_cast<int>((target + 3) / 6));
        InputGraph g = fused_triangle_ring(k);
        CombinatorialComplex cc = clique_lift(g, 2);

        std::vector<double> pre_ms, fwd_ms;
        RankFeatureBundle bundle =
            precompute_bundle(cc, nfs, kinds, InitPolicy::ones(), 2, "bench"); // warmup
        for (int r = 0; r < reps; ++r) {
            auto t0 = std::chrono::steady_clock::now();
            bundle = precompute_bundle(cc, nfs, kinds, InitPolicy::ones(), 2, "bench");
            auto t1 = std::chrono::steady_clock::now();
            pre_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
        }
        ModelConfig mc = ModelConfig::from_bundle(bundle, 8, 1, TaskKind::regression(1));
        HopseModel model = make_model(mc, seed);
        volatile double warm = forward(model, bundle).output(0);
        (void)warm;
        for (int r = 0; r < reps; ++r) {
            auto t0 = std::chrono::steady_clock::now();
            volatile double sink = forward(model, bundle).output(0);
            (void)sink;
            auto t1 = std::chrono::steady_clock::now();
            fwd_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
        }
        auto median = [](std::vector<double> v) {
            std::sort(v.begin(), v.end());
            size_t n = v.size();
            return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
        };
        BenchPoint p;
        p.requested_cells = target;
        p.cells = cc.num_cells();
        p.precompute_ms = median(pre_ms);
        p.forward_ms = median(fwd_ms);
        rep.points.push_back(p);
    }

    // least-squares slope of log(total time) against log(cells)
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : rep.points) {
        double total = p.precompute_ms + p.forward_ms;
        if (total > 0) pts.emplace_back(std::log(static_cast<double>(p.cells)), std::log(total));
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](auto& a, auto& b) { return a.first == b.first; }),
              pts.end());
    if (pts.size() >= 2) {
        double mx = 0, my = 0;
        for (auto& [x, y] : pts) {
            mx += x;
            my += y;
        }
        mx /= static_cast<double>(pts.size());
        my /= static_cast<double>(pts.size());
        double num = 0, den = 0;
        for (auto& [x, y] : pts) {
            num += (x - mx) * (y - my);
            den += (x - mx) * (x - mx);
        }
        if (den > 0) rep.slope = num / den;
    }
    return rep;
}

void write_bench_report(std::ostream& os, const BenchReport& rep) {
    os << "cells\tprecompute_ms\tforward_ms\ttotal_ms (median of " << rep.reps << ")\n";
    char buf[64];
    for (const auto& p : rep.points) {
        std::snprintf(buf, sizeof(buf), "%zu\t%.4f\t%.4f\t%.4f", p.cells, p.precompute_ms,
                      p.forward_ms, p.precompute_ms + p.forward_ms);
        os << buf << '\n';
    }
    if (rep.slope)
        os << "log-log slope: " << *rep.slope << '\n';
    else
        os << "log-log slope: undefined (need >= 2 distinct sizes)\n";
}

std::vector<std::pair<InputGraph, int>> synth_two_cell_graphs(int count, std::uint64_t seed) {
    std::vector<std::pair<InputGraph, int>> out;
    out.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(i));
        int label = i % 2;
        int n = 4 + static_cast<int>(rng() % 5); // 4..8 vertices
        std::vector<std::pair<VertexId, VertexId>> edges;
        if (label == 1) {
            // one chordless cycle of length 3..min(6, n), remainder as a path
            int m = 3 + static_cast<int>(rng() % static_cast<std::uint64_t>(
                                             std::min(6, n) - 2));
            for (int v = 0; v < m; ++v) edges.emplace_back(v, (v + 1) % m);
            for (int v = m; v < n; ++v) edges.emplace_back(v - 1 == m - 1 ? 0 : v - 1, v);
        } else {
            // uniform random recursive tree: acyclic, no 2-cells
            for (int v = 1; v < n; ++v)
                edges.emplace_back(static_cast<int>(rng() % static_cast<std::uint64_t>(v)), v);
        }
        out.emplace_back(InputGraph::make(n, std::move(edges)), label);
    }
    return out;
}

std::vector<std::pair<RankFeatureBundle, Target>>
synth_two_cell_dataset(int count, std::uint64_t seed) {
    auto nfs = taxonomy_set("Inc-1");
    std::vector<PseKind> kinds = {PseKind::rwse(8)};
    std::vector<std::pair<RankFeatureBundle, Target>> data;
    data.reserve(static_cast<size_t>(count));
    for (auto& [g, label] : synth_two_cell_graphs(count, seed)) {
        CombinatorialComplex cc = cycle_lift(g, 6);
        data.emplace_back(precompute_bundle(cc, nfs, kinds, InitPolicy::ones(), 2, "Inc-1"),
                          Target::of_label(label));
    }
    return data;
}

} // namespace hopse
