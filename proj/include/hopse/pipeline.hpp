#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hopse/aggregate.hpp"
#include "hopse/model.hpp"

namespace hopse {

/// Full lift -> expand -> encode -> aggregate configuration.
struct PipelineConfig {
    enum class LiftMode { Clique, Cycle, None }; // None: inputs are complex files
    LiftMode lift_mode = LiftMode::Clique;
    int lift_max_rank = 2;
    int max_cycle_len = 6;
    std::string taxonomy = "Inc-1"; // name, or "custom" with explicit nfs
    std::vector<NeighborhoodFunction> nfs;
    std::vector<PseKind> kinds = {PseKind::rwse(8)};
    InitPolicy init = InitPolicy::ones();
    int bundle_max_rank = 2;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    int threads = 0; // 0: HOPSE_THREADS env or hardware concurrency

    /// Resolves taxonomy name to nfs (when nfs is empty).
    std::vector<NeighborhoodFunction> resolved_nfs() const;
};

struct GraphJob {
    std::string input;
    bool ok = false;
    std::string error;
    std::string bundle_path;
    std::uint64_t bundle_hash = 0;
    std::uint64_t complex_hash = 0;
    size_t num_cells = 0;
    double millis = 0;
};

struct PipelineReport {
    std::vector<GraphJob> jobs;
    size_t num_failed = 0;
};

/// Lifts and encodes every input file into a bundle under cfg.out_dir,
/// one worker-pool job per graph. A malformed input fails only its own job.
PipelineReport run_pipeline(const PipelineConfig& cfg,
                            const std::vector<std::string>& graph_paths);

void write_manifest(std::ostream& os, const PipelineConfig& cfg, const PipelineReport& rep);

/// Re-reads bundle files and compares hashes against the manifest.
/// Returns the number of mismatches/missing files.
size_t verify_manifest(const std::string& manifest_path);

/// FNV-1a over a file's bytes.
std::uint64_t hash_file(const std::string& path);

/// Cycle of k fused triangles: anchors a_0..a_{k-1}, one middle vertex per
/// triangle, triangle i = {a_i, m_i, a_{i+1 mod k}}. Bounded degree, about
/// 6k cells after clique lifting.
InputGraph fused_triangle_ring(int k);

struct BenchPoint {
    size_t requested_cells = 0;
    size_t cells = 0;
    double precompute_ms = 0; // median over reps
    double forward_ms = 0;    // median over reps
};

struct BenchReport {
    std::vector<BenchPoint> points;
    std::optional<double> slope; // log-log fit of (precompute+forward) vs cells
    int reps = 0;
};

/// Times precompute_bundle + model forward on the fused-triangle family.
BenchReport bench_scaling(const std::vector<size_t>& sizes, int reps,
                          const std::vector<NeighborhoodFunction>& nfs,
                          const std::vector<PseKind>& kinds, std::uint64_t seed);

void write_bench_report(std::ostream& os, const BenchReport& rep);

/// Synthetic binary task: cycle-lifted graphs with (label 1) vs without
/// (label 0) a 2-cell; balanced, deterministic in the seed.
std::vector<std::pair<InputGraph, int>> synth_two_cell_graphs(int count, std::uint64_t seed);
std::vector<std::pair<RankFeatureBundle, Target>>
synth_two_cell_dataset(int count, std::uint64_t seed);

} // namespace hopse
