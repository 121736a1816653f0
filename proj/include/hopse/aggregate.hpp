#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hopse/pse.hpp"

namespace hopse {

/// How the initial per-cell feature matrices Z_r are filled.
struct InitPolicy {
    enum class Mode { Ones, UserFeatures };
    Mode mode = Mode::Ones;
    std::map<int, Eigen::MatrixXd> user_features; // rank -> N_r x d_r

    static InitPolicy ones() { return {}; }
    static InitPolicy features(std::map<int, Eigen::MatrixXd> by_rank);
};

/// Precomputed per-rank features: for every rank r the concatenated channel
/// matrices X_{r,k}, the initial features Z_r, and the cell-id row index.
struct RankFeatureBundle {
    int max_rank = -1;
    std::vector<std::vector<CellId>> row_cells;        // [r] -> cell ids (row order)
    std::vector<std::vector<Eigen::MatrixXd>> channels; // [r][k] -> X_{r,k}
    std::vector<Eigen::MatrixXd> init_features;         // [r] -> Z_r

    std::string taxonomy;                        // name or "custom"
    std::vector<NeighborhoodFunction> nfs;       // concatenation order
    std::vector<PseKind> kinds;                  // channel order
    std::uint64_t complex_hash = 0;

    size_t num_ranks() const { return row_cells.size(); }
    bool operator==(const RankFeatureBundle& other) const;
};

/// Concatenates the channel-k encodings of all rank-r-targeted neighborhoods
/// (in the given order) into one N_r x (sum of widths) matrix. Cells missing
/// from an encoding's Hasse graph get zero rows in that block.
Eigen::MatrixXd aggregate_rank(const CombinatorialComplex& cc,
                               const std::vector<EncodingMatrix>& encs,
                               int r, const PseKind& kind);

/// Runs hasse_graph + encode for every (neighborhood, channel) pair and
/// aggregates per rank. Neighborhoods with an empty Hasse graph contribute
/// zero blocks of the channel's fixed width. max_rank defaults to the
/// complex dimension; passing it explicitly keeps bundles of mixed-dim
/// datasets shape-compatible.
RankFeatureBundle precompute_bundle(const CombinatorialComplex& cc,
                                    const std::vector<NeighborhoodFunction>& nfs,
                                    const std::vector<PseKind>& kinds,
                                    const InitPolicy& init = InitPolicy::ones(),
                                    std::optional<int> max_rank = std::nullopt,
                                    const std::string& taxonomy_name = "custom");

/// Deterministic binary container; identical inputs give identical bytes.
void write_bundle(std::ostream& os, const RankFeatureBundle& b);
RankFeatureBundle read_bundle(std::istream& is);
void save_bundle(const std::string& path, const RankFeatureBundle& b);
RankFeatureBundle load_bundle(const std::string& path);

} // namespace hopse
