#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "hopse/lifting.hpp"
#include "hopse/neighborhoods.hpp"

namespace hopse {

/// One positional/structural encoding channel with its parameters.
struct PseKind {
    enum class Tag { LapPE, RWSE, HKdiagSE, ElstaticPE };
    Tag tag = Tag::RWSE;
    int param = 16;        // LapPE: eigenvector count i; RWSE/HKdiagSE: horizon K
    bool directed = false; // RWSE only: walk on the raw arcs instead of the
                           // symmetrized graph

    static constexpr int kElstaticWidth = 7;

    static PseKind lap(int i = 4);
    static PseKind rwse(int K = 16);
    static PseKind rwse_directed(int K = 16);
    static PseKind hk_diag(int K = 16);
    static PseKind elstatic();

    /// Output columns D_k; constant per channel, independent of the graph.
    int width() const;
    std::string name() const; // "lap:i=4", "rwse:K=16", "rwse-dir:K=16", ...
    static PseKind parse(const std::string& text);
    static std::vector<PseKind> parse_list(const std::string& comma_separated);

    bool operator==(const PseKind&) const = default;
};

/// Dense per-target-cell encoding values for one (neighborhood, channel)
/// pair. Row i belongs to cell row_cells[i]; row order follows the Hasse
/// graph's target order (ascending cell id).
struct EncodingMatrix {
    std::vector<CellId> row_cells;
    Eigen::MatrixXd values;
    PseKind kind;
    NeighborhoodFunction origin;
};

/// Eigenvectors of the i smallest nontrivial Laplacian eigenvalues of the
/// symmetrized graph, sign-fixed (first nonzero entry positive), zero-padded
/// when the spectrum runs out. Throws EmptyGraph.
EncodingMatrix lap_pe(const HasseGraph& h, int i);

/// diag(P^t) for t = 1..K with P = D^{-1}A on the symmetrized graph;
/// degree-0 nodes walk in place (P[v,v] = 1). With directed=true the walk
/// follows the raw arcs tail->head and D is the out-degree.
EncodingMatrix rwse(const HasseGraph& h, int K, bool directed = false);

/// Heat-kernel diagonal: sum_j phi[v,j]^2 exp(-lambda_j t) for t = 1..K.
EncodingMatrix hk_diag(const HasseGraph& h, int K);

/// Electrostatic summary built from the per-component Laplacian
/// pseudoinverse M. For each node v the potential field f_v(u) =
/// M[u,v] - M[v,v] over v's component yields 7 statistics: min, max, mean,
/// population std, mean |f|, the potential at v's farthest node (BFS
/// distance; equidistant ties resolve to the smallest potential), and
/// M[v,v].
EncodingMatrix elstatic_pe(const HasseGraph& h);

/// Dispatch on kind. Throws EmptyGraph on a node-less graph.
EncodingMatrix encode(const HasseGraph& h, const PseKind& kind);

/// A plain graph viewed as an encoding input: every vertex is a node (also
/// isolated ones), arcs run both directions, all nodes are targets.
HasseGraph graph_encoding_view(const InputGraph& g);

/// Symmetrized simple adjacency lists of a Hasse graph (self-arcs dropped).
std::vector<std::vector<int>> symmetrized_adjacency(const HasseGraph& h);

/// Out-neighbor lists following the raw arcs (self-arcs dropped).
std::vector<std::vector<int>> out_adjacency(const HasseGraph& h);

/// Encoding file, text (`--format text`) and binary (`--format bin`) forms.
/// Both carry the complex hash, neighborhood, kind/params and row ids.
void write_encoding_text(std::ostream& os, const EncodingMatrix& enc,
                         std::uint64_t complex_hash);
void write_encoding_binary(std::ostream& os, const EncodingMatrix& enc,
                           std::uint64_t complex_hash);
EncodingMatrix read_encoding_text(std::istream& is, std::uint64_t* complex_hash = nullptr);
EncodingMatrix read_encoding_binary(std::istream& is, std::uint64_t* complex_hash = nullptr);

} // namespace hopse
