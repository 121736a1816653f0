#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hopse/complex.hpp"

namespace hopse {

enum class NfKind { Incidence, Adjacency };

/// Descriptor of one neighborhood function.
///
/// Incidence I_{s->t}: maps a t-cell to the rank-s cells strictly containing
/// it (t < s) or strictly contained in it (t > s).
/// Adjacency A_{t,s}: maps a t-cell to the other t-cells sharing a rank-s
/// incident cell with it (subscript order: target rank first, via rank
/// second, so A_{0,1} is nodes via edges).
struct NeighborhoodFunction {
    NfKind kind = NfKind::Adjacency;
    int source_rank = 0; // Incidence s; Adjacency via rank
    int target_rank = 0; // rank of the cells being updated (both kinds)

    static NeighborhoodFunction incidence(int s, int t);
    static NeighborhoodFunction adjacency(int target, int via);

    int via_rank() const { return source_rank; }

    /// Canonical name: "I_{s->t}" or "A_{t,s}".
    std::string name() const;
    /// Parses "I_{0->1}", "I0->1", "A_{0,1}", "A0,1".
    static NeighborhoodFunction parse(const std::string& text);

    bool operator==(const NeighborhoodFunction&) const = default;
};

/// Strictly augmented Hasse graph of one neighborhood function: the directed
/// graph whose arcs are (neighbor, cell) pairs, restricted to cells touching
/// at least one arc. Nodes are sorted by cell id; arcs sorted
/// lexicographically; node indices refer to positions in `nodes`.
struct HasseGraph {
    std::vector<CellId> nodes;
    std::vector<int> node_ranks;             // rank of each node's cell
    std::vector<std::pair<int, int>> arcs;   // (tail = neighbor tau, head = sigma), node indices
    std::vector<int> target_nodes;           // indices of nodes with the target rank
    NeighborhoodFunction origin;

    size_t size() const { return nodes.size(); }
    bool empty() const { return nodes.empty(); }
    int node_index(CellId id) const; // -1 if absent
};

/// Rank-s cells strictly containing / contained in sigma per the incidence
/// definition. Throws RankMismatch unless rk(sigma) == nf.target_rank.
std::vector<CellId> incidence(const CombinatorialComplex& cc,
                              const NeighborhoodFunction& nf, CellId sigma);

/// Rank-t cells sharing a rank-s incident cell with sigma. Irreflexive by
/// default; include_self restores the literal self-intersecting reading.
std::vector<CellId> adjacency(const CombinatorialComplex& cc,
                              const NeighborhoodFunction& nf, CellId sigma,
                              bool include_self = false);

/// Evaluates nf on one cell (dispatching on kind).
std::vector<CellId> neighbors(const CombinatorialComplex& cc,
                              const NeighborhoodFunction& nf, CellId sigma,
                              bool include_self = false);

/// Materializes the strictly augmented Hasse graph of nf over cc.
HasseGraph hasse_graph(const CombinatorialComplex& cc, const NeighborhoodFunction& nf,
                       bool include_self = false);

/// Named neighborhood sets (Adj-1..3, Inc-1..3, Mix-1..2). Throws UnknownSet.
std::vector<NeighborhoodFunction> taxonomy_set(const std::string& name);
std::vector<std::string> taxonomy_names();

/// Subset of nfs whose target rank is r, preserving order.
std::vector<NeighborhoodFunction> rank_targeted(const std::vector<NeighborhoodFunction>& nfs,
                                                int r);

/// Hasse graph in edge-list form (`n m` + arc lines) plus a sidecar mapping
/// `node<TAB>cell<TAB>rank<TAB>is_target`.
void write_hasse_graph(std::ostream& os, const HasseGraph& h);
void write_hasse_mapping(std::ostream& os, const HasseGraph& h);

} // namespace hopse
