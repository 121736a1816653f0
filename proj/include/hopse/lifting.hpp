#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hopse/complex.hpp"

namespace hopse {

/// Simple undirected graph; no self-loops, no duplicate edges, vertex ids
/// in [0, num_vertices).
struct InputGraph {
    int num_vertices = 0;
    std::vector<std::pair<VertexId, VertexId>> edges; // u < v, sorted

    static InputGraph make(int n, std::vector<std::pair<VertexId, VertexId>> edges);
    std::vector<std::vector<VertexId>> adjacency() const;
    bool has_edge(VertexId u, VertexId v) const;
};

/// Clique complex lift: each (k+1)-clique with k <= max_rank becomes a
/// rank-k cell. Output is downward closed.
CombinatorialComplex clique_lift(const InputGraph& g, int max_rank = 2);

/// Cycle lift: rank 0 = vertices, rank 1 = edges, rank 2 = one cell per
/// chordless (induced) cycle of length 3..max_cycle_len.
CombinatorialComplex cycle_lift(const InputGraph& g, int max_cycle_len = 6);

/// Chordless cycles as sorted vertex sets (the rank-2 cells of cycle_lift).
std::vector<std::vector<VertexId>> chordless_cycles(const InputGraph& g, int max_cycle_len);

/// Edge-list text format: first line `n m`, then m lines `u v`.
void write_graph(std::ostream& os, const InputGraph& g);
InputGraph read_graph(std::istream& is);
void save_graph(const std::string& path, const InputGraph& g);
InputGraph load_graph(const std::string& path);

} // namespace hopse
