#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hopse/errors.hpp"

namespace hopse {

using VertexId = int;
using CellId = int;

/// A ranked cell: a non-empty set of vertices carrying a non-negative rank.
struct Cell {
    CellId id = -1;
    std::vector<VertexId> vertices; // sorted, unique, non-empty
    int rank = 0;
};

/// (vertex set, rank) pair used to build a complex. Vertices need not be sorted.
struct CellSpec {
    std::vector<VertexId> vertices;
    int rank = 0;
};

/// Combinatorial complex: vertex set plus ranked cells with an
/// order-preserving rank function. Immutable after construction; cell ids
/// are dense, assigned rank-major and lexicographically by sorted vertex
/// set within each rank, so every downstream row order is reproducible.
class CombinatorialComplex {
public:
    CombinatorialComplex() = default;

    const std::vector<Cell>& cells() const { return cells_; }
    const Cell& cell(CellId id) const { return cells_.at(static_cast<size_t>(id)); }
    const std::vector<VertexId>& vertices() const { return vertices_; }
    int dim() const { return dim_; }
    size_t num_cells() const { return cells_.size(); }
    size_t num_vertices() const { return vertices_.size(); }

    /// Ids of rank-r cells in id (= lexicographic) order; empty above dim.
    std::vector<CellId> cells_of_rank(int r) const;
    size_t num_cells_of_rank(int r) const;

    /// True if a cell with this exact (vertex set, rank) exists.
    bool has_cell(const std::vector<VertexId>& sorted_vertices, int rank) const;
    /// Id of the cell with this (sorted vertex set, rank), or -1.
    CellId find_cell(const std::vector<VertexId>& sorted_vertices, int rank) const;

    /// Ids of rank-r cells containing vertex v (used for fast incidence scans).
    const std::vector<CellId>& cells_of_rank_with_vertex(int r, VertexId v) const;

    /// FNV-1a hash over the canonical cell listing; stable across runs.
    std::uint64_t content_hash() const;

    /// Cell list in id order, suitable for rebuilding the complex.
    std::vector<CellSpec> cell_specs() const;

    friend CombinatorialComplex build_complex(const std::vector<CellSpec>& specs);

private:
    std::vector<Cell> cells_;
    std::vector<VertexId> vertices_;           // sorted
    std::vector<std::vector<CellId>> by_rank_; // rank -> ids (id order)
    // per rank: vertex -> ids of rank-r cells containing it
    std::vector<std::vector<std::vector<CellId>>> vertex_index_;
    int dim_ = -1;
};

/// Validates and builds a complex from cell specs. Missing rank-0 singletons
/// are inserted automatically. Throws OrderViolation when a strict-subset
/// pair has decreasing rank and DuplicateCell on repeated (vertex set, rank).
CombinatorialComplex build_complex(const std::vector<CellSpec>& specs);

/// Exhaustive vertex-permutation search for a rank- and inclusion-preserving
/// cell bijection. Throws TooLarge above max_vertices (default 8).
bool is_isomorphic_bruteforce(const CombinatorialComplex& a,
                              const CombinatorialComplex& b,
                              int max_vertices = 8);

/// Text format, one cell per line: `rank<TAB>v1,v2,...,vk`, `#` comments.
void write_complex(std::ostream& os, const CombinatorialComplex& cc);
CombinatorialComplex read_complex(std::istream& is);
void save_complex(const std::string& path, const CombinatorialComplex& cc);
CombinatorialComplex load_complex(const std::string& path);

/// FNV-1a 64-bit over a byte range; the hash used for manifests and bundles.
std::uint64_t fnv1a(const void* data, size_t len, std::uint64_t seed = 1469598103934665603ULL);

} // namespace hopse
