#include "hopse/complex.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace hopse {

namespace {

std::vector<VertexId> normalized(std::vector<VertexId> vs) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

// strict subset test on sorted unique vectors
bool strict_subset(const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
    if (a.size() >= b.size()) return false;
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::string cell_to_string(const std::vector<VertexId>& vs, int rank) {
    std::ostringstream os;
    os << rank << ':';
    for (size_t i = 0; i < vs.size(); ++i) {
        if (i) os << ',';
        os << vs[i];
    }
    return os.str();
}

} // namespace

std::uint64_t fnv1a(const void* data, size_t len, std::uint64_t seed) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

CombinatorialComplex build_complex(const std::vector<CellSpec>& specs) {
    // Normalize, reject duplicates, collect vertices.
    std::set<std::pair<int, std::vector<VertexId>>> seen;
    std::set<VertexId> verts;
    for (const auto& s : specs) {
        auto vs = normalized(s.vertices);
        if (vs.empty()) throw ParseError("cell with empty vertex set");
        if (s.rank < 0) throw ParseError("cell with negative rank");
        if (!seen.emplace(s.rank, vs).second)
            throw DuplicateCell("duplicate cell " + cell_to_string(vs, s.rank));
        verts.insert(vs.begin(), vs.end());
    }
    // Singleton completion: every mentioned vertex becomes a rank-0 cell.
    for (VertexId v : verts) seen.emplace(0, std::vector<VertexId>{v});

    // Order preservation on strict-subset pairs. Equal vertex sets at two
    // ranks are allowed, so the scan deliberately excludes equality.
    std::vector<std::pair<int, std::vector<VertexId>>> all(seen.begin(), seen.end());
    for (size_t i = 0; i < all.size(); ++i) {
        for (size_t j = 0; j < all.size(); ++j) {
            if (i == j) continue;
            if (strict_subset(all[i].second, all[j].second) && all[i].first > all[j].first) {
                throw OrderViolation("rank not order-preserving: " +
                                     cell_to_string(all[i].second, all[i].first) + " within " +
                                     cell_to_string(all[j].second, all[j].first));
            }
        }
    }

    CombinatorialComplex cc;
    cc.vertices_.assign(verts.begin(), verts.end());
    // std::set ordering of (rank, vertices) is exactly the id order we want.
    cc.cells_.reserve(all.size());
    for (auto& [rank, vs] : all) {
        Cell c;
        c.id = static_cast<CellId>(cc.cells_.size());
        c.rank = rank;
        c.vertices = std::move(vs);
        cc.dim_ = std::max(cc.dim_, rank);
        cc.cells_.push_back(std::move(c));
    }
    cc.by_rank_.assign(static_cast<size_t>(cc.dim_ + 1), {});
    for (const auto& c : cc.cells_) cc.by_rank_[static_cast<size_t>(c.rank)].push_back(c.id);

    // vertex -> rank-r cells index; vertices are remapped to dense positions
    std::vector<VertexId> vorder = cc.vertices_;
    cc.vertex_index_.assign(static_cast<size_t>(cc.dim_ + 1),
                            std::vector<std::vector<CellId>>(vorder.size()));
    for (const auto& c : cc.cells_) {
        for (VertexId v : c.vertices) {
            auto pos = static_cast<size_t>(
                std::lower_bound(vorder.begin(), vorder.end(), v) - vorder.begin());
            cc.vertex_index_[static_cast<size_t>(c.rank)][pos].push_back(c.id);
        }
    }
    return cc;
}

std::vector<CellId> CombinatorialComplex::cells_of_rank(int r) const {
    if (r < 0) throw RankMismatch("negative rank");
    if (r > dim_) return {};
    return by_rank_[static_cast<size_t>(r)];
}

size_t CombinatorialComplex::num_cells_of_rank(int r) const {
    if (r < 0 || r > dim_) return 0;
    return by_rank_[static_cast<size_t>(r)].size();
}

CellId CombinatorialComplex::find_cell(const std::vector<VertexId>& sorted_vertices, int rank) const {
    if (rank < 0 || rank > dim_) return -1;
    const auto& ids = by_rank_[static_cast<size_t>(rank)];
    auto it = std::lower_bound(ids.begin(), ids.end(), sorted_vertices,
                               [this](CellId id, const std::vector<VertexId>& key) {
                                   return cells_[static_cast<size_t>(id)].vertices < key;
                               });
    if (it != ids.end() && cells_[static_cast<size_t>(*it)].vertices == sorted_vertices) return *it;
    return -1;
}

bool CombinatorialComplex::has_cell(const std::vector<VertexId>& sorted_vertices, int rank) const {
    return find_cell(sorted_vertices, rank) >= 0;
}

const std::vector<CellId>&
CombinatorialComplex::cells_of_rank_with_vertex(int r, VertexId v) const {
    static const std::vector<CellId> empty;
    if (r < 0 || r > dim_) return empty;
    auto pos = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (pos == vertices_.end() || *pos != v) return empty;
    return vertex_index_[static_cast<size_t>(r)][static_cast<size_t>(pos - vertices_.begin())];
}

std::uint64_t CombinatorialComplex::content_hash() const {
    std::uint64_t h = fnv1a(nullptr, 0);
    for (const auto& c : cells_) {
        std::int64_t rank = c.rank;
        h = fnv1a(&rank, sizeof(rank), h);
        for (VertexId v : c.vertices) {
            std::int64_t vv = v;
            h = fnv1a(&vv, sizeof(vv), h);
        }
        std::int64_t stop = -1;
        h = fnv1a(&stop, sizeof(stop), h);
    }
    return h;
}

std::vector<CellSpec> CombinatorialComplex::cell_specs() const {
    std::vector<CellSpec> out;
    out.reserve(cells_.size());
    for (const auto& c : cells_) out.push_back({c.vertices, c.rank});
    return out;
}

bool is_isomorphic_bruteforce(const CombinatorialComplex& a,
                              const CombinatorialComplex& b,
                              int max_vertices) {
    if (static_cast<int>(a.num_vertices()) > max_vertices ||
        static_cast<int>(b.num_vertices()) > max_vertices) {
        throw TooLarge("isomorphism search capped at " + std::to_string(max_vertices) +
                       " vertices");
    }
    if (a.num_vertices() != b.num_vertices() || a.num_cells() != b.num_cells() ||
        a.dim() != b.dim()) {
        return false;
    }
    for (int r = 0; r <= a.dim(); ++r) {
        if (a.num_cells_of_rank(r) != b.num_cells_of_rank(r)) return false;
    }

    const auto& va = a.vertices();
    std::vector<VertexId> vb = b.vertices();
    std::sort(vb.begin(), vb.end());
    do {
        bool ok = true;
        for (const auto& c : a.cells()) {
            std::vector<VertexId> image;
            image.reserve(c.vertices.size());
            for (VertexId v : c.vertices) {
                auto pos = static_cast<size_t>(
                    std::lower_bound(va.begin(), va.end(), v) - va.begin());
                image.push_back(vb[pos]);
            }
            std::sort(image.begin(), image.end());
            if (!b.has_cell(image, c.rank)) {
                ok = false;
                break;
            }
        }
        // Equal per-rank cell counts make the induced injective map a bijection;
        // vertex bijections preserve inclusion in both directions.
        if (ok) return true;
    } while (std::next_permutation(vb.begin(), vb.end()));
    return false;
}

void write_complex(std::ostream& os, const CombinatorialComplex& cc) {
    os << "# combinatorial complex: " << cc.num_cells() << " cells, dim " << cc.dim() << "\n";
    for (const auto& c : cc.cells()) {
        os << c.rank << '\t';
        for (size_t i = 0; i < c.vertices.size(); ++i) {
            if (i) os << ',';
            os << c.vertices[i];
        }
        os << '\n';
    }
}

CombinatorialComplex read_complex(std::istream& is) {
    std::vector<CellSpec> specs;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::istringstream ls(line);
        CellSpec spec;
        if (!(ls >> spec.rank))
            throw ParseError("line " + std::to_string(lineno) + ": expected rank");
        std::string rest;
        std::getline(ls, rest);
        std::replace(rest.begin(), rest.end(), ',', ' ');
        std::istringstream vs(rest);
        VertexId v;
        while (vs >> v) {
            if (v < 0)
                throw ParseError("line " + std::to_string(lineno) +
                                 ": negative vertex id " + std::to_string(v));
            spec.vertices.push_back(v);
        }
        if (spec.vertices.empty())
            throw ParseError("line " + std::to_string(lineno) + ": cell with no vertices");
        specs.push_back(std::move(spec));
    }
    if (specs.empty()) throw ParseError("no cells in complex file");
    return build_complex(specs);
}

void save_complex(const std::string& path, const CombinatorialComplex& cc) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open " + path + " for writing");
    write_complex(f, cc);
}

CombinatorialComplex load_complex(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open " + path);
    return read_complex(f);
}

} // namespace hopse
