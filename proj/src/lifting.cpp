#include "hopse/lifting.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace hopse {

InputGraph InputGraph::make(int n, std::vector<std::pair<VertexId, VertexId>> edges) {
    if (n < 0) throw ParseError("negative vertex count");
    InputGraph g;
    g.num_vertices = n;
    std::set<std::pair<VertexId, VertexId>> dedup;
    for (auto [u, v] : edges) {
        if (u == v) throw ParseError("self-loop at vertex " + std::to_string(u));
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw ParseError("edge endpoint out of range");
        if (u > v) std::swap(u, v);
        if (!dedup.emplace(u, v).second)
            throw ParseError("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
    }
    g.edges.assign(dedup.begin(), dedup.end());
    return g;
}

std::vector<std::vector<VertexId>> InputGraph::adjacency() const {
    std::vector<std::vector<VertexId>> adj(static_cast<size_t>(num_vertices));
    for (auto [u, v] : edges) {
        adj[static_cast<size_t>(u)].push_back(v);
        adj[static_cast<size_t>(v)].push_back(u);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    return adj;
}

bool InputGraph::has_edge(VertexId u, VertexId v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

namespace {

void extend_cliques(const std::vector<std::vector<VertexId>>& adj,
                    std::vector<VertexId>& clique, size_t max_size,
                    std::vector<CellSpec>& out) {
    if (clique.size() >= max_size) return;
    VertexId last = clique.back();
    for (VertexId u : adj[static_cast<size_t>(last)]) {
        if (u <= last) continue;
        bool joined = true;
        for (VertexId w : clique) {
            if (w != last && !std::binary_search(adj[static_cast<size_t>(w)].begin(),
                                                 adj[static_cast<size_t>(w)].end(), u)) {
                joined = false;
                break;
            }
        }
        if (!joined) continue;
        clique.push_back(u);
        out.push_back({clique, static_cast<int>(clique.size()) - 1});
        extend_cliques(adj, clique, max_size, out);
        clique.pop_back();
    }
}

} // namespace

CombinatorialComplex clique_lift(const InputGraph& g, int max_rank) {
    if (max_rank < 1) throw ParseError("clique lift requires max_rank >= 1");
    if (g.num_vertices == 0) return CombinatorialComplex{};
    auto adj = g.adjacency();
    std::vector<CellSpec> specs;
    std::vector<VertexId> clique;
    for (VertexId v = 0; v < g.num_vertices; ++v) {
        specs.push_back({{v}, 0});
        clique.assign(1, v);
        extend_cliques(adj, clique, static_cast<size_t>(max_rank) + 1, specs);
    }
    return build_complex(specs);
}

namespace {

// DFS for induced cycles through start = path[0]. All other cycle vertices
// are greater than start, so each cycle is found once, from its minimal
// vertex. The path is chordless by construction; a candidate adjacent to
// any interior vertex is pruned, one adjacent to start closes a cycle and
// is never extended (the closing edge would become a chord).
void chordless_dfs(const std::vector<std::vector<VertexId>>& adj, const InputGraph& g,
                   std::vector<VertexId>& path, int max_len,
                   std::set<std::vector<VertexId>>& found) {
    VertexId start = path.front();
    VertexId tip = path.back();
    for (VertexId u : adj[static_cast<size_t>(tip)]) {
        if (u <= start) continue;
        if (std::find(path.begin(), path.end(), u) != path.end()) continue;
        bool chord = false;
        for (size_t i = 1; i + 1 < path.size(); ++i) {
            if (g.has_edge(u, path[i])) {
                chord = true;
                break;
            }
        }
        if (chord) continue;
        if (path.size() >= 2 && g.has_edge(u, start)) {
            std::vector<VertexId> cyc(path);
            cyc.push_back(u);
            // canonical reflection: keep the direction whose second vertex is smaller
            if (cyc[1] > cyc.back()) std::reverse(cyc.begin() + 1, cyc.end());
            found.insert(std::move(cyc));
        } else if (static_cast<int>(path.size()) + 1 < max_len) {
            path.push_back(u);
            chordless_dfs(adj, g, path, max_len, found);
            path.pop_back();
        }
    }
}

} // namespace

std::vector<std::vector<VertexId>> chordless_cycles(const InputGraph& g, int max_cycle_len) {
    if (max_cycle_len < 3) throw ParseError("cycle length bound must be >= 3");
    auto adj = g.adjacency();
    std::set<std::vector<VertexId>> sequences;
    std::vector<VertexId> path;
    for (VertexId v = 0; v < g.num_vertices; ++v) {
        path.assign(1, v);
        chordless_dfs(adj, g, path, max_cycle_len, sequences);
    }
    std::set<std::vector<VertexId>> sets;
    for (const auto& seq : sequences) {
        std::vector<VertexId> s(seq);
        std::sort(s.begin(), s.end());
        sets.insert(std::move(s));
    }
    return {sets.begin(), sets.end()};
}

CombinatorialComplex cycle_lift(const InputGraph& g, int max_cycle_len) {
    if (max_cycle_len < 3) throw ParseError("cycle lift requires max_cycle_len >= 3");
    if (g.num_vertices == 0) return CombinatorialComplex{};
    std::vector<CellSpec> specs;
    for (VertexId v = 0; v < g.num_vertices; ++v) specs.push_back({{v}, 0});
    for (auto [u, v] : g.edges) specs.push_back({{u, v}, 1});
    for (auto& cyc : chordless_cycles(g, max_cycle_len)) specs.push_back({cyc, 2});
    return build_complex(specs);
}

void write_graph(std::ostream& os, const InputGraph& g) {
    os << g.num_vertices << ' ' << g.edges.size() << '\n';
    for (auto [u, v] : g.edges) os << u << ' ' << v << '\n';
}

InputGraph read_graph(std::istream& is) {
    int n = 0;
    size_t m = 0;
    if (!(is >> n >> m)) throw ParseError("expected `n m` header in graph file");
    std::vector<std::pair<VertexId, VertexId>> edges;
    edges.reserve(m);
    for (size_t i = 0; i < m; ++i) {
        VertexId u, v;
        if (!(is >> u >> v))
            throw ParseError("expected edge on line " + std::to_string(i + 2));
        edges.emplace_back(u, v);
    }
    return InputGraph::make(n, std::move(edges));
}

void save_graph(const std::string& path, const InputGraph& g) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open " + path + " for writing");
    write_graph(f, g);
}

InputGraph load_graph(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open " + path);
    return read_graph(f);
}

} // namespace hopse
