#include "hopse/neighborhoods.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace hopse {

NeighborhoodFunction NeighborhoodFunction::incidence(int s, int t) {
    if (s < 0 || t < 0) throw ParseError("incidence ranks must be non-negative");
    if (s == t) throw ParseError("incidence requires source != target rank");
    NeighborhoodFunction nf;
    nf.kind = NfKind::Incidence;
    nf.source_rank = s;
    nf.target_rank = t;
    return nf;
}

NeighborhoodFunction NeighborhoodFunction::adjacency(int target, int via) {
    if (target < 0 || via < 0) throw ParseError("adjacency ranks must be non-negative");
    if (target == via) throw ParseError("adjacency requires target != via rank");
    NeighborhoodFunction nf;
    nf.kind = NfKind::Adjacency;
    nf.source_rank = via;
    nf.target_rank = target;
    return nf;
}

std::string NeighborhoodFunction::name() const {
    std::ostringstream os;
    if (kind == NfKind::Incidence)
        os << "I_{" << source_rank << "->" << target_rank << "}";
    else
        os << "A_{" << target_rank << "," << source_rank << "}";
    return os.str();
}

NeighborhoodFunction NeighborhoodFunction::parse(const std::string& text) {
    std::string t;
    for (char c : text) {
        if (c == '{' || c == '}' || c == '_' || c == ' ') continue;
        t.push_back(c);
    }
    if (t.size() < 2) throw ParseError("cannot parse neighborhood '" + text + "'");
    auto rank_of = [&text](const std::string& s) {
        try {
            return std::stoi(s);
        } catch (const std::exception&) {
            throw ParseError("bad rank in neighborhood '" + text + "'");
        }
    };
    char k = t[0];
    std::string body = t.substr(1);
    if (k == 'I' || k == 'i') {
        auto arrow = body.find("->");
        if (arrow == std::string::npos)
            throw ParseError("incidence needs 's->t' in '" + text + "'");
        return incidence(rank_of(body.substr(0, arrow)), rank_of(body.substr(arrow + 2)));
    }
    if (k == 'A' || k == 'a') {
        auto comma = body.find(',');
        if (comma == std::string::npos)
            throw ParseError("adjacency needs 't,s' in '" + text + "'");
        return adjacency(rank_of(body.substr(0, comma)), rank_of(body.substr(comma + 1)));
    }
    throw ParseError("cannot parse neighborhood '" + text + "'");
}

int HasseGraph::node_index(CellId id) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), id);
    if (it == nodes.end() || *it != id) return -1;
    return static_cast<int>(it - nodes.begin());
}

namespace {

// Rank-s cells sharing at least one vertex with sigma's cell, via the
// complex's vertex index. Superset of any containment relation.
std::vector<CellId> vertex_candidates(const CombinatorialComplex& cc, const Cell& sigma, int s) {
    std::vector<CellId> cand;
    for (VertexId v : sigma.vertices) {
        const auto& bucket = cc.cells_of_rank_with_vertex(s, v);
        cand.insert(cand.end(), bucket.begin(), bucket.end());
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    return cand;
}

bool strict_subset(const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
    if (a.size() >= b.size()) return false;
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

} // namespace

std::vector<CellId> incidence(const CombinatorialComplex& cc,
                              const NeighborhoodFunction& nf, CellId sigma) {
    if (nf.kind != NfKind::Incidence) throw ParseError("incidence() needs an incidence descriptor");
    const Cell& cell = cc.cell(sigma);
    if (cell.rank != nf.target_rank)
        throw RankMismatch("cell " + std::to_string(sigma) + " has rank " +
                           std::to_string(cell.rank) + ", neighborhood expects " +
                           std::to_string(nf.target_rank));
    const int s = nf.source_rank;
    const int t = nf.target_rank;
    std::vector<CellId> out;
    for (CellId cid : vertex_candidates(cc, cell, s)) {
        const Cell& tau = cc.cell(cid);
        bool hit = (t < s) ? strict_subset(cell.vertices, tau.vertices)
                           : strict_subset(tau.vertices, cell.vertices);
        if (hit) out.push_back(cid);
    }
    return out;
}

std::vector<CellId> adjacency(const CombinatorialComplex& cc,
                              const NeighborhoodFunction& nf, CellId sigma,
                              bool include_self) {
    if (nf.kind != NfKind::Adjacency) throw ParseError("adjacency() needs an adjacency descriptor");
    const Cell& cell = cc.cell(sigma);
    if (cell.rank != nf.target_rank)
        throw RankMismatch("cell " + std::to_string(sigma) + " has rank " +
                           std::to_string(cell.rank) + ", neighborhood expects " +
                           std::to_string(nf.target_rank));
    auto inc = NeighborhoodFunction::incidence(nf.via_rank(), nf.target_rank);
    std::vector<CellId> mine = incidence(cc, inc, sigma);
    std::set<CellId> out;
    for (CellId mid : mine) {
        // every target-rank cell incident to this mediator is adjacent to sigma
        const Cell& mediator = cc.cell(mid);
        for (CellId cid : vertex_candidates(cc, mediator, nf.target_rank)) {
            if (cid == sigma) continue;
            const Cell& tau = cc.cell(cid);
            bool hit = (nf.target_rank < nf.via_rank())
                           ? strict_subset(tau.vertices, mediator.vertices)
                           : strict_subset(mediator.vertices, tau.vertices);
            if (hit) out.insert(cid);
        }
    }
    if (include_self && !mine.empty()) out.insert(sigma);
    return {out.begin(), out.end()};
}

std::vector<CellId> neighbors(const CombinatorialComplex& cc,
                              const NeighborhoodFunction& nf, CellId sigma,
                              bool include_self) {
    if (nf.kind == NfKind::Incidence) return incidence(cc, nf, sigma);
    return adjacency(cc, nf, sigma, include_self);
}

HasseGraph hasse_graph(const CombinatorialComplex& cc, const NeighborhoodFunction& nf,
                       bool include_self) {
    std::set<CellId> node_set;
    std::vector<std::pair<CellId, CellId>> cell_arcs; // (tau, sigma)
    for (CellId sigma : cc.cells_of_rank(nf.target_rank)) {
        auto ns = neighbors(cc, nf, sigma, include_self);
        if (ns.empty()) continue;
        node_set.insert(sigma);
        for (CellId tau : ns) {
            node_set.insert(tau);
            cell_arcs.emplace_back(tau, sigma);
        }
    }

    HasseGraph h;
    h.origin = nf;
    h.nodes.assign(node_set.begin(), node_set.end());
    h.node_ranks.reserve(h.nodes.size());
    for (CellId id : h.nodes) h.node_ranks.push_back(cc.cell(id).rank);

    std::sort(cell_arcs.begin(), cell_arcs.end());
    h.arcs.reserve(cell_arcs.size());
    for (auto [tau, sigma] : cell_arcs)
        h.arcs.emplace_back(h.node_index(tau), h.node_index(sigma));

    for (size_t i = 0; i < h.nodes.size(); ++i)
        if (h.node_ranks[i] == nf.target_rank) h.target_nodes.push_back(static_cast<int>(i));
    return h;
}

std::vector<NeighborhoodFunction> taxonomy_set(const std::string& name) {
    using NF = NeighborhoodFunction;
    const auto A = [](int t, int s) { return NF::adjacency(t, s); };
    const auto I = [](int s, int t) { return NF::incidence(s, t); };
    if (name == "Adj-1") return {A(0, 1)};
    if (name == "Adj-2") return {A(0, 1), A(1, 2)};
    if (name == "Adj-3") return {A(0, 1), A(1, 2), A(2, 1)};
    if (name == "Inc-1") return {A(0, 1), I(0, 1), I(1, 2)};
    if (name == "Inc-2") return {A(0, 1), I(1, 0), I(2, 1)};
    if (name == "Inc-3") return {A(0, 1), I(0, 1), I(1, 2), I(1, 0), I(2, 1)};
    if (name == "Mix-1")
        return {A(0, 1), A(1, 2), A(1, 0), A(2, 1), I(0, 1), I(1, 2), I(1, 0), I(2, 1)};
    if (name == "Mix-2") return {A(0, 1), A(1, 2), A(0, 2), A(1, 0), A(2, 1), A(2, 0)};
    throw UnknownSet("unknown neighborhood set '" + name + "'");
}

std::vector<std::string> taxonomy_names() {
    return {"Adj-1", "Adj-2", "Adj-3", "Inc-1", "Inc-2", "Inc-3", "Mix-1", "Mix-2"};
}

std::vector<NeighborhoodFunction> rank_targeted(const std::vector<NeighborhoodFunction>& nfs,
                                                int r) {
    std::vector<NeighborhoodFunction> out;
    for (const auto& nf : nfs)
        if (nf.target_rank == r) out.push_back(nf);
    return out;
}

void write_hasse_graph(std::ostream& os, const HasseGraph& h) {
    os << h.nodes.size() << ' ' << h.arcs.size() << '\n';
    for (auto [tail, head] : h.arcs) os << tail << ' ' << head << '\n';
}

void write_hasse_mapping(std::ostream& os, const HasseGraph& h) {
    os << "# node\tcell\trank\tis_target (" << h.origin.name() << ")\n";
    std::set<int> targets(h.target_nodes.begin(), h.target_nodes.end());
    for (size_t i = 0; i < h.nodes.size(); ++i) {
        os << i << '\t' << h.nodes[i] << '\t' << h.node_ranks[i] << '\t'
           << (targets.count(static_cast<int>(i)) ? 1 : 0) << '\n';
    }
}

} // namespace hopse
