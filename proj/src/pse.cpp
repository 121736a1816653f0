#include "hopse/pse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <ostream>
#include <sstream>

#include "hopse/detail/binio.hpp"

namespace hopse {

PseKind PseKind::lap(int i) {
    if (i < 1) throw ParseError("LapPE needs i >= 1");
    return {Tag::LapPE, i};
}

PseKind PseKind::rwse(int K) {
    if (K < 1) throw ParseError("RWSE needs K >= 1");
    return {Tag::RWSE, K};
}

PseKind PseKind::rwse_directed(int K) {
    if (K < 1) throw ParseError("RWSE needs K >= 1");
    return {Tag::RWSE, K, true};
}

PseKind PseKind::hk_diag(int K) {
    if (K < 1) throw ParseError("HKdiagSE needs K >= 1");
    return {Tag::HKdiagSE, K};
}

PseKind PseKind::elstatic() {
    return {Tag::ElstaticPE, kElstaticWidth};
}

int PseKind::width() const {
    return tag == Tag::ElstaticPE ? kElstaticWidth : param;
}

std::string PseKind::name() const {
    switch (tag) {
    case Tag::LapPE: return "lap:i=" + std::to_string(param);
    case Tag::RWSE:
        return (directed ? "rwse-dir:K=" : "rwse:K=") + std::to_string(param);
    case Tag::HKdiagSE: return "hk:K=" + std::to_string(param);
    case Tag::ElstaticPE: return "elstatic";
    }
    return {};
}

PseKind PseKind::parse(const std::string& text) {
    auto colon = text.find(':');
    std::string head = text.substr(0, colon);
    int value = -1;
    if (colon != std::string::npos) {
        auto eq = text.find('=', colon);
        std::string num = text.substr(eq == std::string::npos ? colon + 1 : eq + 1);
        try {
            value = std::stoi(num);
        } catch (const std::exception&) {
            throw ParseError("bad channel parameter in '" + text + "'");
        }
    }
    if (head == "lap" || head == "lappe") return lap(value < 0 ? 4 : value);
    if (head == "rwse") return rwse(value < 0 ? 16 : value);
    if (head == "rwse-dir") return rwse_directed(value < 0 ? 16 : value);
    if (head == "hk" || head == "hkdiag") return hk_diag(value < 0 ? 16 : value);
    if (head == "elstatic" || head == "elstaticpe") return elstatic();
    throw ParseError("unknown channel '" + text + "'");
}

std::vector<PseKind> PseKind::parse_list(const std::string& csv) {
    std::vector<PseKind> out;
    std::istringstream is(csv);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (!item.empty()) out.push_back(parse(item));
    }
    if (out.empty()) throw ParseError("empty channel list");
    return out;
}

std::vector<std::vector<int>> symmetrized_adjacency(const HasseGraph& h) {
    const int n = static_cast<int>(h.nodes.size());
    std::vector<std::vector<int>> adj(static_cast<size_t>(n));
    for (auto [tail, head] : h.arcs) {
        if (tail == head) continue;
        adj[static_cast<size_t>(tail)].push_back(head);
        adj[static_cast<size_t>(head)].push_back(tail);
    }
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return adj;
}

std::vector<std::vector<int>> out_adjacency(const HasseGraph& h) {
    const int n = static_cast<int>(h.nodes.size());
    std::vector<std::vector<int>> adj(static_cast<size_t>(n));
    for (auto [tail, head] : h.arcs) {
        if (tail == head) continue;
        adj[static_cast<size_t>(tail)].push_back(head);
    }
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return adj;
}

HasseGraph graph_encoding_view(const InputGraph& g) {
    HasseGraph h;
    h.origin = NeighborhoodFunction::adjacency(0, 1);
    h.nodes.resize(static_cast<size_t>(g.num_vertices));
    for (int v = 0; v < g.num_vertices; ++v) h.nodes[static_cast<size_t>(v)] = v;
    h.node_ranks.assign(static_cast<size_t>(g.num_vertices), 0);
    std::vector<std::pair<int, int>> arcs;
    for (auto [u, v] : g.edges) {
        arcs.emplace_back(u, v);
        arcs.emplace_back(v, u);
    }
    std::sort(arcs.begin(), arcs.end());
    h.arcs = std::move(arcs);
    for (int v = 0; v < g.num_vertices; ++v) h.target_nodes.push_back(v);
    return h;
}

namespace {

Eigen::MatrixXd laplacian(const std::vector<std::vector<int>>& adj) {
    const auto n = static_cast<Eigen::Index>(adj.size());
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index v = 0; v < n; ++v) {
        const auto& nbrs = adj[static_cast<size_t>(v)];
        L(v, v) = static_cast<double>(nbrs.size());
        for (int u : nbrs) L(v, u) = -1.0;
    }
    return L;
}

Eigen::MatrixXd restrict_to_targets(const Eigen::MatrixXd& full, const HasseGraph& h) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(h.target_nodes.size()), full.cols());
    for (size_t i = 0; i < h.target_nodes.size(); ++i)
        out.row(static_cast<Eigen::Index>(i)) = full.row(h.target_nodes[i]);
    return out;
}

std::vector<CellId> target_cells(const HasseGraph& h) {
    std::vector<CellId> out;
    out.reserve(h.target_nodes.size());
    for (int idx : h.target_nodes) out.push_back(h.nodes[static_cast<size_t>(idx)]);
    return out;
}

void require_nonempty(const HasseGraph& h) {
    if (h.empty()) throw EmptyGraph("encoding requested on an empty Hasse graph");
}

// Eigenvalues below max(1e-8 * lambda_max, 1e-12) count as trivial; that is
// exactly the one zero mode per connected component.
double trivial_threshold(const Eigen::VectorXd& evals) {
    double lambda_max = evals.size() ? evals(evals.size() - 1) : 0.0;
    return std::max(1e-8 * lambda_max, 1e-12);
}

void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-12) {
            if (v(i) < 0) v = -v;
            return;
        }
    }
}

std::vector<int> components(const std::vector<std::vector<int>>& adj) {
    std::vector<int> comp(adj.size(), -1);
    int next = 0;
    std::deque<int> queue;
    for (size_t start = 0; start < adj.size(); ++start) {
        if (comp[start] >= 0) continue;
        comp[start] = next;
        queue.push_back(static_cast<int>(start));
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int u : adj[static_cast<size_t>(v)]) {
                if (comp[static_cast<size_t>(u)] < 0) {
                    comp[static_cast<size_t>(u)] = next;
                    queue.push_back(u);
                }
            }
        }
        ++next;
    }
    return comp;
}

} // namespace

EncodingMatrix lap_pe(const HasseGraph& h, int i) {
    if (i < 1) throw ParseError("LapPE needs i >= 1");
    require_nonempty(h);
    auto adj = symmetrized_adjacency(h);
    const auto n = static_cast<Eigen::Index>(adj.size());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(laplacian(adj));
    const Eigen::VectorXd& evals = es.eigenvalues();
    const double thresh = trivial_threshold(evals);

    Eigen::MatrixXd full = Eigen::MatrixXd::Zero(n, i);
    int col = 0;
    for (Eigen::Index j = 0; j < n && col < i; ++j) {
        if (evals(j) < thresh) continue;
        full.col(col) = es.eigenvectors().col(j);
        fix_sign(full.col(col));
        ++col;
    }

    EncodingMatrix enc;
    enc.row_cells = target_cells(h);
    enc.values = restrict_to_targets(full, h);
    enc.kind = PseKind::lap(i);
    enc.origin = h.origin;
    return enc;
}

EncodingMatrix rwse(const HasseGraph& h, int K, bool directed) {
    if (K < 1) throw ParseError("RWSE needs K >= 1");
    require_nonempty(h);
    auto adj = directed ? out_adjacency(h) : symmetrized_adjacency(h);
    const int n = static_cast<int>(adj.size());

    Eigen::MatrixXd full = Eigen::MatrixXd::Zero(n, K);
    // Per-source frontier propagation; work stays proportional to the
    // K-hop ball around each node instead of the full matrix power.
    std::vector<double> x(static_cast<size_t>(n), 0.0), y(static_cast<size_t>(n), 0.0);
    std::vector<int> x_active, y_active;
    std::vector<char> in_y(static_cast<size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
        x[static_cast<size_t>(v)] = 1.0;
        x_active.assign(1, v);
        for (int t = 1; t <= K; ++t) {
            y_active.clear();
            for (int u : x_active) {
                const double xu = x[static_cast<size_t>(u)];
                const auto& nbrs = adj[static_cast<size_t>(u)];
                if (nbrs.empty()) {
                    if (!in_y[static_cast<size_t>(u)]) {
                        in_y[static_cast<size_t>(u)] = 1;
                        y_active.push_back(u);
                    }
                    y[static_cast<size_t>(u)] += xu;
                    continue;
                }
                const double w = xu / static_cast<double>(nbrs.size());
                for (int nb : nbrs) {
                    if (!in_y[static_cast<size_t>(nb)]) {
                        in_y[static_cast<size_t>(nb)] = 1;
                        y_active.push_back(nb);
                    }
                    y[static_cast<size_t>(nb)] += w;
                }
            }
            full(v, t - 1) = y[static_cast<size_t>(v)];
            for (int u : x_active) x[static_cast<size_t>(u)] = 0.0;
            std::swap(x, y);
            std::swap(x_active, y_active);
            for (int u : x_active) in_y[static_cast<size_t>(u)] = 0;
        }
        for (int u : x_active) x[static_cast<size_t>(u)] = 0.0;
        x_active.clear();
    }

    EncodingMatrix enc;
    enc.row_cells = target_cells(h);
    enc.values = restrict_to_targets(full, h);
    enc.kind = directed ? PseKind::rwse_directed(K) : PseKind::rwse(K);
    enc.origin = h.origin;
    return enc;
}

EncodingMatrix hk_diag(const HasseGraph& h, int K) {
    if (K < 1) throw ParseError("HKdiagSE needs K >= 1");
    require_nonempty(h);
    auto adj = symmetrized_adjacency(h);
    const auto n = static_cast<Eigen::Index>(adj.size());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(laplacian(adj));
    Eigen::VectorXd evals = es.eigenvalues().cwiseMax(0.0);
    const Eigen::MatrixXd& phi = es.eigenvectors();

    Eigen::MatrixXd full(n, K);
    Eigen::MatrixXd phi_sq = phi.array().square().matrix();
    for (int t = 1; t <= K; ++t) {
        Eigen::VectorXd decay = (-evals.array() * static_cast<double>(t)).exp().matrix();
        full.col(t - 1) = phi_sq * decay;
    }

    EncodingMatrix enc;
    enc.row_cells = target_cells(h);
    enc.values = restrict_to_targets(full, h);
    enc.kind = PseKind::hk_diag(K);
    enc.origin = h.origin;
    return enc;
}

EncodingMatrix elstatic_pe(const HasseGraph& h) {
    require_nonempty(h);
    auto adj = symmetrized_adjacency(h);
    const int n = static_cast<int>(adj.size());
    auto comp = components(adj);
    const int num_comp = *std::max_element(comp.begin(), comp.end()) + 1;

    Eigen::MatrixXd full = Eigen::MatrixXd::Zero(n, PseKind::kElstaticWidth);
    std::vector<int> members;
    for (int c = 0; c < num_comp; ++c) {
        members.clear();
        for (int v = 0; v < n; ++v)
            if (comp[static_cast<size_t>(v)] == c) members.push_back(v);
        const auto m = static_cast<Eigen::Index>(members.size());
        if (m == 1) continue; // potential field is identically zero

        Eigen::MatrixXd L = Eigen::MatrixXd::Zero(m, m);
        for (Eigen::Index a = 0; a < m; ++a) {
            int va = members[static_cast<size_t>(a)];
            for (int u : adj[static_cast<size_t>(va)]) {
                auto b = static_cast<Eigen::Index>(
                    std::lower_bound(members.begin(), members.end(), u) - members.begin());
                L(a, b) = -1.0;
                L(a, a) += 1.0;
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
        const Eigen::VectorXd& evals = es.eigenvalues();
        const double thresh = trivial_threshold(evals);
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m, m);
        for (Eigen::Index j = 0; j < m; ++j) {
            if (evals(j) < thresh) continue;
            M.noalias() += es.eigenvectors().col(j) * es.eigenvectors().col(j).transpose() /
                           evals(j);
        }

        // BFS distances inside the component (for the farthest-node statistic)
        std::vector<int> dist(static_cast<size_t>(m));
        std::deque<Eigen::Index> queue;
        for (Eigen::Index a = 0; a < m; ++a) {
            std::fill(dist.begin(), dist.end(), -1);
            dist[static_cast<size_t>(a)] = 0;
            queue.assign(1, a);
            while (!queue.empty()) {
                Eigen::Index b = queue.front();
                queue.pop_front();
                int vb = members[static_cast<size_t>(b)];
                for (int u : adj[static_cast<size_t>(vb)]) {
                    auto bi = static_cast<Eigen::Index>(
                        std::lower_bound(members.begin(), members.end(), u) - members.begin());
                    if (dist[static_cast<size_t>(bi)] < 0) {
                        dist[static_cast<size_t>(bi)] = dist[static_cast<size_t>(b)] + 1;
                        queue.push_back(bi);
                    }
                }
            }

            Eigen::VectorXd f = M.col(a).array() - M(a, a);
            double mean = f.mean();
            double var = (f.array() - mean).square().mean();
            // farthest-node potential; equidistant ties resolve to the
            // smallest potential so the statistic stays label-free
            int max_dist = *std::max_element(dist.begin(), dist.end());
            double far_value = std::numeric_limits<double>::infinity();
            for (Eigen::Index b = 0; b < m; ++b)
                if (dist[static_cast<size_t>(b)] == max_dist)
                    far_value = std::min(far_value, f(b));

            int v = members[static_cast<size_t>(a)];
            full(v, 0) = f.minCoeff();
            full(v, 1) = f.maxCoeff();
            full(v, 2) = mean;
            full(v, 3) = std::sqrt(var);
            full(v, 4) = f.cwiseAbs().mean();
            full(v, 5) = far_value;
            full(v, 6) = M(a, a);
        }
    }

    EncodingMatrix enc;
    enc.row_cells = target_cells(h);
    enc.values = restrict_to_targets(full, h);
    enc.kind = PseKind::elstatic();
    enc.origin = h.origin;
    return enc;
}

EncodingMatrix encode(const HasseGraph& h, const PseKind& kind) {
    switch (kind.tag) {
    case PseKind::Tag::LapPE: return lap_pe(h, kind.param);
    case PseKind::Tag::RWSE: return rwse(h, kind.param, kind.directed);
    case PseKind::Tag::HKdiagSE: return hk_diag(h, kind.param);
    case PseKind::Tag::ElstaticPE: return elstatic_pe(h);
    }
    throw ParseError("unknown encoding kind");
}

namespace {

constexpr char kEncMagic[9] = "HOPSENC1";

void write_nf(std::ostream& os, const NeighborhoodFunction& nf) {
    detail::write_u8(os, nf.kind == NfKind::Incidence ? 0 : 1);
    detail::write_i64(os, nf.source_rank);
    detail::write_i64(os, nf.target_rank);
}

NeighborhoodFunction read_nf(std::istream& is) {
    auto kind = detail::read_u8(is);
    auto a = static_cast<int>(detail::read_i64(is));
    auto b = static_cast<int>(detail::read_i64(is));
    return kind == 0 ? NeighborhoodFunction::incidence(a, b)
                     : NeighborhoodFunction::adjacency(b, a);
}

} // namespace

void write_encoding_text(std::ostream& os, const EncodingMatrix& enc,
                         std::uint64_t complex_hash) {
    os << "# hopse encoding v1\n";
    os << "complex_hash " << complex_hash << '\n';
    os << "neighborhood " << enc.origin.name() << '\n';
    os << "kind " << enc.kind.name() << '\n';
    os << "rows " << enc.values.rows() << '\n';
    os << "cols " << enc.values.cols() << '\n';
    char buf[32];
    for (Eigen::Index r = 0; r < enc.values.rows(); ++r) {
        os << enc.row_cells[static_cast<size_t>(r)];
        for (Eigen::Index c = 0; c < enc.values.cols(); ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g", enc.values(r, c));
            os << ' ' << buf;
        }
        os << '\n';
    }
}

EncodingMatrix read_encoding_text(std::istream& is, std::uint64_t* complex_hash) {
    std::string line, key;
    EncodingMatrix enc;
    std::uint64_t hash = 0;
    Eigen::Index rows = -1, cols = -1;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        ls >> key;
        if (key == "complex_hash") ls >> hash;
        else if (key == "neighborhood") {
            std::string nf;
            ls >> nf;
            enc.origin = NeighborhoodFunction::parse(nf);
        } else if (key == "kind") {
            std::string k;
            ls >> k;
            enc.kind = PseKind::parse(k);
        } else if (key == "rows") ls >> rows;
        else if (key == "cols") {
            ls >> cols;
            break;
        } else throw ParseError("unexpected encoding header line: " + line);
    }
    if (rows < 0 || cols < 0) throw ParseError("truncated encoding header");
    enc.values.resize(rows, cols);
    enc.row_cells.resize(static_cast<size_t>(rows));
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (!std::getline(is, line)) throw ParseError("truncated encoding rows");
        std::istringstream ls(line);
        if (!(ls >> enc.row_cells[static_cast<size_t>(r)]))
            throw ParseError("bad encoding row");
        for (Eigen::Index c = 0; c < cols; ++c)
            if (!(ls >> enc.values(r, c))) throw ParseError("bad encoding value");
    }
    if (complex_hash) *complex_hash = hash;
    return enc;
}

void write_encoding_binary(std::ostream& os, const EncodingMatrix& enc,
                           std::uint64_t complex_hash) {
    os.write(kEncMagic, 8);
    detail::write_u32(os, 1);
    detail::write_u64(os, complex_hash);
    write_nf(os, enc.origin);
    detail::write_u8(os, static_cast<std::uint8_t>(enc.kind.tag));
    detail::write_u8(os, enc.kind.directed ? 1 : 0);
    detail::write_i64(os, enc.kind.param);
    detail::write_u64(os, static_cast<std::uint64_t>(enc.values.rows()));
    detail::write_u64(os, static_cast<std::uint64_t>(enc.values.cols()));
    for (CellId id : enc.row_cells) detail::write_i64(os, id);
    for (Eigen::Index r = 0; r < enc.values.rows(); ++r)
        for (Eigen::Index c = 0; c < enc.values.cols(); ++c)
            detail::write_f64(os, enc.values(r, c));
}

EncodingMatrix read_encoding_binary(std::istream& is, std::uint64_t* complex_hash) {
    char magic[8];
    if (!is.read(magic, 8) || std::string(magic, 8) != std::string(kEncMagic, 8))
        throw ParseError("not a hopse encoding file");
    if (detail::read_u32(is) != 1) throw ParseError("unsupported encoding version");
    std::uint64_t hash = detail::read_u64(is);
    EncodingMatrix enc;
    enc.origin = read_nf(is);
    auto tag = static_cast<PseKind::Tag>(detail::read_u8(is));
    bool directed = detail::read_u8(is) != 0;
    auto param = static_cast<int>(detail::read_i64(is));
    enc.kind = PseKind{tag, param, directed};
    auto rows = static_cast<Eigen::Index>(detail::read_u64(is));
    auto cols = static_cast<Eigen::Index>(detail::read_u64(is));
    enc.row_cells.resize(static_cast<size_t>(rows));
    for (auto& id : enc.row_cells) id = static_cast<CellId>(detail::read_i64(is));
    enc.values.resize(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) enc.values(r, c) = detail::read_f64(is);
    if (complex_hash) *complex_hash = hash;
    return enc;
}

} // namespace hopse
