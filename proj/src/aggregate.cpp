#include "hopse/aggregate.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "hopse/detail/binio.hpp"

namespace hopse {

InitPolicy InitPolicy::features(std::map<int, Eigen::MatrixXd> by_rank) {
    InitPolicy p;
    p.mode = Mode::UserFeatures;
    p.user_features = std::move(by_rank);
    return p;
}

bool RankFeatureBundle::operator==(const RankFeatureBundle& other) const {
    if (max_rank != other.max_rank || row_cells != other.row_cells ||
        taxonomy != other.taxonomy || nfs != other.nfs || kinds != other.kinds ||
        complex_hash != other.complex_hash)
        return false;
    auto eq = [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
        return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
    };
    if (channels.size() != other.channels.size() ||
        init_features.size() != other.init_features.size())
        return false;
    for (size_t r = 0; r < channels.size(); ++r) {
        if (channels[r].size() != other.channels[r].size()) return false;
        for (size_t k = 0; k < channels[r].size(); ++k)
            if (!eq(channels[r][k], other.channels[r][k])) return false;
        if (!eq(init_features[r], other.init_features[r])) return false;
    }
    return true;
}

Eigen::MatrixXd aggregate_rank(const CombinatorialComplex& cc,
                               const std::vector<EncodingMatrix>& encs,
                               int r, const PseKind& kind) {
    Eigen::Index total_cols = 0;
    for (const auto& enc : encs) {
        if (enc.kind != kind)
            throw ChannelMismatch("aggregate_rank: got " + enc.kind.name() + ", expected " +
                                  kind.name());
        if (enc.origin.target_rank != r)
            throw RankMismatch("aggregate_rank: neighborhood " + enc.origin.name() +
                               " does not target rank " + std::to_string(r));
        total_cols += enc.values.cols();
    }

    auto rows = cc.cells_of_rank(r);
    Eigen::MatrixXd out =
        Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), total_cols);
    Eigen::Index col = 0;
    for (const auto& enc : encs) {
        for (Eigen::Index er = 0; er < enc.values.rows(); ++er) {
            CellId cell = enc.row_cells[static_cast<size_t>(er)];
            auto it = std::lower_bound(rows.begin(), rows.end(), cell);
            if (it == rows.end() || *it != cell)
                throw RankMismatch("encoding row cell " + std::to_string(cell) +
                                   " is not a rank-" + std::to_string(r) + " cell");
            out.block(static_cast<Eigen::Index>(it - rows.begin()), col, 1,
                      enc.values.cols()) = enc.values.row(er);
        }
        col += enc.values.cols();
    }
    return out;
}

RankFeatureBundle precompute_bundle(const CombinatorialComplex& cc,
                                    const std::vector<NeighborhoodFunction>& nfs,
                                    const std::vector<PseKind>& kinds,
                                    const InitPolicy& init,
                                    std::optional<int> max_rank,
                                    const std::string& taxonomy_name) {
    if (nfs.empty()) throw ParseError("precompute_bundle needs at least one neighborhood");
    if (kinds.empty()) throw ParseError("precompute_bundle needs at least one channel");
    const int R = max_rank.value_or(std::max(cc.dim(), 0));

    std::vector<HasseGraph> graphs;
    graphs.reserve(nfs.size());
    for (const auto& nf : nfs) graphs.push_back(hasse_graph(cc, nf));

    // encodings[i][k]; empty Hasse graphs yield a 0-row matrix of the
    // channel's width so the aggregated block stays all-zero.
    std::vector<std::vector<EncodingMatrix>> encodings(nfs.size());
    for (size_t i = 0; i < nfs.size(); ++i) {
        encodings[i].reserve(kinds.size());
        for (const auto& kind : kinds) {
            if (graphs[i].empty()) {
                EncodingMatrix zero;
                zero.kind = kind;
                zero.origin = nfs[i];
                zero.values.resize(0, kind.width());
                encodings[i].push_back(std::move(zero));
            } else {
                encodings[i].push_back(encode(graphs[i], kind));
            }
        }
    }

    RankFeatureBundle b;
    b.max_rank = R;
    b.taxonomy = taxonomy_name;
    b.nfs = nfs;
    b.kinds = kinds;
    b.complex_hash = cc.content_hash();
    b.row_cells.resize(static_cast<size_t>(R) + 1);
    b.channels.resize(static_cast<size_t>(R) + 1);
    b.init_features.resize(static_cast<size_t>(R) + 1);

    for (int r = 0; r <= R; ++r) {
        auto ids = cc.cells_of_rank(r);
        b.row_cells[static_cast<size_t>(r)] = ids;
        const auto n_r = static_cast<Eigen::Index>(ids.size());

        for (size_t k = 0; k < kinds.size(); ++k) {
            std::vector<EncodingMatrix> encs;
            for (size_t i = 0; i < nfs.size(); ++i)
                if (nfs[i].target_rank == r) encs.push_back(encodings[i][k]);
            b.channels[static_cast<size_t>(r)].push_back(
                aggregate_rank(cc, encs, r, kinds[k]));
        }

        if (init.mode == InitPolicy::Mode::Ones) {
            b.init_features[static_cast<size_t>(r)] = Eigen::MatrixXd::Ones(n_r, 1);
        } else {
            auto it = init.user_features.find(r);
            if (it == init.user_features.end())
                throw ShapeError("no user features for rank " + std::to_string(r));
            if (it->second.rows() != n_r)
                throw ShapeError("rank " + std::to_string(r) + " features have " +
                                 std::to_string(it->second.rows()) + " rows, expected " +
                                 std::to_string(n_r));
            b.init_features[static_cast<size_t>(r)] = it->second;
        }
    }
    return b;
}

namespace {

constexpr char kBundleMagic[9] = "HOPSEBN1";

void write_matrix(std::ostream& os, const Eigen::MatrixXd& m) {
    detail::write_u64(os, static_cast<std::uint64_t>(m.rows()));
    detail::write_u64(os, static_cast<std::uint64_t>(m.cols()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) detail::write_f64(os, m(r, c));
}

Eigen::MatrixXd read_matrix(std::istream& is) {
    auto rows = static_cast<Eigen::Index>(detail::read_u64(is));
    auto cols = static_cast<Eigen::Index>(detail::read_u64(is));
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = detail::read_f64(is);
    return m;
}

} // namespace

void write_bundle(std::ostream& os, const RankFeatureBundle& b) {
    os.write(kBundleMagic, 8);
    detail::write_u32(os, 1);
    detail::write_u64(os, b.complex_hash);
    detail::write_str(os, b.taxonomy);
    detail::write_i64(os, b.max_rank);
    detail::write_u64(os, b.nfs.size());
    for (const auto& nf : b.nfs) {
        detail::write_u8(os, nf.kind == NfKind::Incidence ? 0 : 1);
        detail::write_i64(os, nf.source_rank);
        detail::write_i64(os, nf.target_rank);
    }
    detail::write_u64(os, b.kinds.size());
    for (const auto& k : b.kinds) {
        detail::write_u8(os, static_cast<std::uint8_t>(k.tag));
        detail::write_u8(os, k.directed ? 1 : 0);
        detail::write_i64(os, k.param);
    }
    for (size_t r = 0; r < b.row_cells.size(); ++r) {
        detail::write_u64(os, b.row_cells[r].size());
        for (CellId id : b.row_cells[r]) detail::write_i64(os, id);
        write_matrix(os, b.init_features[r]);
        for (const auto& x : b.channels[r]) write_matrix(os, x);
    }
}

RankFeatureBundle read_bundle(std::istream& is) {
    char magic[8];
    if (!is.read(magic, 8) || std::string(magic, 8) != std::string(kBundleMagic, 8))
        throw ParseError("not a hopse bundle file");
    if (detail::read_u32(is) != 1) throw ParseError("unsupported bundle version");
    RankFeatureBundle b;
    b.complex_hash = detail::read_u64(is);
    b.taxonomy = detail::read_str(is);
    b.max_rank = static_cast<int>(detail::read_i64(is));
    auto num_nfs = detail::read_u64(is);
    for (std::uint64_t i = 0; i < num_nfs; ++i) {
        auto kind = detail::read_u8(is);
        auto a = static_cast<int>(detail::read_i64(is));
        auto t = static_cast<int>(detail::read_i64(is));
        b.nfs.push_back(kind == 0 ? NeighborhoodFunction::incidence(a, t)
                                  : NeighborhoodFunction::adjacency(t, a));
    }
    auto num_kinds = detail::read_u64(is);
    for (std::uint64_t i = 0; i < num_kinds; ++i) {
        auto tag = static_cast<PseKind::Tag>(detail::read_u8(is));
        bool directed = detail::read_u8(is) != 0;
        auto param = static_cast<int>(detail::read_i64(is));
        b.kinds.push_back(PseKind{tag, param, directed});
    }
    b.row_cells.resize(static_cast<size_t>(b.max_rank) + 1);
    b.channels.resize(static_cast<size_t>(b.max_rank) + 1);
    b.init_features.resize(static_cast<size_t>(b.max_rank) + 1);
    for (size_t r = 0; r < b.row_cells.size(); ++r) {
        auto n = detail::read_u64(is);
        b.row_cells[r].resize(n);
        for (auto& id : b.row_cells[r]) id = static_cast<CellId>(detail::read_i64(is));
        b.init_features[r] = read_matrix(is);
        for (std::uint64_t k = 0; k < num_kinds; ++k)
            b.channels[r].push_back(read_matrix(is));
    }
    return b;
}

void save_bundle(const std::string& path, const RankFeatureBundle& b) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path + " for writing");
    write_bundle(f, b);
}

RankFeatureBundle load_bundle(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path);
    return read_bundle(f);
}

} // namespace hopse
