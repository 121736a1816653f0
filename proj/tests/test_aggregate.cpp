#include <doctest.h>

#include <sstream>

#include "hopse/aggregate.hpp"
#include "oracles.hpp"

using namespace hopse;

namespace {

CombinatorialComplex triangle() {
    return clique_lift(InputGraph::make(3, {{0, 1}, {0, 2}, {1, 2}}), 2);
}

} // namespace

TEST_CASE("aggregate_rank: Mix-2 rank 1 concat width") {
    auto cc = triangle();
    auto kind = PseKind::rwse(4);
    std::vector<EncodingMatrix> encs;
    for (const auto& nf : rank_targeted(taxonomy_set("Mix-2"), 1))
        encs.push_back(encode(hasse_graph(cc, nf), kind));
    auto x = aggregate_rank(cc, encs, 1, kind);
    CHECK(x.rows() == 3);
    CHECK(x.cols() == 8); // A_{1,2} and A_{1,0}, four columns each
}

TEST_CASE("aggregate_rank: no targeting neighborhoods gives an N_r x 0 matrix") {
    auto cc = triangle();
    auto x = aggregate_rank(cc, {}, 1, PseKind::rwse(4));
    CHECK(x.rows() == 3);
    CHECK(x.cols() == 0);
}

TEST_CASE("aggregate_rank: cells outside the Hasse graph get zero rows") {
    // two triangles sharing nothing + one extra isolated edge; the isolated
    // edge has no A_{1,2} neighbors, so its block row is zero
    auto cc = clique_lift(InputGraph::make(5, {{0, 1}, {0, 2}, {1, 2}, {3, 4}}), 2);
    auto nf = NeighborhoodFunction::adjacency(1, 2);
    auto h = hasse_graph(cc, nf);
    auto enc = encode(h, PseKind::rwse(2));
    auto x = aggregate_rank(cc, {enc}, 1, PseKind::rwse(2));
    CHECK(x.rows() == 4);
    CellId lonely = cc.find_cell({3, 4}, 1);
    auto ids = cc.cells_of_rank(1);
    auto row = std::find(ids.begin(), ids.end(), lonely) - ids.begin();
    CHECK(x.row(row).cwiseAbs().maxCoeff() == 0.0);
    // triangle edges carry the C3 walk signal
    CellId e01 = cc.find_cell({0, 1}, 1);
    auto row01 = std::find(ids.begin(), ids.end(), e01) - ids.begin();
    CHECK(x.row(row01).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("aggregate_rank errors") {
    auto cc = triangle();
    auto a01 = encode(hasse_graph(cc, NeighborhoodFunction::adjacency(0, 1)), PseKind::rwse(2));
    CHECK_THROWS_AS(aggregate_rank(cc, {a01}, 1, PseKind::rwse(2)), RankMismatch);
    CHECK_THROWS_AS(aggregate_rank(cc, {a01}, 0, PseKind::rwse(3)), ChannelMismatch);
}

TEST_CASE("precompute_bundle on the triangle with Adj-1") {
    auto cc = triangle();
    auto b = precompute_bundle(cc, taxonomy_set("Adj-1"), {PseKind::rwse(2)},
                               InitPolicy::ones(), std::nullopt, "Adj-1");
    REQUIRE(b.max_rank == 2);
    REQUIRE(b.num_ranks() == 3);
    // X_{0,rwse} is 3x2 with the C3 walk values
    CHECK(b.channels[0][0].rows() == 3);
    CHECK(b.channels[0][0].cols() == 2);
    for (int v = 0; v < 3; ++v) {
        CHECK(b.channels[0][0](v, 0) == doctest::Approx(0.0));
        CHECK(b.channels[0][0](v, 1) == doctest::Approx(0.5));
    }
    // ranks 1 and 2 have no Adj-1 neighborhoods: zero-width matrices
    CHECK(b.channels[1][0].cols() == 0);
    CHECK(b.channels[2][0].cols() == 0);
    CHECK(b.channels[1][0].rows() == 3);
    CHECK(b.channels[2][0].rows() == 1);
    // Z_r all ones
    for (size_t r = 0; r < 3; ++r) {
        CHECK(b.init_features[r].cols() == 1);
        CHECK((b.init_features[r].array() == 1.0).all());
    }
    CHECK(b.complex_hash == cc.content_hash());
}

TEST_CASE("precompute_bundle rejects an empty neighborhood list") {
    CHECK_THROWS_AS(precompute_bundle(triangle(), {}, {PseKind::rwse(2)}), ParseError);
}

TEST_CASE("empty Hasse graphs contribute full-width zero blocks") {
    // a tree has no 2-cells: I_{1->2} is empty but the block width stays K
    auto tree = cycle_lift(InputGraph::make(4, {{0, 1}, {1, 2}, {1, 3}}), 6);
    auto b = precompute_bundle(tree, taxonomy_set("Inc-1"), {PseKind::rwse(8)},
                               InitPolicy::ones(), 2, "Inc-1");
    REQUIRE(b.max_rank == 2);
    // rank 1 gets the I_{0->1} block only? no: Inc-1 rank-1 targets = {I_{0->1}}
    CHECK(b.channels[1][0].cols() == 8);
    // rank 2: I_{1->2} targets rank 2; no cells of rank 2 at all
    CHECK(b.channels[2][0].rows() == 0);
    CHECK(b.channels[2][0].cols() == 8);

    // same taxonomy on a cycle-bearing graph: identical widths (data independence)
    auto cyc = cycle_lift(InputGraph::make(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}), 6);
    auto b2 = precompute_bundle(cyc, taxonomy_set("Inc-1"), {PseKind::rwse(8)},
                                InitPolicy::ones(), 2, "Inc-1");
    for (size_t r = 0; r < 3; ++r)
        CHECK(b.channels[r][0].cols() == b2.channels[r][0].cols());
}

TEST_CASE("user feature init policy validates shapes") {
    auto cc = triangle();
    std::map<int, Eigen::MatrixXd> feats;
    feats[0] = Eigen::MatrixXd::Random(3, 2);
    feats[1] = Eigen::MatrixXd::Random(3, 2);
    feats[2] = Eigen::MatrixXd::Random(1, 2);
    auto b = precompute_bundle(cc, taxonomy_set("Adj-1"), {PseKind::rwse(2)},
                               InitPolicy::features(feats));
    CHECK(b.init_features[0] == feats[0]);

    feats[2] = Eigen::MatrixXd::Random(2, 2); // wrong row count
    CHECK_THROWS_AS(precompute_bundle(cc, taxonomy_set("Adj-1"), {PseKind::rwse(2)},
                                      InitPolicy::features(feats)),
                    ShapeError);
    feats.erase(2);
    CHECK_THROWS_AS(precompute_bundle(cc, taxonomy_set("Adj-1"), {PseKind::rwse(2)},
                                      InitPolicy::features(feats)),
                    ShapeError);
}

TEST_CASE("bundle serialization is byte-identical and round-trips") {
    auto cc = triangle();
    auto build = [&] {
        return precompute_bundle(cc, taxonomy_set("Inc-1"),
                                 {PseKind::rwse(4), PseKind::lap(2)}, InitPolicy::ones(),
                                 std::nullopt, "Inc-1");
    };
    auto b1 = build();
    auto b2 = build();
    std::ostringstream s1(std::ios::binary), s2(std::ios::binary);
    write_bundle(s1, b1);
    write_bundle(s2, b2);
    CHECK(s1.str() == s2.str());

    std::istringstream in(s1.str(), std::ios::binary);
    auto back = read_bundle(in);
    CHECK(back == b1);
    std::ostringstream s3(std::ios::binary);
    write_bundle(s3, back);
    CHECK(s3.str() == s1.str());
}

TEST_CASE("relabeling permutes bundle rows for strict channels") {
    auto g = oracle::gnp_graph(6, 0.5, 77);
    auto perm = oracle::random_permutation(6, 78);
    auto cc = clique_lift(g, 2);
    auto ccp = clique_lift(oracle::permute_graph(g, perm), 2);
    auto kinds = std::vector<PseKind>{PseKind::rwse(4), PseKind::elstatic()};
    auto b = precompute_bundle(cc, taxonomy_set("Mix-1"), kinds, InitPolicy::ones(), 2);
    auto bp = precompute_bundle(ccp, taxonomy_set("Mix-1"), kinds, InitPolicy::ones(), 2);
    for (int r = 0; r <= 2; ++r) {
        const auto& rows = b.row_cells[static_cast<size_t>(r)];
        for (size_t i = 0; i < rows.size(); ++i) {
            const Cell& cell = cc.cell(rows[i]);
            std::vector<VertexId> vs;
            for (VertexId v : cell.vertices) vs.push_back(perm[static_cast<size_t>(v)]);
            std::sort(vs.begin(), vs.end());
            CellId image = ccp.find_cell(vs, r);
            REQUIRE(image >= 0);
            const auto& prows = bp.row_cells[static_cast<size_t>(r)];
            auto j = static_cast<size_t>(
                std::find(prows.begin(), prows.end(), image) - prows.begin());
            for (size_t k = 0; k < kinds.size(); ++k) {
                CHECK((bp.channels[static_cast<size_t>(r)][k].row(static_cast<Eigen::Index>(j)) -
                       b.channels[static_cast<size_t>(r)][k].row(static_cast<Eigen::Index>(i)))
                          .cwiseAbs()
                          .maxCoeff() < 1e-10);
            }
        }
    }
}
