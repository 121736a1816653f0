#include <doctest.h>

#include <sstream>

#include "hopse/lifting.hpp"
#include "oracles.hpp"

using namespace hopse;

namespace {

InputGraph complete_graph(int n) {
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return InputGraph::make(n, std::move(edges));
}

} // namespace

TEST_CASE("InputGraph validation") {
    CHECK_THROWS_AS(InputGraph::make(2, {{0, 0}}), ParseError);
    CHECK_THROWS_AS(InputGraph::make(2, {{0, 1}, {1, 0}}), ParseError);
    CHECK_THROWS_AS(InputGraph::make(2, {{0, 2}}), ParseError);
}

TEST_CASE("clique lift: K3") {
    auto cc = clique_lift(complete_graph(3), 2);
    CHECK(cc.num_cells_of_rank(0) == 3);
    CHECK(cc.num_cells_of_rank(1) == 3);
    CHECK(cc.num_cells_of_rank(2) == 1);
}

TEST_CASE("clique lift: K4 against the subset-scan oracle") {
    auto g = complete_graph(4);
    auto cc = clique_lift(g, 2);
    CHECK(cc.num_cells_of_rank(0) == 4);
    CHECK(cc.num_cells_of_rank(1) == 6);
    CHECK(cc.num_cells_of_rank(2) == 4);
    CHECK(cc.num_cells_of_rank(0) == oracle::count_cliques(g, 1));
    CHECK(cc.num_cells_of_rank(1) == oracle::count_cliques(g, 2));
    CHECK(cc.num_cells_of_rank(2) == oracle::count_cliques(g, 3));
}

TEST_CASE("clique lift: path has no triangles") {
    auto cc = clique_lift(InputGraph::make(3, {{0, 1}, {1, 2}}), 2);
    CHECK(cc.num_cells_of_rank(0) == 3);
    CHECK(cc.num_cells_of_rank(1) == 2);
    CHECK(cc.num_cells_of_rank(2) == 0);
    CHECK(cc.dim() == 1);
}

TEST_CASE("clique lift: random graphs match the clique oracle") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        auto g = oracle::gnp_graph(7, 0.5, seed);
        auto cc = clique_lift(g, 3);
        for (int r = 0; r <= 3; ++r)
            CHECK(cc.num_cells_of_rank(r) == oracle::count_cliques(g, r + 1));
    }
}

TEST_CASE("clique lift output is downward closed") {
    auto cc = clique_lift(oracle::gnp_graph(7, 0.6, 11), 3);
    for (const auto& cell : cc.cells()) {
        if (cell.vertices.size() < 2) continue;
        // drop one vertex at a time; the remainder must be a cell one rank down
        for (size_t skip = 0; skip < cell.vertices.size(); ++skip) {
            std::vector<VertexId> sub;
            for (size_t i = 0; i < cell.vertices.size(); ++i)
                if (i != skip) sub.push_back(cell.vertices[i]);
            CHECK(cc.has_cell(sub, cell.rank - 1));
        }
    }
}

TEST_CASE("clique lift with max_rank=1 reproduces the graph") {
    auto g = oracle::gnp_graph(8, 0.4, 3);
    auto cc = clique_lift(g, 1);
    CHECK(cc.dim() <= 1);
    CHECK(cc.num_cells_of_rank(1) == g.edges.size());
    for (auto [u, v] : g.edges) CHECK(cc.has_cell({u, v}, 1));
}

TEST_CASE("cycle lift: C4") {
    auto cc = cycle_lift(InputGraph::make(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}), 6);
    CHECK(cc.num_cells_of_rank(0) == 4);
    CHECK(cc.num_cells_of_rank(1) == 4);
    CHECK(cc.num_cells_of_rank(2) == 1);
    CHECK(cc.has_cell({0, 1, 2, 3}, 2));
}

TEST_CASE("cycle lift: trees have no 2-cells") {
    auto cc = cycle_lift(InputGraph::make(5, {{0, 1}, {0, 2}, {1, 3}, {1, 4}}), 6);
    CHECK(cc.num_cells_of_rank(2) == 0);
    CHECK(cc.dim() == 1);
}

TEST_CASE("cycle lift: K4 has exactly the four triangles") {
    auto g = complete_graph(4);
    auto cc = cycle_lift(g, 6);
    CHECK(cc.num_cells_of_rank(2) == 4);
    auto expected = oracle::induced_cycle_sets(g, 6);
    CHECK(expected.size() == 4);
    for (const auto& s : expected) CHECK(cc.has_cell(s, 2));
}

TEST_CASE("chordless cycles match the induced-subset oracle") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        auto g = oracle::gnp_graph(8, 0.35, seed + 100);
        auto got = chordless_cycles(g, 8);
        auto expected = oracle::induced_cycle_sets(g, 8);
        CHECK(got == expected);
    }
}

TEST_CASE("cycle length cap is honored") {
    // C6 lifts with cap 6 but not with cap 5
    auto c6 = InputGraph::make(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}});
    CHECK(cycle_lift(c6, 6).num_cells_of_rank(2) == 1);
    CHECK(cycle_lift(c6, 5).num_cells_of_rank(2) == 0);
}

TEST_CASE("rank-1 cell count equals edge count in both lifts") {
    auto g = oracle::gnp_graph(8, 0.4, 42);
    CHECK(clique_lift(g, 2).num_cells_of_rank(1) == g.edges.size());
    CHECK(cycle_lift(g, 6).num_cells_of_rank(1) == g.edges.size());
}

TEST_CASE("lifts commute with relabeling up to isomorphism") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        auto g = oracle::gnp_graph(6, 0.5, seed + 7);
        auto perm = oracle::random_permutation(6, seed + 77);
        auto gp = oracle::permute_graph(g, perm);
        CHECK(is_isomorphic_bruteforce(clique_lift(g, 2), clique_lift(gp, 2)));
        CHECK(is_isomorphic_bruteforce(cycle_lift(g, 6), cycle_lift(gp, 6)));
    }
}

TEST_CASE("graph edge-list format round-trips") {
    auto g = oracle::gnp_graph(7, 0.4, 5);
    std::ostringstream out;
    write_graph(out, g);
    std::istringstream in(out.str());
    auto back = read_graph(in);
    CHECK(back.num_vertices == g.num_vertices);
    CHECK(back.edges == g.edges);
}

TEST_CASE("graph edge-list format rejects malformed input") {
    std::istringstream bad("3 2\n0 1\n");
    CHECK_THROWS_AS(read_graph(bad), ParseError);
}
