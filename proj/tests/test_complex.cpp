#include <doctest.h>

#include <sstream>

#include "hopse/complex.hpp"
#include "hopse/lifting.hpp"
#include "oracles.hpp"

using namespace hopse;

namespace {

CombinatorialComplex triangle_complex() {
    return clique_lift(InputGraph::make(3, {{0, 1}, {0, 2}, {1, 2}}), 2);
}

} // namespace

TEST_CASE("build_complex: single edge") {
    auto cc = build_complex({{{0}, 0}, {{1}, 0}, {{0, 1}, 1}});
    CHECK(cc.num_vertices() == 2);
    CHECK(cc.num_cells() == 3);
    CHECK(cc.dim() == 1);
}

TEST_CASE("build_complex: singleton completion") {
    auto cc = build_complex({{{0, 1}, 1}});
    CHECK(cc.num_cells() == 3);
    CHECK(cc.num_cells_of_rank(0) == 2);
    CHECK(cc.has_cell({0}, 0));
    CHECK(cc.has_cell({1}, 0));
}

TEST_CASE("build_complex: order violation") {
    CHECK_THROWS_AS(build_complex({{{0}, 0}, {{0, 1, 2}, 1}, {{0, 1}, 2}}), OrderViolation);
}

TEST_CASE("build_complex: duplicate cell") {
    CHECK_THROWS_AS(build_complex({{{0, 1}, 1}, {{1, 0}, 1}}), DuplicateCell);
}

TEST_CASE("build_complex: same vertex set at two ranks is allowed") {
    auto cc = build_complex({{{0, 1}, 1}, {{0, 1}, 2}});
    CHECK(cc.num_cells() == 4);
    CHECK(cc.has_cell({0, 1}, 1));
    CHECK(cc.has_cell({0, 1}, 2));
}

TEST_CASE("cell ids are rank-major and lexicographic") {
    auto cc = build_complex({{{2, 1}, 1}, {{0, 1}, 1}, {{0, 1, 2}, 2}});
    const auto& cells = cc.cells();
    for (size_t i = 1; i < cells.size(); ++i) {
        bool ordered = cells[i - 1].rank < cells[i].rank ||
                       (cells[i - 1].rank == cells[i].rank &&
                        cells[i - 1].vertices < cells[i].vertices);
        CHECK(ordered);
        CHECK(cells[i].id == static_cast<CellId>(i));
    }
}

TEST_CASE("cells_of_rank on a triangle complex") {
    auto cc = triangle_complex();
    CHECK(cc.cells_of_rank(1).size() == 3);
    CHECK(cc.cells_of_rank(2).size() == 1);
    CHECK(cc.cells_of_rank(5).empty());
}

TEST_CASE("rebuild from emitted cell list is identical") {
    auto cc = triangle_complex();
    auto rebuilt = build_complex(cc.cell_specs());
    REQUIRE(rebuilt.num_cells() == cc.num_cells());
    for (size_t i = 0; i < cc.num_cells(); ++i) {
        CHECK(rebuilt.cells()[i].vertices == cc.cells()[i].vertices);
        CHECK(rebuilt.cells()[i].rank == cc.cells()[i].rank);
    }
    CHECK(rebuilt.content_hash() == cc.content_hash());
}

TEST_CASE("isomorphism: relabeled K3 clique complexes") {
    auto a = clique_lift(InputGraph::make(3, {{0, 1}, {0, 2}, {1, 2}}), 2);
    auto b = clique_lift(oracle::permute_graph(InputGraph::make(3, {{0, 1}, {0, 2}, {1, 2}}),
                                               {2, 0, 1}),
                         2);
    CHECK(is_isomorphic_bruteforce(a, b));
}

TEST_CASE("isomorphism: K3 vs path P3") {
    auto a = clique_lift(InputGraph::make(3, {{0, 1}, {0, 2}, {1, 2}}), 2);
    auto b = clique_lift(InputGraph::make(3, {{0, 1}, {1, 2}}), 2);
    CHECK_FALSE(is_isomorphic_bruteforce(a, b));
}

TEST_CASE("isomorphism: rank change breaks it") {
    auto a = triangle_complex();
    std::vector<CellSpec> specs = a.cell_specs();
    for (auto& s : specs)
        if (s.rank == 2) s.rank = 3;
    auto b = build_complex(specs);
    CHECK_FALSE(is_isomorphic_bruteforce(a, b));
}

TEST_CASE("isomorphism: cap enforced") {
    auto big = clique_lift(oracle::gnp_graph(9, 0.4, 1), 2);
    CHECK_THROWS_AS(is_isomorphic_bruteforce(big, big), TooLarge);
    CHECK(is_isomorphic_bruteforce(big, big, 9));
}

TEST_CASE("isomorphism is an equivalence relation on a small corpus") {
    std::vector<CombinatorialComplex> corpus;
    for (std::uint64_t seed = 0; seed < 5; ++seed)
        corpus.push_back(clique_lift(oracle::gnp_graph(5, 0.5, seed), 2));
    corpus.push_back(cycle_lift(InputGraph::make(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}), 6));

    for (size_t i = 0; i < corpus.size(); ++i) {
        CHECK(is_isomorphic_bruteforce(corpus[i], corpus[i])); // reflexive
        for (size_t j = 0; j < corpus.size(); ++j) {
            bool ij = is_isomorphic_bruteforce(corpus[i], corpus[j]);
            bool ji = is_isomorphic_bruteforce(corpus[j], corpus[i]);
            CHECK(ij == ji); // symmetric
            for (size_t k = 0; k < corpus.size(); ++k) {
                bool jk = is_isomorphic_bruteforce(corpus[j], corpus[k]);
                bool ik = is_isomorphic_bruteforce(corpus[i], corpus[k]);
                if (ij && jk) CHECK(ik); // transitive
            }
        }
    }
}

TEST_CASE("order preservation holds on built complexes") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        auto cc = clique_lift(oracle::gnp_graph(6, 0.5, seed), 2);
        for (const auto& a : cc.cells())
            for (const auto& b : cc.cells()) {
                if (a.id == b.id || a.vertices.size() >= b.vertices.size()) continue;
                bool subset = std::includes(b.vertices.begin(), b.vertices.end(),
                                            a.vertices.begin(), a.vertices.end());
                if (subset) CHECK(a.rank <= b.rank);
            }
        for (VertexId v : cc.vertices()) CHECK(cc.has_cell({v}, 0));
    }
}

TEST_CASE("complex text format round-trips exactly") {
    auto cc = triangle_complex();
    std::ostringstream first;
    write_complex(first, cc);
    std::istringstream in(first.str());
    auto back = read_complex(in);
    std::ostringstream second;
    write_complex(second, back);
    CHECK(first.str() == second.str());
    CHECK(back.content_hash() == cc.content_hash());
}

TEST_CASE("complex text format: comments and blank lines") {
    std::istringstream in("# header\n\n0\t5\n1\t5,7  # trailing comment\n");
    auto cc = read_complex(in);
    CHECK(cc.num_cells() == 3); // {5}, {7} auto-inserted, {5,7}
    CHECK(cc.has_cell({5, 7}, 1));
}

TEST_CASE("complex text format: malformed input") {
    std::istringstream bad("1\t\n");
    CHECK_THROWS_AS(read_complex(bad), ParseError);
    std::istringstream empty("# nothing\n");
    CHECK_THROWS_AS(read_complex(empty), ParseError);
    std::istringstream negative("0\t-3\n");
    CHECK_THROWS_AS(read_complex(negative), ParseError);
}
