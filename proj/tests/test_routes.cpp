#include <doctest.h>

#include <algorithm>
#include <set>

#include "hopse/routes.hpp"

using namespace hopse;

TEST_CASE("neighborhood counts") {
    CHECK(count_neighborhoods(2) == 12);
    CHECK(count_neighborhoods(1) == 4);
    CHECK(count_neighborhoods(0) == 0);
    CHECK(count_neighborhoods(3) == 24);
}

TEST_CASE("minimal route counts") {
    CHECK(count_minimal_routes(0) == 1);
    CHECK(count_minimal_routes(1) == 2);
    CHECK(count_minimal_routes(2) == 6);
    CHECK(count_minimal_routes(4) == 120);
}

TEST_CASE("extended route counts follow (R+1)! * (R+1)^R") {
    CHECK(count_extended_routes(1) == 4);
    CHECK(count_extended_routes(2) == 54);
    CHECK(count_extended_routes(3) == 1536); // 24 * 64
    CHECK(count_extended_routes(0) == 1);
}

TEST_CASE("counts overflow signals") {
    CHECK_THROWS_AS(count_minimal_routes(25), OverflowError);
    CHECK_THROWS_AS(count_extended_routes(20), OverflowError);
}

TEST_CASE("minimal route enumeration at R=1") {
    auto routes = enumerate_minimal_routes(1);
    REQUIRE(routes.size() == 2);
    CHECK(routes[0].steps[0].name() == "I_{0->1}");
    CHECK(routes[0].steps[1].name() == "I_{1->0}");
    CHECK(routes[1].steps[0].name() == "I_{1->0}");
    CHECK(routes[1].steps[1].name() == "I_{0->1}");
}

TEST_CASE("minimal route enumeration degenerates at R=0") {
    auto routes = enumerate_minimal_routes(0);
    REQUIRE(routes.size() == 1);
    CHECK(routes[0].steps.empty());
}

TEST_CASE("enumeration size, length, and structure for R=0..4") {
    for (int r = 0; r <= 4; ++r) {
        auto routes = enumerate_minimal_routes(r);
        CHECK(routes.size() == count_minimal_routes(r));
        std::set<std::vector<std::string>> distinct;
        for (const auto& route : routes) {
            if (r >= 1) {
                CHECK(route.steps.size() == static_cast<size_t>(r) + 1);
                // target multiset covers every rank exactly once
                std::set<int> targets;
                for (const auto& step : route.steps) {
                    CHECK(step.kind == NfKind::Incidence);
                    targets.insert(step.target_rank);
                }
                CHECK(targets.size() == static_cast<size_t>(r) + 1);
                // consecutive steps chain: each target feeds the next source
                for (size_t i = 0; i + 1 < route.steps.size(); ++i)
                    CHECK(route.steps[i].target_rank == route.steps[i + 1].source_rank);
                CHECK(route.steps.back().target_rank == route.steps.front().source_rank);
            }
            std::vector<std::string> names;
            for (const auto& step : route.steps) names.push_back(step.name());
            distinct.insert(names);
        }
        CHECK(distinct.size() == routes.size());
    }
}

TEST_CASE("R=2 contains the canonical ascending route") {
    auto routes = enumerate_minimal_routes(2);
    CHECK(routes.size() == 6);
    bool found = false;
    for (const auto& route : routes) {
        if (route.steps.size() == 3 && route.steps[0].name() == "I_{0->1}" &&
            route.steps[1].name() == "I_{1->2}" && route.steps[2].name() == "I_{2->0}")
            found = true;
    }
    CHECK(found);
}

TEST_CASE("enumeration cap") {
    CHECK_THROWS_AS(enumerate_minimal_routes(7), TooLarge);
    CHECK_NOTHROW(enumerate_minimal_routes(6));
}

TEST_CASE("extended equals minimal times (R+1)^R identically") {
    for (int r = 0; r <= 8; ++r) {
        std::uint64_t factor = 1;
        for (int i = 0; i < r; ++i) factor *= static_cast<std::uint64_t>(r + 1);
        CHECK(count_extended_routes(r) == count_minimal_routes(r) * factor);
    }
}
