#include "hopse/routes.hpp"

#include <algorithm>
#include <numeric>

namespace hopse {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out))
        throw OverflowError("route count exceeds 64 bits");
    return out;
}

std::uint64_t factorial(std::uint64_t n) {
    std::uint64_t f = 1;
    for (std::uint64_t i = 2; i <= n; ++i) f = checked_mul(f, i);
    return f;
}

std::uint64_t ipow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t p = 1;
    for (std::uint64_t i = 0; i < exp; ++i) p = checked_mul(p, base);
    return p;
}

} // namespace

std::uint64_t count_neighborhoods(int max_rank) {
    if (max_rank < 0) throw ParseError("max_rank must be >= 0");
    auto r = static_cast<std::uint64_t>(max_rank);
    return checked_mul(2, checked_mul(r + 1, r));
}

std::uint64_t count_minimal_routes(int max_rank) {
    if (max_rank < 0) throw ParseError("max_rank must be >= 0");
    return factorial(static_cast<std::uint64_t>(max_rank) + 1);
}

std::uint64_t count_extended_routes(int max_rank) {
    if (max_rank < 0) throw ParseError("max_rank must be >= 0");
    auto r = static_cast<std::uint64_t>(max_rank);
    return checked_mul(factorial(r + 1), ipow(r + 1, r));
}

std::vector<Route> enumerate_minimal_routes(int max_rank) {
    if (max_rank < 0) throw ParseError("max_rank must be >= 0");
    if (max_rank > 6)
        throw TooLarge("minimal-route enumeration capped at max_rank 6");
    if (max_rank == 0) return {Route{}};

    std::vector<int> ranks(static_cast<size_t>(max_rank) + 1);
    std::iota(ranks.begin(), ranks.end(), 0);
    std::vector<Route> routes;
    do {
        Route route;
        route.steps.reserve(ranks.size());
        for (size_t j = 1; j < ranks.size(); ++j)
            route.steps.push_back(NeighborhoodFunction::incidence(ranks[j - 1], ranks[j]));
        route.steps.push_back(NeighborhoodFunction::incidence(ranks.back(), ranks.front()));
        routes.push_back(std::move(route));
    } while (std::next_permutation(ranks.begin(), ranks.end()));
    return routes;
}

} // namespace hopse
