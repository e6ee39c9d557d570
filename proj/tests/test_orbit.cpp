#include <doctest.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "grkex/orbit.hpp"

using namespace grkex;

namespace {

// Reference orbit shape: store every power until the first repeat. Only
// sensible for 1x1 matrices, where the n^(m!) ring elements bound the walk.
struct StoredOrbit {
    std::uint64_t tail, period;
};

StoredOrbit stored_orbit(const MatGr& A, std::uint64_t limit) {
    std::map<std::vector<std::uint8_t>, std::uint64_t> seen;
    MatGr P = A;
    for (std::uint64_t e = 1; e <= limit; e++) {
        auto [it, fresh] = seen.emplace(P.encode(), e);
        if (!fresh) return {it->second, e - it->second};
        P = P * A;
    }
    FAIL("orbit longer than the stored-powers limit");
    return {0, 0};
}

}  // namespace

TEST_CASE("cycle detection agrees with stored powers") {
    Rng rng(501);
    for (int t = 0; t < 30; t++) {
        ContextPtr ctx = make_context(2 + t % 2, 3);
        MatGr A = MatGr::random(ctx, 1, rng);
        OrbitResult r = orbit_scan(A, 100'000);
        REQUIRE_FALSE(r.exhausted);
        StoredOrbit s = stored_orbit(A, 1000);
        CHECK(r.tail == s.tail);
        CHECK(r.period == s.period);
    }
}

TEST_CASE("the reported shape is minimal at dimension two") {
    Rng rng(502);
    for (int t = 0; t < 8; t++) {
        ContextPtr ctx = make_context(2, 3);
        MatGr A = MatGr::random(ctx, 2, rng);
        OrbitResult r = orbit_scan(A, 5'000'000);
        REQUIRE_FALSE(r.exhausted);
        // A^(tail+period) = A^tail, the step before has not entered the
        // cycle, and no proper divisor of the period closes it.
        CHECK(A.pow(Exponent(r.tail + r.period)) == A.pow(Exponent(r.tail)));
        if (r.tail > 1)
            CHECK_FALSE(A.pow(Exponent(r.tail - 1 + r.period)) == A.pow(Exponent(r.tail - 1)));
        for (std::uint64_t d = 1; d < r.period; d++)
            if (r.period % d == 0)
                CHECK_FALSE(A.pow(Exponent(r.tail + d)) == A.pow(Exponent(r.tail)));
    }
}

TEST_CASE("a tight budget reports exhaustion") {
    ContextPtr ctx = make_context(3, 3);
    Rng rng(503);
    MatGr A = MatGr::random(ctx, 2, rng);
    OrbitResult r = orbit_scan(A, 2);
    CHECK(r.exhausted);
    CHECK(r.muls <= 2);
}

TEST_CASE("multiplicative orders are minimal") {
    ContextPtr ctx = make_context(3, 3);
    Rng rng(504);
    CHECK(order_of_invertible(MatGr::identity(ctx, 2), 10) == 1);
    for (int t = 0; t < 10; t++) {
        auto [M, Minv] = MatGr::random_invertible(ctx, 2, rng, 6);
        (void)Minv;
        auto ord = order_of_invertible(M, 200'000);
        REQUIRE(ord.has_value());
        CHECK(M.pow(Exponent(*ord)) == MatGr::identity(ctx, 2));
        MatGr P = M;
        for (std::uint64_t e = 1; e < *ord; e++) {
            CHECK_FALSE(P == MatGr::identity(ctx, 2));
            P = P * M;
        }
    }
    CHECK_FALSE(order_of_invertible(MatGr::zero(ctx, 2), 1000).has_value());
}

TEST_CASE("brute force finds the smallest matching exponent") {
    ContextPtr ctx = make_context(3, 3);
    Rng rng(505);
    for (int t = 0; t < 20; t++) {
        MatGr M = MatGr::random(ctx, 1, rng);
        const std::uint64_t x = rng.below(51);
        MatGr A = M.pow(Exponent(x));
        auto found = brute_dlog(M, A, 60);
        REQUIRE(found.has_value());
        CHECK(*found <= x);
        CHECK(M.pow(Exponent(*found)) == A);
    }
    CHECK(brute_dlog(MatGr::random(ctx, 1, rng), MatGr::identity(ctx, 1), 100) == 0);
}

TEST_CASE("meet-in-the-middle agrees with brute force") {
    Rng rng(506);
    for (int t = 0; t < 100; t++) {
        ContextPtr ctx = make_context(2 + t % 2, 3);
        const int k = 1 + t % 2;
        MatGr M = MatGr::random(ctx, k, rng);
        MatGr A = t % 3 == 0 ? MatGr::random(ctx, k, rng)  // usually unsolvable
                             : M.pow(Exponent(rng.below(201)));
        const std::uint64_t bound = 150 + rng.below(101);
        BsgsResult fast = bsgs_dlog(M, A, bound);
        auto slow = brute_dlog(M, A, bound);
        CHECK(fast.exponent == slow);
        if (fast.exponent) CHECK(M.pow(Exponent(*fast.exponent)) == A);
    }
}

TEST_CASE("the solver enforces its resource guards") {
    ContextPtr ctx = make_context(3, 3);
    Rng rng(507);
    MatGr M = MatGr::random(ctx, 1, rng);
    MatGr A = M.pow(Exponent(7));
    CHECK_THROWS_AS(bsgs_dlog(M, A, std::uint64_t{1} << 41), std::invalid_argument);
    CHECK_THROWS_AS(bsgs_dlog(M, A, 10'000, 3), std::invalid_argument);
    BsgsResult r = bsgs_dlog(M, A, 100);
    CHECK(r.entries_stored >= 1);
    CHECK(r.muls >= 1);
}
