#include <doctest.h>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "grkex/analysis.hpp"

using namespace grkex;

namespace {

MatGr single_entry(ContextPtr ctx, std::vector<std::uint16_t> coeffs) {
    GrElement x = GrElement::zero(ctx);
    for (std::uint32_t r = 0; r < coeffs.size(); r++) x.set_coeff(r, coeffs[r]);
    return MatGr::from_entries(ctx, 1, {x});
}

std::uint64_t total(const std::vector<std::uint64_t>& v) {
    return std::accumulate(v.begin(), v.end(), std::uint64_t{0});
}

}  // namespace

TEST_CASE("the chi-square statistic matches the closed form") {
    ChiSquare even = chi_square_uniform({90, 110});
    CHECK(even.statistic == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(even.dof == 1);
    CHECK(even.p == doctest::Approx(0.15729920705028513).epsilon(1e-12));

    ChiSquare flat = chi_square_uniform({25, 25, 25, 25});
    CHECK(flat.statistic == doctest::Approx(0.0));
    CHECK(flat.dof == 3);
    CHECK(flat.p == doctest::Approx(1.0));

    CHECK_THROWS_AS(chi_square_uniform({}), std::invalid_argument);
    CHECK_THROWS_AS(chi_square_uniform({42}), std::invalid_argument);
    CHECK_THROWS_AS(chi_square_uniform({0, 0}), std::invalid_argument);
}

TEST_CASE("frequency tables land each residue in the right cell") {
    ContextPtr ctx = make_context(3, 2);
    FreqTable t(ctx, 1);
    t.tally(single_entry(ctx, {2, 0}));
    t.tally(single_entry(ctx, {1, 1}));
    t.tally(single_entry(ctx, {2, 2}));
    CHECK(t.trials() == 3);
    CHECK(t.counts() == std::vector<std::uint64_t>{0, 1, 2, 1, 1, 1});
    CHECK(t.entry_slice(0, 0) == t.counts());
}

TEST_CASE("triple tables key on the residue triple") {
    ContextPtr ctx = make_context(3, 2);
    TripleTable t(ctx, 1);
    t.tally(single_entry(ctx, {1, 0}), single_entry(ctx, {2, 1}), single_entry(ctx, {0, 2}));
    CHECK(t.trials() == 1);
    const auto& c = t.counts();
    CHECK(total(c) == 2);
    CHECK(c[15] == 1);       // element 0: 1*9 + 2*3 + 0
    CHECK(c[27 + 5] == 1);   // element 1: 0*9 + 1*3 + 2
    auto agg = t.aggregate();
    CHECK(agg.size() == 27);
    CHECK(agg[15] == 1);
    CHECK(agg[5] == 1);
    CHECK(total(agg) == 2);
}

TEST_CASE("quantile pairing sorts each entry block") {
    ContextPtr ctx = make_context(2, 2);
    FreqTable a(ctx, 1), b(ctx, 1);
    a.tally(single_entry(ctx, {0, 0}));
    a.tally(single_entry(ctx, {0, 1}));
    a.tally(single_entry(ctx, {1, 0}));
    for (int i = 0; i < 3; i++) b.tally(single_entry(ctx, {1, 1}));
    CHECK(a.counts() == std::vector<std::uint64_t>{2, 1, 2, 1});
    CHECK(b.counts() == std::vector<std::uint64_t>{0, 3, 0, 3});
    auto pairs = qq_pairs(a, b);
    REQUIRE(pairs.size() == 4);
    CHECK(pairs[0].x == 1);
    CHECK(pairs[0].y == 0);
    CHECK(pairs[3].x == 2);
    CHECK(pairs[3].y == 3);
    // Largest gap 1 against an expected cell count of 3/2.
    CHECK(qq_max_deviation(a, b) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("experiment drivers are deterministic in the seed") {
    DdhConfig cfg;
    cfg.n = 7;
    cfg.m = 5;
    cfg.k = 1;
    cfg.trials = 40;
    cfg.seed = 11;
    cfg.a_lo = 10;
    cfg.a_hi = 1000;
    cfg.c_lo = 10;
    cfg.c_hi = 1000;

    PairResult r1 = ddh_exp1(cfg);
    PairResult r2 = ddh_exp1(cfg);
    CHECK(r1.left.counts() == r2.left.counts());
    CHECK(r1.right.counts() == r2.right.counts());
    CHECK(total(r1.left.counts()) == 40 * 120);
    CHECK(total(r1.right.counts()) == 40 * 120);

    PairResult e2 = ddh_exp2(cfg);
    CHECK(total(e2.left.counts()) == 40 * 120);

    TripleTable t1 = ddh_exp3(cfg);
    TripleTable t2 = ddh_exp3(cfg);
    CHECK(t1.counts() == t2.counts());
    CHECK(total(t1.counts()) == 40 * 120);

    cfg.seed = 12;
    TripleTable t3 = ddh_exp3(cfg);
    CHECK_FALSE(t1.counts() == t3.counts());
}

TEST_CASE("experiment configs are validated") {
    DdhConfig cfg;
    cfg.a_lo = 100;
    cfg.a_hi = 10;  // empty range
    cfg.trials = 1;
    CHECK_THROWS_AS(ddh_exp2(cfg), std::invalid_argument);
    DdhConfig none;
    none.a_lo = 10;
    none.a_hi = 100;
    none.trials = 0;
    CHECK_THROWS_AS(ddh_exp2(none), std::invalid_argument);
}

TEST_CASE("support band probabilities: exact against sampled") {
    ContextPtr ctx = make_context(2, 5);
    const double exact = support_probability_exact(*ctx, 50, 70);
    CHECK(exact == doctest::Approx(0.9452202030862978).epsilon(1e-12));
    CHECK(support_probability_exact(*ctx, 0, 120) == doctest::Approx(1.0));
    const double mc = support_probability_mc(ctx, 50, 70, 20000, 9);
    CHECK(std::abs(mc - exact) < 0.01);
    CHECK_THROWS_AS(support_probability_exact(*ctx, 80, 70), std::invalid_argument);
    CHECK_THROWS_AS(support_probability_exact(*ctx, 0, 121), std::invalid_argument);
    CHECK_THROWS_AS(support_probability_mc(ctx, 0, 10, 0, 1), std::invalid_argument);
}
