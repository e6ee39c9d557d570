#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "grkex/permutation.hpp"
#include "grkex/rng.hpp"

using namespace grkex;

namespace {

// Independent parity: (-1)^(number of inversions in the one-line form).
int inversion_sign(const std::vector<int>& line) {
    int inv = 0;
    for (std::size_t i = 0; i < line.size(); i++)
        for (std::size_t j = i + 1; j < line.size(); j++)
            if (line[i] > line[j]) inv++;
    return inv % 2 == 0 ? 1 : -1;
}

}  // namespace

TEST_CASE("ranks enumerate one-line forms in lexicographic order") {
    for (int m = 1; m <= 6; m++) {
        std::vector<int> line(m);
        std::iota(line.begin(), line.end(), 1);
        std::uint32_t r = 0;
        do {
            Perm p = Perm::unrank(m, r);
            CHECK(p.mapping() == line);
            CHECK(p.rank() == r);
            r++;
        } while (std::next_permutation(line.begin(), line.end()));
        CHECK(r == kFactorial[m]);
    }
    CHECK(Perm::identity(5).rank() == 0);
}

TEST_CASE("rank round-trips at the largest degree") {
    Rng rng(101);
    for (int t = 0; t < 200; t++) {
        const std::uint32_t r = static_cast<std::uint32_t>(rng.below(kFactorial[10]));
        CHECK(Perm::unrank(10, r).rank() == r);
    }
}

TEST_CASE("composition applies the right factor first") {
    Rng rng(102);
    for (int t = 0; t < 100; t++) {
        Perm p = Perm::unrank(5, static_cast<std::uint32_t>(rng.below(120)));
        Perm q = Perm::unrank(5, static_cast<std::uint32_t>(rng.below(120)));
        Perm pq = p * q;
        for (int x = 1; x <= 5; x++) CHECK(pq.apply(x) == p.apply(q.apply(x)));
    }
}

TEST_CASE("inverses cancel on both sides") {
    for (std::uint32_t r = 0; r < 120; r++) {
        Perm p = Perm::unrank(5, r);
        CHECK(p * p.inverse() == Perm::identity(5));
        CHECK(p.inverse() * p == Perm::identity(5));
    }
}

TEST_CASE("sign matches the inversion-count parity") {
    for (std::uint32_t r = 0; r < 120; r++) {
        Perm p = Perm::unrank(5, r);
        CHECK(p.sign() == inversion_sign(p.mapping()));
    }
    Rng rng(103);
    for (int t = 0; t < 50; t++) {
        Perm p = Perm::unrank(8, static_cast<std::uint32_t>(rng.below(kFactorial[8])));
        CHECK(p.sign() == inversion_sign(p.mapping()));
    }
}

TEST_CASE("sign is multiplicative") {
    Rng rng(104);
    for (int t = 0; t < 100; t++) {
        Perm p = Perm::unrank(6, static_cast<std::uint32_t>(rng.below(720)));
        Perm q = Perm::unrank(6, static_cast<std::uint32_t>(rng.below(720)));
        CHECK((p * q).sign() == p.sign() * q.sign());
    }
}

TEST_CASE("cycle text parses and formats") {
    Perm c = Perm::parse_cycles("(123)", 5);
    CHECK(c.apply(1) == 2);
    CHECK(c.apply(2) == 3);
    CHECK(c.apply(3) == 1);
    CHECK(c.apply(4) == 4);

    CHECK(Perm::parse_cycles("(1 5 4 3 2)", 5) == Perm::parse_cycles("(15432)", 5));
    CHECK(Perm::parse_cycles("e", 5) == Perm::identity(5));
    CHECK(Perm::parse_cycles("\xce\xb5", 5) == Perm::identity(5));  // ε
    CHECK(Perm::parse_cycles("\\epsilon", 5) == Perm::identity(5));
    CHECK(Perm::identity(5).format_cycles() == "e");

    // Non-disjoint products compose rightmost first: (12)(13) sends 1 -> 3,
    // 3 -> 2, 2 -> 1.
    CHECK(Perm::parse_cycles("(12)(13)", 3) == Perm::parse_cycles("(132)", 3));

    for (std::uint32_t r = 0; r < 24; r++) {
        Perm p = Perm::unrank(4, r);
        CHECK(Perm::parse_cycles(p.format_cycles(), 4) == p);
    }
    // Degree 10 needs spaced points.
    Rng rng(105);
    for (int t = 0; t < 30; t++) {
        Perm p = Perm::unrank(10, static_cast<std::uint32_t>(rng.below(kFactorial[10])));
        CHECK(Perm::parse_cycles(p.format_cycles(), 10) == p);
    }
}

TEST_CASE("malformed input is rejected") {
    CHECK_THROWS_AS(Perm::from_mapping({1, 1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(Perm::from_mapping({0, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(Perm::from_mapping({1, 2, 4}), std::invalid_argument);
    CHECK_THROWS_AS(Perm::parse_cycles("(16)", 5), std::invalid_argument);
    CHECK_THROWS_AS(Perm::parse_cycles("(11)", 5), std::invalid_argument);
    CHECK_THROWS_AS(Perm::parse_cycles("(12", 5), std::invalid_argument);
    CHECK_THROWS_AS(Perm::parse_cycles("", 5), std::invalid_argument);
}

TEST_CASE("the composition table agrees with direct composition") {
    MultTable t = MultTable::build(3);
    CHECK(t.order == 6);
    for (std::uint32_t i = 0; i < 6; i++) {
        for (std::uint32_t j = 0; j < 6; j++)
            CHECK(t.at(i, j) == (Perm::unrank(3, i) * Perm::unrank(3, j)).rank());
        CHECK(t.inv[i] == Perm::unrank(3, i).inverse().rank());
        CHECK(t.sign[i] == Perm::unrank(3, i).sign());
    }
}
