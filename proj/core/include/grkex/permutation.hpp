#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace grkex {

// Degrees above 10 would need ranks wider than 32 bits and coefficient
// vectors beyond any practical dense representation.
inline constexpr int kMaxDegree = 10;

// m! for m = 0..10.
inline constexpr std::array<std::uint32_t, 11> kFactorial = {
    1, 1, 2, 6, 24, 120, 720, 5040, 40320, 362880, 3628800};

// A permutation of {1..m}, stored as a 0-based one-line mapping.
// Ranks are lexicographic on the one-line notation (Lehmer code),
// so rank 0 is always the identity.
class Perm {
public:
    static Perm identity(int m);
    // mapping[i] = image of point i+1, values in 1..m.
    static Perm from_mapping(const std::vector<int>& one_based);
    static Perm unrank(int m, std::uint32_t rank);

    int degree() const { return static_cast<int>(map_.size()); }
    // Image of the 1-based point x.
    int apply(int x) const;
    std::vector<int> mapping() const;

    std::uint32_t rank() const;
    Perm inverse() const;
    int sign() const;  // +1 even, -1 odd

    bool operator==(const Perm&) const = default;

    // Disjoint-cycle text. Parsing accepts "e", "ε", "\epsilon", and cycle
    // products like "(123)" or "(1 5 4 3 2)"; a non-disjoint product is
    // evaluated as a composition, rightmost cycle first. Formatting emits
    // canonical disjoint cycles ("(1 5)(2 4)"), "e" for the identity.
    static Perm parse_cycles(std::string_view text, int m);
    std::string format_cycles() const;

    friend Perm operator*(const Perm& p, const Perm& q);  // (p*q)(x) = p(q(x))

private:
    explicit Perm(std::vector<std::uint8_t> map) : map_(std::move(map)) {}
    std::vector<std::uint8_t> map_;
};

// Precomputed rank-level S_m data: composition table, inverses, signs.
// Only built for m <= kTableDegreeCap; larger degrees compose on the fly.
struct MultTable {
    static constexpr int kTableDegreeCap = 6;

    int m = 0;
    std::uint32_t order = 0;
    std::vector<std::uint16_t> mul;   // mul[i*order + j] = rank(unrank(i) * unrank(j))
    std::vector<std::uint16_t> inv;   // inv[i] = rank(unrank(i)^-1)
    std::vector<std::int8_t> sign;    // sign[i] = ±1

    static MultTable build(int m);

    std::uint16_t at(std::uint32_t i, std::uint32_t j) const { return mul[i * order + j]; }
};

}  // namespace grkex
