#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "grkex/exponent.hpp"
#include "grkex/group_ring.hpp"

namespace grkex {

// k x k matrix over Z_n[S_m]. Multiplication is the only guaranteed group
// structure (most matrices are not invertible); exponentiation is binary
// square-and-multiply.
class MatGr {
public:
    static MatGr identity(ContextPtr ctx, int k);
    static MatGr zero(ContextPtr ctx, int k);
    static MatGr random(ContextPtr ctx, int k, Rng& rng);
    static MatGr from_entries(ContextPtr ctx, int k, std::vector<GrElement> row_major);

    // (M1, M1^-1): a product of `factors` alternating upper/lower triangular
    // matrices with single-permutation units on the diagonal and random ring
    // elements above/below it; the inverse multiplies the factor inverses in
    // reverse order.
    static std::pair<MatGr, MatGr> random_invertible(ContextPtr ctx, int k, Rng& rng,
                                                     int factors = 20);

    // The scalar matrix with s = (3+g_1)...(3+g_6)(5+h) on the diagonal,
    // where g_1..g_6 are the canonical 5-cycle generators of the six order-5
    // subgroups of S_5 and h = (1 2)(3 4 5). Defined for Z_7[S_5] only;
    // s annihilates t = sum_{i+j=5} h^i 2^j, so s (and the matrix) is a zero
    // divisor and has no inverse.
    static MatGr scalar_s(ContextPtr ctx, int k);

    int k() const { return k_; }
    const RingContext& ring() const { return *ctx_; }
    const ContextPtr& context() const { return ctx_; }
    const GrElement& at(int i, int j) const { return e_[static_cast<std::size_t>(i) * k_ + j]; }
    GrElement& at(int i, int j) { return e_[static_cast<std::size_t>(i) * k_ + j]; }

    MatGr pow(const Exponent& e) const;
    // Same, reporting how many matrix multiplications were spent (always
    // <= 2 * bit_length(e)).
    MatGr pow_counted(const Exponent& e, std::uint64_t& muls) const;

    // Canonical bit-packed payload: entries row-major, within an entry by
    // permutation rank, each coefficient in ceil(log2 n) bits filled
    // least-significant-bit first; zero padding to a byte boundary. Equal
    // matrices have equal bytes and conversely.
    std::vector<std::uint8_t> encode() const;
    static MatGr decode(const std::vector<std::uint8_t>& bytes, ContextPtr ctx, int k);
    static std::size_t encoded_bits(const RingContext& ctx, int k);

    friend MatGr operator*(const MatGr& a, const MatGr& b);
    friend bool operator==(const MatGr& a, const MatGr& b);

private:
    MatGr(ContextPtr ctx, int k, std::vector<GrElement> e)
        : ctx_(std::move(ctx)), k_(k), e_(std::move(e)) {}
    // Entry from raw reduced coefficients; for the kernel and its friends.
    static GrElement wrap(ContextPtr ctx, std::vector<std::uint16_t> c) {
        return GrElement(std::move(ctx), std::move(c));
    }
    ContextPtr ctx_;
    int k_;
    std::vector<GrElement> e_;  // row-major

    friend class FixedBasePow;
};

// Repeated exponentiation of one fixed base: caches the regular
// representations of base^(2^i) so each power costs about one cheap matrix
// product per set exponent bit. Worth it when many exponents share a base
// (the triple-distribution experiment); equivalent to MatGr::pow.
class FixedBasePow {
public:
    // Whether the fast kernel (and therefore this cache) applies to the
    // given ring and dimension.
    static bool supported(const RingContext& ctx, int k);

    FixedBasePow(const MatGr& base, unsigned max_bits);
    MatGr pow(const Exponent& e) const;
    unsigned max_bits() const { return max_bits_; }

private:
    ContextPtr ctx_;
    int k_;
    unsigned max_bits_;
    // Level i holds base^(2^i): the left regular representation of each entry.
    std::vector<std::vector<std::uint16_t>> reps_;
};

}  // namespace grkex
