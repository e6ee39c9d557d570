#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grkex/permutation.hpp"
#include "grkex/rng.hpp"

namespace grkex {

// Shared immutable description of Z_n[S_m]: the modulus, the degree, signs,
// and (for m <= MultTable cap) the precomputed rank-level composition table
// plus the index table the matrix kernel uses. Contexts are compared by
// (n, m) value, not identity.
class RingContext {
public:
    static constexpr std::uint32_t kMaxModulus = 65535;

    std::uint32_t n;
    int m;
    std::uint32_t order;  // m!

    bool has_table() const { return !table_.mul.empty(); }

    // rank(unrank(i) * unrank(j)); table lookup under the cap, Lehmer
    // decode/encode above it.
    std::uint32_t compose(std::uint32_t i, std::uint32_t j) const {
        if (has_table()) return table_.mul[static_cast<std::size_t>(i) * order + j];
        return (Perm::unrank(m, i) * Perm::unrank(m, j)).rank();
    }
    std::uint32_t inverse(std::uint32_t i) const {
        if (has_table()) return table_.inv[i];
        return Perm::unrank(m, i).inverse().rank();
    }
    int sign_of(std::uint32_t i) const { return sign_[i]; }

    // left_index()[i*order + k] = rank(g_i * g_k^{-1}); row i of the left
    // regular representation of x is x gathered through this table. Empty
    // when no table is built.
    const std::vector<std::uint16_t>& left_index() const { return left_index_; }
    const MultTable& table() const { return table_; }

private:
    friend std::shared_ptr<const RingContext> make_context(std::uint32_t, int);
    friend std::shared_ptr<const RingContext> make_context_tableless(std::uint32_t, int);
    RingContext() : n(0), m(0), order(0) {}

    MultTable table_;
    std::vector<std::uint16_t> left_index_;
    std::vector<std::int8_t> sign_;
};

using ContextPtr = std::shared_ptr<const RingContext>;

ContextPtr make_context(std::uint32_t n, int m);
// On-the-fly composition even when a table would fit; the regular path for
// m above the table cap, and the reference arm of differential tests.
ContextPtr make_context_tableless(std::uint32_t n, int m);

inline bool same_ring(const RingContext& a, const RingContext& b) {
    return a.n == b.n && a.m == b.m;
}

// A formal sum over S_m with coefficients in Z_n, stored as a dense
// length-m! vector indexed by permutation rank.
class GrElement {
public:
    static GrElement zero(ContextPtr ctx);
    static GrElement one(ContextPtr ctx);
    // Coefficient 1 on a single permutation: the embedded group element.
    static GrElement embed(ContextPtr ctx, const Perm& g);
    static GrElement random(ContextPtr ctx, Rng& rng);

    static GrElement parse(std::string_view text, ContextPtr ctx);
    std::string to_string() const;

    const RingContext& ring() const { return *ctx_; }
    const ContextPtr& context() const { return ctx_; }
    std::uint16_t coeff(std::uint32_t rank) const { return c_[rank]; }
    void set_coeff(std::uint32_t rank, std::uint32_t value);
    const std::vector<std::uint16_t>& coeffs() const { return c_; }

    std::uint32_t support_size() const;
    // Image under the induced map Z_n[S_m] -> Z_n[Z_2]: (even sum, odd sum).
    std::pair<std::uint32_t, std::uint32_t> sign_image() const;

    GrElement scalar_mul(std::uint32_t c) const;

    friend GrElement operator+(const GrElement& x, const GrElement& y);
    friend GrElement operator-(const GrElement& x);
    friend GrElement operator-(const GrElement& x, const GrElement& y);
    // Convolution: (xy)_i = sum over g_j g_k = g_i of x_j y_k.
    friend GrElement operator*(const GrElement& x, const GrElement& y);

    friend bool operator==(const GrElement& x, const GrElement& y) {
        return same_ring(*x.ctx_, *y.ctx_) && x.c_ == y.c_;
    }

private:
    GrElement(ContextPtr ctx, std::vector<std::uint16_t> c)
        : ctx_(std::move(ctx)), c_(std::move(c)) {}
    ContextPtr ctx_;
    std::vector<std::uint16_t> c_;

    friend class MatGr;
};

}  // namespace grkex
