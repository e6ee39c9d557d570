#include "grkex/matrix.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <stdexcept>

namespace grkex {

namespace {

// ---- fast kernel -----------------------------------------------------------
//
// For a left factor a, row i of its regular representation is a gathered
// through left_index: L[i][k] = a[rank(g_i g_k^{-1})], and then
// (a b)_i = sum_k L[i][k] b[k]. Building L costs one pass over ord^2; the
// matvec is a dense dot product the compiler vectorizes. A k x k product
// builds L once per left entry and reuses it across the k right columns.
//
// Raw (unreduced) accumulation is safe while k * ord * (n-1)^2 < 2^32.

bool fast_ok(const RingContext& ctx, int k) {
    if (ctx.left_index().empty()) return false;
    const std::uint64_t nm1 = ctx.n - 1;
    return static_cast<std::uint64_t>(k) * ctx.order * nm1 * nm1 < (std::uint64_t(1) << 32);
}

void build_rep(const RingContext& ctx, const std::uint16_t* a, std::uint16_t* L) {
    const std::uint32_t ord = ctx.order;
    const std::uint16_t* lidx = ctx.left_index().data();
    for (std::uint32_t i = 0; i < ord; i++) {
        const std::uint16_t* src = lidx + static_cast<std::size_t>(i) * ord;
        std::uint16_t* row = L + static_cast<std::size_t>(i) * ord;
        for (std::uint32_t k = 0; k < ord; k++) row[k] = a[src[k]];
    }
}

void matvec_add(const RingContext& ctx, const std::uint16_t* L, const std::uint16_t* b,
                std::uint32_t* acc) {
    const std::uint32_t ord = ctx.order;
    for (std::uint32_t i = 0; i < ord; i++) {
        const std::uint16_t* row = L + static_cast<std::size_t>(i) * ord;
        std::uint32_t s = 0;
        for (std::uint32_t k = 0; k < ord; k++) s += static_cast<std::uint32_t>(row[k]) * b[k];
        acc[i] += s;
    }
}

// C = A * B with all three as flat row-major entry blocks of ord coefficients.
void matmul_fast(const RingContext& ctx, int k, const std::uint16_t* const* A,
                 const std::uint16_t* const* B, std::uint16_t* C, std::uint16_t* scratchL,
                 std::uint32_t* scratchAcc) {
    const std::uint32_t ord = ctx.order;
    std::fill(scratchAcc, scratchAcc + static_cast<std::size_t>(k) * k * ord, 0u);
    for (int i = 0; i < k; i++) {
        for (int l = 0; l < k; l++) {
            build_rep(ctx, A[i * k + l], scratchL);
            for (int j = 0; j < k; j++)
                matvec_add(ctx, scratchL, B[l * k + j],
                           scratchAcc + (static_cast<std::size_t>(i) * k + j) * ord);
        }
    }
    const std::uint32_t n = ctx.n;
    for (std::size_t x = 0; x < static_cast<std::size_t>(k) * k * ord; x++)
        C[x] = static_cast<std::uint16_t>(scratchAcc[x] % n);
}

// Same contract, prebuilt representations for the left matrix.
void matmul_cached(const RingContext& ctx, int k, const std::uint16_t* const* Areps,
                   const std::uint16_t* const* B, std::uint16_t* C, std::uint32_t* scratchAcc) {
    const std::uint32_t ord = ctx.order;
    std::fill(scratchAcc, scratchAcc + static_cast<std::size_t>(k) * k * ord, 0u);
    for (int i = 0; i < k; i++)
        for (int l = 0; l < k; l++)
            for (int j = 0; j < k; j++)
                matvec_add(ctx, Areps[i * k + l], B[l * k + j],
                           scratchAcc + (static_cast<std::size_t>(i) * k + j) * ord);
    const std::uint32_t n = ctx.n;
    for (std::size_t x = 0; x < static_cast<std::size_t>(k) * k * ord; x++)
        C[x] = static_cast<std::uint16_t>(scratchAcc[x] % n);
}

struct FlatScratch {
    std::vector<std::uint16_t> L;
    std::vector<std::uint32_t> acc;
    std::vector<std::uint16_t> out;
    FlatScratch(const RingContext& ctx, int k)
        : L(static_cast<std::size_t>(ctx.order) * ctx.order),
          acc(static_cast<std::size_t>(k) * k * ctx.order),
          out(static_cast<std::size_t>(k) * k * ctx.order) {}
};

std::vector<const std::uint16_t*> entry_ptrs(const MatGr& M) {
    std::vector<const std::uint16_t*> p(static_cast<std::size_t>(M.k()) * M.k());
    for (int i = 0; i < M.k(); i++)
        for (int j = 0; j < M.k(); j++)
            p[static_cast<std::size_t>(i) * M.k() + j] = M.at(i, j).coeffs().data();
    return p;
}

void check_same_shape(const MatGr& a, const MatGr& b) {
    if (!same_ring(a.ring(), b.ring())) throw std::invalid_argument("ring context mismatch");
    if (a.k() != b.k()) throw std::invalid_argument("matrix dimension mismatch");
}

}  // namespace

MatGr MatGr::identity(ContextPtr ctx, int k) {
    if (k < 1) throw std::invalid_argument("dimension must be at least 1");
    std::vector<GrElement> e;
    e.reserve(static_cast<std::size_t>(k) * k);
    for (int i = 0; i < k; i++)
        for (int j = 0; j < k; j++)
            e.push_back(i == j ? GrElement::one(ctx) : GrElement::zero(ctx));
    return MatGr(std::move(ctx), k, std::move(e));
}

MatGr MatGr::zero(ContextPtr ctx, int k) {
    if (k < 1) throw std::invalid_argument("dimension must be at least 1");
    std::vector<GrElement> e(static_cast<std::size_t>(k) * k, GrElement::zero(ctx));
    return MatGr(std::move(ctx), k, std::move(e));
}

MatGr MatGr::random(ContextPtr ctx, int k, Rng& rng) {
    if (k < 1) throw std::invalid_argument("dimension must be at least 1");
    std::vector<GrElement> e;
    e.reserve(static_cast<std::size_t>(k) * k);
    for (int i = 0; i < k * k; i++) e.push_back(GrElement::random(ctx, rng));
    return MatGr(std::move(ctx), k, std::move(e));
}

MatGr MatGr::from_entries(ContextPtr ctx, int k, std::vector<GrElement> row_major) {
    if (k < 1) throw std::invalid_argument("dimension must be at least 1");
    if (row_major.size() != static_cast<std::size_t>(k) * k)
        throw std::invalid_argument("entry count does not match dimension");
    for (const auto& e : row_major)
        if (!same_ring(e.ring(), *ctx)) throw std::invalid_argument("ring context mismatch");
    return MatGr(std::move(ctx), k, std::move(row_major));
}

MatGr operator*(const MatGr& a, const MatGr& b) {
    check_same_shape(a, b);
    const auto& ctx = a.ring();
    const int k = a.k_;
    if (fast_ok(ctx, k)) {
        FlatScratch s(ctx, k);
        auto ap = entry_ptrs(a), bp = entry_ptrs(b);
        matmul_fast(ctx, k, ap.data(), bp.data(), s.out.data(), s.L.data(), s.acc.data());
        std::vector<GrElement> e;
        e.reserve(static_cast<std::size_t>(k) * k);
        for (int x = 0; x < k * k; x++) {
            const std::uint16_t* p = s.out.data() + static_cast<std::size_t>(x) * ctx.order;
            e.push_back(MatGr::wrap(a.ctx_, std::vector<std::uint16_t>(p, p + ctx.order)));
        }
        return MatGr(a.ctx_, k, std::move(e));
    }
    std::vector<GrElement> e;
    e.reserve(static_cast<std::size_t>(k) * k);
    for (int i = 0; i < k; i++)
        for (int j = 0; j < k; j++) {
            GrElement s = a.at(i, 0) * b.at(0, j);
            for (int l = 1; l < k; l++) s = s + a.at(i, l) * b.at(l, j);
            e.push_back(std::move(s));
        }
    return MatGr(a.ctx_, k, std::move(e));
}

bool operator==(const MatGr& a, const MatGr& b) {
    if (!same_ring(a.ring(), b.ring()) || a.k_ != b.k_) return false;
    return a.e_ == b.e_;
}

MatGr MatGr::pow(const Exponent& e) const {
    std::uint64_t muls = 0;
    return pow_counted(e, muls);
}

MatGr MatGr::pow_counted(const Exponent& e, std::uint64_t& muls) const {
    muls = 0;
    if (e < 0) throw std::invalid_argument("negative exponent");
    if (e == 0) return identity(ctx_, k_);
    const unsigned bits = bit_length(e);
    // Left-to-right binary exponentiation. The multiply step computes
    // base * acc rather than acc * base — powers of one matrix commute — so
    // the constant left factor's regular representations can be prebuilt.
    const auto& ctx = *ctx_;
    if (fast_ok(ctx, k_)) {
        const std::uint32_t ord = ctx.order;
        const std::size_t block = static_cast<std::size_t>(ord) * ord;
        std::vector<std::uint16_t> baseReps(static_cast<std::size_t>(k_) * k_ * block);
        std::vector<const std::uint16_t*> basePtr(static_cast<std::size_t>(k_) * k_);
        auto bp = entry_ptrs(*this);
        for (int x = 0; x < k_ * k_; x++) {
            build_rep(ctx, bp[x], baseReps.data() + static_cast<std::size_t>(x) * block);
            basePtr[x] = baseReps.data() + static_cast<std::size_t>(x) * block;
        }
        FlatScratch s(ctx, k_);
        const std::size_t entries = static_cast<std::size_t>(k_) * k_ * ord;
        std::vector<std::uint16_t> cur(entries), nxt(entries);
        for (int x = 0; x < k_ * k_; x++)
            std::memcpy(cur.data() + static_cast<std::size_t>(x) * ord, bp[x],
                        ord * sizeof(std::uint16_t));
        auto ptrs_of = [&](std::vector<std::uint16_t>& v) {
            std::vector<const std::uint16_t*> p(static_cast<std::size_t>(k_) * k_);
            for (int x = 0; x < k_ * k_; x++) p[x] = v.data() + static_cast<std::size_t>(x) * ord;
            return p;
        };
        auto curPtr = ptrs_of(cur), nxtPtr = ptrs_of(nxt);
        for (int bit = static_cast<int>(bits) - 2; bit >= 0; bit--) {
            matmul_fast(ctx, k_, curPtr.data(), curPtr.data(), nxt.data(), s.L.data(),
                        s.acc.data());
            ++muls;
            cur.swap(nxt);
            std::swap(curPtr, nxtPtr);
            if (boost::multiprecision::bit_test(e, static_cast<unsigned>(bit))) {
                matmul_cached(ctx, k_, basePtr.data(), curPtr.data(), nxt.data(), s.acc.data());
                ++muls;
                cur.swap(nxt);
                std::swap(curPtr, nxtPtr);
            }
        }
        std::vector<GrElement> out;
        out.reserve(static_cast<std::size_t>(k_) * k_);
        for (int x = 0; x < k_ * k_; x++) {
            const std::uint16_t* p = cur.data() + static_cast<std::size_t>(x) * ord;
            out.push_back(MatGr::wrap(ctx_, std::vector<std::uint16_t>(p, p + ord)));
        }
        return MatGr(ctx_, k_, std::move(out));
    }
    MatGr acc = *this;
    for (int bit = static_cast<int>(bits) - 2; bit >= 0; bit--) {
        acc = acc * acc;
        ++muls;
        if (boost::multiprecision::bit_test(e, static_cast<unsigned>(bit))) {
            acc = *this * acc;
            ++muls;
        }
    }
    return acc;
}

std::pair<MatGr, MatGr> MatGr::random_invertible(ContextPtr ctx, int k, Rng& rng, int factors) {
    if (k < 1) throw std::invalid_argument("dimension must be at least 1");
    if (factors < 1) throw std::invalid_argument("factor count must be at least 1");

    auto triangular_factor = [&](bool upper) {
        // Unit diagonal: a single random permutation with coefficient 1.
        std::vector<Perm> diag;
        std::vector<GrElement> e(static_cast<std::size_t>(k) * k, GrElement::zero(ctx));
        for (int i = 0; i < k; i++) {
            diag.push_back(Perm::unrank(ctx->m, static_cast<std::uint32_t>(rng.below(ctx->order))));
            e[static_cast<std::size_t>(i) * k + i] = GrElement::embed(ctx, diag.back());
        }
        for (int i = 0; i < k; i++)
            for (int j = 0; j < k; j++)
                if (upper ? j > i : j < i)
                    e[static_cast<std::size_t>(i) * k + j] = GrElement::random(ctx, rng);
        MatGr T = from_entries(ctx, k, std::move(e));

        // Back-substitution against the unit diagonal: for upper triangular,
        // X_ii = d_i^-1 and X_ij = -d_i^-1 * sum_{l=i+1..j} T_il X_lj.
        MatGr X = zero(ctx, k);
        std::vector<GrElement> dinv;
        for (int i = 0; i < k; i++) dinv.push_back(GrElement::embed(ctx, diag[i].inverse()));
        if (upper) {
            for (int i = k - 1; i >= 0; i--) {
                X.at(i, i) = dinv[i];
                for (int j = i + 1; j < k; j++) {
                    GrElement s = GrElement::zero(ctx);
                    for (int l = i + 1; l <= j; l++) s = s + T.at(i, l) * X.at(l, j);
                    X.at(i, j) = -(dinv[i] * s);
                }
            }
        } else {
            for (int i = 0; i < k; i++) {
                X.at(i, i) = dinv[i];
                for (int j = i - 1; j >= 0; j--) {
                    GrElement s = GrElement::zero(ctx);
                    for (int l = j; l < i; l++) s = s + T.at(i, l) * X.at(l, j);
                    X.at(i, j) = -(dinv[i] * s);
                }
            }
        }
        return std::pair<MatGr, MatGr>(std::move(T), std::move(X));
    };

    MatGr M = identity(ctx, k), Minv = identity(ctx, k);
    bool first = true;
    for (int f = 0; f < factors; f++) {
        auto [T, Tinv] = triangular_factor(f % 2 == 0);
        if (first) {
            M = T;
            Minv = Tinv;
            first = false;
        } else {
            M = M * T;
            Minv = Tinv * Minv;
        }
    }
    return {std::move(M), std::move(Minv)};
}

MatGr MatGr::scalar_s(ContextPtr ctx, int k) {
    if (ctx->n != 7 || ctx->m != 5)
        throw std::invalid_argument("the scalar matrix s is defined over Z_7[S_5]");

    // The six order-5 subgroups of S_5, each taken by its lexicographically
    // smallest 5-cycle "(1 x y z w)". Iterating (x,y,z,w) in lexicographic
    // order and keeping first-seen subgroups yields exactly that list, already
    // sorted.
    std::vector<Perm> gens;
    std::vector<std::vector<std::uint32_t>> seen_subgroups;
    std::vector<int> pts = {2, 3, 4, 5};
    std::sort(pts.begin(), pts.end());
    do {
        std::vector<int> one(5);
        for (int i = 0; i < 5; i++) one[i] = i + 1;
        int cyc[5] = {1, pts[0], pts[1], pts[2], pts[3]};
        for (int i = 0; i < 5; i++) one[cyc[i] - 1] = cyc[(i + 1) % 5];
        Perm g = Perm::from_mapping(one);
        std::vector<std::uint32_t> key;
        Perm p = g;
        for (int i = 0; i < 4; i++) {
            key.push_back(p.rank());
            p = p * g;
        }
        std::sort(key.begin(), key.end());
        if (std::find(seen_subgroups.begin(), seen_subgroups.end(), key) == seen_subgroups.end()) {
            seen_subgroups.push_back(key);
            gens.push_back(g);
        }
    } while (std::next_permutation(pts.begin(), pts.end()));

    GrElement three = GrElement::one(ctx).scalar_mul(3);
    GrElement five = GrElement::one(ctx).scalar_mul(5);
    GrElement s = GrElement::one(ctx);
    for (const Perm& g : gens) s = s * (three + GrElement::embed(ctx, g));
    const Perm h = Perm::parse_cycles("(1 2)(3 4 5)", 5);
    s = s * (five + GrElement::embed(ctx, h));

    MatGr S = zero(ctx, k);
    for (int i = 0; i < k; i++) S.at(i, i) = s;
    return S;
}

std::size_t MatGr::encoded_bits(const RingContext& ctx, int k) {
    const unsigned w = std::bit_width(ctx.n - 1);
    return static_cast<std::size_t>(k) * k * ctx.order * w;
}

std::vector<std::uint8_t> MatGr::encode() const {
    const unsigned w = std::bit_width(ctx_->n - 1);
    const std::size_t bits = encoded_bits(*ctx_, k_);
    std::vector<std::uint8_t> out((bits + 7) / 8, 0);
    std::size_t pos = 0;
    for (const auto& entry : e_)
        for (std::uint32_t r = 0; r < ctx_->order; r++) {
            std::uint32_t v = entry.coeff(r);
            for (unsigned b = 0; b < w; b++, pos++)
                if (v & (1u << b)) out[pos >> 3] |= static_cast<std::uint8_t>(1u << (pos & 7));
        }
    return out;
}

MatGr MatGr::decode(const std::vector<std::uint8_t>& bytes, ContextPtr ctx, int k) {
    if (k < 1) throw std::invalid_argument("dimension must be at least 1");
    const unsigned w = std::bit_width(ctx->n - 1);
    const std::size_t bits = encoded_bits(*ctx, k);
    if (bytes.size() != (bits + 7) / 8)
        throw std::invalid_argument("payload length mismatch: expected " +
                                    std::to_string((bits + 7) / 8) + " bytes, got " +
                                    std::to_string(bytes.size()));
    // Padding bits must be zero: the encoding is canonical.
    for (std::size_t pos = bits; pos < bytes.size() * 8; pos++)
        if (bytes[pos >> 3] & (1u << (pos & 7)))
            throw std::invalid_argument("nonzero padding in matrix payload");
    std::vector<GrElement> e;
    e.reserve(static_cast<std::size_t>(k) * k);
    std::size_t pos = 0;
    for (int x = 0; x < k * k; x++) {
        GrElement g = GrElement::zero(ctx);
        for (std::uint32_t r = 0; r < ctx->order; r++) {
            std::uint32_t v = 0;
            for (unsigned b = 0; b < w; b++, pos++)
                if (bytes[pos >> 3] & (1u << (pos & 7))) v |= 1u << b;
            if (v >= ctx->n)
                throw std::invalid_argument("coefficient field exceeds modulus in payload");
            g.set_coeff(r, v);
        }
        e.push_back(std::move(g));
    }
    return MatGr(std::move(ctx), k, std::move(e));
}

bool FixedBasePow::supported(const RingContext& ctx, int k) { return fast_ok(ctx, k); }

FixedBasePow::FixedBasePow(const MatGr& base, unsigned max_bits)
    : ctx_(base.context()), k_(base.k()), max_bits_(max_bits) {
    if (max_bits_ == 0) max_bits_ = 1;
    if (!fast_ok(*ctx_, k_))
        throw std::invalid_argument("fixed-base tables require the fast kernel path");
    const std::uint32_t ord = ctx_->order;
    const std::size_t block = static_cast<std::size_t>(ord) * ord;
    const std::size_t per_level = static_cast<std::size_t>(k_) * k_ * block;
    if (per_level * max_bits_ * sizeof(std::uint16_t) > (std::size_t(1) << 28))
        throw std::invalid_argument("fixed-base table too large");

    FlatScratch s(*ctx_, k_);
    const std::size_t entries = static_cast<std::size_t>(k_) * k_ * ord;
    std::vector<std::uint16_t> cur(entries), nxt(entries);
    auto bp = entry_ptrs(base);
    for (int x = 0; x < k_ * k_; x++)
        std::memcpy(cur.data() + static_cast<std::size_t>(x) * ord, bp[x],
                    ord * sizeof(std::uint16_t));
    reps_.reserve(max_bits_);
    for (unsigned level = 0; level < max_bits_; level++) {
        std::vector<std::uint16_t> rep(per_level);
        for (int x = 0; x < k_ * k_; x++)
            build_rep(*ctx_, cur.data() + static_cast<std::size_t>(x) * ord,
                      rep.data() + static_cast<std::size_t>(x) * block);
        reps_.push_back(std::move(rep));
        if (level + 1 < max_bits_) {
            std::vector<const std::uint16_t*> cp(static_cast<std::size_t>(k_) * k_);
            for (int x = 0; x < k_ * k_; x++)
                cp[x] = cur.data() + static_cast<std::size_t>(x) * ord;
            matmul_fast(*ctx_, k_, cp.data(), cp.data(), nxt.data(), s.L.data(), s.acc.data());
            cur.swap(nxt);
        }
    }
}

MatGr FixedBasePow::pow(const Exponent& e) const {
    if (e < 0) throw std::invalid_argument("negative exponent");
    if (e == 0) return MatGr::identity(ctx_, k_);
    if (bit_length(e) > max_bits_)
        throw std::invalid_argument("exponent exceeds the fixed-base table size");
    const std::uint32_t ord = ctx_->order;
    const std::size_t block = static_cast<std::size_t>(ord) * ord;
    const std::size_t entries = static_cast<std::size_t>(k_) * k_ * ord;
    std::vector<std::uint32_t> acc(entries);
    std::vector<std::uint16_t> cur(entries), nxt(entries);
    bool have = false;
    for (unsigned bit = 0; bit < max_bits_; bit++) {
        if (!boost::multiprecision::bit_test(e, bit)) continue;
        std::vector<const std::uint16_t*> rep(static_cast<std::size_t>(k_) * k_);
        for (int x = 0; x < k_ * k_; x++)
            rep[x] = reps_[bit].data() + static_cast<std::size_t>(x) * block;
        if (!have) {
            // First set bit: materialize base^(2^bit) by applying its
            // representation to the identity column layout.
            MatGr I = MatGr::identity(ctx_, k_);
            auto ip = entry_ptrs(I);
            matmul_cached(*ctx_, k_, rep.data(), ip.data(), cur.data(), acc.data());
            have = true;
        } else {
            std::vector<const std::uint16_t*> cp(static_cast<std::size_t>(k_) * k_);
            for (int x = 0; x < k_ * k_; x++)
                cp[x] = cur.data() + static_cast<std::size_t>(x) * ord;
            matmul_cached(*ctx_, k_, rep.data(), cp.data(), nxt.data(), acc.data());
            cur.swap(nxt);
        }
    }
    std::vector<GrElement> out;
    out.reserve(static_cast<std::size_t>(k_) * k_);
    for (int x = 0; x < k_ * k_; x++) {
        const std::uint16_t* p = cur.data() + static_cast<std::size_t>(x) * ord;
        out.push_back(MatGr::wrap(ctx_, std::vector<std::uint16_t>(p, p + ord)));
    }
    return MatGr::from_entries(ctx_, k_, std::move(out));
}

}  // namespace grkex
