#include "grkex/group_ring.hpp"

#include <cctype>
#include <stdexcept>

namespace grkex {

namespace {

void check_ring_params(std::uint32_t n, int m) {
    if (n < 2 || n > RingContext::kMaxModulus)
        throw std::invalid_argument("coefficient modulus must be in 2.." +
                                    std::to_string(RingContext::kMaxModulus));
    if (m < 1 || m > kMaxDegree)
        throw std::invalid_argument("degree must be in 1.." + std::to_string(kMaxDegree));
}

}  // namespace

ContextPtr make_context(std::uint32_t n, int m) {
    check_ring_params(n, m);
    auto ctx = std::shared_ptr<RingContext>(new RingContext());
    ctx->n = n;
    ctx->m = m;
    ctx->order = kFactorial[m];
    if (m <= MultTable::kTableDegreeCap) {
        ctx->table_ = MultTable::build(m);
        ctx->sign_.assign(ctx->table_.sign.begin(), ctx->table_.sign.end());
        const auto& t = ctx->table_;
        ctx->left_index_.resize(static_cast<std::size_t>(ctx->order) * ctx->order);
        for (std::uint32_t i = 0; i < ctx->order; i++)
            for (std::uint32_t k = 0; k < ctx->order; k++)
                ctx->left_index_[static_cast<std::size_t>(i) * ctx->order + k] =
                    t.mul[static_cast<std::size_t>(i) * ctx->order + t.inv[k]];
    } else {
        ctx->sign_.resize(ctx->order);
        for (std::uint32_t i = 0; i < ctx->order; i++)
            ctx->sign_[i] = static_cast<std::int8_t>(Perm::unrank(m, i).sign());
    }
    return ctx;
}

ContextPtr make_context_tableless(std::uint32_t n, int m) {
    check_ring_params(n, m);
    auto ctx = std::shared_ptr<RingContext>(new RingContext());
    ctx->n = n;
    ctx->m = m;
    ctx->order = kFactorial[m];
    ctx->sign_.resize(ctx->order);
    for (std::uint32_t i = 0; i < ctx->order; i++)
        ctx->sign_[i] = static_cast<std::int8_t>(Perm::unrank(m, i).sign());
    return ctx;
}

GrElement GrElement::zero(ContextPtr ctx) {
    std::vector<std::uint16_t> c(ctx->order, 0);
    return GrElement(std::move(ctx), std::move(c));
}

GrElement GrElement::one(ContextPtr ctx) {
    std::vector<std::uint16_t> c(ctx->order, 0);
    c[0] = 1;  // rank 0 is the identity
    return GrElement(std::move(ctx), std::move(c));
}

GrElement GrElement::embed(ContextPtr ctx, const Perm& g) {
    if (g.degree() != ctx->m) throw std::invalid_argument("degree mismatch");
    std::vector<std::uint16_t> c(ctx->order, 0);
    c[g.rank()] = 1;
    return GrElement(std::move(ctx), std::move(c));
}

GrElement GrElement::random(ContextPtr ctx, Rng& rng) {
    std::vector<std::uint16_t> c(ctx->order);
    const std::uint32_t n = ctx->n;
    for (auto& x : c) x = static_cast<std::uint16_t>(rng.residue(n));
    return GrElement(std::move(ctx), std::move(c));
}

void GrElement::set_coeff(std::uint32_t rank, std::uint32_t value) {
    if (rank >= ctx_->order) throw std::out_of_range("rank out of range");
    if (value >= ctx_->n) throw std::invalid_argument("coefficient not reduced mod n");
    c_[rank] = static_cast<std::uint16_t>(value);
}

std::uint32_t GrElement::support_size() const {
    std::uint32_t s = 0;
    for (auto x : c_) s += x != 0;
    return s;
}

std::pair<std::uint32_t, std::uint32_t> GrElement::sign_image() const {
    std::uint64_t even = 0, odd = 0;
    for (std::uint32_t i = 0; i < ctx_->order; i++)
        (ctx_->sign_of(i) > 0 ? even : odd) += c_[i];
    return {static_cast<std::uint32_t>(even % ctx_->n),
            static_cast<std::uint32_t>(odd % ctx_->n)};
}

GrElement GrElement::scalar_mul(std::uint32_t c) const {
    if (c >= ctx_->n) throw std::invalid_argument("scalar not reduced mod n");
    std::vector<std::uint16_t> out(ctx_->order);
    for (std::uint32_t i = 0; i < ctx_->order; i++)
        out[i] = static_cast<std::uint16_t>((static_cast<std::uint64_t>(c_[i]) * c) % ctx_->n);
    return GrElement(ctx_, std::move(out));
}

GrElement operator+(const GrElement& x, const GrElement& y) {
    if (!same_ring(*x.ctx_, *y.ctx_)) throw std::invalid_argument("ring context mismatch");
    std::vector<std::uint16_t> out(x.c_.size());
    const std::uint32_t n = x.ctx_->n;
    for (std::size_t i = 0; i < out.size(); i++) {
        std::uint32_t s = static_cast<std::uint32_t>(x.c_[i]) + y.c_[i];
        out[i] = static_cast<std::uint16_t>(s >= n ? s - n : s);
    }
    return GrElement(x.ctx_, std::move(out));
}

GrElement operator-(const GrElement& x) {
    std::vector<std::uint16_t> out(x.c_.size());
    const std::uint32_t n = x.ctx_->n;
    for (std::size_t i = 0; i < out.size(); i++)
        out[i] = static_cast<std::uint16_t>(x.c_[i] == 0 ? 0 : n - x.c_[i]);
    return GrElement(x.ctx_, std::move(out));
}

GrElement operator-(const GrElement& x, const GrElement& y) { return x + (-y); }

GrElement operator*(const GrElement& x, const GrElement& y) {
    if (!same_ring(*x.ctx_, *y.ctx_)) throw std::invalid_argument("ring context mismatch");
    const auto& ctx = *x.ctx_;
    const std::uint32_t ord = ctx.order;
    // Scatter over nonzero coefficient pairs into an unreduced accumulator;
    // ord * (n-1)^2 stays below 2^64 for every supported (n, m).
    std::vector<std::uint64_t> acc(ord, 0);
    if (ctx.has_table()) {
        const auto& mul = ctx.table().mul;
        for (std::uint32_t j = 0; j < ord; j++) {
            const std::uint64_t xj = x.c_[j];
            if (!xj) continue;
            const std::uint16_t* row = &mul[static_cast<std::size_t>(j) * ord];
            for (std::uint32_t k = 0; k < ord; k++)
                if (y.c_[k]) acc[row[k]] += xj * y.c_[k];
        }
    } else {
        for (std::uint32_t j = 0; j < ord; j++) {
            const std::uint64_t xj = x.c_[j];
            if (!xj) continue;
            const Perm pj = Perm::unrank(ctx.m, j);
            for (std::uint32_t k = 0; k < ord; k++) {
                if (!y.c_[k]) continue;
                acc[(pj * Perm::unrank(ctx.m, k)).rank()] += xj * y.c_[k];
            }
        }
    }
    std::vector<std::uint16_t> out(ord);
    for (std::uint32_t i = 0; i < ord; i++)
        out[i] = static_cast<std::uint16_t>(acc[i] % ctx.n);
    return GrElement(x.ctx_, std::move(out));
}

GrElement GrElement::parse(std::string_view text, ContextPtr ctx) {
    std::vector<std::uint16_t> c(ctx->order, 0);
    const std::uint32_t n = ctx->n;
    std::size_t pos = 0;
    auto skip_ws = [&] { while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos; };

    bool any_term = false;
    for (;;) {
        skip_ws();
        if (pos >= text.size()) break;
        if (any_term) {
            if (text[pos] != '+') throw std::invalid_argument("expected '+' between terms");
            ++pos;
            skip_ws();
        }
        // Optional decimal coefficient; "(..." and identity spellings carry
        // an implicit 1.
        std::uint64_t coeff = 1;
        if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            coeff = 0;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                coeff = coeff * 10 + static_cast<std::uint64_t>(text[pos] - '0');
                if (coeff > RingContext::kMaxModulus)
                    throw std::invalid_argument("coefficient not reduced mod " + std::to_string(n));
                ++pos;
            }
            if (coeff >= n)
                throw std::invalid_argument("coefficient " + std::to_string(coeff) +
                                            " not reduced mod " + std::to_string(n));
        }
        // The permutation part runs to the next '+' outside parentheses.
        std::size_t start = pos;
        int depth = 0;
        while (pos < text.size()) {
            char ch = text[pos];
            if (ch == '(') ++depth;
            else if (ch == ')') --depth;
            else if (ch == '+' && depth == 0) break;
            ++pos;
        }
        std::string_view part = text.substr(start, pos - start);
        std::size_t end = part.size();
        while (end > 0 && std::isspace(static_cast<unsigned char>(part[end - 1]))) --end;
        part = part.substr(0, end);
        if (part.empty()) throw std::invalid_argument("term without a permutation");
        const std::uint32_t r = Perm::parse_cycles(part, ctx->m).rank();
        c[r] = static_cast<std::uint16_t>((c[r] + coeff) % n);
        any_term = true;
    }
    if (!any_term) throw std::invalid_argument("empty group-ring expression");
    return GrElement(std::move(ctx), std::move(c));
}

std::string GrElement::to_string() const {
    std::string out;
    for (std::uint32_t i = 0; i < ctx_->order; i++) {
        if (!c_[i]) continue;
        if (!out.empty()) out += '+';
        if (c_[i] != 1) out += std::to_string(c_[i]);
        out += Perm::unrank(ctx_->m, i).format_cycles();
    }
    return out.empty() ? "0e" : out;
}

}  // namespace grkex
