#include "grkex/kex.hpp"

#include <stdexcept>

namespace grkex {

namespace {

Exponent checked_secret(Exponent e) {
    if (e < 1) throw std::invalid_argument("secret exponent must be positive");
    return e;
}

void put_u16(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

std::uint32_t get_u16(const std::vector<std::uint8_t>& in, std::size_t at) {
    return (static_cast<std::uint32_t>(in[at]) << 8) | in[at + 1];
}

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

MatGr structured_base(ContextPtr ctx, int k, Rng& rng) {
    auto [m1, m1_inv] = MatGr::random_invertible(ctx, k, rng);
    (void)m1_inv;
    return m1 * MatGr::scalar_s(ctx, k);
}

KexParty::KexParty(MatGr base, Exponent secret)
    : base_(std::move(base)),
      secret_(checked_secret(std::move(secret))),
      public_(base_.pow(secret_)) {}

MatGr KexParty::shared_secret(const MatGr& peer_public) const {
    if (!same_ring(peer_public.ring(), base_.ring()) || peer_public.k() != base_.k())
        throw std::invalid_argument("peer key does not match the session parameters");
    return peer_public.pow(secret_);
}

std::vector<std::uint8_t> key_serialize(const MatGr& M) {
    std::vector<std::uint8_t> out = {'G', 'R', 'K', '1'};
    put_u16(out, M.ring().n);
    put_u16(out, static_cast<std::uint32_t>(M.ring().m));
    put_u16(out, static_cast<std::uint32_t>(M.k()));
    auto payload = M.encode();
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

MatGr key_deserialize(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 10 || bytes[0] != 'G' || bytes[1] != 'R' || bytes[2] != 'K' ||
        bytes[3] != '1')
        throw std::invalid_argument("not a GRK1 key container");
    const std::uint32_t n = get_u16(bytes, 4);
    const std::uint32_t m = get_u16(bytes, 6);
    const std::uint32_t k = get_u16(bytes, 8);
    if (m == 0 || m > static_cast<std::uint32_t>(kMaxDegree))
        throw std::invalid_argument("unsupported degree in key header");
    if (k == 0) throw std::invalid_argument("zero dimension in key header");
    ContextPtr ctx = make_context(n, static_cast<int>(m));
    return MatGr::decode(std::vector<std::uint8_t>(bytes.begin() + 10, bytes.end()), ctx,
                         static_cast<int>(k));
}

std::string hex_encode(const std::vector<std::uint8_t>& bytes) {
    static const char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

std::vector<std::uint8_t> hex_decode(std::string_view text) {
    if (text.size() % 2 != 0) throw std::invalid_argument("odd-length hex string");
    std::vector<std::uint8_t> out;
    out.reserve(text.size() / 2);
    for (std::size_t i = 0; i < text.size(); i += 2) {
        int hi = hex_nibble(text[i]), lo = hex_nibble(text[i + 1]);
        if (hi < 0 || lo < 0) throw std::invalid_argument("invalid hex digit");
        out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
    }
    return out;
}

std::uint64_t key_digest(const MatGr& M) {
    std::uint64_t h = 14695981039346656037ull;
    for (std::uint8_t b : key_serialize(M)) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace grkex
