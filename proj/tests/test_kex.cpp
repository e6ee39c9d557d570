#include <doctest.h>

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "grkex/kex.hpp"

using namespace grkex;

namespace {

// FNV-1a 64, written out independently of the library.
std::uint64_t fnv1a(const std::vector<std::uint8_t>& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (std::uint8_t b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

TEST_CASE("both parties derive the same secret") {
    ContextPtr ctx = make_context(7, 5);
    Rng rng(401);
    for (int k = 2; k <= 3; k++) {
        MatGr base = MatGr::random(ctx, k, rng);
        Exponent a = uniform_exponent(rng, pow10(22), pow10(28));
        Exponent b = uniform_exponent(rng, pow10(22), pow10(28));
        KexParty alice(base, a);
        KexParty bob(base, b);
        CHECK(alice.public_key() == base.pow(a));
        MatGr sa = alice.shared_secret(bob.public_key());
        MatGr sb = bob.shared_secret(alice.public_key());
        CHECK(sa == sb);
        CHECK(sa == base.pow(a * b));
        CHECK(sa.encode() == sb.encode());
    }
}

TEST_CASE("the structured base is a zero divisor") {
    ContextPtr ctx = make_context(7, 5);
    Rng rng(402);
    MatGr base = structured_base(ctx, 2, rng);
    // Annihilated on the right by diag(t), t the certificate for scalar s.
    Perm h = Perm::parse_cycles("(12)(345)", 5);
    GrElement t = GrElement::zero(ctx);
    Perm hi = Perm::identity(5);
    std::uint32_t pw = 32;
    for (int i = 0; i <= 5; i++) {
        t = t + GrElement::embed(ctx, hi).scalar_mul(pw % 7);
        hi = h * hi;
        pw /= 2;
    }
    MatGr T = MatGr::from_entries(ctx, 2, {t, GrElement::zero(ctx), GrElement::zero(ctx), t});
    CHECK(base * T == MatGr::zero(ctx, 2));
    CHECK_FALSE(base == MatGr::zero(ctx, 2));
}

TEST_CASE("parties reject degenerate secrets and foreign peers") {
    ContextPtr ctx = make_context(7, 5);
    Rng rng(403);
    MatGr base = MatGr::random(ctx, 2, rng);
    CHECK_THROWS_AS(KexParty(base, Exponent(0)), std::invalid_argument);
    KexParty alice(base, Exponent(12345));
    MatGr other_k = MatGr::random(ctx, 3, rng);
    CHECK_THROWS_AS(alice.shared_secret(other_k), std::invalid_argument);
    MatGr other_ring = MatGr::random(make_context(5, 5), 2, rng);
    CHECK_THROWS_AS(alice.shared_secret(other_ring), std::invalid_argument);
}

TEST_CASE("the key container round-trips with a fixed layout") {
    // Z_7[S_2], k = 1, coefficients [3, 5]: magic, three big-endian u16
    // header fields, then the 0x2b payload byte.
    ContextPtr ctx = make_context(7, 2);
    GrElement x = GrElement::zero(ctx);
    x.set_coeff(0, 3);
    x.set_coeff(1, 5);
    MatGr M = MatGr::from_entries(ctx, 1, {x});
    const std::vector<std::uint8_t> expect = {'G', 'R', 'K', '1', 0, 7, 0, 2, 0, 1, 0x2b};
    CHECK(key_serialize(M) == expect);
    CHECK(key_deserialize(expect) == M);
    CHECK(key_digest(M) == fnv1a(expect));

    Rng rng(404);
    MatGr R = MatGr::random(make_context(7, 5), 3, rng);
    CHECK(key_serialize(R).size() == 415);
    CHECK(key_deserialize(key_serialize(R)) == R);
}

TEST_CASE("damaged containers are rejected") {
    ContextPtr ctx = make_context(7, 5);
    Rng rng(405);
    auto bytes = key_serialize(MatGr::random(ctx, 2, rng));
    auto bad_magic = bytes;
    bad_magic[3] = '2';
    CHECK_THROWS_AS(key_deserialize(bad_magic), std::invalid_argument);
    auto truncated = bytes;
    truncated.pop_back();
    CHECK_THROWS_AS(key_deserialize(truncated), std::invalid_argument);
    CHECK_THROWS_AS(key_deserialize({'G', 'R', 'K', '1'}), std::invalid_argument);
    auto zero_k = bytes;
    zero_k[8] = zero_k[9] = 0;
    CHECK_THROWS_AS(key_deserialize(zero_k), std::invalid_argument);
}

TEST_CASE("hex armor round-trips") {
    CHECK(hex_encode({0x00, 0xab, 0x1f}) == "00ab1f");
    CHECK(hex_decode("00ab1f") == std::vector<std::uint8_t>{0x00, 0xab, 0x1f});
    CHECK(hex_decode("00AB1F") == std::vector<std::uint8_t>{0x00, 0xab, 0x1f});
    CHECK(hex_decode("").empty());
    CHECK_THROWS_AS(hex_decode("abc"), std::invalid_argument);
    CHECK_THROWS_AS(hex_decode("zz"), std::invalid_argument);
    Rng rng(406);
    auto bytes = key_serialize(MatGr::random(make_context(7, 5), 2, rng));
    CHECK(hex_decode(hex_encode(bytes)) == bytes);
}

TEST_CASE("digests separate distinct keys") {
    ContextPtr ctx = make_context(7, 5);
    Rng rng(407);
    MatGr A = MatGr::random(ctx, 2, rng);
    MatGr B = MatGr::random(ctx, 2, rng);
    CHECK(key_digest(A) == key_digest(A));
    CHECK(key_digest(A) != key_digest(B));
}
