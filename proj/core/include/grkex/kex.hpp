#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "grkex/matrix.hpp"

namespace grkex {

// Base matrix M1 * S: a random invertible factor times the scalar
// zero-divisor matrix, so the base generates a large commutative power
// semigroup but is itself a zero divisor. Defined where scalar_s is
// (Z_7[S_5]).
MatGr structured_base(ContextPtr ctx, int k, Rng& rng);

// One side of the exchange. Both parties share the base M; a party holding
// secret a publishes M^a and combines the peer's M^b into (M^b)^a = M^(ab).
// Powers of a common base commute, so the two derivations agree.
class KexParty {
public:
    KexParty(MatGr base, Exponent secret);

    const MatGr& base() const { return base_; }
    const Exponent& secret() const { return secret_; }
    const MatGr& public_key() const { return public_; }

    MatGr shared_secret(const MatGr& peer_public) const;

private:
    MatGr base_;
    Exponent secret_;
    MatGr public_;
};

// "GRK1" container: 4-byte magic, then n, m, k as big-endian 16-bit fields,
// then the canonical matrix payload. Equal matrices serialize identically.
std::vector<std::uint8_t> key_serialize(const MatGr& M);
MatGr key_deserialize(const std::vector<std::uint8_t>& bytes);

// Lowercase hex armor for the container (decode accepts either case).
std::string hex_encode(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> hex_decode(std::string_view text);

// FNV-1a 64-bit fingerprint of the serialized container; a short transcript
// checksum, not a cryptographic hash.
std::uint64_t key_digest(const MatGr& M);

}  // namespace grkex
