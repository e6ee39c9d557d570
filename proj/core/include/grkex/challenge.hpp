#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "grkex/matrix.hpp"

namespace grkex {

// The published challenge instance lives over Z_2[S_5] with 3x3 matrices.
ContextPtr challenge_context();
inline constexpr int kChallengeDim = 3;

// Text form: one assignment per entry, "a_{ij} = term + term + ...", indices
// 1-based; every entry of the k x k matrix must appear exactly once, in any
// order. A line whose last non-blank character is '+' continues on the next
// line. Blank lines are ignored. Terms follow the group ring element
// grammar, with the identity spelled ε, \epsilon, or e.
MatGr challenge_parse(std::string_view text, ContextPtr ctx, int k);

// Canonical form: entries row-major, one line each, terms in rank order
// separated by " + ", identity spelled "ε", zero entries spelled "0ε".
// Parsing canonical text reproduces the matrix byte for byte.
std::string challenge_format(const MatGr& M);

struct ChallengeTriple {
    MatGr base;   // M
    MatGr alice;  // first published power
    MatGr bob;    // second published power
    std::vector<std::string> warnings;
};

// Reads the three published matrices. Anomalies that do not prevent parsing
// (such as two files holding the same matrix) come back as warnings.
ChallengeTriple load_challenge(const std::string& m_path, const std::string& ma_path,
                               const std::string& mb_path);

}  // namespace grkex
