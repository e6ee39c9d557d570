#pragma once

#include <cstdint>
#include <optional>

#include "grkex/matrix.hpp"

namespace grkex {

// Eventual-cycle shape of the power sequence A, A^2, A^3, ...: tail is the
// smallest e >= 1 with A^e inside the cycle, period the smallest p >= 1 with
// A^(e+p) = A^e. Cycle detection is Floyd's algorithm, so memory stays
// constant; the budget caps the number of matrix multiplications, and
// running out sets exhausted instead of failing.
struct OrbitResult {
    bool exhausted = false;
    std::uint64_t tail = 0;
    std::uint64_t period = 0;
    std::uint64_t muls = 0;
};

OrbitResult orbit_scan(const MatGr& A, std::uint64_t budget);

// Smallest t in [1, cap] with A^t = I, by incremental powers; empty when no
// such t exists below the cap (in particular for non-invertible A).
std::optional<std::uint64_t> order_of_invertible(const MatGr& A, std::uint64_t cap);

// Smallest x in [0, bound] with M^x = A, by incremental powers. The
// reference oracle for the meet-in-the-middle solver below.
std::optional<std::uint64_t> brute_dlog(const MatGr& M, const MatGr& A, std::uint64_t bound);

struct BsgsResult {
    std::optional<std::uint64_t> exponent;
    std::uint64_t entries_stored = 0;
    std::uint64_t muls = 0;
};

// Baby-step giant-step search for the smallest x in [0, bound] with
// M^x = A. Baby steps store A * M^i for i = 0..ceil(sqrt(bound)), keyed by
// the canonical encoding; giant steps scan M^(j*s). The semigroup has no
// cancellation, so every key hit only proposes a candidate x = j*s - i,
// which is verified with a direct power before being returned. Candidates
// appear in increasing order of x, so the first verified hit is the
// smallest. Throws when the baby table would exceed memory_cap entries.
BsgsResult bsgs_dlog(const MatGr& M, const MatGr& A, std::uint64_t bound,
                     std::uint64_t memory_cap = 1u << 22);

}  // namespace grkex
