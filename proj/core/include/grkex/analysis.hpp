#pragma once

#include <cstdint>
#include <vector>

#include "grkex/matrix.hpp"

namespace grkex {

struct ChiSquare {
    double statistic;
    unsigned dof;
    double p;  // upper-tail probability
};

// Pearson test of the observed counts against the uniform expectation over
// all cells; dof = cells - 1. The usual validity rule of thumb (expected
// count per cell >= 5) is the caller's responsibility.
ChiSquare chi_square_uniform(const std::vector<std::uint64_t>& counts);

// Residue tally over trials: one cell per (matrix entry, group element,
// residue), so each (entry, element) row is a multinomial over Z_n. Under
// the uniformity hypothesis every cell expects trials/n.
class FreqTable {
public:
    FreqTable(ContextPtr ctx, int k);

    void tally(const MatGr& M);

    const RingContext& ring() const { return *ctx_; }
    int k() const { return k_; }
    std::uint64_t trials() const { return trials_; }
    // Flattened ((i*k + j) * order + element) * n + residue.
    const std::vector<std::uint64_t>& counts() const { return counts_; }
    // One entry's (element, residue) block, order * n values.
    std::vector<std::uint64_t> entry_slice(int i, int j) const;

private:
    ContextPtr ctx_;
    int k_;
    std::uint64_t trials_ = 0;
    std::vector<std::uint64_t> counts_;
};

// Joint tally for triples (A, B, AB) = (M^a, M^b, M^ab): one cell per
// (entry, element, residue triple), the triple index being
// r_A * n^2 + r_B * n + r_AB.
class TripleTable {
public:
    TripleTable(ContextPtr ctx, int k);

    void tally(const MatGr& A, const MatGr& B, const MatGr& AB);

    const RingContext& ring() const { return *ctx_; }
    int k() const { return k_; }
    std::uint64_t trials() const { return trials_; }
    // Flattened ((i*k + j) * order + element) * n^3 + triple.
    const std::vector<std::uint64_t>& counts() const { return counts_; }
    // The n^3 triple distribution summed over (entry, element).
    std::vector<std::uint64_t> aggregate() const;

private:
    ContextPtr ctx_;
    int k_;
    std::uint64_t trials_ = 0;
    std::vector<std::uint64_t> counts_;
};

// Quantile-quantile pairing of two tables: per matrix entry, both tables'
// (element, residue) count blocks are sorted and matched index-wise, then
// entries are concatenated. Identically distributed tables track y = x.
struct QqPoint {
    double x, y;
};
std::vector<QqPoint> qq_pairs(const FreqTable& a, const FreqTable& b);
// max |x - y| / (trials / n) over the pairs: the largest quantile gap in
// units of the expected cell count.
double qq_max_deviation(const FreqTable& a, const FreqTable& b);

// Experiment drivers. Trial t draws everything it needs from
// Rng::fork(seed, t) (the fixed base of the triple experiment uses stream 0
// and trials start at stream 1), so results do not depend on scheduling.
struct DdhConfig {
    std::uint32_t n = 7;
    int m = 5;
    int k = 3;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;
    Exponent a_lo, a_hi;  // range for a and b
    Exponent c_lo, c_hi;  // range for the independent exponent c (pair experiment 1)
};

struct PairResult {
    FreqTable left, right;
};

// Fresh M per trial; left tallies M^(ab), right tallies M^c.
PairResult ddh_exp1(const DdhConfig& cfg);
// Fresh M and N per trial; left tallies M^a, right tallies N itself.
PairResult ddh_exp2(const DdhConfig& cfg);
// One fixed M; per trial draws a, b and tallies (M^a, M^b, M^ab).
TripleTable ddh_exp3(const DdhConfig& cfg);

// Probability that a uniform element's support size lies in [lo, hi]:
// exactly (support is Binomial(m!, (n-1)/n)) and by sampling.
double support_probability_exact(const RingContext& ctx, std::uint32_t lo, std::uint32_t hi);
double support_probability_mc(ContextPtr ctx, std::uint32_t lo, std::uint32_t hi,
                              std::uint64_t reps, std::uint64_t seed);

}  // namespace grkex
