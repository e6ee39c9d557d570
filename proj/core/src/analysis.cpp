#include "grkex/analysis.hpp"

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>

namespace grkex {

ChiSquare chi_square_uniform(const std::vector<std::uint64_t>& counts) {
    if (counts.size() < 2) throw std::invalid_argument("need at least two cells");
    const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t(0));
    if (total == 0) throw std::invalid_argument("empty table");
    const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
    double stat = 0.0;
    for (std::uint64_t c : counts) {
        const double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
    }
    const unsigned dof = static_cast<unsigned>(counts.size() - 1);
    boost::math::chi_squared_distribution<double> dist(dof);
    const double p = boost::math::cdf(boost::math::complement(dist, stat));
    return {stat, dof, p};
}

FreqTable::FreqTable(ContextPtr ctx, int k) : ctx_(std::move(ctx)), k_(k) {
    if (k_ < 1) throw std::invalid_argument("dimension must be at least 1");
    counts_.assign(static_cast<std::size_t>(k_) * k_ * ctx_->order * ctx_->n, 0);
}

void FreqTable::tally(const MatGr& M) {
    if (!same_ring(M.ring(), *ctx_) || M.k() != k_)
        throw std::invalid_argument("matrix does not match the table shape");
    const std::uint32_t ord = ctx_->order, n = ctx_->n;
    for (int i = 0; i < k_; i++)
        for (int j = 0; j < k_; j++) {
            const auto& c = M.at(i, j).coeffs();
            std::uint64_t* row =
                counts_.data() +
                (static_cast<std::size_t>(i) * k_ + j) * ord * n;
            for (std::uint32_t e = 0; e < ord; e++) row[static_cast<std::size_t>(e) * n + c[e]]++;
        }
    trials_++;
}

std::vector<std::uint64_t> FreqTable::entry_slice(int i, int j) const {
    const std::size_t block = static_cast<std::size_t>(ctx_->order) * ctx_->n;
    const std::size_t at = (static_cast<std::size_t>(i) * k_ + j) * block;
    return std::vector<std::uint64_t>(counts_.begin() + at, counts_.begin() + at + block);
}

TripleTable::TripleTable(ContextPtr ctx, int k) : ctx_(std::move(ctx)), k_(k) {
    if (k_ < 1) throw std::invalid_argument("dimension must be at least 1");
    const std::uint64_t n3 = static_cast<std::uint64_t>(ctx_->n) * ctx_->n * ctx_->n;
    counts_.assign(static_cast<std::size_t>(k_) * k_ * ctx_->order * n3, 0);
}

void TripleTable::tally(const MatGr& A, const MatGr& B, const MatGr& AB) {
    for (const MatGr* M : {&A, &B, &AB})
        if (!same_ring(M->ring(), *ctx_) || M->k() != k_)
            throw std::invalid_argument("matrix does not match the table shape");
    const std::uint32_t ord = ctx_->order, n = ctx_->n;
    const std::size_t n3 = static_cast<std::size_t>(n) * n * n;
    for (int i = 0; i < k_; i++)
        for (int j = 0; j < k_; j++) {
            const auto& ca = A.at(i, j).coeffs();
            const auto& cb = B.at(i, j).coeffs();
            const auto& cab = AB.at(i, j).coeffs();
            std::uint64_t* row =
                counts_.data() + (static_cast<std::size_t>(i) * k_ + j) * ord * n3;
            for (std::uint32_t e = 0; e < ord; e++) {
                const std::size_t triple = static_cast<std::size_t>(ca[e]) * n * n +
                                           static_cast<std::size_t>(cb[e]) * n + cab[e];
                row[static_cast<std::size_t>(e) * n3 + triple]++;
            }
        }
    trials_++;
}

std::vector<std::uint64_t> TripleTable::aggregate() const {
    const std::size_t n3 = static_cast<std::size_t>(ctx_->n) * ctx_->n * ctx_->n;
    std::vector<std::uint64_t> agg(n3, 0);
    for (std::size_t at = 0; at < counts_.size(); at += n3)
        for (std::size_t t = 0; t < n3; t++) agg[t] += counts_[at + t];
    return agg;
}

std::vector<QqPoint> qq_pairs(const FreqTable& a, const FreqTable& b) {
    if (!same_ring(a.ring(), b.ring()) || a.k() != b.k())
        throw std::invalid_argument("tables have different shapes");
    std::vector<QqPoint> out;
    out.reserve(a.counts().size());
    for (int i = 0; i < a.k(); i++)
        for (int j = 0; j < a.k(); j++) {
            auto xs = a.entry_slice(i, j);
            auto ys = b.entry_slice(i, j);
            std::sort(xs.begin(), xs.end());
            std::sort(ys.begin(), ys.end());
            for (std::size_t t = 0; t < xs.size(); t++)
                out.push_back({static_cast<double>(xs[t]), static_cast<double>(ys[t])});
        }
    return out;
}

double qq_max_deviation(const FreqTable& a, const FreqTable& b) {
    if (a.trials() == 0 || b.trials() == 0) throw std::invalid_argument("empty table");
    const double expected = static_cast<double>(a.trials()) / a.ring().n;
    double worst = 0.0;
    for (const QqPoint& pt : qq_pairs(a, b))
        worst = std::max(worst, std::abs(pt.x - pt.y) / expected);
    return worst;
}

namespace {

void check_config(const DdhConfig& cfg, bool needs_c) {
    if (cfg.trials == 0) throw std::invalid_argument("need at least one trial");
    if (cfg.a_lo < 0 || cfg.a_lo > cfg.a_hi) throw std::invalid_argument("bad exponent range");
    if (needs_c && (cfg.c_lo < 0 || cfg.c_lo > cfg.c_hi))
        throw std::invalid_argument("bad exponent range");
}

}  // namespace

PairResult ddh_exp1(const DdhConfig& cfg) {
    check_config(cfg, true);
    ContextPtr ctx = make_context(cfg.n, cfg.m);
    FreqTable left(ctx, cfg.k), right(ctx, cfg.k);
    for (std::uint64_t t = 0; t < cfg.trials; t++) {
        Rng rng = Rng::fork(cfg.seed, t);
        MatGr M = MatGr::random(ctx, cfg.k, rng);
        Exponent a = uniform_exponent(rng, cfg.a_lo, cfg.a_hi);
        Exponent b = uniform_exponent(rng, cfg.a_lo, cfg.a_hi);
        Exponent c = uniform_exponent(rng, cfg.c_lo, cfg.c_hi);
        left.tally(M.pow(a * b));
        right.tally(M.pow(c));
    }
    return {std::move(left), std::move(right)};
}

PairResult ddh_exp2(const DdhConfig& cfg) {
    check_config(cfg, false);
    ContextPtr ctx = make_context(cfg.n, cfg.m);
    FreqTable left(ctx, cfg.k), right(ctx, cfg.k);
    for (std::uint64_t t = 0; t < cfg.trials; t++) {
        Rng rng = Rng::fork(cfg.seed, t);
        MatGr M = MatGr::random(ctx, cfg.k, rng);
        MatGr N = MatGr::random(ctx, cfg.k, rng);
        Exponent a = uniform_exponent(rng, cfg.a_lo, cfg.a_hi);
        left.tally(M.pow(a));
        right.tally(N);
    }
    return {std::move(left), std::move(right)};
}

TripleTable ddh_exp3(const DdhConfig& cfg) {
    check_config(cfg, false);
    ContextPtr ctx = make_context(cfg.n, cfg.m);
    Rng base_rng = Rng::fork(cfg.seed, 0);
    MatGr M = MatGr::random(ctx, cfg.k, base_rng);
    TripleTable table(ctx, cfg.k);

    const bool accel = FixedBasePow::supported(*ctx, cfg.k);
    // a*b needs at most bits(a_hi) + bits(a_hi) set-bit levels.
    std::unique_ptr<FixedBasePow> fb;
    if (accel) fb = std::make_unique<FixedBasePow>(M, 2 * bit_length(cfg.a_hi));
    auto power = [&](const Exponent& e) { return accel ? fb->pow(e) : M.pow(e); };

    // When the sampling pool is small, single-exponent powers repeat often
    // enough that a lookup beats recomputing them. Products a*b spread over
    // a much larger set, so they are always computed directly.
    const bool memoize = cfg.a_hi - cfg.a_lo < (Exponent(1) << 20);
    std::map<Exponent, MatGr> memo;
    auto single_power = [&](const Exponent& e) {
        if (!memoize) return power(e);
        auto it = memo.find(e);
        if (it == memo.end()) it = memo.emplace(e, power(e)).first;
        return it->second;
    };

    for (std::uint64_t t = 0; t < cfg.trials; t++) {
        Rng rng = Rng::fork(cfg.seed, t + 1);
        Exponent a = uniform_exponent(rng, cfg.a_lo, cfg.a_hi);
        Exponent b = uniform_exponent(rng, cfg.a_lo, cfg.a_hi);
        table.tally(single_power(a), single_power(b), power(a * b));
    }
    return table;
}

double support_probability_exact(const RingContext& ctx, std::uint32_t lo, std::uint32_t hi) {
    if (lo > hi || hi > ctx.order) throw std::invalid_argument("bad support range");
    boost::math::binomial_distribution<double> dist(
        static_cast<double>(ctx.order), static_cast<double>(ctx.n - 1) / ctx.n);
    const double upper = boost::math::cdf(dist, hi);
    const double lower = lo == 0 ? 0.0 : boost::math::cdf(dist, lo - 1);
    return upper - lower;
}

double support_probability_mc(ContextPtr ctx, std::uint32_t lo, std::uint32_t hi,
                              std::uint64_t reps, std::uint64_t seed) {
    if (lo > hi || hi > ctx->order) throw std::invalid_argument("bad support range");
    if (reps == 0) throw std::invalid_argument("need at least one draw");
    Rng rng(seed);
    std::uint64_t hits = 0;
    for (std::uint64_t r = 0; r < reps; r++) {
        const std::uint32_t s = GrElement::random(ctx, rng).support_size();
        if (lo <= s && s <= hi) hits++;
    }
    return static_cast<double>(hits) / static_cast<double>(reps);
}

}  // namespace grkex
