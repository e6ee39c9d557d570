#include "grkex/orbit.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace grkex {

namespace {

void check_pair(const MatGr& M, const MatGr& A) {
    if (!same_ring(M.ring(), A.ring()) || M.k() != A.k())
        throw std::invalid_argument("matrices live in different semigroups");
}

}  // namespace

OrbitResult orbit_scan(const MatGr& A, std::uint64_t budget) {
    OrbitResult res;
    auto advance = [&](MatGr& X) {
        if (res.muls >= budget) {
            res.exhausted = true;
            return false;
        }
        X = X * A;
        res.muls++;
        return true;
    };

    MatGr tort = A, hare = A;
    if (!advance(tort)) return res;
    if (!advance(hare) || !advance(hare)) return res;
    while (tort != hare) {
        if (!advance(tort)) return res;
        if (!advance(hare) || !advance(hare)) return res;
    }

    MatGr probe = A;
    std::uint64_t mu = 0;
    while (probe != hare) {
        if (!advance(probe)) return res;
        if (!advance(hare)) return res;
        mu++;
    }

    std::uint64_t lam = 1;
    MatGr walker = probe;
    if (!advance(walker)) return res;
    while (walker != probe) {
        if (!advance(walker)) return res;
        lam++;
    }

    res.tail = mu + 1;  // probe sits at A^(mu+1), the first recurring power
    res.period = lam;
    return res;
}

std::optional<std::uint64_t> order_of_invertible(const MatGr& A, std::uint64_t cap) {
    const MatGr I = MatGr::identity(A.context(), A.k());
    MatGr P = A;
    for (std::uint64_t t = 1; t <= cap; t++) {
        if (P == I) return t;
        if (t < cap) P = P * A;
    }
    return std::nullopt;
}

std::optional<std::uint64_t> brute_dlog(const MatGr& M, const MatGr& A, std::uint64_t bound) {
    check_pair(M, A);
    MatGr P = MatGr::identity(M.context(), M.k());
    for (std::uint64_t x = 0;; x++) {
        if (P == A) return x;
        if (x == bound) break;
        P = P * M;
    }
    return std::nullopt;
}

BsgsResult bsgs_dlog(const MatGr& M, const MatGr& A, std::uint64_t bound,
                     std::uint64_t memory_cap) {
    check_pair(M, A);
    if (bound > (std::uint64_t(1) << 40))
        throw std::invalid_argument("bound too large for the toy solver");
    BsgsResult res;

    std::uint64_t s = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(bound)));
    if (s == 0) s = 1;
    while (s * s < bound) s++;
    if (s + 1 > memory_cap)
        throw std::invalid_argument("baby-step table exceeds the memory cap");

    // Baby steps A * M^i. Distinct i can collide on the same matrix (no
    // cancellation), so each key holds every i that produced it.
    std::map<std::vector<std::uint8_t>, std::vector<std::uint64_t>> baby;
    MatGr B = A;
    for (std::uint64_t i = 0; i <= s; i++) {
        baby[B.encode()].push_back(i);
        if (i < s) {
            B = B * M;
            res.muls++;
        }
    }
    res.entries_stored = s + 1;

    std::uint64_t pow_muls = 0;
    const MatGr G = M.pow_counted(Exponent(s), pow_muls);
    res.muls += pow_muls;

    const std::uint64_t steps = (bound + s - 1) / s;
    MatGr W = MatGr::identity(M.context(), M.k());
    for (std::uint64_t j = 0;; j++) {
        auto it = baby.find(W.encode());
        if (it != baby.end()) {
            // i descending gives candidates x = j*s - i ascending, and the
            // candidate stream is non-decreasing across j, so the first
            // verified hit is the smallest solution.
            const auto& hits = it->second;
            for (auto r = hits.rbegin(); r != hits.rend(); ++r) {
                if (*r > j * s) continue;
                const std::uint64_t x = j * s - *r;
                if (x > bound) continue;
                std::uint64_t vm = 0;
                const bool ok = M.pow_counted(Exponent(x), vm) == A;
                res.muls += vm;
                if (ok) {
                    res.exponent = x;
                    return res;
                }
            }
        }
        if (j == steps) break;
        W = W * G;
        res.muls++;
    }
    return res;
}

}  // namespace grkex
