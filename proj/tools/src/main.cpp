// Command-line front end for the matrix semigroup key exchange library:
// key exchange sessions, power timings, distribution experiments,
// orbit/order scans, a toy discrete-log solver, and the published challenge
// files. Every command prints one JSON record to stdout; wall_ms is the only
// field that varies between runs with the same --seed.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "grkex/analysis.hpp"
#include "grkex/challenge.hpp"
#include "grkex/kex.hpp"
#include "grkex/orbit.hpp"

using nlohmann::json;
using namespace grkex;

namespace {

// ---- small helpers ---------------------------------------------------------

class Stopwatch {
public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<std::uint8_t> read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string& s = ss.str();
    return std::vector<std::uint8_t>(s.begin(), s.end());
}

std::string read_text(const std::string& path) {
    auto b = read_bytes(path);
    return std::string(b.begin(), b.end());
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string u64_hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// A key file is either the raw GRK1 container or its hex armor.
MatGr load_key_auto(const std::string& path) {
    auto bytes = read_bytes(path);
    if (bytes.size() >= 4 && bytes[0] == 'G' && bytes[1] == 'R' && bytes[2] == 'K' &&
        bytes[3] == '1')
        return key_deserialize(bytes);
    std::string compact;
    for (std::uint8_t c : bytes)
        if (!std::isspace(c)) compact.push_back(static_cast<char>(c));
    return key_deserialize(hex_decode(compact));
}

void emit(json& rec, const Stopwatch& watch) {
    rec["wall_ms"] = watch.ms();
    std::cout << rec.dump(2) << "\n";
}

struct RingOpts {
    std::uint32_t n;
    int m;
    int k;
};

struct ExpRange {
    Exponent lo, hi;
};

// --exp-digits d means "uniform d-digit exponents". Explicit bounds win.
ExpRange resolve_range(bool digits_set, unsigned digits, const std::string& lo,
                       const std::string& hi, const ExpRange& fallback) {
    const bool has_lo = !lo.empty(), has_hi = !hi.empty();
    if (has_lo != has_hi)
        throw CLI::ValidationError("exponent range needs both bounds or neither");
    if (digits_set && has_lo)
        throw CLI::ValidationError("give either --exp-digits or an explicit range, not both");
    if (digits_set) {
        if (digits == 0) throw CLI::ValidationError("--exp-digits must be positive");
        return {pow10(digits - 1), pow10(digits) - 1};
    }
    if (has_lo) {
        ExpRange r{exp_parse(lo), exp_parse(hi)};
        if (r.lo > r.hi) throw CLI::ValidationError("empty exponent range");
        return r;
    }
    return fallback;
}

// ---- kex -------------------------------------------------------------------

json bundle_json(const RingContext& ring, int k, const ExpRange& range, const MatGr& base,
                 const Exponent& secret) {
    json b;
    b["v"] = 1;
    b["n"] = ring.n;
    b["m"] = ring.m;
    b["k"] = k;
    b["exp_lo"] = exp_to_string(range.lo);
    b["exp_hi"] = exp_to_string(range.hi);
    b["base"] = hex_encode(key_serialize(base));
    b["secret"] = exp_to_string(secret);
    return b;
}

struct Bundle {
    MatGr base;
    Exponent secret;
};

Bundle load_bundle(const std::string& path) {
    json b = json::parse(read_text(path));
    if (!b.contains("v") || b["v"].get<int>() != 1)
        throw std::runtime_error(path + ": unsupported key bundle version");
    MatGr base = key_deserialize(hex_decode(b["base"].get<std::string>()));
    Exponent secret = exp_parse(b["secret"].get<std::string>());
    return {std::move(base), std::move(secret)};
}

int run_keygen(const RingOpts& r, bool n_set, bool m_set, bool k_set, std::uint64_t seed,
               const ExpRange& range, bool structured, const std::string& base_path,
               const std::string& out) {
    Stopwatch watch;
    Rng rng(seed);
    std::optional<MatGr> base;
    if (!base_path.empty()) {
        base = load_key_auto(base_path);
        if ((n_set && r.n != base->ring().n) || (m_set && r.m != base->ring().m) ||
            (k_set && r.k != base->k()))
            throw CLI::ValidationError("--n/--m/--k conflict with the matrix in --base");
    } else {
        ContextPtr ctx = make_context(r.n, r.m);
        base = structured ? structured_base(ctx, r.k, rng) : MatGr::random(ctx, r.k, rng);
    }
    Exponent secret = uniform_exponent(rng, range.lo, range.hi);
    json bundle = bundle_json(base->ring(), base->k(), range, *base, secret);

    json rec;
    rec["command"] = "kex.keygen";
    rec["seed"] = seed;
    rec["n"] = base->ring().n;
    rec["m"] = base->ring().m;
    rec["k"] = base->k();
    rec["structured"] = structured;
    rec["base_digest"] = u64_hex(key_digest(*base));
    if (out.empty()) {
        rec["bundle"] = bundle;
    } else {
        write_text(out, bundle.dump(2) + "\n");
        rec["out"] = out;
    }
    emit(rec, watch);
    return 0;
}

int run_pubkey(const std::string& key_path, const std::string& out, bool armor) {
    Stopwatch watch;
    Bundle b = load_bundle(key_path);
    KexParty party(std::move(b.base), std::move(b.secret));
    auto bytes = key_serialize(party.public_key());

    json rec;
    rec["command"] = "kex.pubkey";
    rec["key"] = key_path;
    rec["digest"] = u64_hex(key_digest(party.public_key()));
    if (!out.empty()) {
        if (armor)
            write_text(out, hex_encode(bytes) + "\n");
        else
            write_bytes(out, bytes);
        rec["out"] = out;
    } else {
        rec["pubkey"] = hex_encode(bytes);
    }
    emit(rec, watch);
    return 0;
}

int run_shared(const std::string& key_path, const std::string& peer_path,
               const std::string& out, bool armor) {
    Stopwatch watch;
    Bundle b = load_bundle(key_path);
    KexParty party(std::move(b.base), std::move(b.secret));
    MatGr peer = load_key_auto(peer_path);
    MatGr shared = party.shared_secret(peer);
    auto bytes = key_serialize(shared);

    json rec;
    rec["command"] = "kex.shared";
    rec["key"] = key_path;
    rec["peer"] = peer_path;
    rec["digest"] = u64_hex(key_digest(shared));
    if (!out.empty()) {
        if (armor)
            write_text(out, hex_encode(bytes) + "\n");
        else
            write_bytes(out, bytes);
        rec["out"] = out;
    }
    emit(rec, watch);
    return 0;
}

int run_demo(const RingOpts& r, std::uint64_t seed, const ExpRange& range, bool structured) {
    Stopwatch watch;
    Rng rng(seed);
    ContextPtr ctx = make_context(r.n, r.m);
    MatGr base = structured ? structured_base(ctx, r.k, rng) : MatGr::random(ctx, r.k, rng);
    KexParty alice(base, uniform_exponent(rng, range.lo, range.hi));
    KexParty bob(base, uniform_exponent(rng, range.lo, range.hi));
    MatGr sa = alice.shared_secret(bob.public_key());
    MatGr sb = bob.shared_secret(alice.public_key());

    json rec;
    rec["command"] = "kex.demo";
    rec["seed"] = seed;
    rec["n"] = r.n;
    rec["m"] = r.m;
    rec["k"] = r.k;
    rec["structured"] = structured;
    rec["exp_lo"] = exp_to_string(range.lo);
    rec["exp_hi"] = exp_to_string(range.hi);
    rec["alice_pub"] = u64_hex(key_digest(alice.public_key()));
    rec["bob_pub"] = u64_hex(key_digest(bob.public_key()));
    rec["alice_shared"] = u64_hex(key_digest(sa));
    rec["bob_shared"] = u64_hex(key_digest(sb));
    const bool match = sa == sb;
    rec["match"] = match;
    emit(rec, watch);
    return match ? 0 : 1;
}

// ---- bench -----------------------------------------------------------------

int run_bench_pow(const RingOpts& r, std::uint64_t seed, unsigned digits, unsigned reps) {
    Stopwatch watch;
    if (reps == 0) throw CLI::ValidationError("--reps must be positive");
    if (digits == 0) throw CLI::ValidationError("--exp-digits must be positive");
    ContextPtr ctx = make_context(r.n, r.m);
    const ExpRange range{pow10(digits - 1), pow10(digits) - 1};
    std::vector<double> times;
    std::uint64_t total_muls = 0;
    for (unsigned rep = 0; rep < reps; rep++) {
        Rng rng = Rng::fork(seed, rep);
        MatGr M = MatGr::random(ctx, r.k, rng);
        Exponent e = uniform_exponent(rng, range.lo, range.hi);
        Stopwatch one;
        std::uint64_t muls = 0;
        MatGr P = M.pow_counted(e, muls);
        times.push_back(one.ms());
        total_muls += muls;
        if (P.k() != r.k) throw std::logic_error("unreachable");
    }
    double sum = 0;
    for (double t : times) sum += t;

    json rec;
    rec["command"] = "bench.pow";
    rec["seed"] = seed;
    rec["n"] = r.n;
    rec["m"] = r.m;
    rec["k"] = r.k;
    rec["exp_digits"] = digits;
    rec["reps"] = reps;
    rec["mean_ms"] = sum / reps;
    rec["min_ms"] = *std::min_element(times.begin(), times.end());
    rec["max_ms"] = *std::max_element(times.begin(), times.end());
    rec["mean_muls"] = static_cast<double>(total_muls) / reps;
    emit(rec, watch);
    return 0;
}

// ---- ddh -------------------------------------------------------------------

json chi_json(const ChiSquare& c) {
    return json{{"statistic", c.statistic}, {"dof", c.dof}, {"p", c.p}};
}

void write_freq_csv(const std::string& path, const FreqTable& t) {
    std::ostringstream out;
    out << "entry_row,entry_col,element,residue,count\n";
    const std::uint32_t ord = t.ring().order, n = t.ring().n;
    const auto& c = t.counts();
    std::size_t at = 0;
    for (int i = 0; i < t.k(); i++)
        for (int j = 0; j < t.k(); j++)
            for (std::uint32_t e = 0; e < ord; e++)
                for (std::uint32_t rr = 0; rr < n; rr++, at++)
                    out << i + 1 << ',' << j + 1 << ',' << e << ',' << rr << ',' << c[at]
                        << '\n';
    write_text(path, out.str());
}

void write_qq_csv(const std::string& path, const FreqTable& a, const FreqTable& b) {
    std::ostringstream out;
    out << "x,y\n";
    for (const QqPoint& p : qq_pairs(a, b)) out << g17(p.x) << ',' << g17(p.y) << '\n';
    write_text(path, out.str());
}

void write_triple_csv(const std::string& path, const TripleTable& t) {
    std::ostringstream out;
    out << "r_a,r_b,r_ab,count\n";
    const std::uint32_t n = t.ring().n;
    const auto agg = t.aggregate();
    for (std::uint32_t a = 0; a < n; a++)
        for (std::uint32_t b = 0; b < n; b++)
            for (std::uint32_t c = 0; c < n; c++)
                out << a << ',' << b << ',' << c << ','
                    << agg[static_cast<std::size_t>(a) * n * n + b * n + c] << '\n';
    write_text(path, out.str());
}

json ddh_common(const char* name, const DdhConfig& cfg) {
    json rec;
    rec["command"] = name;
    rec["seed"] = cfg.seed;
    rec["n"] = cfg.n;
    rec["m"] = cfg.m;
    rec["k"] = cfg.k;
    rec["trials"] = cfg.trials;
    rec["exp_lo"] = exp_to_string(cfg.a_lo);
    rec["exp_hi"] = exp_to_string(cfg.a_hi);
    return rec;
}

int run_ddh_pair(const char* name, const DdhConfig& cfg, const std::string& out_prefix,
                 bool is_exp1) {
    Stopwatch watch;
    PairResult res = is_exp1 ? ddh_exp1(cfg) : ddh_exp2(cfg);
    json rec = ddh_common(name, cfg);
    if (is_exp1) {
        rec["c_lo"] = exp_to_string(cfg.c_lo);
        rec["c_hi"] = exp_to_string(cfg.c_hi);
    }
    rec["left"] = chi_json(chi_square_uniform(res.left.counts()));
    rec["right"] = chi_json(chi_square_uniform(res.right.counts()));
    rec["qq_max_dev"] = qq_max_deviation(res.left, res.right);
    if (!out_prefix.empty()) {
        write_freq_csv(out_prefix + "_left.csv", res.left);
        write_freq_csv(out_prefix + "_right.csv", res.right);
        write_qq_csv(out_prefix + "_qq.csv", res.left, res.right);
        rec["out"] = json::array(
            {out_prefix + "_left.csv", out_prefix + "_right.csv", out_prefix + "_qq.csv"});
    }
    emit(rec, watch);
    return 0;
}

int run_ddh_exp3(const DdhConfig& cfg, const std::string& out_prefix) {
    Stopwatch watch;
    TripleTable t = ddh_exp3(cfg);
    json rec = ddh_common("ddh.exp3", cfg);
    rec["triple"] = chi_json(chi_square_uniform(t.aggregate()));
    if (!out_prefix.empty()) {
        write_triple_csv(out_prefix + "_triple.csv", t);
        rec["out"] = json::array({out_prefix + "_triple.csv"});
    }
    emit(rec, watch);
    return 0;
}

// ---- support-prob ----------------------------------------------------------

int run_support_prob(const RingOpts& r, std::uint32_t lo, std::uint32_t hi, std::uint64_t reps,
                     std::uint64_t seed) {
    Stopwatch watch;
    ContextPtr ctx = make_context(r.n, r.m);
    const double exact = support_probability_exact(*ctx, lo, hi);
    const double sampled = support_probability_mc(ctx, lo, hi, reps, seed);

    json rec;
    rec["command"] = "support-prob";
    rec["seed"] = seed;
    rec["n"] = r.n;
    rec["m"] = r.m;
    rec["lo"] = lo;
    rec["hi"] = hi;
    rec["reps"] = reps;
    rec["exact"] = exact;
    rec["sampled"] = sampled;
    rec["abs_error"] = std::abs(exact - sampled);
    emit(rec, watch);
    return 0;
}

// ---- orbit -----------------------------------------------------------------

int run_orbit_scan(const RingOpts& r, std::uint64_t seed, std::uint64_t budget) {
    Stopwatch watch;
    ContextPtr ctx = make_context(r.n, r.m);
    Rng rng(seed);
    MatGr M = MatGr::random(ctx, r.k, rng);
    OrbitResult res = orbit_scan(M, budget);

    json rec;
    rec["command"] = "orbit.scan";
    rec["seed"] = seed;
    rec["n"] = r.n;
    rec["m"] = r.m;
    rec["k"] = r.k;
    rec["budget"] = budget;
    rec["exhausted"] = res.exhausted;
    if (!res.exhausted) {
        rec["tail"] = res.tail;
        rec["period"] = res.period;
    }
    rec["muls"] = res.muls;
    emit(rec, watch);
    return 0;
}

int run_orbit_order(const RingOpts& r, std::uint64_t seed, std::uint64_t cap, int factors) {
    Stopwatch watch;
    ContextPtr ctx = make_context(r.n, r.m);
    Rng rng(seed);
    auto [M, Minv] = MatGr::random_invertible(ctx, r.k, rng, factors);
    (void)Minv;
    auto ord = order_of_invertible(M, cap);

    json rec;
    rec["command"] = "orbit.order";
    rec["seed"] = seed;
    rec["n"] = r.n;
    rec["m"] = r.m;
    rec["k"] = r.k;
    rec["cap"] = cap;
    rec["factors"] = factors;
    rec["order"] = ord ? json(*ord) : json(nullptr);
    emit(rec, watch);
    return 0;
}

int run_orbit_bsgs(const RingOpts& r, std::uint64_t seed, std::uint64_t bound) {
    Stopwatch watch;
    if (bound >= (std::uint64_t{1} << 40)) throw CLI::ValidationError("--bound too large");
    ContextPtr ctx = make_context(r.n, r.m);
    Rng rng(seed);
    MatGr M = MatGr::random(ctx, r.k, rng);
    const std::uint64_t x_true = rng.below(bound + 1);
    MatGr A = M.pow(Exponent(x_true));
    BsgsResult found = bsgs_dlog(M, A, bound);
    auto brute = brute_dlog(M, A, bound);

    json rec;
    rec["command"] = "orbit.bsgs";
    rec["seed"] = seed;
    rec["n"] = r.n;
    rec["m"] = r.m;
    rec["k"] = r.k;
    rec["bound"] = bound;
    rec["x_true"] = x_true;
    rec["x_found"] = found.exponent ? json(*found.exponent) : json(nullptr);
    rec["brute"] = brute ? json(*brute) : json(nullptr);
    const bool agree = found.exponent.has_value() == brute.has_value() &&
                       (!found.exponent || *found.exponent == *brute);
    rec["agree"] = agree;
    rec["entries_stored"] = found.entries_stored;
    rec["muls"] = found.muls;
    emit(rec, watch);
    return agree ? 0 : 1;
}

// ---- challenge -------------------------------------------------------------

int run_challenge_check(const std::string& m_path, const std::string& ma_path,
                        const std::string& mb_path) {
    Stopwatch watch;
    ChallengeTriple t = load_challenge(m_path, ma_path, mb_path);
    for (const std::string& w : t.warnings) std::cerr << "warning: " << w << "\n";

    json rec;
    rec["command"] = "challenge.check";
    rec["files"] = json::array({m_path, ma_path, mb_path});
    rec["n"] = t.base.ring().n;
    rec["m"] = t.base.ring().m;
    rec["k"] = t.base.k();
    rec["warnings"] = t.warnings;
    json supports = json::array();
    for (const MatGr* M : {&t.base, &t.alice, &t.bob}) {
        std::uint32_t s = 0;
        for (int i = 0; i < M->k(); i++)
            for (int j = 0; j < M->k(); j++) s += M->at(i, j).support_size();
        supports.push_back(s);
    }
    rec["total_support"] = supports;
    emit(rec, watch);
    return 0;
}

int run_challenge_roundtrip(const std::string& in_path, const std::string& out_path) {
    Stopwatch watch;
    ContextPtr ctx = challenge_context();
    const std::string original = read_text(in_path);
    MatGr M = challenge_parse(original, ctx, kChallengeDim);
    const std::string canon = challenge_format(M);
    const bool canonical = canon == original;

    json rec;
    rec["command"] = "challenge.roundtrip";
    rec["file"] = in_path;
    rec["canonical"] = canonical;
    if (!out_path.empty()) {
        write_text(out_path, canon);
        rec["out"] = out_path;
    }
    emit(rec, watch);
    return canonical ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"matrix semigroup key exchange toolkit"};
    app.require_subcommand(1);

    // Ring parameters get one storage block per subcommand so each can carry
    // its own defaults; scalar options that mean the same thing everywhere
    // share storage (only one subcommand ever parses).
    std::deque<RingOpts> rings;
    std::uint64_t seed = 1;
    bool seed_given = false;
    std::string exp_lo, exp_hi;
    unsigned exp_digits = 0;
    unsigned bench_digits = 100, bench_reps = 5;
    bool fast = false, structured = false, armor = false;
    std::string out, base_path, key_path, peer_path;
    std::uint64_t trials = 1000, budget = 100000, cap = 1000000, bound = 2048;
    std::uint64_t mc_reps = 100000;
    std::uint32_t band_lo = 50, band_hi = 70;
    std::string c_lo, c_hi;
    int factors = 20;
    std::string chal_m, chal_ma, chal_mb, chal_in;

    auto add_ring = [&rings](CLI::App* cmd, RingOpts defaults, bool with_k = true) -> RingOpts& {
        rings.push_back(defaults);
        RingOpts& r = rings.back();
        cmd->add_option("--n", r.n, "coefficient modulus")->capture_default_str();
        cmd->add_option("--m", r.m, "symmetric group degree")->capture_default_str();
        if (with_k) cmd->add_option("--k", r.k, "matrix dimension")->capture_default_str();
        return r;
    };
    auto add_seed = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "deterministic seed (or env GRKEX_SEED)")
            ->capture_default_str()
            ->each([&seed_given](const std::string&) { seed_given = true; });
    };
    auto add_exp_range = [&](CLI::App* cmd) {
        cmd->add_option("--exp-digits", exp_digits, "exponents with exactly this many digits");
        cmd->add_option("--exp-lo", exp_lo, "smallest exponent (decimal)");
        cmd->add_option("--exp-hi", exp_hi, "largest exponent (decimal)");
    };

    // kex
    auto* kex = app.add_subcommand("kex", "key exchange sessions");
    kex->require_subcommand(1);
    auto* keygen = kex->add_subcommand("keygen", "draw a private key bundle");
    RingOpts& ring_keygen = add_ring(keygen, {7, 5, 3});
    add_seed(keygen);
    add_exp_range(keygen);
    keygen->add_flag("--structured", structured,
                     "base = invertible factor times the scalar zero divisor");
    keygen->add_option("--base", base_path, "existing base matrix key file")
        ->excludes("--structured");
    keygen->add_option("--out", out, "bundle file (stdout when omitted)");

    auto* pubkey = kex->add_subcommand("pubkey", "derive the public key from a bundle");
    pubkey->add_option("--key", key_path, "private key bundle")->required();
    pubkey->add_option("--out", out, "public key file");
    pubkey->add_flag("--armor", armor, "write hex instead of raw bytes");

    auto* shared = kex->add_subcommand("shared", "combine a bundle with a peer public key");
    shared->add_option("--key", key_path, "private key bundle")->required();
    shared->add_option("--peer", peer_path, "peer public key file")->required();
    shared->add_option("--out", out, "shared secret file");
    shared->add_flag("--armor", armor, "write hex instead of raw bytes");

    auto* demo = kex->add_subcommand("demo", "run both sides of one exchange");
    RingOpts& ring_demo = add_ring(demo, {7, 5, 3});
    add_seed(demo);
    add_exp_range(demo);
    demo->add_flag("--structured", structured,
                   "base = invertible factor times the scalar zero divisor");

    // bench
    auto* bench = app.add_subcommand("bench", "timings");
    bench->require_subcommand(1);
    auto* bench_pow = bench->add_subcommand("pow", "time matrix powers");
    RingOpts& ring_bench = add_ring(bench_pow, {7, 5, 2});
    add_seed(bench_pow);
    bench_pow->add_option("--exp-digits", bench_digits, "exponent size in decimal digits")
        ->capture_default_str();
    bench_pow->add_option("--reps", bench_reps, "repetitions")->capture_default_str();

    // ddh
    auto* ddh = app.add_subcommand("ddh", "distribution experiments");
    ddh->require_subcommand(1);
    CLI::App* exps[3];
    RingOpts* exp_rings[3];
    const char* exp_desc[3] = {"M^(ab) against M^c", "M^a against fresh N",
                               "triples (M^a, M^b, M^ab) of one fixed M"};
    for (int i = 0; i < 3; i++) {
        exps[i] = ddh->add_subcommand("exp" + std::to_string(i + 1), exp_desc[i]);
        exp_rings[i] = &add_ring(exps[i], {7, 5, 2});
        add_seed(exps[i]);
        add_exp_range(exps[i]);
        exps[i]->add_option("--trials", trials, "tallied trials")->capture_default_str();
        exps[i]->add_flag("--fast", fast, "small exponent ranges for quick runs");
        exps[i]->add_option("--out", out, "CSV file prefix");
    }
    exps[0]->add_option("--c-lo", c_lo, "smallest independent exponent (decimal)");
    exps[0]->add_option("--c-hi", c_hi, "largest independent exponent (decimal)");

    // support-prob
    auto* support = app.add_subcommand("support-prob", "support size band probability");
    RingOpts& ring_support = add_ring(support, {2, 5, 1}, /*with_k=*/false);
    support->add_option("--lo", band_lo, "band lower end")->capture_default_str();
    support->add_option("--hi", band_hi, "band upper end")->capture_default_str();
    support->add_option("--reps", mc_reps, "sampled draws")->capture_default_str();
    add_seed(support);

    // orbit
    auto* orbit = app.add_subcommand("orbit", "power sequence structure");
    orbit->require_subcommand(1);
    auto* scan = orbit->add_subcommand("scan", "tail and period of the power sequence");
    RingOpts& ring_scan = add_ring(scan, {3, 3, 1});
    add_seed(scan);
    scan->add_option("--budget", budget, "matrix multiplication budget")->capture_default_str();

    auto* order_cmd = orbit->add_subcommand("order", "multiplicative order of an invertible");
    RingOpts& ring_order = add_ring(order_cmd, {3, 3, 2});
    add_seed(order_cmd);
    order_cmd->add_option("--cap", cap, "largest order to try")->capture_default_str();
    order_cmd->add_option("--factors", factors, "triangular factors in the sample")
        ->capture_default_str();

    auto* bsgs = orbit->add_subcommand("bsgs", "solve a drawn toy discrete log");
    RingOpts& ring_bsgs = add_ring(bsgs, {3, 3, 1});
    add_seed(bsgs);
    bsgs->add_option("--bound", bound, "largest exponent searched")->capture_default_str();

    // challenge
    auto* chal = app.add_subcommand("challenge", "published challenge files");
    chal->require_subcommand(1);
    auto* check = chal->add_subcommand("check", "parse the three published matrices");
    check->add_option("--m", chal_m, "base matrix file")->required();
    check->add_option("--ma", chal_ma, "first power file")->required();
    check->add_option("--mb", chal_mb, "second power file")->required();
    auto* roundtrip = chal->add_subcommand("roundtrip", "reformat one matrix file");
    roundtrip->add_option("--in", chal_in, "matrix file")->required();
    roundtrip->add_option("--out", out, "canonical form destination");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (!seed_given) {
        if (const char* env = std::getenv("GRKEX_SEED")) {
            try {
                seed = std::stoull(env);
            } catch (const std::exception&) {
                std::cerr << "error: GRKEX_SEED is not an integer\n";
                return 2;
            }
        }
    }

    try {
        const ExpRange kKexDefault{pow10(22), pow10(28)};
        if (*keygen)
            return run_keygen(ring_keygen, keygen->count("--n") > 0, keygen->count("--m") > 0,
                              keygen->count("--k") > 0, seed,
                              resolve_range(keygen->count("--exp-digits") > 0, exp_digits,
                                            exp_lo, exp_hi, kKexDefault),
                              structured, base_path, out);
        if (*pubkey) return run_pubkey(key_path, out, armor);
        if (*shared) return run_shared(key_path, peer_path, out, armor);
        if (*demo)
            return run_demo(ring_demo, seed,
                            resolve_range(demo->count("--exp-digits") > 0, exp_digits, exp_lo,
                                          exp_hi, kKexDefault),
                            structured);
        if (*bench_pow) return run_bench_pow(ring_bench, seed, bench_digits, bench_reps);
        for (int i = 0; i < 3; i++) {
            if (!*exps[i]) continue;
            DdhConfig cfg;
            cfg.n = exp_rings[i]->n;
            cfg.m = exp_rings[i]->m;
            cfg.k = exp_rings[i]->k;
            cfg.trials = trials;
            cfg.seed = seed;
            const ExpRange ab_default =
                i == 1 ? (fast ? ExpRange{pow10(6), pow10(8)}
                               : ExpRange{pow10(44), pow10(55)})
                       : (fast ? ExpRange{pow10(3), pow10(4)}
                               : ExpRange{pow10(22), pow10(28)});
            const ExpRange ab = resolve_range(exps[i]->count("--exp-digits") > 0, exp_digits,
                                              exp_lo, exp_hi, ab_default);
            cfg.a_lo = ab.lo;
            cfg.a_hi = ab.hi;
            if (i == 0) {
                const ExpRange c_default =
                    fast ? ExpRange{pow10(6), pow10(8)} : ExpRange{pow10(44), pow10(55)};
                const ExpRange c = resolve_range(false, 0, c_lo, c_hi, c_default);
                cfg.c_lo = c.lo;
                cfg.c_hi = c.hi;
            }
            if (i == 2) return run_ddh_exp3(cfg, out);
            return run_ddh_pair(i == 0 ? "ddh.exp1" : "ddh.exp2", cfg, out, i == 0);
        }
        if (*support) return run_support_prob(ring_support, band_lo, band_hi, mc_reps, seed);
        if (*scan) return run_orbit_scan(ring_scan, seed, budget);
        if (*order_cmd) return run_orbit_order(ring_order, seed, cap, factors);
        if (*bsgs) return run_orbit_bsgs(ring_bsgs, seed, bound);
        if (*check) return run_challenge_check(chal_m, chal_ma, chal_mb);
        if (*roundtrip) return run_challenge_roundtrip(chal_in, out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
