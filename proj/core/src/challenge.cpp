#include "grkex/challenge.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace grkex {

ContextPtr challenge_context() { return make_context(2, 5); }

namespace {

std::string rtrim(std::string_view s) {
    std::size_t end = s.size();
    while (end > 0 && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return std::string(s.substr(0, end));
}

// Physical lines joined into logical ones: a line whose last non-blank
// character is '+' absorbs the next non-blank line.
std::vector<std::string> logical_lines(std::string_view text) {
    std::vector<std::string> out;
    std::string pending;
    std::size_t pos = 0;
    for (;;) {
        const std::size_t nl = text.find('\n', pos);
        const std::string line =
            rtrim(nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos));
        if (!line.empty()) {
            pending += line;
            if (pending.back() != '+') {
                out.push_back(std::move(pending));
                pending.clear();
            }
        }
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    // A dangling continuation still surfaces as a line so the element parser
    // can report the incomplete expression.
    if (!pending.empty()) out.push_back(std::move(pending));
    return out;
}

struct EntryLine {
    int i, j;
    std::string_view expr;
};

EntryLine split_entry_line(const std::string& line, int k) {
    auto fail = [&](const std::string& why) -> EntryLine {
        throw std::invalid_argument("bad entry line (" + why + "): " + line);
    };
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    };
    skip_ws();
    if (line.compare(pos, 3, "a_{") != 0) return fail("expected a_{ij}");
    pos += 3;
    if (pos + 2 >= line.size() || !std::isdigit(static_cast<unsigned char>(line[pos])) ||
        !std::isdigit(static_cast<unsigned char>(line[pos + 1])) || line[pos + 2] != '}')
        return fail("expected two index digits and '}'");
    const int i = line[pos] - '0', j = line[pos + 1] - '0';
    pos += 3;
    skip_ws();
    if (pos >= line.size() || line[pos] != '=') return fail("expected '='");
    ++pos;
    if (i < 1 || i > k || j < 1 || j > k) return fail("index out of range");
    return {i, j, std::string_view(line).substr(pos)};
}

std::string element_text(const GrElement& x) {
    std::string out;
    for (std::uint32_t r = 0; r < x.ring().order; r++) {
        const std::uint32_t c = x.coeff(r);
        if (!c) continue;
        if (!out.empty()) out += " + ";
        if (c != 1) out += std::to_string(c);
        out += r == 0 ? "ε" : Perm::unrank(x.ring().m, r).format_cycles();
    }
    return out.empty() ? "0ε" : out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

MatGr challenge_parse(std::string_view text, ContextPtr ctx, int k) {
    if (k < 1 || k > 9) throw std::invalid_argument("entry labels carry single-digit indices");
    std::vector<GrElement> entries(static_cast<std::size_t>(k) * k, GrElement::zero(ctx));
    std::vector<bool> seen(static_cast<std::size_t>(k) * k, false);
    for (const std::string& line : logical_lines(text)) {
        const EntryLine e = split_entry_line(line, k);
        const std::size_t at = static_cast<std::size_t>(e.i - 1) * k + (e.j - 1);
        if (seen[at])
            throw std::invalid_argument("entry a_{" + std::to_string(e.i) + std::to_string(e.j) +
                                        "} assigned twice");
        seen[at] = true;
        entries[at] = GrElement::parse(e.expr, ctx);
    }
    for (int i = 0; i < k; i++)
        for (int j = 0; j < k; j++)
            if (!seen[static_cast<std::size_t>(i) * k + j])
                throw std::invalid_argument("entry a_{" + std::to_string(i + 1) +
                                            std::to_string(j + 1) + "} missing");
    return MatGr::from_entries(std::move(ctx), k, std::move(entries));
}

std::string challenge_format(const MatGr& M) {
    if (M.k() > 9) throw std::invalid_argument("entry labels carry single-digit indices");
    std::string out;
    for (int i = 0; i < M.k(); i++)
        for (int j = 0; j < M.k(); j++) {
            out += "a_{" + std::to_string(i + 1) + std::to_string(j + 1) + "} = ";
            out += element_text(M.at(i, j));
            out += '\n';
        }
    return out;
}

ChallengeTriple load_challenge(const std::string& m_path, const std::string& ma_path,
                               const std::string& mb_path) {
    ContextPtr ctx = challenge_context();
    MatGr base = challenge_parse(read_file(m_path), ctx, kChallengeDim);
    MatGr alice = challenge_parse(read_file(ma_path), ctx, kChallengeDim);
    MatGr bob = challenge_parse(read_file(mb_path), ctx, kChallengeDim);
    std::vector<std::string> warnings;
    auto compare = [&](const MatGr& x, const std::string& px, const MatGr& y,
                       const std::string& py) {
        if (x == y) warnings.push_back(px + " and " + py + " contain the same matrix");
    };
    compare(base, m_path, alice, ma_path);
    compare(base, m_path, bob, mb_path);
    compare(alice, ma_path, bob, mb_path);
    return {std::move(base), std::move(alice), std::move(bob), std::move(warnings)};
}

}  // namespace grkex
