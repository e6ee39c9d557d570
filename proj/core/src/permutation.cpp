#include "grkex/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace grkex {

namespace {

void check_degree(int m) {
    if (m < 1 || m > kMaxDegree)
        throw std::invalid_argument("degree must be in 1.." + std::to_string(kMaxDegree) +
                                    ", got " + std::to_string(m));
}

}  // namespace

Perm Perm::identity(int m) {
    check_degree(m);
    std::vector<std::uint8_t> v(m);
    for (int i = 0; i < m; i++) v[i] = static_cast<std::uint8_t>(i);
    return Perm(std::move(v));
}

Perm Perm::from_mapping(const std::vector<int>& one_based) {
    check_degree(static_cast<int>(one_based.size()));
    const int m = static_cast<int>(one_based.size());
    std::vector<std::uint8_t> v(m);
    std::vector<bool> seen(m, false);
    for (int i = 0; i < m; i++) {
        int x = one_based[i];
        if (x < 1 || x > m || seen[x - 1])
            throw std::invalid_argument("mapping is not a bijection on 1.." + std::to_string(m));
        seen[x - 1] = true;
        v[i] = static_cast<std::uint8_t>(x - 1);
    }
    return Perm(std::move(v));
}

int Perm::apply(int x) const {
    if (x < 1 || x > degree()) throw std::out_of_range("point out of range");
    return map_[x - 1] + 1;
}

std::vector<int> Perm::mapping() const {
    std::vector<int> v(map_.size());
    for (std::size_t i = 0; i < map_.size(); i++) v[i] = map_[i] + 1;
    return v;
}

std::uint32_t Perm::rank() const {
    const int m = degree();
    std::uint32_t r = 0;
    for (int i = 0; i < m; i++) {
        std::uint32_t smaller_after = 0;
        for (int j = i + 1; j < m; j++) smaller_after += map_[j] < map_[i];
        r = r * static_cast<std::uint32_t>(m - i) + smaller_after;
    }
    return r;
}

Perm Perm::unrank(int m, std::uint32_t rank) {
    check_degree(m);
    if (rank >= kFactorial[m]) throw std::out_of_range("rank out of range for degree");
    // Decode the Lehmer code digits, most significant first.
    std::vector<std::uint8_t> digits(m);
    for (int i = m - 1; i >= 0; i--) {
        digits[i] = static_cast<std::uint8_t>(rank % static_cast<std::uint32_t>(m - i));
        rank /= static_cast<std::uint32_t>(m - i);
    }
    std::vector<std::uint8_t> pool(m);
    for (int i = 0; i < m; i++) pool[i] = static_cast<std::uint8_t>(i);
    std::vector<std::uint8_t> v(m);
    for (int i = 0; i < m; i++) {
        v[i] = pool[digits[i]];
        pool.erase(pool.begin() + digits[i]);
    }
    return Perm(std::move(v));
}

Perm operator*(const Perm& p, const Perm& q) {
    if (p.degree() != q.degree()) throw std::invalid_argument("degree mismatch in composition");
    std::vector<std::uint8_t> v(p.map_.size());
    for (std::size_t x = 0; x < v.size(); x++) v[x] = p.map_[q.map_[x]];
    return Perm(std::move(v));
}

Perm Perm::inverse() const {
    std::vector<std::uint8_t> v(map_.size());
    for (std::size_t i = 0; i < map_.size(); i++) v[map_[i]] = static_cast<std::uint8_t>(i);
    return Perm(std::move(v));
}

int Perm::sign() const {
    // Parity from cycle structure: sign = (-1)^(m - #cycles).
    const int m = degree();
    std::vector<bool> seen(m, false);
    int cycles = 0;
    for (int i = 0; i < m; i++) {
        if (seen[i]) continue;
        ++cycles;
        for (int j = i; !seen[j]; j = map_[j]) seen[j] = true;
    }
    return ((m - cycles) % 2 == 0) ? 1 : -1;
}

Perm Perm::parse_cycles(std::string_view text, int m) {
    check_degree(m);
    std::size_t pos = 0;
    auto skip_ws = [&] { while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos; };
    skip_ws();
    if (pos >= text.size()) throw std::invalid_argument("empty permutation text");

    // Identity spellings.
    for (std::string_view id : {"\\epsilon", "ε", "e"}) {
        if (text.substr(pos, id.size()) == id) {
            std::size_t after = pos + id.size();
            std::size_t rest = after;
            while (rest < text.size() && std::isspace(static_cast<unsigned char>(text[rest]))) ++rest;
            if (rest == text.size()) return identity(m);
        }
    }

    // One or more cycles, multiplied in written order; operator* applies its
    // right factor first, so the rightmost cycle acts first, as usual.
    std::vector<std::vector<int>> cycles;
    while (pos < text.size()) {
        skip_ws();
        if (pos >= text.size()) break;
        if (text[pos] != '(') throw std::invalid_argument("expected '(' in cycle notation");
        ++pos;
        std::vector<int> cyc;
        while (true) {
            skip_ws();
            if (pos >= text.size()) throw std::invalid_argument("unterminated cycle");
            if (text[pos] == ')') { ++pos; break; }
            if (!std::isdigit(static_cast<unsigned char>(text[pos])))
                throw std::invalid_argument("expected point or ')' in cycle");
            // An unseparated digit run like "(123)" is a sequence of
            // single-digit points; that reading is only unambiguous while the
            // degree itself is single-digit.
            int point = 0;
            if (m <= 9) {
                point = text[pos] - '0';
                ++pos;
            } else {
                std::size_t start = pos;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
                point = std::stoi(std::string(text.substr(start, pos - start)));
            }
            if (point < 1 || point > m)
                throw std::invalid_argument("cycle point " + std::to_string(point) +
                                            " out of range 1.." + std::to_string(m));
            for (int seen : cyc)
                if (seen == point)
                    throw std::invalid_argument("repeated point " + std::to_string(point) +
                                                " within a cycle");
            cyc.push_back(point);
        }
        if (cyc.empty()) throw std::invalid_argument("empty cycle");
        cycles.push_back(std::move(cyc));
    }
    if (cycles.empty()) throw std::invalid_argument("malformed permutation text");

    Perm result = identity(m);
    for (const auto& cyc : cycles) {
        std::vector<int> one(m);
        for (int i = 0; i < m; i++) one[i] = i + 1;
        for (std::size_t i = 0; i < cyc.size(); i++)
            one[cyc[i] - 1] = cyc[(i + 1) % cyc.size()];
        result = result * from_mapping(one);
    }
    return result;
}

std::string Perm::format_cycles() const {
    const int m = degree();
    std::vector<bool> seen(m, false);
    std::string out;
    for (int i = 0; i < m; i++) {
        if (seen[i] || map_[i] == i) { seen[i] = true; continue; }
        out += '(';
        int j = i;
        bool first = true;
        do {
            if (!first) out += ' ';
            out += std::to_string(j + 1);
            first = false;
            seen[j] = true;
            j = map_[j];
        } while (j != i);
        out += ')';
    }
    return out.empty() ? "e" : out;
}

MultTable MultTable::build(int m) {
    check_degree(m);
    if (m > kTableDegreeCap)
        throw std::invalid_argument("multiplication table capped at degree " +
                                    std::to_string(kTableDegreeCap));
    MultTable t;
    t.m = m;
    t.order = kFactorial[m];
    std::vector<Perm> elems;
    elems.reserve(t.order);
    for (std::uint32_t r = 0; r < t.order; r++) elems.push_back(Perm::unrank(m, r));
    t.mul.resize(static_cast<std::size_t>(t.order) * t.order);
    t.inv.resize(t.order);
    t.sign.resize(t.order);
    for (std::uint32_t i = 0; i < t.order; i++) {
        t.inv[i] = static_cast<std::uint16_t>(elems[i].inverse().rank());
        t.sign[i] = static_cast<std::int8_t>(elems[i].sign());
        for (std::uint32_t j = 0; j < t.order; j++)
            t.mul[static_cast<std::size_t>(i) * t.order + j] =
                static_cast<std::uint16_t>((elems[i] * elems[j]).rank());
    }
    return t;
}

}  // namespace grkex
