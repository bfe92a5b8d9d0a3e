#include "ac/types.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

namespace ac {

Ratio parse_ratio(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::runtime_error("empty ratio");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::int64_t num = std::stoll(s.substr(0, slash));
        std::int64_t den = std::stoll(s.substr(slash + 1));
        if (den <= 0) throw std::runtime_error("ratio denominator must be positive: " + s);
        return {num, den};
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        return {std::stoll(s), 1};
    }
    std::string intpart = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    if (frac.size() > 15) frac.resize(15);
    for (char c : frac)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw std::runtime_error("bad ratio literal: " + s);
    std::int64_t den = 1;
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    std::int64_t whole = intpart.empty() || intpart == "-" ? 0 : std::stoll(intpart);
    bool neg = !intpart.empty() && intpart[0] == '-';
    std::int64_t fracval = frac.empty() ? 0 : std::stoll(frac);
    std::int64_t num = std::llabs(whole) * den + fracval;
    if (neg) num = -num;
    return {num, den};
}

std::string normalize_term(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (char c : raw) {
        unsigned char uc = static_cast<unsigned char>(c);
        if (std::isspace(uc)) {
            if (!out.empty()) pending_space = true;
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(static_cast<char>(std::tolower(uc)));
    }
    return out;
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(line.substr(start));
            break;
        }
        out.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::string format_fixed(double v, int digits) {
    if (v == 0.0) v = 0.0;  // flush -0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    std::string s(buf);
    if (s == std::string("-0.") + std::string(digits, '0')) s.erase(0, 1);
    return s;
}

std::uint64_t fnv1a(std::string_view data, std::uint64_t seed) {
    std::uint64_t h = seed;
    for (char c : data) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string to_hex(std::uint64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace ac
