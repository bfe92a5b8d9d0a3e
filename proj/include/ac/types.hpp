#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ac {

using TermId = std::uint32_t;
inline constexpr TermId kInvalidTerm = static_cast<TermId>(-1);

enum class Role { kSubject, kObject };

inline const char* role_name(Role r) {
    return r == Role::kSubject ? "subject" : "object";
}

inline Role role_from_string(std::string_view s) {
    if (s == "subject") return Role::kSubject;
    if (s == "object") return Role::kObject;
    throw std::runtime_error("unknown role: " + std::string(s));
}

// Exact fraction used for overlap values and the tau threshold. Never
// reduced; comparisons cross-multiply so reduction is unnecessary.
struct Ratio {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double value() const { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }
};

inline bool ratio_less(const Ratio& a, const Ratio& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

inline bool ratio_equal(const Ratio& a, const Ratio& b) {
    return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
}

// Parses "0.2", "1", ".5" or "2/10" into an exact Ratio.
Ratio parse_ratio(std::string_view text);

// Lowercase, trim, collapse internal whitespace runs to single spaces.
std::string normalize_term(std::string_view raw);

std::vector<std::string> split(std::string_view line, char sep);

std::string format_fixed(double v, int digits = 6);

std::uint64_t fnv1a(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ull);

std::string to_hex(std::uint64_t v);

}  // namespace ac
