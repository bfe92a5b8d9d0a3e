#include "ac/depparse.hpp"

#include <cctype>
#include <istream>

namespace ac {
namespace {

bool plain_token_id(const std::string& id) {
    if (id.empty()) return false;
    for (char c : id)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;  // skips 3-4 and 3.1 ids
    return true;
}

// Validates head range and head != index; root count issues are tolerated.
bool finish_sentence(Sentence& s, std::size_t lineno, std::vector<std::string>& warnings) {
    const int n = static_cast<int>(s.tokens.size());
    int roots = 0;
    for (const DepToken& t : s.tokens) {
        if (t.head < 0 || t.head > n || t.head == t.index) return false;
        if (t.head == 0) ++roots;
    }
    if (roots != 1) {
        warnings.push_back("sentence ending at line " + std::to_string(lineno) + " has " +
                           std::to_string(roots) + " root tokens");
    }
    return true;
}

}  // namespace

bool ConlluReader::next(Sentence& out) {
    out.tokens.clear();
    std::string line;
    bool malformed = false;
    while (std::getline(in_, line)) {
        ++lineno_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            if (out.tokens.empty() && !malformed) continue;  // stray blank line
            if (malformed || !finish_sentence(out, lineno_, warnings_)) {
                ++skipped_;
                out.tokens.clear();
                malformed = false;
                continue;
            }
            return true;
        }
        if (line[0] == '#') continue;
        auto cols = split(line, '\t');
        if (cols.size() < 8) {
            malformed = true;
            continue;
        }
        if (!plain_token_id(cols[0])) continue;
        DepToken t;
        t.index = std::stoi(cols[0]);
        t.form = cols[1];
        t.lemma = cols[2];
        // XPOS when present, else UPOS; covers both Penn- and UD-tagged data
        t.pos = (cols.size() > 4 && cols[4] != "_" && !cols[4].empty()) ? cols[4] : cols[3];
        try {
            t.head = std::stoi(cols[6]);
        } catch (const std::exception&) {
            malformed = true;
            continue;
        }
        t.deprel = cols[7];
        if (t.index != static_cast<int>(out.tokens.size()) + 1) {
            malformed = true;
            continue;
        }
        out.tokens.push_back(std::move(t));
    }
    if (!out.tokens.empty()) {
        if (!malformed && finish_sentence(out, lineno_, warnings_)) return true;
        ++skipped_;
        out.tokens.clear();
    }
    return false;
}

}  // namespace ac
