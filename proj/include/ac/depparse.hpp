#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ac/types.hpp"

namespace ac {

struct DepToken {
    int index = 0;  // 1-based
    std::string form;
    std::string lemma;
    std::string pos;
    int head = 0;  // 0 = root
    std::string deprel;
};

struct Sentence {
    std::vector<DepToken> tokens;  // tokens[i].index == i + 1

    const DepToken* token(int index) const {
        if (index < 1 || index > static_cast<int>(tokens.size())) return nullptr;
        return &tokens[static_cast<std::size_t>(index - 1)];
    }
};

// Streaming CoNLL-U reader. Comment and multiword/empty-node lines are
// skipped; malformed sentences are dropped and counted, never fatal.
class ConlluReader {
public:
    explicit ConlluReader(std::istream& in) : in_(in) {}

    bool next(Sentence& out);

    std::size_t skipped_sentences() const { return skipped_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

private:
    std::istream& in_;
    std::size_t skipped_ = 0;
    std::size_t lineno_ = 0;
    std::vector<std::string> warnings_;
};

}  // namespace ac
