#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ac/types.hpp"
#include "ac/weighting.hpp"

namespace ac {

struct LexiconConcept {
    std::string surface;
    double weight = 0.0;
    std::size_t coverage_size = 0;
};

struct LexiconEntry {
    std::string verb;
    Role role = Role::kSubject;
    int k = 0;
    std::string tau;
    WeightMode mode = WeightMode::kAc;
    bool solved = false;
    std::vector<LexiconConcept> concepts;  // descending weight
    double score = 0.0;
    bool optimal = true;
    std::uint64_t explored_nodes = 0;
};

class ConceptLexicon {
public:
    void add(LexiconEntry entry);
    void finalize();  // sort by (verb, role)

    const std::vector<LexiconEntry>& entries() const { return entries_; }
    const LexiconEntry* lookup(const std::string& verb, Role role) const;

    void write(std::ostream& out, const std::vector<std::string>& header_lines = {}) const;
    static ConceptLexicon read(std::istream& in, std::vector<std::string>* header_lines = nullptr);

private:
    std::vector<LexiconEntry> entries_;
};

}  // namespace ac
