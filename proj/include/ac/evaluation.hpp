#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ac/lexicon.hpp"
#include "ac/taxonomy.hpp"
#include "ac/types.hpp"

namespace ac {

struct EvalPair {
    std::string verb;
    Role role = Role::kObject;
    std::string term;
    bool positive = true;
    std::string source_id;
};

// Seeded swap-based negative generation: floor(fraction * n) pairs are
// selected (rounded down to even per role), matched into 2-cycles across
// different verbs of the same role, and their terms exchanged. Swapped
// pairs come back labeled negative, everything else positive, in input
// order.
std::vector<EvalPair> generate_swaps(const std::vector<EvalPair>& positives, std::uint64_t seed,
                                     double fraction);

// Optional manual relabeling: lines `verb<TAB>role<TAB>term<TAB>label`.
void apply_overrides(std::vector<EvalPair>& pairs, std::istream& overrides);

struct Prediction {
    bool positive = false;
    std::string matched_concept;  // first match in weight order, when positive
    std::string reason;           // when negative
};

Prediction identify(const ConceptLexicon& lexicon, const Taxonomy& taxonomy,
                    const EvalPair& pair);

struct AccuracyReport {
    std::size_t total = 0;
    std::size_t correct = 0;
    std::size_t subj_total = 0, subj_correct = 0;
    std::size_t obj_total = 0, obj_correct = 0;
    std::vector<std::size_t> error_indices;

    double accuracy() const { return total ? static_cast<double>(correct) / total : 0.0; }
    double subj_accuracy() const {
        return subj_total ? static_cast<double>(subj_correct) / subj_total : 0.0;
    }
    double obj_accuracy() const {
        return obj_total ? static_cast<double>(obj_correct) / obj_total : 0.0;
    }
};

AccuracyReport score(const std::vector<Prediction>& predictions,
                     const std::vector<EvalPair>& gold);

void write_pairs(std::ostream& out, const std::vector<EvalPair>& pairs,
                 const std::vector<std::string>& header_lines = {});
std::vector<EvalPair> read_pairs(std::istream& in);

// Bounded-int and shuffle helpers with pinned algorithms, so seeded runs
// are identical across standard libraries.
std::uint64_t rng_below(std::uint64_t& state, std::uint64_t n);
void seeded_shuffle(std::vector<std::size_t>& items, std::uint64_t seed);

}  // namespace ac
