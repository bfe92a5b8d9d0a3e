#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "ac/depparse.hpp"
#include "ac/taxonomy.hpp"
#include "ac/types.hpp"

namespace ac {

struct PatternKey {
    enum class Kind { kChild, kSibling };
    Kind kind = Kind::kChild;
    std::string pos_arg;
    std::string dep_arg;
    std::string pos_other;
    std::string dep_other;

    auto operator<=>(const PatternKey&) const = default;

    std::string to_string() const;
    static PatternKey parse(std::string_view text);
};

struct ArgumentRecord {
    std::string verb;
    Role role = Role::kSubject;
    std::string arg;
    std::int64_t count = 0;
    std::map<PatternKey, std::int64_t> patterns;
};

struct ExtractionConfig {
    // UD labels folded onto the Stanford-dependency names the rules use.
    std::map<std::string, std::string> deprel_aliases = {{"obj", "dobj"},
                                                         {"nsubj:pass", "nsubjpass"}};
    int max_window = 4;
};

// Aggregates (verb, role, arg) instances across sentences. Merge order
// never affects the result.
class InstanceAggregator {
public:
    explicit InstanceAggregator(const Taxonomy& taxonomy, ExtractionConfig config = {})
        : taxonomy_(taxonomy), config_(std::move(config)) {}

    void add_sentence(const Sentence& sentence);

    // Arcs line: head_word/pos<TAB>arg_word/pos/deprel[,sib/pos/deprel...]<TAB>count
    void add_arcs_line(std::string_view line);

    void merge(const InstanceAggregator& other);

    // Sorted by (verb, role, arg).
    std::vector<ArgumentRecord> records() const;

    std::size_t bad_lines() const { return bad_lines_; }

private:
    const Taxonomy& taxonomy_;
    ExtractionConfig config_;
    std::map<std::tuple<std::string, Role, std::string>, ArgumentRecord> records_;
    std::size_t bad_lines_ = 0;

    ArgumentRecord& record_for(const std::string& verb, Role role, const std::string& arg);
};

// Longest taxonomy-recognized span (length >= 2, within the argument's
// subtree, containing the argument, at most max_window tokens); falls back
// to the argument's lemma.
std::string expand_phrase(const Sentence& sentence, int arg_index, const Taxonomy& taxonomy,
                          int max_window);

bool is_verbal_pos(std::string_view pos);

void write_records(std::ostream& out, const std::vector<ArgumentRecord>& records,
                   const std::vector<std::string>& header_lines = {});
std::vector<ArgumentRecord> read_records(std::istream& in);

}  // namespace ac
