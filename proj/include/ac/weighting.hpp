#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ac/extraction.hpp"
#include "ac/taxonomy.hpp"
#include "ac/types.hpp"

namespace ac {

// Maximum-likelihood co-occurrence counts, kept separately per role so
// subject statistics never mix with object statistics.
class CorpusStats {
public:
    static CorpusStats from_records(const std::vector<ArgumentRecord>& records);

    std::int64_t pair_count(const std::string& verb, Role role, const std::string& arg) const;
    std::int64_t verb_marginal(const std::string& verb, Role role) const;
    std::int64_t arg_marginal(Role role, const std::string& arg) const;
    std::int64_t grand_total(Role role) const;

private:
    struct RoleStats {
        std::map<std::pair<std::string, std::string>, std::int64_t> pair;
        std::map<std::string, std::int64_t> verb;
        std::map<std::string, std::int64_t> arg;
        std::int64_t total = 0;
    };
    const RoleStats& role_stats(Role r) const {
        return r == Role::kSubject ? subject_ : object_;
    }
    RoleStats subject_, object_;
};

// Shannon entropy (bits) of the record's pattern distribution.
double pattern_entropy(const ArgumentRecord& record);

// Sign of pointwise mutual information; exact independence gives -1.
// Compared with cross-multiplied integer counts, no floats involved.
int binary_mi(const CorpusStats& stats, const std::string& verb, Role role,
              const std::string& arg);

inline double quality(double entropy, int mi) { return entropy * mi; }

struct QualityEntry {
    std::string verb;
    Role role = Role::kSubject;
    std::string arg;
    std::int64_t count = 0;  // occurrence count, used by the BL baseline
    double entropy = 0.0;
    int mi = 1;
    double q = 0.0;
};

class QualityTable {
public:
    static QualityTable compute(const std::vector<ArgumentRecord>& records);

    const std::vector<QualityEntry>& entries() const { return entries_; }

    // Entries of one (verb, role), in table order.
    std::vector<const QualityEntry*> for_verb(const std::string& verb, Role role) const;

    std::vector<std::pair<std::string, Role>> verb_roles() const;

    void write(std::ostream& out, const std::vector<std::string>& header_lines = {}) const;
    static QualityTable read(std::istream& in);

private:
    std::vector<QualityEntry> entries_;  // sorted by (verb, role, -q, arg)
    void sort_entries();
};

enum class WeightMode { kAc, kBl };

inline const char* weight_mode_name(WeightMode m) { return m == WeightMode::kAc ? "ac" : "bl"; }
WeightMode weight_mode_from_string(std::string_view s);

// Eq-style rollup: ac sums qualities of covered scored args, bl sums their
// occurrence counts (or distinct types when bl_types is set).
double concept_weight(const Taxonomy& taxonomy, const QualityTable& table,
                      const std::string& verb, Role role, TermId c, WeightMode mode,
                      bool bl_types = false);

}  // namespace ac
