#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ac/types.hpp"

namespace ac {

enum class CoverageMode { kDirect, kTransitive };

inline const char* coverage_mode_name(CoverageMode m) {
    return m == CoverageMode::kDirect ? "direct" : "transitive";
}

CoverageMode coverage_mode_from_string(std::string_view s);

struct TaxonomyOptions {
    CoverageMode coverage = CoverageMode::kDirect;
    bool strict = false;  // strict: self-loops are errors instead of skipped
};

// Immutable isA graph. Terms are interned in first-appearance order, so
// loading the same file twice yields identical ids.
class Taxonomy {
public:
    static Taxonomy load(const std::string& path, const TaxonomyOptions& options = {},
                         std::vector<std::string>* warnings = nullptr);
    static Taxonomy from_edges(const std::vector<std::pair<std::string, std::string>>& edges,
                               const TaxonomyOptions& options = {});

    std::optional<TermId> find(std::string_view surface) const;
    const std::string& surface(TermId id) const { return surfaces_.at(id); }
    std::size_t term_count() const { return surfaces_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    CoverageMode coverage_mode() const { return options_.coverage; }

    // E_c: entities covered by c under the configured mode, sorted by id.
    const std::vector<TermId>& covered_entities(TermId c) const;

    // Concepts covering entity e under the configured mode, sorted by id.
    const std::vector<TermId>& concepts_of(TermId e) const;

    // |E_c1 ∩ E_c2| / min(|E_c1|, |E_c2|); {0,1} when either set is empty.
    Ratio overlap(TermId c1, TermId c2) const;

    bool isa(TermId e, TermId c) const;
    bool isa(std::string_view e, std::string_view c) const;

    // FNV-1a over the normalized edge list; stable across reloads.
    std::uint64_t content_hash() const { return content_hash_; }

    // Binary cache, invalidated on format-version or content mismatch.
    void save_cache(const std::string& path) const;
    static std::optional<Taxonomy> load_cache(const std::string& path);

private:
    Taxonomy() = default;
    void build_indices();

    struct Edge {
        TermId entity;
        TermId parent;
        std::int64_t count;  // optional third column, stored but unused by the math
    };

    TaxonomyOptions options_;
    std::vector<std::string> surfaces_;
    std::unordered_map<std::string, TermId> lookup_;
    std::vector<Edge> edges_;
    std::vector<std::vector<TermId>> direct_children_;  // concept -> entities
    std::vector<std::vector<TermId>> coverage_;         // per configured mode
    std::vector<std::vector<TermId>> membership_;       // inverse of coverage_
    std::size_t edge_count_ = 0;
    std::uint64_t content_hash_ = 0;
};

}  // namespace ac
