#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ac/taxonomy.hpp"
#include "ac/types.hpp"
#include "ac/weighting.hpp"

namespace ac {

struct ConceptVertex {
    TermId term = kInvalidTerm;
    double weight = 0.0;
    std::size_t coverage_size = 0;
};

// Per-(verb, role) graph: vertices sorted by descending weight (ties by
// ascending TermId); an edge joins two concepts whose overlap is strictly
// below tau.
struct ConceptGraph {
    std::string verb;
    Role role = Role::kSubject;
    Ratio tau{1, 5};
    std::vector<ConceptVertex> concepts;
    std::vector<std::vector<char>> adj;

    std::size_t size() const { return concepts.size(); }
    bool adjacent(std::size_t i, std::size_t j) const { return i != j && adj[i][j]; }

    // Builds adjacency from an explicit edge list over vertex indices; used
    // by tests and random-instance generators.
    void set_edges(const std::vector<std::pair<std::size_t, std::size_t>>& edges);
    void make_complete();
    void sort_vertices();
};

struct BuildOptions {
    WeightMode mode = WeightMode::kAc;
    bool bl_types = false;
    std::size_t candidate_cap = 500;  // keep only the top-N concepts by weight
};

ConceptGraph build_concept_graph(const Taxonomy& taxonomy, const QualityTable& quality,
                                 const std::string& verb, Role role, Ratio tau,
                                 const BuildOptions& options = {});

struct Solution {
    std::vector<std::size_t> chosen;  // ascending vertex indices
    double score = 0.0;
    std::uint64_t explored_nodes = 0;
    bool optimal = true;
};

struct SolveOptions {
    std::uint64_t node_budget = 0;  // 0 = unlimited
};

// Depth-first branch-and-bound over the include/exclude decision tree.
// Prunes on clique feasibility and on the optimistic bound formed by the
// next k-ck weights in sorted order. Returns nullopt when no k-clique
// exists. Ties between equal-score optima resolve to the lexicographically
// smallest index set.
std::optional<Solution> solve_bb(const ConceptGraph& graph, std::size_t k,
                                 const SolveOptions& options = {});

// Exhaustive k-subset enumeration with the same tie rule; the verification
// oracle for solve_bb. Refuses graphs with more than 25 vertices.
std::optional<Solution> solve_bruteforce(const ConceptGraph& graph, std::size_t k);

}  // namespace ac
