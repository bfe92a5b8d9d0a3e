#include "ac/solver.hpp"

#include <algorithm>
#include <map>

namespace ac {

void ConceptGraph::set_edges(const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    adj.assign(concepts.size(), std::vector<char>(concepts.size(), 0));
    for (auto [i, j] : edges) {
        if (i == j) continue;
        adj[i][j] = adj[j][i] = 1;
    }
}

void ConceptGraph::make_complete() {
    adj.assign(concepts.size(), std::vector<char>(concepts.size(), 1));
    for (std::size_t i = 0; i < concepts.size(); ++i) adj[i][i] = 0;
}

void ConceptGraph::sort_vertices() {
    std::sort(concepts.begin(), concepts.end(), [](const ConceptVertex& a, const ConceptVertex& b) {
        if (a.weight != b.weight) return a.weight > b.weight;
        return a.term < b.term;
    });
}

ConceptGraph build_concept_graph(const Taxonomy& taxonomy, const QualityTable& quality,
                                 const std::string& verb, Role role, Ratio tau,
                                 const BuildOptions& options) {
    ConceptGraph g;
    g.verb = verb;
    g.role = role;
    g.tau = tau;

    // Candidate concepts: everything covering at least one scored argument.
    // Weights accumulate through the membership index; the slower isa-scan
    // in concept_weight() is the cross-check used by tests.
    std::map<TermId, double> weights;
    for (const QualityEntry& e : quality.entries()) {
        if (e.verb != verb || e.role != role) continue;
        auto id = taxonomy.find(e.arg);
        if (!id) continue;
        double contrib = options.mode == WeightMode::kAc
                             ? e.q
                             : (options.bl_types ? 1.0 : static_cast<double>(e.count));
        for (TermId c : taxonomy.concepts_of(*id)) weights[c] += contrib;
    }

    g.concepts.reserve(weights.size());
    for (const auto& [term, w] : weights)
        g.concepts.push_back({term, w, taxonomy.covered_entities(term).size()});
    g.sort_vertices();
    if (options.candidate_cap > 0 && g.concepts.size() > options.candidate_cap)
        g.concepts.resize(options.candidate_cap);

    const std::size_t n = g.concepts.size();
    g.adj.assign(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            Ratio ov = taxonomy.overlap(g.concepts[i].term, g.concepts[j].term);
            if (ratio_less(ov, tau)) g.adj[i][j] = g.adj[j][i] = 1;
        }
    }
    return g;
}

namespace {

struct BbState {
    const ConceptGraph& graph;
    std::size_t k;
    std::uint64_t budget;

    std::vector<std::size_t> chosen;
    std::vector<double> partial;  // partial[d] = score of chosen[0..d-1]
    bool have_best = false;
    double best_score = 0.0;
    std::vector<std::size_t> best_chosen;
    std::uint64_t explored = 0;
    bool budget_hit = false;

    BbState(const ConceptGraph& g, std::size_t kk, std::uint64_t b)
        : graph(g), k(kk), budget(b) {
        partial.push_back(0.0);
    }

    double weight(std::size_t i) const { return graph.concepts[i].weight; }

    bool is_clique_with(std::size_t i) const {
        for (std::size_t j : chosen)
            if (!graph.adjacent(i, j)) return false;
        return true;
    }

    // pi_c plus the next (k - ck) weights starting at index i. The list is
    // sorted descending, so these are the largest weights any completion
    // from here can still take.
    double bound(std::size_t i) const {
        double b = partial.back();
        std::size_t need = k - chosen.size();
        for (std::size_t j = i; j < graph.size() && need > 0; ++j, --need) b += weight(j);
        return b;
    }

    bool better_than_best(double score) const { return !have_best || score > best_score; }

    void search(std::size_t i) {
        if (budget_hit) return;
        ++explored;
        if (budget != 0 && explored > budget) {
            budget_hit = true;
            return;
        }
        // Record before the leaf check: a clique completed by the last
        // vertex must still count.
        if (chosen.size() == k) {
            if (better_than_best(partial.back())) {
                have_best = true;
                best_score = partial.back();
                best_chosen = chosen;
            }
            return;
        }
        if (i >= graph.size()) return;
        if (is_clique_with(i) && better_than_best(bound(i))) {
            chosen.push_back(i);
            partial.push_back(partial[partial.size() - 1] + weight(i));
            search(i + 1);
            partial.pop_back();
            chosen.pop_back();
        }
        if (better_than_best(bound(i + 1))) search(i + 1);
    }
};

}  // namespace

std::optional<Solution> solve_bb(const ConceptGraph& graph, std::size_t k,
                                 const SolveOptions& options) {
    if (k < 1) throw std::runtime_error("solve_bb: k must be >= 1");
    if (k > graph.size()) return std::nullopt;
    BbState state(graph, k, options.node_budget);
    state.search(0);
    if (!state.have_best) return std::nullopt;
    Solution s;
    s.chosen = state.best_chosen;
    s.score = state.best_score;
    s.explored_nodes = state.explored;
    s.optimal = !state.budget_hit;
    return s;
}

std::optional<Solution> solve_bruteforce(const ConceptGraph& graph, std::size_t k) {
    if (k < 1) throw std::runtime_error("solve_bruteforce: k must be >= 1");
    const std::size_t n = graph.size();
    if (n > 25) throw std::runtime_error("solve_bruteforce: graph too large (> 25 vertices)");
    if (k > n) return std::nullopt;

    std::vector<std::size_t> comb(k);
    for (std::size_t i = 0; i < k; ++i) comb[i] = i;

    std::optional<Solution> best;
    auto consider = [&](const std::vector<std::size_t>& c) {
        for (std::size_t a = 0; a < c.size(); ++a)
            for (std::size_t b = a + 1; b < c.size(); ++b)
                if (!graph.adjacent(c[a], c[b])) return;
        double score = 0.0;
        for (std::size_t i : c) score += graph.concepts[i].weight;  // ascending-index sum
        if (!best || score > best->score) {
            best = Solution{c, score, 0, true};
        }
    };

    // Lexicographic combination enumeration; first-found wins ties.
    while (true) {
        consider(comb);
        std::size_t i = k;
        while (i > 0 && comb[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) break;
        --i;
        ++comb[i];
        for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
    return best;
}

}  // namespace ac
