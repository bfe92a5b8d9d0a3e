#include "ac/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>

namespace ac {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t rng_below(std::uint64_t& state, std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(splitmix64(state)) * n) >> 64);
}

void seeded_shuffle(std::vector<std::size_t>& items, std::uint64_t seed) {
    std::uint64_t state = seed;
    for (std::size_t i = items.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng_below(state, i));
        std::swap(items[i - 1], items[j]);
    }
}

std::vector<EvalPair> generate_swaps(const std::vector<EvalPair>& positives, std::uint64_t seed,
                                     double fraction) {
    if (!(fraction > 0.0 && fraction < 1.0))
        throw std::runtime_error("generate_swaps: fraction must be in (0, 1)");
    const std::size_t n = positives.size();
    bool multi_verb = false;
    for (std::size_t i = 1; i < n && !multi_verb; ++i)
        multi_verb = positives[i].verb != positives[0].verb;
    if (!multi_verb) throw std::runtime_error("generate_swaps: cannot swap within a single verb");
    std::size_t m = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n)));

    std::vector<EvalPair> out = positives;
    for (EvalPair& p : out) p.positive = true;
    if (m == 0) return out;

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    seeded_shuffle(order, seed);
    order.resize(m);

    // Pair selected indices within each role; a selection left without a
    // distinct-verb partner stays positive.
    std::map<Role, std::vector<std::size_t>> by_role;
    for (std::size_t idx : order) by_role[out[idx].role].push_back(idx);

    for (auto& [role, sel] : by_role) {
        std::vector<char> used(sel.size(), 0);
        for (std::size_t a = 0; a < sel.size(); ++a) {
            if (used[a]) continue;
            for (std::size_t b = a + 1; b < sel.size(); ++b) {
                if (used[b]) continue;
                if (out[sel[a]].verb == out[sel[b]].verb) continue;
                std::swap(out[sel[a]].term, out[sel[b]].term);
                out[sel[a]].positive = false;
                out[sel[b]].positive = false;
                used[a] = used[b] = 1;
                break;
            }
        }
    }
    return out;
}

void apply_overrides(std::vector<EvalPair>& pairs, std::istream& overrides) {
    std::map<std::tuple<std::string, Role, std::string>, bool> table;
    std::string line;
    while (std::getline(overrides, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto cols = split(line, '\t');
        if (cols.size() != 4) throw std::runtime_error("override line needs 4 columns: " + line);
        bool label;
        if (cols[3] == "positive")
            label = true;
        else if (cols[3] == "negative")
            label = false;
        else
            throw std::runtime_error("override label must be positive/negative: " + cols[3]);
        table[{cols[0], role_from_string(cols[1]), normalize_term(cols[2])}] = label;
    }
    for (EvalPair& p : pairs) {
        auto it = table.find({p.verb, p.role, normalize_term(p.term)});
        if (it != table.end()) p.positive = it->second;
    }
}

Prediction identify(const ConceptLexicon& lexicon, const Taxonomy& taxonomy,
                    const EvalPair& pair) {
    const LexiconEntry* entry = lexicon.lookup(pair.verb, pair.role);
    if (!entry || !entry->solved) return {false, "", "verb not in lexicon"};
    auto term = taxonomy.find(pair.term);
    if (!term) return {false, "", "term not in taxonomy"};
    for (const LexiconConcept& c : entry->concepts) {
        auto cid = taxonomy.find(c.surface);
        if (cid && taxonomy.isa(*term, *cid)) return {true, c.surface, ""};
    }
    return {false, "", "no covering concept"};
}

AccuracyReport score(const std::vector<Prediction>& predictions,
                     const std::vector<EvalPair>& gold) {
    if (predictions.size() != gold.size() || gold.empty())
        throw std::runtime_error("score: prediction/gold length mismatch");
    AccuracyReport r;
    for (std::size_t i = 0; i < gold.size(); ++i) {
        bool ok = predictions[i].positive == gold[i].positive;
        ++r.total;
        if (ok) ++r.correct;
        if (gold[i].role == Role::kSubject) {
            ++r.subj_total;
            if (ok) ++r.subj_correct;
        } else {
            ++r.obj_total;
            if (ok) ++r.obj_correct;
        }
        if (!ok) r.error_indices.push_back(i);
    }
    return r;
}

void write_pairs(std::ostream& out, const std::vector<EvalPair>& pairs,
                 const std::vector<std::string>& header_lines) {
    for (const auto& h : header_lines) out << "# " << h << "\n";
    for (const EvalPair& p : pairs) {
        out << p.verb << '\t' << role_name(p.role) << '\t' << p.term << '\t'
            << (p.positive ? "positive" : "negative") << '\t' << p.source_id << '\n';
    }
}

std::vector<EvalPair> read_pairs(std::istream& in) {
    std::vector<EvalPair> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto cols = split(line, '\t');
        if (cols.size() != 5)
            throw std::runtime_error("eval pairs line " + std::to_string(lineno) +
                                     ": expected 5 columns");
        EvalPair p;
        p.verb = cols[0];
        p.role = role_from_string(cols[1]);
        p.term = normalize_term(cols[2]);
        if (cols[3] == "positive")
            p.positive = true;
        else if (cols[3] == "negative")
            p.positive = false;
        else
            throw std::runtime_error("eval pairs line " + std::to_string(lineno) + ": bad label");
        p.source_id = cols[4];
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace ac
