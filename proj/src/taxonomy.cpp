#include "ac/taxonomy.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

namespace ac {
namespace {

const std::vector<TermId> kEmpty;

struct Interner {
    std::unordered_map<std::string, TermId> index;
    std::vector<std::string> surfaces;

    TermId intern(const std::string& s) {
        auto it = index.find(s);
        if (it != index.end()) return it->second;
        TermId id = static_cast<TermId>(surfaces.size());
        index.emplace(s, id);
        surfaces.push_back(s);
        return id;
    }
};

// Tarjan SCC, iterative; reports components of size > 1.
std::vector<std::vector<TermId>> nontrivial_sccs(const std::vector<std::vector<TermId>>& out_edges) {
    const std::size_t n = out_edges.size();
    std::vector<int> idx(n, -1), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<TermId> stack;
    std::vector<std::vector<TermId>> result;
    int counter = 0;

    struct Frame {
        TermId v;
        std::size_t child;
    };
    for (TermId root = 0; root < n; ++root) {
        if (idx[root] != -1) continue;
        std::vector<Frame> frames{{root, 0}};
        idx[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.child < out_edges[f.v].size()) {
                TermId w = out_edges[f.v][f.child++];
                if (idx[w] == -1) {
                    idx[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], idx[w]);
                }
            } else {
                TermId v = f.v;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
                if (low[v] == idx[v]) {
                    std::vector<TermId> comp;
                    while (true) {
                        TermId w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        comp.push_back(w);
                        if (w == v) break;
                    }
                    if (comp.size() > 1) {
                        std::sort(comp.begin(), comp.end());
                        result.push_back(std::move(comp));
                    }
                }
            }
        }
    }
    return result;
}

}  // namespace

CoverageMode coverage_mode_from_string(std::string_view s) {
    if (s == "direct") return CoverageMode::kDirect;
    if (s == "transitive") return CoverageMode::kTransitive;
    throw std::runtime_error("unknown coverage mode: " + std::string(s));
}

Taxonomy Taxonomy::load(const std::string& path, const TaxonomyOptions& options,
                        std::vector<std::string>* warnings) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open taxonomy file: " + path);

    Taxonomy t;
    t.options_ = options;
    Interner interner;
    std::unordered_map<std::uint64_t, std::size_t> edge_index;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto cols = split(line, '\t');
        if (cols.size() != 2 && cols.size() != 3) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected 2 or 3 tab-separated columns, got " +
                                     std::to_string(cols.size()));
        }
        std::string entity = normalize_term(cols[0]);
        std::string concept_name = normalize_term(cols[1]);
        if (entity.empty() || concept_name.empty()) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": empty term");
        }
        std::int64_t count = 0;
        if (cols.size() == 3 && !cols[2].empty()) {
            try {
                count = std::stoll(cols[2]);
            } catch (const std::exception&) {
                throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                         ": bad count column: " + cols[2]);
            }
            if (count < 0)
                throw std::runtime_error(path + ":" + std::to_string(lineno) + ": negative count");
        }
        if (entity == concept_name) {
            if (options.strict)
                throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                         ": self-loop isA edge: " + entity);
            if (warnings)
                warnings->push_back(path + ":" + std::to_string(lineno) +
                                    ": skipped self-loop isA edge: " + entity);
            continue;
        }
        TermId e = interner.intern(entity);
        TermId c = interner.intern(concept_name);
        std::uint64_t key = (static_cast<std::uint64_t>(e) << 32) | c;
        auto it = edge_index.find(key);
        if (it != edge_index.end()) {
            t.edges_[it->second].count += count;  // duplicate lines merge
        } else {
            edge_index.emplace(key, t.edges_.size());
            t.edges_.push_back({e, c, count});
        }
    }
    if (t.edges_.empty()) throw std::runtime_error("empty taxonomy: " + path);

    t.surfaces_ = std::move(interner.surfaces);
    t.build_indices();

    if (warnings && options.coverage == CoverageMode::kTransitive) {
        std::vector<std::vector<TermId>> up(t.surfaces_.size());
        for (const Edge& e : t.edges_) up[e.entity].push_back(e.parent);
        for (const auto& comp : nontrivial_sccs(up)) {
            std::string msg = "isA cycle:";
            for (TermId id : comp) msg += " " + t.surfaces_[id];
            warnings->push_back(msg);
        }
    }
    return t;
}

Taxonomy Taxonomy::from_edges(const std::vector<std::pair<std::string, std::string>>& edges,
                              const TaxonomyOptions& options) {
    Taxonomy t;
    t.options_ = options;
    Interner interner;
    std::unordered_set<std::uint64_t> seen;
    for (const auto& [rawe, rawc] : edges) {
        std::string entity = normalize_term(rawe);
        std::string concept_name = normalize_term(rawc);
        if (entity == concept_name) {
            if (options.strict) throw std::runtime_error("self-loop isA edge: " + entity);
            continue;
        }
        TermId e = interner.intern(entity);
        TermId c = interner.intern(concept_name);
        std::uint64_t key = (static_cast<std::uint64_t>(e) << 32) | c;
        if (seen.insert(key).second) t.edges_.push_back({e, c, 0});
    }
    if (t.edges_.empty()) throw std::runtime_error("empty taxonomy");
    t.surfaces_ = std::move(interner.surfaces);
    t.build_indices();
    return t;
}

void Taxonomy::build_indices() {
    const std::size_t n = surfaces_.size();
    edge_count_ = edges_.size();
    lookup_.clear();
    lookup_.reserve(n);
    for (TermId i = 0; i < n; ++i) lookup_.emplace(surfaces_[i], i);
    direct_children_.assign(n, {});
    std::vector<std::vector<TermId>> direct_parents(n);
    for (const Edge& e : edges_) {
        direct_children_[e.parent].push_back(e.entity);
        direct_parents[e.entity].push_back(e.parent);
    }
    for (auto& v : direct_children_) std::sort(v.begin(), v.end());
    for (auto& v : direct_parents) std::sort(v.begin(), v.end());

    if (options_.coverage == CoverageMode::kDirect) {
        coverage_ = direct_children_;
        membership_ = std::move(direct_parents);
    } else {
        coverage_.assign(n, {});
        membership_.assign(n, {});
        // Reachability closure downward from every term; the graph is taken
        // as-is, so cycle members end up covering each other.
        std::vector<char> mark(n, 0);
        std::vector<TermId> touched, work;
        for (TermId c = 0; c < n; ++c) {
            if (direct_children_[c].empty()) continue;
            work.assign(direct_children_[c].begin(), direct_children_[c].end());
            while (!work.empty()) {
                TermId v = work.back();
                work.pop_back();
                if (mark[v] || v == c) continue;
                mark[v] = 1;
                touched.push_back(v);
                for (TermId w : direct_children_[v]) work.push_back(w);
            }
            std::sort(touched.begin(), touched.end());
            coverage_[c] = touched;
            for (TermId e : touched) {
                mark[e] = 0;
                membership_[e].push_back(c);
            }
            touched.clear();
        }
        for (auto& v : membership_) std::sort(v.begin(), v.end());
    }

    std::uint64_t h = fnv1a(coverage_mode_name(options_.coverage));
    for (const Edge& e : edges_) {
        h = fnv1a(surfaces_[e.entity], h);
        h = fnv1a("\t", h);
        h = fnv1a(surfaces_[e.parent], h);
        h = fnv1a("\n", h);
    }
    content_hash_ = h;
}

std::optional<TermId> Taxonomy::find(std::string_view surface) const {
    std::string norm = normalize_term(surface);
    auto it = lookup_.find(norm);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

const std::vector<TermId>& Taxonomy::covered_entities(TermId c) const {
    if (c >= coverage_.size()) throw std::runtime_error("unknown term id");
    return coverage_[c];
}

const std::vector<TermId>& Taxonomy::concepts_of(TermId e) const {
    if (e >= membership_.size()) throw std::runtime_error("unknown term id");
    return membership_[e];
}

Ratio Taxonomy::overlap(TermId c1, TermId c2) const {
    const auto& a = covered_entities(c1);
    const auto& b = covered_entities(c2);
    if (a.empty() || b.empty()) return {0, 1};
    std::int64_t inter = 0;
    auto ia = a.begin(), ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib)
            ++ia;
        else if (*ib < *ia)
            ++ib;
        else {
            ++inter;
            ++ia;
            ++ib;
        }
    }
    return {inter, static_cast<std::int64_t>(std::min(a.size(), b.size()))};
}

bool Taxonomy::isa(TermId e, TermId c) const {
    if (e >= surfaces_.size() || c >= surfaces_.size()) return false;
    const auto& cov = coverage_[c];
    return std::binary_search(cov.begin(), cov.end(), e);
}

bool Taxonomy::isa(std::string_view e, std::string_view c) const {
    auto ei = find(e);
    auto ci = find(c);
    if (!ei || !ci) return false;
    return isa(*ei, *ci);
}

namespace {
constexpr std::uint32_t kCacheMagic = 0x41435458;  // "ACTX"
constexpr std::uint32_t kCacheVersion = 1;

void put_u32(std::string& out, std::uint32_t v) { out.append(reinterpret_cast<const char*>(&v), 4); }
void put_u64(std::string& out, std::uint64_t v) { out.append(reinterpret_cast<const char*>(&v), 8); }
}  // namespace

void Taxonomy::save_cache(const std::string& path) const {
    std::string out;
    put_u32(out, kCacheMagic);
    put_u32(out, kCacheVersion);
    put_u32(out, options_.coverage == CoverageMode::kDirect ? 0u : 1u);
    put_u64(out, content_hash_);
    put_u32(out, static_cast<std::uint32_t>(surfaces_.size()));
    put_u32(out, static_cast<std::uint32_t>(edges_.size()));
    for (const auto& s : surfaces_) {
        put_u32(out, static_cast<std::uint32_t>(s.size()));
        out += s;
    }
    for (const Edge& e : edges_) {
        put_u32(out, e.entity);
        put_u32(out, e.parent);
        put_u64(out, static_cast<std::uint64_t>(e.count));
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write taxonomy cache: " + path);
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
}

std::optional<Taxonomy> Taxonomy::load_cache(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) return std::nullopt;
    std::string data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    std::size_t pos = 0;
    auto get_u32 = [&](std::uint32_t& v) {
        if (pos + 4 > data.size()) return false;
        std::memcpy(&v, data.data() + pos, 4);
        pos += 4;
        return true;
    };
    auto get_u64 = [&](std::uint64_t& v) {
        if (pos + 8 > data.size()) return false;
        std::memcpy(&v, data.data() + pos, 8);
        pos += 8;
        return true;
    };
    std::uint32_t magic = 0, version = 0, mode = 0, nterms = 0, nedges = 0;
    std::uint64_t hash = 0;
    if (!get_u32(magic) || magic != kCacheMagic) return std::nullopt;
    if (!get_u32(version) || version != kCacheVersion) return std::nullopt;
    if (!get_u32(mode) || !get_u64(hash) || !get_u32(nterms) || !get_u32(nedges)) return std::nullopt;
    Taxonomy t;
    t.options_.coverage = mode == 0 ? CoverageMode::kDirect : CoverageMode::kTransitive;
    t.surfaces_.reserve(nterms);
    for (std::uint32_t i = 0; i < nterms; ++i) {
        std::uint32_t len = 0;
        if (!get_u32(len) || pos + len > data.size()) return std::nullopt;
        t.surfaces_.emplace_back(data.substr(pos, len));
        pos += len;
    }
    for (std::uint32_t i = 0; i < nedges; ++i) {
        std::uint32_t e = 0, c = 0;
        std::uint64_t cnt = 0;
        if (!get_u32(e) || !get_u32(c) || !get_u64(cnt)) return std::nullopt;
        if (e >= nterms || c >= nterms) return std::nullopt;
        t.edges_.push_back({e, c, static_cast<std::int64_t>(cnt)});
    }
    if (t.edges_.empty()) return std::nullopt;
    t.build_indices();
    if (t.content_hash_ != hash) return std::nullopt;
    return t;
}

}  // namespace ac
