#include "ac/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

namespace ac {

CorpusStats CorpusStats::from_records(const std::vector<ArgumentRecord>& records) {
    CorpusStats s;
    for (const ArgumentRecord& r : records) {
        RoleStats& rs = r.role == Role::kSubject ? s.subject_ : s.object_;
        rs.pair[{r.verb, r.arg}] += r.count;
        rs.verb[r.verb] += r.count;
        rs.arg[r.arg] += r.count;
        rs.total += r.count;
    }
    return s;
}

std::int64_t CorpusStats::pair_count(const std::string& verb, Role role,
                                     const std::string& arg) const {
    const auto& m = role_stats(role).pair;
    auto it = m.find({verb, arg});
    return it == m.end() ? 0 : it->second;
}

std::int64_t CorpusStats::verb_marginal(const std::string& verb, Role role) const {
    const auto& m = role_stats(role).verb;
    auto it = m.find(verb);
    return it == m.end() ? 0 : it->second;
}

std::int64_t CorpusStats::arg_marginal(Role role, const std::string& arg) const {
    const auto& m = role_stats(role).arg;
    auto it = m.find(arg);
    return it == m.end() ? 0 : it->second;
}

std::int64_t CorpusStats::grand_total(Role role) const { return role_stats(role).total; }

double pattern_entropy(const ArgumentRecord& record) {
    std::int64_t total = 0;
    for (const auto& [pat, c] : record.patterns) total += c;
    if (total <= 0 || record.patterns.size() < 2) return 0.0;
    double h = 0.0;
    for (const auto& [pat, c] : record.patterns) {
        if (c <= 0) continue;
        double p = static_cast<double>(c) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    return h < 0.0 ? 0.0 : h;
}

int binary_mi(const CorpusStats& stats, const std::string& verb, Role role,
              const std::string& arg) {
    std::int64_t cve = stats.pair_count(verb, role, arg);
    if (cve == 0) throw std::runtime_error("binary_mi: pair not in corpus: " + verb + "/" + arg);
    std::int64_t cv = stats.verb_marginal(verb, role);
    std::int64_t ce = stats.arg_marginal(role, arg);
    std::int64_t n = stats.grand_total(role);
    // p(v,e) > p(v) p(e)  <=>  c(v,e) * N > c(v) * c(e), exactly
    return static_cast<__int128>(cve) * n > static_cast<__int128>(cv) * ce ? 1 : -1;
}

QualityTable QualityTable::compute(const std::vector<ArgumentRecord>& records) {
    CorpusStats stats = CorpusStats::from_records(records);
    QualityTable t;
    t.entries_.reserve(records.size());
    for (const ArgumentRecord& r : records) {
        QualityEntry e;
        e.verb = r.verb;
        e.role = r.role;
        e.arg = r.arg;
        e.count = r.count;
        e.entropy = pattern_entropy(r);
        e.mi = binary_mi(stats, r.verb, r.role, r.arg);
        e.q = quality(e.entropy, e.mi);
        t.entries_.push_back(std::move(e));
    }
    t.sort_entries();
    return t;
}

void QualityTable::sort_entries() {
    std::sort(entries_.begin(), entries_.end(), [](const QualityEntry& a, const QualityEntry& b) {
        if (a.verb != b.verb) return a.verb < b.verb;
        if (a.role != b.role) return a.role < b.role;
        if (a.q != b.q) return a.q > b.q;
        return a.arg < b.arg;
    });
}

std::vector<const QualityEntry*> QualityTable::for_verb(const std::string& verb, Role role) const {
    std::vector<const QualityEntry*> out;
    for (const QualityEntry& e : entries_)
        if (e.verb == verb && e.role == role) out.push_back(&e);
    return out;
}

std::vector<std::pair<std::string, Role>> QualityTable::verb_roles() const {
    std::vector<std::pair<std::string, Role>> out;
    for (const QualityEntry& e : entries_) {
        if (out.empty() || out.back().first != e.verb || out.back().second != e.role)
            out.emplace_back(e.verb, e.role);
    }
    return out;
}

void QualityTable::write(std::ostream& out, const std::vector<std::string>& header_lines) const {
    for (const auto& h : header_lines) out << "# " << h << "\n";
    for (const QualityEntry& e : entries_) {
        out << e.verb << '\t' << role_name(e.role) << '\t' << e.arg << '\t'
            << format_fixed(e.entropy) << '\t' << (e.mi > 0 ? "1" : "-1") << '\t'
            << format_fixed(e.q) << '\n';
    }
}

QualityTable QualityTable::read(std::istream& in) {
    QualityTable t;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto cols = split(line, '\t');
        if (cols.size() != 6)
            throw std::runtime_error("quality table line " + std::to_string(lineno) +
                                     ": expected 6 columns");
        QualityEntry e;
        e.verb = cols[0];
        e.role = role_from_string(cols[1]);
        e.arg = cols[2];
        e.entropy = std::stod(cols[3]);
        e.mi = std::stoi(cols[4]) >= 0 ? 1 : -1;
        e.q = std::stod(cols[5]);
        t.entries_.push_back(std::move(e));
    }
    t.sort_entries();
    return t;
}

WeightMode weight_mode_from_string(std::string_view s) {
    if (s == "ac") return WeightMode::kAc;
    if (s == "bl") return WeightMode::kBl;
    throw std::runtime_error("unknown weight mode: " + std::string(s));
}

double concept_weight(const Taxonomy& taxonomy, const QualityTable& table,
                      const std::string& verb, Role role, TermId c, WeightMode mode,
                      bool bl_types) {
    double w = 0.0;
    for (const QualityEntry& e : table.entries()) {
        if (e.verb != verb || e.role != role) continue;
        auto id = taxonomy.find(e.arg);
        if (!id || !taxonomy.isa(*id, c)) continue;
        if (mode == WeightMode::kAc)
            w += e.q;
        else
            w += bl_types ? 1.0 : static_cast<double>(e.count);
    }
    return w;
}

}  // namespace ac
