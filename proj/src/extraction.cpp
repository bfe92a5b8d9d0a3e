#include "ac/extraction.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <tuple>

namespace ac {
namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string lemma_of(const DepToken& t) {
    if (!t.lemma.empty() && t.lemma != "_") return lower(t.lemma);
    return lower(t.form);
}

const std::string& alias(const ExtractionConfig& cfg, const std::string& deprel) {
    auto it = cfg.deprel_aliases.find(deprel);
    return it == cfg.deprel_aliases.end() ? deprel : it->second;
}

std::optional<Role> role_for_deprel(const std::string& deprel) {
    if (deprel == "nsubj" || deprel == "agent") return Role::kSubject;
    if (deprel == "dobj" || deprel == "nsubjpass") return Role::kObject;
    return std::nullopt;
}

}  // namespace

bool is_verbal_pos(std::string_view pos) {
    return pos.substr(0, 2) == "VB" || pos == "VERB";
}

std::string PatternKey::to_string() const {
    std::string out(kind == Kind::kChild ? "child" : "sibling");
    for (const std::string* f : {&pos_arg, &dep_arg, &pos_other, &dep_other}) {
        out += '|';
        out += *f;
    }
    return out;
}

PatternKey PatternKey::parse(std::string_view text) {
    auto parts = split(text, '|');
    if (parts.size() != 5) throw std::runtime_error("bad pattern key: " + std::string(text));
    PatternKey k;
    if (parts[0] == "child")
        k.kind = Kind::kChild;
    else if (parts[0] == "sibling")
        k.kind = Kind::kSibling;
    else
        throw std::runtime_error("bad pattern kind: " + parts[0]);
    k.pos_arg = parts[1];
    k.dep_arg = parts[2];
    k.pos_other = parts[3];
    k.dep_other = parts[4];
    return k;
}

std::string expand_phrase(const Sentence& sentence, int arg_index, const Taxonomy& taxonomy,
                          int max_window) {
    const DepToken* arg = sentence.token(arg_index);
    if (!arg) throw std::runtime_error("expand_phrase: bad token index");
    const int n = static_cast<int>(sentence.tokens.size());

    std::vector<char> in_subtree(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> work{arg_index};
    in_subtree[static_cast<std::size_t>(arg_index)] = 1;
    while (!work.empty()) {
        int v = work.back();
        work.pop_back();
        for (const DepToken& t : sentence.tokens) {
            if (t.head == v && !in_subtree[static_cast<std::size_t>(t.index)]) {
                in_subtree[static_cast<std::size_t>(t.index)] = 1;
                work.push_back(t.index);
            }
        }
    }

    for (int len = std::min(max_window, n); len >= 2; --len) {
        for (int start = std::max(1, arg_index - len + 1); start <= arg_index; ++start) {
            int end = start + len - 1;
            if (end > n) continue;
            bool ok = true;
            for (int i = start; i <= end && ok; ++i) ok = in_subtree[static_cast<std::size_t>(i)];
            if (!ok) continue;
            std::string phrase;
            for (int i = start; i <= end; ++i) {
                if (!phrase.empty()) phrase += ' ';
                phrase += sentence.tokens[static_cast<std::size_t>(i - 1)].form;
            }
            std::string norm = normalize_term(phrase);
            if (taxonomy.find(norm)) return norm;
        }
    }
    return lemma_of(*arg);
}

ArgumentRecord& InstanceAggregator::record_for(const std::string& verb, Role role,
                                               const std::string& arg) {
    auto key = std::make_tuple(verb, role, arg);
    auto it = records_.find(key);
    if (it == records_.end()) {
        it = records_.emplace(key, ArgumentRecord{verb, role, arg, 0, {}}).first;
    }
    return it->second;
}

void InstanceAggregator::add_sentence(const Sentence& sentence) {
    for (const DepToken& t : sentence.tokens) {
        const std::string dep = alias(config_, t.deprel);
        auto role = role_for_deprel(dep);
        if (!role) continue;
        const DepToken* head = sentence.token(t.head);
        if (!head || !is_verbal_pos(head->pos)) continue;

        std::string verb = lemma_of(*head);
        std::string arg = expand_phrase(sentence, t.index, taxonomy_, config_.max_window);
        ArgumentRecord& rec = record_for(verb, *role, arg);
        rec.count += 1;
        for (const DepToken& o : sentence.tokens) {
            if (o.index == t.index) continue;
            if (o.head == t.index) {
                PatternKey k{PatternKey::Kind::kChild, t.pos, dep, o.pos, alias(config_, o.deprel)};
                rec.patterns[k] += 1;
            } else if (o.head == t.head) {
                PatternKey k{PatternKey::Kind::kSibling, t.pos, dep, o.pos, alias(config_, o.deprel)};
                rec.patterns[k] += 1;
            }
        }
    }
}

void InstanceAggregator::add_arcs_line(std::string_view line) {
    if (line.empty() || line[0] == '#') return;
    auto cols = split(line, '\t');
    if (cols.size() != 3) {
        ++bad_lines_;
        return;
    }
    auto rsplit2 = [](const std::string& s, std::string& head, std::string& tail) {
        auto pos = s.rfind('/');
        if (pos == std::string::npos) return false;
        head = s.substr(0, pos);
        tail = s.substr(pos + 1);
        return true;
    };
    std::string head_word, head_pos;
    if (!rsplit2(cols[0], head_word, head_pos) || !is_verbal_pos(head_pos)) {
        ++bad_lines_;
        return;
    }
    std::int64_t count = 0;
    try {
        count = std::stoll(cols[2]);
    } catch (const std::exception&) {
        ++bad_lines_;
        return;
    }
    if (count <= 0) {
        ++bad_lines_;
        return;
    }

    struct Entry {
        std::string word, pos, dep;
    };
    std::vector<Entry> entries;
    for (const std::string& piece : split(cols[1], ',')) {
        std::string rest, dep, word, pos;
        if (!rsplit2(piece, rest, dep) || !rsplit2(rest, word, pos)) {
            ++bad_lines_;
            return;
        }
        entries.push_back({word, pos, alias(config_, dep)});
    }
    if (entries.empty()) {
        ++bad_lines_;
        return;
    }
    auto role = role_for_deprel(entries[0].dep);
    if (!role) return;  // not a subject/object arc, not an error

    ArgumentRecord& rec = record_for(lower(head_word), *role, normalize_term(entries[0].word));
    rec.count += count;
    for (std::size_t i = 1; i < entries.size(); ++i) {
        PatternKey k{PatternKey::Kind::kSibling, entries[0].pos, entries[0].dep, entries[i].pos,
                     entries[i].dep};
        rec.patterns[k] += count;
    }
}

void InstanceAggregator::merge(const InstanceAggregator& other) {
    for (const auto& [key, rec] : other.records_) {
        ArgumentRecord& mine = record_for(rec.verb, rec.role, rec.arg);
        mine.count += rec.count;
        for (const auto& [pat, c] : rec.patterns) mine.patterns[pat] += c;
    }
    bad_lines_ += other.bad_lines_;
}

std::vector<ArgumentRecord> InstanceAggregator::records() const {
    std::vector<ArgumentRecord> out;
    out.reserve(records_.size());
    for (const auto& [key, rec] : records_) out.push_back(rec);
    return out;  // map iteration order == (verb, role, arg) order
}

void write_records(std::ostream& out, const std::vector<ArgumentRecord>& records,
                   const std::vector<std::string>& header_lines) {
    for (const auto& h : header_lines) out << "# " << h << "\n";
    for (const ArgumentRecord& r : records) {
        out << r.verb << '\t' << role_name(r.role) << '\t' << r.arg << '\t' << r.count << '\t';
        bool first = true;
        for (const auto& [pat, c] : r.patterns) {
            if (!first) out << ';';
            first = false;
            out << pat.to_string() << ':' << c;
        }
        out << '\n';
    }
}

std::vector<ArgumentRecord> read_records(std::istream& in) {
    std::vector<ArgumentRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto cols = split(line, '\t');
        if (cols.size() != 5)
            throw std::runtime_error("records line " + std::to_string(lineno) +
                                     ": expected 5 columns");
        ArgumentRecord r;
        r.verb = cols[0];
        r.role = role_from_string(cols[1]);
        r.arg = cols[2];
        r.count = std::stoll(cols[3]);
        if (!cols[4].empty()) {
            for (const std::string& piece : split(cols[4], ';')) {
                auto colon = piece.rfind(':');
                if (colon == std::string::npos)
                    throw std::runtime_error("records line " + std::to_string(lineno) +
                                             ": bad pattern entry");
                r.patterns[PatternKey::parse(piece.substr(0, colon))] +=
                    std::stoll(piece.substr(colon + 1));
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace ac
