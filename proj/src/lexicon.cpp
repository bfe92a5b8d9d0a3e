#include "ac/lexicon.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

namespace ac {

void ConceptLexicon::add(LexiconEntry entry) { entries_.push_back(std::move(entry)); }

void ConceptLexicon::finalize() {
    std::sort(entries_.begin(), entries_.end(), [](const LexiconEntry& a, const LexiconEntry& b) {
        if (a.verb != b.verb) return a.verb < b.verb;
        return a.role < b.role;
    });
}

const LexiconEntry* ConceptLexicon::lookup(const std::string& verb, Role role) const {
    for (const LexiconEntry& e : entries_)
        if (e.verb == verb && e.role == role) return &e;
    return nullptr;
}

void ConceptLexicon::write(std::ostream& out, const std::vector<std::string>& header_lines) const {
    for (const auto& h : header_lines) out << "# " << h << "\n";
    for (const LexiconEntry& e : entries_) {
        out << e.verb << '\t' << role_name(e.role) << '\t' << e.k << '\t' << e.tau << '\t'
            << weight_mode_name(e.mode) << '\t';
        if (!e.solved) {
            out << "no-solution\t-\t-\t" << e.explored_nodes << '\n';
            continue;
        }
        bool first = true;
        for (const LexiconConcept& c : e.concepts) {
            if (!first) out << ';';
            first = false;
            out << c.surface << ':' << format_fixed(c.weight) << ':' << c.coverage_size;
        }
        out << '\t' << format_fixed(e.score) << '\t' << (e.optimal ? "optimal" : "budget") << '\t'
            << e.explored_nodes << '\n';
    }
}

ConceptLexicon ConceptLexicon::read(std::istream& in, std::vector<std::string>* header_lines) {
    ConceptLexicon lex;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (header_lines) {
                std::string h = line.substr(1);
                if (!h.empty() && h[0] == ' ') h.erase(0, 1);
                header_lines->push_back(h);
            }
            continue;
        }
        auto cols = split(line, '\t');
        if (cols.size() != 9)
            throw std::runtime_error("lexicon line " + std::to_string(lineno) +
                                     ": expected 9 columns");
        LexiconEntry e;
        e.verb = cols[0];
        e.role = role_from_string(cols[1]);
        e.k = std::stoi(cols[2]);
        e.tau = cols[3];
        e.mode = weight_mode_from_string(cols[4]);
        e.explored_nodes = std::stoull(cols[8]);
        if (cols[5] == "no-solution") {
            e.solved = false;
        } else {
            e.solved = true;
            if (!cols[5].empty()) {
                for (const std::string& piece : split(cols[5], ';')) {
                    auto parts = split(piece, ':');
                    if (parts.size() != 3)
                        throw std::runtime_error("lexicon line " + std::to_string(lineno) +
                                                 ": bad concept entry");
                    e.concepts.push_back(
                        {parts[0], std::stod(parts[1]), static_cast<std::size_t>(std::stoull(parts[2]))});
                }
            }
            e.score = std::stod(cols[6]);
            e.optimal = cols[7] == "optimal";
        }
        lex.add(std::move(e));
    }
    lex.finalize();
    return lex;
}

}  // namespace ac
