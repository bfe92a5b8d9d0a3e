#include "ac/pipeline.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace ac {
namespace fs = std::filesystem;

void PipelineConfig::validate() const {
    Ratio t = parse_ratio(tau);
    if (!(t.num > 0 && static_cast<__int128>(t.num) <= t.den))
        throw std::runtime_error("tau must satisfy 0 < tau <= 1, got " + tau);
    if (ks.empty()) throw std::runtime_error("at least one k is required");
    for (int k : ks)
        if (k < 1) throw std::runtime_error("k must be >= 1");
    if (corpus_format != "conllu" && corpus_format != "arcs")
        throw std::runtime_error("corpus format must be conllu or arcs");
    coverage_mode_from_string(coverage);
    weight_mode_from_string(mode);
    if (solver != "bb" && solver != "bruteforce")
        throw std::runtime_error("solver must be bb or bruteforce");
    if (min_count < 1) throw std::runtime_error("min-count must be >= 1");
    if (!(fraction > 0.0 && fraction < 1.0))
        throw std::runtime_error("fraction must lie strictly between 0 and 1");
    if (max_window < 1) throw std::runtime_error("max-window must be >= 1");
    if (threads < 1) throw std::runtime_error("threads must be >= 1");
}

std::uint64_t PipelineConfig::config_hash() const {
    std::ostringstream os;
    os << coverage << '|' << corpus_format << '|' << tau << '|' << mode << '|' << bl_types << '|'
       << min_count << '|' << max_window << '|' << candidate_cap << '|' << node_budget << '|'
       << solver << '|' << relax_k << '|' << seed << '|' << fraction;
    os << "|k=";
    for (int k : ks) os << k << ',';
    return fnv1a(os.str());
}

std::vector<std::string> PipelineConfig::header_lines(std::uint64_t taxonomy_hash) const {
    std::vector<std::string> out;
    out.push_back("ac-config " + to_hex(config_hash()));
    out.push_back("taxonomy-hash " + to_hex(taxonomy_hash));
    out.push_back("coverage " + coverage + " tau " + tau + " mode " + mode);
    return out;
}

void atomic_write(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot write: " + tmp);
        f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!f) throw std::runtime_error("write failed: " + tmp);
    }
    fs::rename(tmp, path);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

Taxonomy load_taxonomy_for(const PipelineConfig& config, std::vector<std::string>* warnings) {
    TaxonomyOptions opts;
    opts.coverage = coverage_mode_from_string(config.coverage);
    return Taxonomy::load(config.taxonomy_path, opts, warnings);
}

ExtractStats run_extract(const PipelineConfig& config, const Taxonomy& taxonomy,
                         const std::string& out_path) {
    ExtractionConfig xcfg;
    xcfg.max_window = config.max_window;
    InstanceAggregator agg(taxonomy, xcfg);
    ExtractStats stats;

    for (const std::string& path : config.corpus_paths) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            ++stats.files_failed;
            stats.warnings.push_back("cannot open corpus file: " + path);
            continue;
        }
        if (config.corpus_format == "conllu") {
            ConlluReader reader(in);
            Sentence sentence;
            while (reader.next(sentence)) {
                agg.add_sentence(sentence);
                ++stats.sentences;
            }
            stats.skipped_sentences += reader.skipped_sentences();
            for (const auto& w : reader.warnings()) stats.warnings.push_back(w);
        } else {
            std::string line;
            while (std::getline(in, line)) {
                if (!line.empty() && line.back() == '\r') line.pop_back();
                if (line.empty()) continue;
                agg.add_arcs_line(line);
            }
        }
        ++stats.files_ok;
    }
    stats.bad_lines = agg.bad_lines();

    std::ostringstream os;
    write_records(os, agg.records(), config.header_lines(taxonomy.content_hash()));
    atomic_write(out_path, os.str());
    return stats;
}

void run_weigh(const PipelineConfig& config, const Taxonomy& taxonomy,
               const std::string& records_path, const std::string& out_path) {
    std::ifstream in(records_path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open records file: " + records_path);
    std::vector<ArgumentRecord> records = read_records(in);
    std::erase_if(records, [&](const ArgumentRecord& r) { return r.count < config.min_count; });

    std::ostringstream os;
    QualityTable::compute(records).write(os, config.header_lines(taxonomy.content_hash()));
    atomic_write(out_path, os.str());
}

namespace {

std::map<std::string, int> load_k_overrides(const std::string& path) {
    std::map<std::string, int> out;
    if (path.empty()) return out;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open k-override file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto cols = split(line, '\t');
        if (cols.size() != 2) throw std::runtime_error("k-override line needs 2 columns: " + line);
        out[cols[0]] = std::stoi(cols[1]);
    }
    return out;
}

}  // namespace

ConceptLexicon conceptualize(const PipelineConfig& config, const Taxonomy& taxonomy,
                             const QualityTable& quality, int k) {
    const Ratio tau = parse_ratio(config.tau);
    const auto k_overrides = load_k_overrides(config.k_override_path);

    BuildOptions build_opts;
    build_opts.mode = weight_mode_from_string(config.mode);
    build_opts.bl_types = config.bl_types;
    build_opts.candidate_cap = config.candidate_cap;

    const auto tasks = quality.verb_roles();
    std::vector<LexiconEntry> results(tasks.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const auto& [verb, role] = tasks[i];
            int kv = k;
            if (auto it = k_overrides.find(verb); it != k_overrides.end()) kv = it->second;

            ConceptGraph graph = build_concept_graph(taxonomy, quality, verb, role, tau, build_opts);
            LexiconEntry entry;
            entry.verb = verb;
            entry.role = role;
            entry.k = kv;
            entry.tau = config.tau;
            entry.mode = build_opts.mode;

            SolveOptions sopts;
            sopts.node_budget = config.node_budget;
            std::optional<Solution> sol;
            int attempt_k = kv;
            while (attempt_k >= 1) {
                sol = config.solver == "bruteforce" ? solve_bruteforce(graph, attempt_k)
                                                    : solve_bb(graph, attempt_k, sopts);
                if (sol || !config.relax_k) break;
                --attempt_k;
            }
            if (sol) {
                entry.solved = true;
                entry.k = attempt_k;
                entry.score = sol->score;
                entry.optimal = sol->optimal;
                entry.explored_nodes = sol->explored_nodes;
                for (std::size_t idx : sol->chosen) {
                    const ConceptVertex& v = graph.concepts[idx];
                    entry.concepts.push_back(
                        {taxonomy.surface(v.term), v.weight, v.coverage_size});
                }
            }
            results[i] = std::move(entry);
        }
    };

    if (config.threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < config.threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    ConceptLexicon lexicon;
    for (auto& e : results) lexicon.add(std::move(e));
    lexicon.finalize();
    return lexicon;
}

std::vector<std::string> run_conceptualize(const PipelineConfig& config, const Taxonomy& taxonomy,
                                           const std::string& quality_path,
                                           const std::string& records_path) {
    QualityTable quality;
    if (weight_mode_from_string(config.mode) == WeightMode::kBl || quality_path.empty()) {
        // counts live in the records file, not the quality dump
        if (records_path.empty())
            throw std::runtime_error("bl mode needs --records for occurrence counts");
        std::ifstream in(records_path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open records file: " + records_path);
        auto records = read_records(in);
        std::erase_if(records, [&](const ArgumentRecord& r) { return r.count < config.min_count; });
        quality = QualityTable::compute(records);
    } else {
        std::ifstream in(quality_path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open quality file: " + quality_path);
        quality = QualityTable::read(in);
    }

    fs::create_directories(config.output_dir);
    std::vector<std::string> paths;
    for (int k : config.ks) {
        ConceptLexicon lexicon = conceptualize(config, taxonomy, quality, k);
        std::ostringstream os;
        auto header = config.header_lines(taxonomy.content_hash());
        header.push_back("k " + std::to_string(k));
        lexicon.write(os, header);
        std::string path = (fs::path(config.output_dir) /
                            ("lexicon_" + config.mode + "_k" + std::to_string(k) + ".tsv"))
                               .string();
        atomic_write(path, os.str());
        paths.push_back(path);
    }
    return paths;
}

EvalResult run_identify(const PipelineConfig& config, const Taxonomy& taxonomy,
                        const ConceptLexicon& lexicon, const std::vector<EvalPair>& pairs) {
    (void)config;
    EvalResult r;
    r.pairs = pairs;
    r.predictions.reserve(pairs.size());
    for (const EvalPair& p : pairs) r.predictions.push_back(identify(lexicon, taxonomy, p));
    r.report = score(r.predictions, r.pairs);
    return r;
}

EvalResult run_eval(const PipelineConfig& config, const Taxonomy& taxonomy,
                    const ConceptLexicon& lexicon, const std::vector<EvalPair>& positives,
                    const std::string& overrides_path) {
    std::vector<EvalPair> pairs = generate_swaps(positives, config.seed, config.fraction);
    if (!overrides_path.empty()) {
        std::ifstream in(overrides_path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open overrides file: " + overrides_path);
        apply_overrides(pairs, in);
    }
    return run_identify(config, taxonomy, lexicon, pairs);
}

std::string format_report(const PipelineConfig& config, std::uint64_t taxonomy_hash,
                          const EvalResult& result) {
    std::ostringstream os;
    for (const auto& h : config.header_lines(taxonomy_hash)) os << "# " << h << "\n";
    const AccuracyReport& r = result.report;
    os << "total\t" << r.total << "\n";
    os << "correct\t" << r.correct << "\n";
    os << "accuracy\t" << format_fixed(r.accuracy()) << "\n";
    os << "subject_total\t" << r.subj_total << "\n";
    os << "subject_accuracy\t" << format_fixed(r.subj_accuracy()) << "\n";
    os << "object_total\t" << r.obj_total << "\n";
    os << "object_accuracy\t" << format_fixed(r.obj_accuracy()) << "\n";
    for (std::size_t i : r.error_indices) {
        const EvalPair& p = result.pairs[i];
        const Prediction& pred = result.predictions[i];
        os << "error\t" << p.verb << '\t' << role_name(p.role) << '\t' << p.term << '\t'
           << (p.positive ? "positive" : "negative") << '\t'
           << (pred.positive ? "predicted-positive:" + pred.matched_concept
                             : "predicted-negative:" + pred.reason)
           << "\n";
    }
    return os.str();
}

ConceptLexicon load_lexicon_checked(const std::string& path, std::uint64_t taxonomy_hash) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open lexicon: " + path);
    std::vector<std::string> header;
    ConceptLexicon lex = ConceptLexicon::read(in, &header);
    const std::string expect = "taxonomy-hash " + to_hex(taxonomy_hash);
    for (const auto& h : header)
        if (h == expect) return lex;
    throw std::runtime_error("lexicon " + path + " was built against a different taxonomy");
}

}  // namespace ac
