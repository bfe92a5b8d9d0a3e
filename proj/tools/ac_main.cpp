#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "ac/pipeline.hpp"

namespace {

using namespace ac;

void add_taxonomy_options(CLI::App* cmd, PipelineConfig& cfg) {
    cmd->add_option("--taxonomy", cfg.taxonomy_path, "taxonomy TSV (entity<TAB>concept[<TAB>count])")
        ->required();
    cmd->add_option("--coverage", cfg.coverage, "coverage mode: direct | transitive")
        ->check(CLI::IsMember({"direct", "transitive"}))
        ->capture_default_str();
}

int cmd_extract(PipelineConfig& cfg, const std::string& out_path) {
    cfg.validate();
    std::vector<std::string> warnings;
    Taxonomy taxonomy = load_taxonomy_for(cfg, &warnings);
    ExtractStats stats = run_extract(cfg, taxonomy, out_path);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    for (const auto& w : stats.warnings) std::cerr << "warning: " << w << "\n";
    std::cerr << "extract: " << stats.files_ok << " file(s), " << stats.sentences
              << " sentence(s), " << stats.skipped_sentences << " skipped, " << stats.bad_lines
              << " bad line(s)\n";
    if (stats.files_ok == 0 && stats.files_failed > 0) {
        std::cerr << "error: no corpus file could be read\n";
        return 1;
    }
    return 0;
}

int cmd_weigh(PipelineConfig& cfg, const std::string& records, const std::string& out_path) {
    cfg.validate();
    Taxonomy taxonomy = load_taxonomy_for(cfg, nullptr);
    run_weigh(cfg, taxonomy, records, out_path);
    return 0;
}

int cmd_conceptualize(PipelineConfig& cfg, const std::string& quality, const std::string& records) {
    cfg.validate();
    Taxonomy taxonomy = load_taxonomy_for(cfg, nullptr);
    for (const std::string& p : run_conceptualize(cfg, taxonomy, quality, records))
        std::cerr << "wrote " << p << "\n";
    return 0;
}

int cmd_identify_or_eval(PipelineConfig& cfg, const std::string& lexicon_path,
                         const std::string& pairs_path, const std::string& overrides,
                         const std::string& out_path, bool eval_mode) {
    cfg.validate();
    Taxonomy taxonomy = load_taxonomy_for(cfg, nullptr);
    ConceptLexicon lexicon = load_lexicon_checked(lexicon_path, taxonomy.content_hash());
    std::ifstream in(pairs_path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open pairs file: " + pairs_path);
    std::vector<EvalPair> pairs = read_pairs(in);

    EvalResult result = eval_mode ? run_eval(cfg, taxonomy, lexicon, pairs, overrides)
                                  : run_identify(cfg, taxonomy, lexicon, pairs);
    std::string report = format_report(cfg, taxonomy.content_hash(), result);
    if (out_path.empty())
        std::cout << report;
    else
        atomic_write(out_path, report);
    std::cerr << "accuracy " << format_fixed(result.report.accuracy()) << " on "
              << result.report.total << " pair(s)\n";
    return 0;
}

// Random solver instances, bb vs exhaustive enumeration.
int cmd_oracle_check(std::uint64_t seed, std::size_t instances, std::size_t max_size) {
    std::uint64_t state = seed;
    for (std::size_t trial = 0; trial < instances; ++trial) {
        std::size_t n = 1 + rng_below(state, max_size);
        ConceptGraph g;
        for (std::size_t i = 0; i < n; ++i) {
            double w = static_cast<double>(static_cast<std::int64_t>(rng_below(state, 41)) - 20) / 2.0;
            g.concepts.push_back({static_cast<TermId>(i), w, 0});
        }
        g.sort_vertices();
        g.adj.assign(n, std::vector<char>(n, 0));
        std::size_t density_pct = 10 + 10 * rng_below(state, 10);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (rng_below(state, 100) < density_pct) g.adj[i][j] = g.adj[j][i] = 1;
        std::size_t k = 1 + rng_below(state, n);

        auto bb = solve_bb(g, k);
        auto bf = solve_bruteforce(g, k);
        bool ok = bb.has_value() == bf.has_value() &&
                  (!bb || (bb->score == bf->score && bb->chosen == bf->chosen));
        if (!ok) {
            std::cerr << "oracle mismatch at trial " << trial << " (n=" << n << ", k=" << k
                      << ")\n";
            return 1;
        }
    }
    std::cerr << "oracle-check: " << instances << " instance(s) ok\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verb argument conceptualization pipeline"};
    app.require_subcommand(1);
    app.set_config("--config");

    PipelineConfig cfg;
    std::string records_path, quality_path, lexicon_path, pairs_path, overrides_path, out_path;
    std::uint64_t oc_seed = 42;
    std::size_t oc_instances = 1000, oc_max_size = 15;

    auto* extract = app.add_subcommand("extract", "extract argument instances from a corpus");
    add_taxonomy_options(extract, cfg);
    extract->add_option("--corpus", cfg.corpus_paths, "corpus file(s)")->required();
    extract->add_option("--format", cfg.corpus_format, "conllu | arcs")
        ->check(CLI::IsMember({"conllu", "arcs"}))
        ->capture_default_str();
    extract->add_option("--max-window", cfg.max_window)->capture_default_str();
    extract->add_option("-o,--output", out_path, "records output path")->required();

    auto* weigh = app.add_subcommand("weigh", "compute argument quality scores");
    add_taxonomy_options(weigh, cfg);
    weigh->add_option("--records", records_path)->required();
    weigh->add_option("--min-count", cfg.min_count)->capture_default_str();
    weigh->add_option("-o,--output", out_path, "quality table output path")->required();

    auto* conc = app.add_subcommand("conceptualize", "solve per-verb argument concepts");
    add_taxonomy_options(conc, cfg);
    conc->add_option("--quality", quality_path, "quality table (ac mode)");
    conc->add_option("--records", records_path, "records file (required in bl mode)");
    conc->add_option("--tau", cfg.tau, "maximum concept overlap")->capture_default_str();
    conc->add_option("--k", cfg.ks, "concept set sizes")->capture_default_str();
    conc->add_option("--mode", cfg.mode)->check(CLI::IsMember({"ac", "bl"}))->capture_default_str();
    conc->add_flag("--bl-types", cfg.bl_types, "bl counts distinct types instead of tokens");
    conc->add_option("--min-count", cfg.min_count)->capture_default_str();
    conc->add_option("--candidate-cap", cfg.candidate_cap)->capture_default_str();
    conc->add_option("--node-budget", cfg.node_budget)->capture_default_str();
    conc->add_option("--solver", cfg.solver)->check(CLI::IsMember({"bb", "bruteforce"}))
        ->capture_default_str();
    conc->add_flag("--relax-k", cfg.relax_k, "retry with k-1 when no k-clique exists");
    conc->add_option("--k-overrides", cfg.k_override_path, "per-verb k file (verb<TAB>k)");
    conc->add_option("--threads", cfg.threads)->capture_default_str();
    conc->add_option("-o,--output-dir", cfg.output_dir)->capture_default_str();

    auto* ident = app.add_subcommand("identify", "judge labeled (verb, role, term) pairs");
    add_taxonomy_options(ident, cfg);
    ident->add_option("--lexicon", lexicon_path)->required();
    ident->add_option("--pairs", pairs_path)->required();
    ident->add_option("-o,--output", out_path, "report path (stdout when omitted)");

    auto* eval = app.add_subcommand("eval", "swap-based argument identification evaluation");
    add_taxonomy_options(eval, cfg);
    eval->add_option("--lexicon", lexicon_path)->required();
    eval->add_option("--pairs", pairs_path, "positive pairs")->required();
    eval->add_option("--overrides", overrides_path, "manual relabel file");
    eval->add_option("--seed", cfg.seed)->capture_default_str();
    eval->add_option("--fraction", cfg.fraction)->capture_default_str();
    eval->add_option("-o,--output", out_path, "report path (stdout when omitted)");

    auto* oracle = app.add_subcommand("oracle-check", "solver vs brute-force on random instances");
    oracle->add_option("--seed", oc_seed)->capture_default_str();
    oracle->add_option("--instances", oc_instances)->capture_default_str();
    oracle->add_option("--max-size", oc_max_size)->check(CLI::Range(1, 25))->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (extract->parsed()) return cmd_extract(cfg, out_path);
        if (weigh->parsed()) return cmd_weigh(cfg, records_path, out_path);
        if (conc->parsed()) return cmd_conceptualize(cfg, quality_path, records_path);
        if (ident->parsed())
            return cmd_identify_or_eval(cfg, lexicon_path, pairs_path, "", out_path, false);
        if (eval->parsed())
            return cmd_identify_or_eval(cfg, lexicon_path, pairs_path, overrides_path, out_path,
                                        true);
        if (oracle->parsed()) return cmd_oracle_check(oc_seed, oc_instances, oc_max_size);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
