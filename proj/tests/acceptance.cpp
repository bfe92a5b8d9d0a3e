// Acceptance gate: every release-blocking behavior pinned in one binary.
// Each criterion prints exactly one PASS/FAIL line; exit status is the
// number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ac/evaluation.hpp"
#include "ac/extraction.hpp"
#include "ac/pipeline.hpp"
#include "ac/solver.hpp"
#include "ac/taxonomy.hpp"
#include "ac/weighting.hpp"

using namespace ac;
namespace fs = std::filesystem;

namespace {

const std::string kFixtures = FIXTURES_DIR;
const std::string kToyTaxonomy = kFixtures + "/toy_taxonomy.tsv";
const std::string kToyCorpus = kFixtures + "/toy_corpus.conllu";

int g_failures = 0;

void report(int index, const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << "[" << index << "] " << name << ": " << (ok ? "PASS" : "FAIL");
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

PipelineConfig toy_config(const std::string& out_dir) {
    PipelineConfig cfg;
    cfg.taxonomy_path = kToyTaxonomy;
    cfg.corpus_paths = {kToyCorpus};
    cfg.output_dir = out_dir;
    cfg.ks = {2};
    return cfg;
}

ConceptGraph random_graph(std::uint64_t& state, std::size_t max_n, std::size_t density_pct = 0) {
    std::size_t n = 1 + rng_below(state, max_n);
    ConceptGraph g;
    for (std::size_t i = 0; i < n; ++i) {
        double w = (static_cast<double>(rng_below(state, 41)) - 20.0) / 2.0;
        g.concepts.push_back({static_cast<TermId>(i), w, 0});
    }
    g.sort_vertices();
    g.adj.assign(n, std::vector<char>(n, 0));
    std::size_t pct = density_pct ? density_pct : 10 + 10 * rng_below(state, 10);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng_below(state, 100) < pct) g.adj[i][j] = g.adj[j][i] = 1;
    return g;
}

// ---------------------------------------------------------------------------

// 1. solve_bb agrees with exhaustive enumeration on >= 10,000 seeded
//    instances (sizes 1..15, all densities, negative and tied weights),
//    matching both score and chosen set, in under 60 seconds.
void criterion_solver_oracle() {
    auto t0 = std::chrono::steady_clock::now();
    const std::size_t kInstances = 10000;
    std::uint64_t state = 424242;
    std::size_t mismatches = 0;
    for (std::size_t trial = 0; trial < kInstances; ++trial) {
        ConceptGraph g = random_graph(state, 15);
        std::size_t k = 1 + rng_below(state, g.size());
        auto bb = solve_bb(g, k);
        auto bf = solve_bruteforce(g, k);
        bool ok = bb.has_value() == bf.has_value() &&
                  (!bb || (bb->score == bf->score && bb->chosen == bf->chosen));
        if (!ok) ++mismatches;
    }
    double secs = seconds_since(t0);
    char detail[128];
    std::snprintf(detail, sizeof detail, "%zu instances, %zu mismatches, %.1fs", kInstances,
                  mismatches, secs);
    report(1, "solver equals brute-force oracle", mismatches == 0 && secs < 60.0, detail);
}

// 2. The worked four-concept instance: weights 5,4,3,2 with the lightest
//    vertex in conflict with the two heaviest; k=3 must pick {0,1,2} with
//    score 12 on both solver paths, and k=4 must report infeasibility.
void criterion_worked_instance() {
    ConceptGraph g;
    for (std::size_t i = 0; i < 4; ++i)
        g.concepts.push_back({static_cast<TermId>(i), static_cast<double>(5 - i), 0});
    g.sort_vertices();
    g.set_edges({{0, 1}, {0, 2}, {1, 2}, {2, 3}});
    auto bb = solve_bb(g, 3);
    auto bf = solve_bruteforce(g, 3);
    bool ok = bb && bf && bb->score == 12.0 && bf->score == 12.0 &&
              bb->chosen == std::vector<std::size_t>{0, 1, 2} && bf->chosen == bb->chosen &&
              !solve_bb(g, 4) && !solve_bruteforce(g, 4);
    report(2, "worked four-concept instance", ok);
}

// 3. The scoring formulas themselves: entropy over uniform-4 is exactly 2,
//    the 3:1 split is 0.811278 to 1e-6, coverage overlap is the exact
//    rational 2/3, exact statistical independence gives MI -1, and a
//    concept's weight is the sum of the qualities it covers.
void criterion_formulas() {
    bool ok = true;

    ArgumentRecord r{"eat", Role::kObject, "corn", 1, {}};
    for (int i = 0; i < 4; ++i)
        r.patterns[{PatternKey::Kind::kChild, "NN", "dobj", "P" + std::to_string(i), "x"}] = 1;
    ok &= pattern_entropy(r) == 2.0;

    ArgumentRecord r2 = r;
    r2.patterns.clear();
    r2.patterns[{PatternKey::Kind::kChild, "NN", "dobj", "A", "x"}] = 3;
    r2.patterns[{PatternKey::Kind::kChild, "NN", "dobj", "B", "x"}] = 1;
    ok &= std::fabs(pattern_entropy(r2) - 0.811278) < 1e-6;

    Taxonomy two = Taxonomy::from_edges(
        {{"a", "c1"}, {"b", "c1"}, {"c", "c1"}, {"b", "c2"}, {"c", "c2"}, {"d", "c2"}, {"e", "c2"}});
    Ratio ov = two.overlap(*two.find("c1"), *two.find("c2"));
    ok &= ov.num == 2 && ov.den == 3;

    std::vector<ArgumentRecord> indep{{"eat", Role::kObject, "corn", 1, {}},
                                      {"eat", Role::kObject, "thing", 1, {}},
                                      {"play", Role::kObject, "corn", 1, {}},
                                      {"play", Role::kObject, "thing", 1, {}}};
    auto stats = CorpusStats::from_records(indep);
    ok &= binary_mi(stats, "eat", Role::kObject, "corn") == -1;
    ok &= quality(2.0, -1) == -2.0 && quality(0.811278, 1) == 0.811278;

    // additivity of concept weight over covered argument qualities
    Taxonomy tax = Taxonomy::load(kToyTaxonomy);
    TempDir dir("ac_accept_formulas");
    PipelineConfig cfg = toy_config(dir.path.string());
    std::string records_path = dir.file("records.tsv");
    run_extract(cfg, tax, records_path);
    std::ifstream rin(records_path);
    auto records = read_records(rin);
    std::erase_if(records, [&](const ArgumentRecord& x) { return x.count < cfg.min_count; });
    auto table = QualityTable::compute(records);
    TermId food = *tax.find("food");
    double w = concept_weight(tax, table, "eat", Role::kObject, food, WeightMode::kAc);
    double expect = 0.0;
    for (const auto& e : table.entries()) {
        if (e.verb != "eat" || e.role != Role::kObject) continue;
        auto id = tax.find(e.arg);
        if (id && tax.isa(*id, food)) expect += e.q;
    }
    ok &= std::fabs(w - expect) < 1e-9;

    report(3, "scoring formula suite", ok);
}

// 4. Pruning scales: a seeded 100-vertex, 50%-density instance at k=5
//    explores under 5% of the unpruned subset tree and solves in under 2s.
void criterion_pruning() {
    std::uint64_t state = 1000003;
    ConceptGraph g;
    for (std::size_t i = 0; i < 100; ++i) {
        double w = (static_cast<double>(rng_below(state, 41)) - 20.0) / 2.0;
        g.concepts.push_back({static_cast<TermId>(i), w, 0});
    }
    g.sort_vertices();
    g.adj.assign(100, std::vector<char>(100, 0));
    for (std::size_t i = 0; i < 100; ++i)
        for (std::size_t j = i + 1; j < 100; ++j)
            if (rng_below(state, 100) < 50) g.adj[i][j] = g.adj[j][i] = 1;
    long double unpruned = 0;
    for (int i = 1; i <= 5; ++i) {
        long double c = 1;
        for (int j = 0; j < i; ++j) c = c * (100 - j) / (j + 1);
        unpruned += c;
    }
    auto t0 = std::chrono::steady_clock::now();
    auto sol = solve_bb(g, 5);
    double secs = seconds_since(t0);
    bool ok = sol && sol->optimal &&
              static_cast<long double>(sol->explored_nodes) < 0.05L * unpruned && secs < 2.0;
    char detail[160];
    std::snprintf(detail, sizeof detail, "explored %llu of %.0Lf (%.3Lf%%), %.2fs",
                  sol ? static_cast<unsigned long long>(sol->explored_nodes) : 0ULL, unpruned,
                  sol ? 100.0L * sol->explored_nodes / unpruned : 0.0L, secs);
    report(4, "branch-and-bound pruning at scale", ok, detail);
}

// Shared front half of the toy pipeline.
struct ToyArtifacts {
    Taxonomy tax = Taxonomy::load(kToyTaxonomy);
    std::vector<ArgumentRecord> records;
    QualityTable quality;

    explicit ToyArtifacts(const PipelineConfig& cfg, const TempDir& dir) {
        std::string records_path = dir.file("records.tsv");
        run_extract(cfg, tax, records_path);
        std::ifstream rin(records_path);
        records = read_records(rin);
        std::erase_if(records, [&](const ArgumentRecord& r) { return r.count < cfg.min_count; });
        quality = QualityTable::compute(records);
    }
};

// 5. The frozen lexicon: the full pipeline on the toy fixtures (tau 0.2,
//    k=2, entropy/MI weighting) reproduces fixtures/golden/lexicon_ac_k2.tsv
//    byte for byte, and every entry survives a brute-force cross-check.
void criterion_golden_lexicon() {
    TempDir dir("ac_accept_golden");
    PipelineConfig cfg = toy_config(dir.path.string());
    Taxonomy tax = load_taxonomy_for(cfg, nullptr);
    std::string records_path = dir.file("records.tsv");
    std::string quality_path = dir.file("quality.tsv");
    run_extract(cfg, tax, records_path);
    run_weigh(cfg, tax, records_path, quality_path);
    auto paths = run_conceptualize(cfg, tax, quality_path, records_path);

    std::string produced = read_file(paths.at(0));
    std::string golden = read_file(kFixtures + "/golden/lexicon_ac_k2.tsv");
    bool bytes_ok = produced == golden;

    // independent verification of every entry against the exhaustive
    // solver, fed the same 6-decimal quality file the pipeline consumed
    std::ifstream lin(paths.at(0));
    auto lexicon = ConceptLexicon::read(lin);
    std::ifstream qin(quality_path);
    auto quality = QualityTable::read(qin);
    Ratio tau = parse_ratio(cfg.tau);
    bool entries_ok = !lexicon.entries().empty();
    for (const auto& entry : lexicon.entries()) {
        ConceptGraph g = build_concept_graph(tax, quality, entry.verb, entry.role, tau);
        auto bf = solve_bruteforce(g, static_cast<std::size_t>(entry.k));
        if (!entry.solved) {
            entries_ok &= !bf.has_value();
            continue;
        }
        if (!bf) {
            entries_ok = false;
            continue;
        }
        entries_ok &= format_fixed(bf->score) == format_fixed(entry.score);
        entries_ok &= bf->chosen.size() == entry.concepts.size();
        for (std::size_t i = 0; i < bf->chosen.size() && i < entry.concepts.size(); ++i)
            entries_ok &= tax.surface(g.concepts[bf->chosen[i]].term) ==
                          entry.concepts[i].surface;
    }
    report(5, "golden lexicon bytes + brute-force cross-check", bytes_ok && entries_ok,
           bytes_ok ? "" : "byte mismatch vs fixtures/golden/lexicon_ac_k2.tsv");
}

// 6. The evaluation protocol: seed 1, fraction 0.5 over the six positive
//    object pairs swaps wear<->play (yielding "wear piano" and "play
//    clothing", both negative); entropy/MI weighting scores at least as
//    high as the frequency baseline; and accuracy-relevant positives only
//    grow as k rises 1 -> 3 (with infeasible k relaxed downward).
void criterion_eval_protocol() {
    TempDir dir("ac_accept_eval");
    PipelineConfig cfg = toy_config(dir.path.string());
    cfg.relax_k = true;
    ToyArtifacts toy(cfg, dir);
    Taxonomy& tax = toy.tax;

    std::ifstream pin(kFixtures + "/eval_pairs_object.tsv");
    auto positives = read_pairs(pin);
    const std::string overrides = kFixtures + "/eval_overrides.tsv";

    // the swap itself
    auto swapped = generate_swaps(positives, cfg.seed, cfg.fraction);
    bool swap_ok = swapped.size() == 6;
    std::size_t negatives = 0;
    bool saw_wear_piano = false, saw_play_clothing = false;
    for (const auto& p : swapped) {
        if (p.positive) continue;
        ++negatives;
        saw_wear_piano |= p.verb == "wear" && p.term == "piano";
        saw_play_clothing |= p.verb == "play" && p.term == "clothing";
    }
    swap_ok &= negatives == 2 && saw_wear_piano && saw_play_clothing;

    // ac vs bl at k=2
    ConceptLexicon ac_k2 = conceptualize(cfg, tax, toy.quality, 2);
    PipelineConfig bl_cfg = cfg;
    bl_cfg.mode = "bl";
    ConceptLexicon bl_k2 = conceptualize(bl_cfg, tax, toy.quality, 2);
    auto ac_res = run_eval(cfg, tax, ac_k2, positives, overrides);
    auto bl_res = run_eval(bl_cfg, tax, bl_k2, positives, overrides);
    bool beat_ok = ac_res.report.accuracy() > bl_res.report.accuracy();

    // monotone identification across k (relaxed where infeasible)
    ConceptLexicon lex[3] = {conceptualize(cfg, tax, toy.quality, 1),
                             conceptualize(cfg, tax, toy.quality, 2),
                             conceptualize(cfg, tax, toy.quality, 3)};
    bool mono_ok = true;
    std::set<std::string> verbs;
    for (const auto& e : lex[0].entries()) verbs.insert(e.verb);
    for (const std::string& verb : verbs) {
        for (TermId t = 0; t < tax.term_count(); ++t) {
            EvalPair probe{verb, Role::kObject, tax.surface(t), true, ""};
            bool prev = identify(lex[0], tax, probe).positive;
            for (int i = 1; i < 3; ++i) {
                bool cur = identify(lex[i], tax, probe).positive;
                if (prev && !cur) mono_ok = false;
                prev = cur;
            }
        }
    }

    char detail[160];
    std::snprintf(detail, sizeof detail, "ac %.3f vs bl %.3f; swap %s; monotone %s",
                  ac_res.report.accuracy(), bl_res.report.accuracy(), swap_ok ? "ok" : "BAD",
                  mono_ok ? "ok" : "BAD");
    report(6, "swap evaluation protocol", swap_ok && beat_ok && mono_ok, detail);
}

// 7. Determinism: rerunning the whole pipeline, and running it with 8
//    workers instead of 1, produces byte-identical artifacts.
void criterion_determinism() {
    std::string outputs[3];
    for (int run = 0; run < 3; ++run) {
        TempDir dir("ac_accept_det" + std::to_string(run));
        PipelineConfig cfg = toy_config(dir.path.string());
        cfg.threads = run == 2 ? 8 : 1;
        Taxonomy tax = load_taxonomy_for(cfg, nullptr);
        std::string records_path = dir.file("records.tsv");
        std::string quality_path = dir.file("quality.tsv");
        run_extract(cfg, tax, records_path);
        run_weigh(cfg, tax, records_path, quality_path);
        auto paths = run_conceptualize(cfg, tax, quality_path, records_path);
        outputs[run] = read_file(records_path) + read_file(quality_path) +
                       read_file(paths.at(0));
    }
    report(7, "byte-identical reruns and worker counts", outputs[0] == outputs[1] &&
                                                             outputs[0] == outputs[2]);
}

// 8. Configuration defaults and the overlap boundary: tau defaults to 0.2
//    with k in {5,10,15}, and concepts whose overlap equals tau exactly do
//    NOT get an edge (the comparison is strict).
void criterion_defaults_boundary() {
    PipelineConfig defaults;
    bool ok = defaults.tau == "0.2" && defaults.ks == std::vector<int>{5, 10, 15} &&
              defaults.coverage == "direct" && defaults.mode == "ac";

    // two concepts, |intersection|=1, min coverage 5 -> overlap exactly 1/5
    std::vector<std::pair<std::string, std::string>> edges;
    for (const char* e : {"a", "b", "c", "d", "e"}) edges.emplace_back(e, "c1");
    for (const char* e : {"a", "f", "g", "h", "i"}) edges.emplace_back(e, "c2");
    Taxonomy tax = Taxonomy::from_edges(edges);
    Ratio ov = tax.overlap(*tax.find("c1"), *tax.find("c2"));
    ok &= ratio_equal(ov, parse_ratio("0.2"));

    // quality table giving both concepts positive weight through "a"
    std::vector<ArgumentRecord> records{{"eat", Role::kObject, "a", 4, {}},
                                        {"buy", Role::kObject, "z", 4, {}}};
    records[0].patterns[{PatternKey::Kind::kChild, "NN", "dobj", "P", "x"}] = 1;
    records[0].patterns[{PatternKey::Kind::kChild, "NN", "dobj", "Q", "x"}] = 1;
    auto table = QualityTable::compute(records);

    ConceptGraph at_tau =
        build_concept_graph(tax, table, "eat", Role::kObject, parse_ratio("0.2"));
    ConceptGraph above_tau =
        build_concept_graph(tax, table, "eat", Role::kObject, parse_ratio("0.21"));
    ok &= at_tau.size() == 2 && !solve_bb(at_tau, 2).has_value();
    ok &= solve_bb(above_tau, 2).has_value();

    report(8, "defaults and strict overlap boundary", ok);
}

}  // namespace

int main() {
    try {
        criterion_solver_oracle();
        criterion_worked_instance();
        criterion_formulas();
        criterion_pruning();
        criterion_golden_lexicon();
        criterion_eval_protocol();
        criterion_determinism();
        criterion_defaults_boundary();
    } catch (const std::exception& e) {
        std::cout << "acceptance aborted: " << e.what() << "\n";
        return 99;
    }
    std::cout << (g_failures == 0 ? "all criteria passed" : "FAILURES PRESENT") << "\n";
    return g_failures;
}
