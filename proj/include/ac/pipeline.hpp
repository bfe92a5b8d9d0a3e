#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ac/evaluation.hpp"
#include "ac/lexicon.hpp"
#include "ac/solver.hpp"
#include "ac/taxonomy.hpp"
#include "ac/types.hpp"
#include "ac/weighting.hpp"

namespace ac {

struct PipelineConfig {
    std::string taxonomy_path;
    std::string coverage = "direct";
    std::vector<std::string> corpus_paths;
    std::string corpus_format = "conllu";  // conllu | arcs
    std::string tau = "0.2";
    std::vector<int> ks = {5, 10, 15};
    std::string mode = "ac";  // ac | bl
    bool bl_types = false;
    std::int64_t min_count = 2;
    int max_window = 4;
    std::size_t candidate_cap = 500;
    std::uint64_t node_budget = 0;
    std::string solver = "bb";  // bb | bruteforce
    bool relax_k = false;
    std::string k_override_path;
    std::uint64_t seed = 1;
    double fraction = 0.5;
    int threads = 1;
    std::string output_dir = ".";

    void validate() const;
    std::uint64_t config_hash() const;
    std::vector<std::string> header_lines(std::uint64_t taxonomy_hash) const;
};

// temp file + rename, so partial output never lands under the final name
void atomic_write(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

Taxonomy load_taxonomy_for(const PipelineConfig& config, std::vector<std::string>* warnings);

struct ExtractStats {
    std::size_t files_ok = 0;
    std::size_t files_failed = 0;
    std::size_t sentences = 0;
    std::size_t skipped_sentences = 0;
    std::size_t bad_lines = 0;
    std::vector<std::string> warnings;
};

ExtractStats run_extract(const PipelineConfig& config, const Taxonomy& taxonomy,
                         const std::string& out_path);

void run_weigh(const PipelineConfig& config, const Taxonomy& taxonomy,
               const std::string& records_path, const std::string& out_path);

// One lexicon file per k: <output_dir>/lexicon_<mode>_k<k>.tsv. BL weights
// need occurrence counts, so records_path is required in bl mode.
std::vector<std::string> run_conceptualize(const PipelineConfig& config, const Taxonomy& taxonomy,
                                           const std::string& quality_path,
                                           const std::string& records_path);

// Builds the lexicon in memory; the unit of work run_conceptualize fans
// out across threads.
ConceptLexicon conceptualize(const PipelineConfig& config, const Taxonomy& taxonomy,
                             const QualityTable& quality, int k);

struct EvalResult {
    AccuracyReport report;
    std::vector<EvalPair> pairs;
    std::vector<Prediction> predictions;
};

// identify mode: pairs are already labeled. eval mode: pairs are positives,
// swap negatives are generated first.
EvalResult run_identify(const PipelineConfig& config, const Taxonomy& taxonomy,
                        const ConceptLexicon& lexicon, const std::vector<EvalPair>& pairs);
EvalResult run_eval(const PipelineConfig& config, const Taxonomy& taxonomy,
                    const ConceptLexicon& lexicon, const std::vector<EvalPair>& positives,
                    const std::string& overrides_path);

std::string format_report(const PipelineConfig& config, std::uint64_t taxonomy_hash,
                          const EvalResult& result);

// Refuses lexicons produced against a different taxonomy.
ConceptLexicon load_lexicon_checked(const std::string& path, std::uint64_t taxonomy_hash);

}  // namespace ac
