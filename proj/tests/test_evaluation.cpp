#include <doctest.h>

#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "ac/evaluation.hpp"

using namespace ac;

namespace {

const std::string kToyTaxonomy = std::string(FIXTURES_DIR) + "/toy_taxonomy.tsv";
const std::string kPairsFile = std::string(FIXTURES_DIR) + "/eval_pairs_object.tsv";

std::vector<EvalPair> load_fixture_pairs() {
    std::ifstream in(kPairsFile);
    REQUIRE(in);
    return read_pairs(in);
}

EvalPair pos(const std::string& verb, const std::string& term, Role role = Role::kObject) {
    return {verb, role, term, true, ""};
}

ConceptLexicon make_lexicon(const std::string& verb,
                            std::vector<LexiconConcept> concepts, bool solved = true) {
    ConceptLexicon lex;
    LexiconEntry e;
    e.verb = verb;
    e.role = Role::kObject;
    e.k = static_cast<int>(concepts.size());
    e.tau = "0.2";
    e.solved = solved;
    e.concepts = std::move(concepts);
    lex.add(std::move(e));
    lex.finalize();
    return lex;
}

std::map<std::string, int> term_multiset(const std::vector<EvalPair>& pairs, Role role) {
    std::map<std::string, int> m;
    for (const auto& p : pairs)
        if (p.role == role) ++m[p.term];
    return m;
}

}  // namespace

TEST_CASE("fixture swap: seed 1, fraction 0.5 exchanges wear and play") {
    auto positives = load_fixture_pairs();
    REQUIRE(positives.size() == 6);
    auto out = generate_swaps(positives, 1, 0.5);
    REQUIRE(out.size() == 6);
    // play (index 0) and wear (index 2) trade objects; eat/corn was selected
    // too but had no different-verb partner left, so it stays positive
    CHECK(out[0].verb == "play");
    CHECK(out[0].term == "clothing");
    CHECK_FALSE(out[0].positive);
    CHECK(out[2].verb == "wear");
    CHECK(out[2].term == "piano");
    CHECK_FALSE(out[2].positive);
    for (std::size_t i : {std::size_t{1}, std::size_t{3}, std::size_t{4}, std::size_t{5}}) {
        CHECK(out[i].positive);
        CHECK(out[i].term == positives[i].term);
    }
}

TEST_CASE("swap generation is deterministic per seed") {
    auto positives = load_fixture_pairs();
    std::ostringstream a, b, c;
    write_pairs(a, generate_swaps(positives, 1, 0.5));
    write_pairs(b, generate_swaps(positives, 1, 0.5));
    write_pairs(c, generate_swaps(positives, 2, 0.5));
    CHECK(a.str() == b.str());
    CHECK(a.str() != c.str());
}

TEST_CASE("swaps preserve the term multiset within each role") {
    std::vector<EvalPair> positives;
    const char* verbs[] = {"eat", "drink", "play", "wear", "buy", "wash"};
    for (int i = 0; i < 60; ++i)
        positives.push_back(pos(verbs[i % 6], "t" + std::to_string(i),
                                i % 2 ? Role::kObject : Role::kSubject));
    auto out = generate_swaps(positives, 77, 0.6);
    REQUIRE(out.size() == positives.size());
    for (Role role : {Role::kSubject, Role::kObject})
        CHECK(term_multiset(out, role) == term_multiset(positives, role));
    // every negative holds a term foreign to its verb's own positives
    for (std::size_t i = 0; i < out.size(); ++i)
        if (!out[i].positive) CHECK(out[i].term != positives[i].term);
}

TEST_CASE("tiny fractions produce no negatives") {
    auto positives = load_fixture_pairs();
    auto out = generate_swaps(positives, 1, 0.01);
    for (const auto& p : out) CHECK(p.positive);
}

TEST_CASE("fraction bounds are enforced") {
    auto positives = load_fixture_pairs();
    CHECK_THROWS(generate_swaps(positives, 1, 0.0));
    CHECK_THROWS(generate_swaps(positives, 1, 1.0));
    CHECK_THROWS(generate_swaps(positives, 1, -0.3));
}

TEST_CASE("a single-verb pool cannot be swapped") {
    std::vector<EvalPair> positives{pos("eat", "corn"), pos("eat", "bread"),
                                    pos("eat", "cheese")};
    CHECK_THROWS_WITH_AS(generate_swaps(positives, 1, 0.5),
                         doctest::Contains("single verb"), std::runtime_error);
}

TEST_CASE("overrides relabel matching pairs only") {
    std::vector<EvalPair> pairs{pos("eat", "habit"), pos("eat", "corn"),
                                pos("follow", "habit")};
    std::istringstream overrides(
        "# comment\n"
        "eat\tobject\thabit\tnegative\n");
    apply_overrides(pairs, overrides);
    CHECK_FALSE(pairs[0].positive);
    CHECK(pairs[1].positive);
    CHECK(pairs[2].positive);
}

TEST_CASE("identify matches the first covering concept in weight order") {
    Taxonomy tax = Taxonomy::load(kToyTaxonomy);
    auto lex = make_lexicon("eat", {{"food", 2.0, 9}, {"animal", 1.0, 6}});

    auto p = identify(lex, tax, pos("eat", "corn"));
    CHECK(p.positive);
    CHECK(p.matched_concept == "food");

    p = identify(lex, tax, pos("eat", "fish"));
    CHECK(p.positive);
    CHECK(p.matched_concept == "animal");

    // covered by no chosen concept
    CHECK_FALSE(identify(lex, tax, pos("eat", "piano")).positive);
    // verb absent from the lexicon
    CHECK_FALSE(identify(lex, tax, pos("drink", "water")).positive);
    // term absent from the taxonomy
    CHECK_FALSE(identify(lex, tax, pos("eat", "zamboni")).positive);
}

TEST_CASE("unsolved lexicon entries predict negative") {
    Taxonomy tax = Taxonomy::load(kToyTaxonomy);
    auto lex = make_lexicon("eat", {}, /*solved=*/false);
    auto p = identify(lex, tax, pos("eat", "corn"));
    CHECK_FALSE(p.positive);
    CHECK_FALSE(p.reason.empty());
}

TEST_CASE("identify is monotone in the concept set") {
    Taxonomy tax = Taxonomy::load(kToyTaxonomy);
    auto small = make_lexicon("eat", {{"food", 2.0, 9}});
    auto large = make_lexicon("eat", {{"food", 2.0, 9}, {"animal", 1.0, 6}, {"behavior", 0.5, 4}});
    for (const char* term : {"corn", "bread", "fish", "habit", "piano", "water", "dog"}) {
        bool s = identify(small, tax, pos("eat", term)).positive;
        bool l = identify(large, tax, pos("eat", term)).positive;
        if (s) CHECK(l);
    }
}

TEST_CASE("score arithmetic and per-role split") {
    std::vector<EvalPair> gold{pos("eat", "corn"), pos("eat", "thing"),
                               pos("feed", "dog", Role::kSubject), pos("ride", "horse")};
    gold[1].positive = false;
    std::vector<Prediction> pred(4);
    pred[0].positive = true;   // correct
    pred[1].positive = false;  // correct
    pred[2].positive = false;  // wrong (gold positive)
    pred[3].positive = true;   // correct
    auto report = score(pred, gold);
    CHECK(report.total == 4);
    CHECK(report.correct == 3);
    CHECK(report.accuracy() == 0.75);
    CHECK(report.subj_total == 1);
    CHECK(report.subj_correct == 0);
    CHECK(report.obj_total == 3);
    CHECK(report.obj_correct == 3);
    REQUIRE(report.error_indices.size() == 1);
    CHECK(report.error_indices[0] == 2);

    // all-correct and all-wrong extremes
    std::vector<Prediction> right{pred[0], pred[1]};
    auto perfect = score(right, {gold[0], gold[1]});
    CHECK(perfect.accuracy() == 1.0);
    std::vector<Prediction> wrong{pred[1], pred[0]};
    auto zero = score(wrong, {gold[0], gold[1]});
    CHECK(zero.accuracy() == 0.0);
}

TEST_CASE("an always-negative predictor sits near chance on a balanced set") {
    std::vector<EvalPair> positives;
    const char* verbs[] = {"eat", "drink", "play", "wear", "buy", "wash", "feed", "ride"};
    for (int i = 0; i < 240; ++i)
        positives.push_back(pos(verbs[i % 8], "term" + std::to_string(i)));
    auto pairs = generate_swaps(positives, 3, 0.5);
    std::vector<Prediction> neg(pairs.size());
    auto report = score(neg, pairs);
    CHECK(report.accuracy() >= 0.45);
    CHECK(report.accuracy() <= 0.55);
}

TEST_CASE("pairs file round-trips") {
    auto pairs = generate_swaps(load_fixture_pairs(), 1, 0.5);
    std::ostringstream out;
    write_pairs(out, pairs, {"swap seed 1 fraction 0.500000"});
    std::istringstream back(out.str());
    auto reread = read_pairs(back);
    std::ostringstream out2;
    write_pairs(out2, reread, {"swap seed 1 fraction 0.500000"});
    CHECK(out.str() == out2.str());
}

TEST_CASE("pinned rng primitives") {
    // frozen values: any change to the generator silently breaks every
    // seeded artifact, so pin the raw sequence
    std::uint64_t state = 1;
    std::uint64_t a = rng_below(state, 1000);
    std::uint64_t b = rng_below(state, 1000);
    std::uint64_t state2 = 1;
    CHECK(rng_below(state2, 1000) == a);
    CHECK(rng_below(state2, 1000) == b);
    CHECK(a < 1000);
    CHECK(b < 1000);

    std::vector<std::size_t> items(6);
    std::iota(items.begin(), items.end(), 0);
    seeded_shuffle(items, 1);
    CHECK(items == std::vector<std::size_t>{2, 0, 1, 4, 5, 3});
}
