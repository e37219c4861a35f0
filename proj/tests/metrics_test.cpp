#include "support/test_support.hpp"

#include "cforge/bleu.hpp"
#include "cforge/diversity.hpp"
#include "cforge/error.hpp"
#include "cforge/eval_matrix.hpp"
#include "cforge/fs_util.hpp"
#include "cforge/results_report.hpp"
#include "cforge/text.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace cforge;
using namespace cforge::metrics;

namespace {

nlohmann::json oracle() {
    return nlohmann::json::parse(fs::read_file(testing::source_dir() / "tests/data/oracles/bleu.json"));
}

std::vector<Segment> segments(const nlohmann::json &j) { return j.get<std::vector<Segment>>(); }

Segment words(std::string_view line) { return text::split_tokens(line); }

} // namespace

TEST_CASE("clipped unigram precision and brevity penalty") {
    const auto fixed = oracle()["fixed"];
    const std::vector<Segment> hyp{words("the the the the the the the")};
    const std::vector<Segment> ref{words("the cat is on the mat")};
    const auto r = corpus_bleu(hyp, ref);
    CHECK(r.matches[0] == fixed["clipped_matches"].get<std::size_t>());
    CHECK(r.totals[0] == fixed["clipped_total"].get<std::size_t>());
    CHECK(r.precisions[0] == doctest::Approx(fixed["clipped_p1"].get<double>()));

    CHECK(brevity_penalty(7, 14) == doctest::Approx(fixed["bp_7_14"].get<double>()).epsilon(1e-12));
    CHECK(brevity_penalty(15, 14) == 1.0);
    CHECK(brevity_penalty(14, 14) == 1.0);
    CHECK(brevity_penalty(0, 14) == 0.0);
}

TEST_CASE("corpus BLEU matches the reference implementation") {
    const auto cases = oracle()["cases"];
    REQUIRE(cases.size() >= 50);
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto &c = cases[i];
        CAPTURE(i);
        const auto hyps = segments(c["hyps"]);
        const auto refs = segments(c["refs"]);
        const auto smoothing = smoothing_from_string(c["smoothing"].get<std::string>());
        const auto r = corpus_bleu(hyps, refs, smoothing);
        CHECK(r.bleu == doctest::Approx(c["bleu"].get<double>()).epsilon(1e-9));
        CHECK(r.brevity_penalty == doctest::Approx(c["bp"].get<double>()).epsilon(1e-12));
        CHECK(r.hyp_len == c["hyp_len"].get<std::size_t>());
        CHECK(r.ref_len == c["ref_len"].get<std::size_t>());
        for (std::size_t n = 0; n < 4; ++n) {
            CHECK(r.matches[n] == c["matches"][n].get<std::size_t>());
            CHECK(r.totals[n] == c["totals"][n].get<std::size_t>());
        }
    }
}

TEST_CASE("identical corpora score 100, disjoint ones 0") {
    const std::vector<Segment> a{words("ein kleiner Hund bellt laut"), words("die Katze schläft heute")};
    CHECK(corpus_bleu(a, a).bleu == doctest::Approx(100.0));
    const std::vector<Segment> b{words("x y z w v"), words("q r s t")};
    CHECK(corpus_bleu(b, a).bleu == 0.0);
    const std::vector<Segment> blank{{}, {}};
    CHECK_THROWS_AS(corpus_bleu(blank, a), EmptyHypothesisCorpus);
    CHECK(corpus_bleu(b, a, Smoothing::add_k_exp).bleu >= 0.0);
    CHECK_THROWS_AS(corpus_bleu(std::vector<Segment>{}, std::vector<Segment>{}), std::invalid_argument);
    CHECK_THROWS_AS(corpus_bleu(a, std::span<const Segment>(a).first(1)), LengthMismatch);
}

TEST_CASE("BLEU is invariant under joint permutation of segments") {
    testing::Gen g(31337);
    const auto vocab = testing::vocabulary(g, 12, testing::mixed_alphabet());
    for (int round = 0; round < 100; ++round) {
        std::vector<Segment> hyps, refs;
        for (std::size_t i = g.size(1, 12); i > 0; --i) {
            refs.push_back(g.tokens(vocab, 1, 14));
            auto h = refs.back();
            for (auto &t : h) {
                if (g.coin(0.3)) t = g.pick(vocab);
            }
            if (g.coin(0.2)) h.resize(g.size(0, h.size()));
            hyps.push_back(std::move(h));
        }
        std::vector<std::size_t> order(hyps.size());
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), g.engine());
        std::vector<Segment> ph, pr;
        for (auto i : order) {
            ph.push_back(hyps[i]);
            pr.push_back(refs[i]);
        }
        for (auto s : {Smoothing::none, Smoothing::add_k_exp}) {
            const auto x = corpus_bleu(hyps, refs, s);
            const auto y = corpus_bleu(ph, pr, s);
            CHECK(x.bleu == doctest::Approx(y.bleu).epsilon(1e-12));
            CHECK(x.matches == y.matches);
            CHECK(x.bleu >= 0.0);
            CHECK(x.bleu <= 100.0 + 1e-9);
        }
    }
}

TEST_CASE("tokenizers") {
    CHECK(bleu_tokenize("  Der Hund,  bellt. ", Normalizer::whitespace) ==
          std::vector<std::string>{"Der", "Hund,", "bellt."});
    CHECK(bleu_tokenize("Der Hund, bellt.", Normalizer::punct_split) ==
          std::vector<std::string>{"Der", "Hund", ",", "bellt", "."});
    CHECK(bleu_tokenize("„Ja“ (gut)!", Normalizer::punct_split) ==
          std::vector<std::string>{"„", "Ja", "“", "(", "gut", ")", "!"});
    CHECK(normalizer_from_string("punct-split") == Normalizer::punct_split);
    CHECK(to_string(Normalizer::whitespace) == "whitespace");
    CHECK_THROWS_AS(normalizer_from_string("13a"), std::invalid_argument);
    CHECK_THROWS_AS(smoothing_from_string("floor"), std::invalid_argument);

    const std::vector<std::string> hyp{"Der Hund bellt."}, ref{"Der Hund bellt ."};
    CHECK(corpus_bleu_lines(hyp, ref, Normalizer::punct_split).bleu == doctest::Approx(100.0));
    CHECK(corpus_bleu_lines(hyp, ref, Normalizer::whitespace).bleu < 100.0);
    CHECK(corpus_bleu_lines(hyp, ref, Normalizer::punct_split).normalizer == "punct-split");
}

TEST_CASE("report serialization") {
    const std::vector<Segment> a{words("a b c d e")};
    const auto r = corpus_bleu(a, a);
    const auto j = r.to_json();
    CHECK(j["bleu"] == doctest::Approx(100.0));
    CHECK(j["smoothing"] == "none");
    CHECK(j["precisions"].size() == 4);
    CHECK(r.to_markdown().find("100.0") != std::string::npos);
}

TEST_CASE("frequency profile") {
    const std::vector<std::string> lines{"Der Hund und der Hund", "die KATZE", ""};
    const auto p = frequency_profile(lines);
    CHECK(p.token_count == 7);
    CHECK(p.type_count == 5);
    CHECK(p.ttr == doctest::Approx(5.0 / 7.0));
    REQUIRE(p.rank_frequency.size() == 5);
    CHECK(p.rank_frequency[0].word == "der");
    CHECK(p.rank_frequency[0].frequency == 2);
    CHECK(p.rank_frequency[1].word == "hund");
    CHECK(p.rank_frequency[2].word == "die");
    CHECK(p.rank_frequency[4].rank == 5);
    CHECK(p.to_csv().starts_with("rank,word,frequency\n1,der,2\n"));
    const auto z = p.zipf_points();
    CHECK(z[0].first == 0.0);
    CHECK(z[0].second == doctest::Approx(std::log10(2.0)));
    CHECK(p.summary_json()["type_count"] == 5);

    CHECK_THROWS_AS(frequency_profile(std::vector<std::string>{}), EmptyInput);
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("plain") == "plain");
}

TEST_CASE("frequency profile properties") {
    testing::Gen g(8);
    const auto vocab = testing::vocabulary(g, 40, testing::mixed_alphabet());
    for (int round = 0; round < 50; ++round) {
        std::vector<std::string> lines;
        for (std::size_t i = g.size(1, 30); i > 0; --i) lines.push_back(g.line(vocab, 1, 10));
        const auto p = frequency_profile(lines);
        std::size_t sum = 0;
        for (std::size_t i = 0; i < p.rank_frequency.size(); ++i) {
            sum += p.rank_frequency[i].frequency;
            CHECK(p.rank_frequency[i].rank == i + 1);
            if (i > 0) CHECK(p.rank_frequency[i - 1].frequency >= p.rank_frequency[i].frequency);
        }
        CHECK(sum == p.token_count);
        CHECK(p.type_count == p.rank_frequency.size());
        CHECK(p.ttr > 0.0);
        CHECK(p.ttr <= 1.0);

        // repeating the whole corpus keeps the types and doubles the tokens
        auto doubled = lines;
        doubled.insert(doubled.end(), lines.begin(), lines.end());
        const auto d = frequency_profile(doubled);
        CHECK(d.type_count == p.type_count);
        CHECK(d.token_count == 2 * p.token_count);
        CHECK(d.ttr == doctest::Approx(p.ttr / 2));
    }
}

TEST_CASE("evaluation matrix") {
    EvalMatrix m({"Synth-de", "Nat-de"}, {"Synth-val", "Test"});
    m.set("Synth-de", "Synth-val", 72.2);
    m.set("Nat-de", "Test", 16.44);
    m.set_failure("Synth-de", "Test", "empty output");
    CHECK(m.score("Synth-de", "Synth-val") == 72.2);
    CHECK_FALSE(m.score("Synth-de", "Test").has_value());
    CHECK(m.failure("Synth-de", "Test") == std::optional<std::string>("empty output"));
    CHECK(m.cell_count() == 2);
    CHECK_THROWS_AS(m.set("Aug-de", "Test", 1.0), std::out_of_range);
    CHECK_THROWS_AS(EvalMatrix({"a", "a"}, {"b"}), std::invalid_argument);

    const auto md = m.to_markdown();
    CHECK(md.find("| Model    | Synth-val | Test |") != std::string::npos);
    CHECK(md.find("72.2") != std::string::npos);
    CHECK(md.find("16.4") != std::string::npos);

    const auto back = matrix_from_json(m.to_json());
    CHECK(back.to_markdown() == md);
    CHECK(back.failure("Synth-de", "Test") == std::optional<std::string>("empty output"));
}

TEST_CASE("cross evaluation scores every model on every set") {
    corpus::ParallelCorpus a{{testing::natural_pair("1", "eins zwei drei vier", "one two three four")}, "de", "en"};
    corpus::ParallelCorpus b{{testing::natural_pair("2", "fünf sechs sieben acht", "five six seven eight")}, "de", "en"};
    const std::vector<LabeledTranslator> models{
        {"identity", [](const std::vector<std::string> &s) { return s; }},
        {"oracle-a", [](const std::vector<std::string> &s) {
             return std::vector<std::string>(s.size(), "one two three four");
         }},
        {"broken", [](const std::vector<std::string> &) -> std::vector<std::string> { throw DataError("nope"); }},
    };
    const std::vector<LabeledCorpus> sets{{"A", a}, {"B", b}};
    const auto m = cross_evaluate(models, sets);
    CHECK(m.score("oracle-a", "A") == doctest::Approx(100.0));
    CHECK(m.score("oracle-a", "B") == doctest::Approx(0.0));
    CHECK(m.score("identity", "A") == doctest::Approx(0.0));
    CHECK_FALSE(m.score("broken", "A").has_value());
    CHECK(m.failure("broken", "B").has_value());
    CHECK(m.report("oracle-a", "A")->hyp_len == 4);
}

TEST_CASE("score row and results document rendering") {
    const std::vector<LabeledScore> row{{"Synth-de", 3.5}, {"Nat-de", 16.4}, {"Aug-de", 18.9}};
    const auto md = render_score_row(row);
    CHECK(md == "| Synth-de | Nat-de | Aug-de |\n|---------:|-------:|-------:|\n|      3.5 |   16.4 |   18.9 |\n");

    ResultsDocument doc;
    doc.test_tables = {row};
    doc.matrix = EvalMatrix({"Synth-de"}, {"Test"});
    doc.matrix.set("Synth-de", "Test", 3.5);
    doc.ttr = {{"syn-train", "de", 10, 40, 0.25}};
    doc.metadata = {{"baseline", "lexicon-em"}};
    const auto j = doc.to_json();
    const auto back = ResultsDocument::from_json(j);
    CHECK(back.to_markdown() == doc.to_markdown());
    CHECK(doc.to_markdown().starts_with("# Results\n\n## Test BLEU\n\n| Synth-de"));
    CHECK(doc.to_markdown().find("| syn-train | de   |    10 |     40 | 0.2500 |") != std::string::npos);
    CHECK(ttr_csv(doc.ttr) == "corpus,side,type_count,token_count,ttr\nsyn-train,de,10,40,0.250000\n");
    CHECK_THROWS_AS(ResultsDocument::from_json(nlohmann::json{{"tables", 1}}), DataError);
}
