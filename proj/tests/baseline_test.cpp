#include "support/test_support.hpp"

#include "cforge/bleu.hpp"
#include "cforge/corpus_io.hpp"
#include "cforge/error.hpp"
#include "cforge/experiment.hpp"
#include "cforge/fs_util.hpp"
#include "cforge/lexicon.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cmath>

using namespace cforge;
using namespace cforge::baseline;

namespace {

nlohmann::json oracle() {
    return nlohmann::json::parse(fs::read_file(testing::source_dir() / "tests/data/oracles/em.json"));
}

corpus::ParallelCorpus from_pairs(const nlohmann::json &pairs, std::string_view prefix = "e") {
    corpus::ParallelCorpus c{{}, "de", "en"};
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        c.pairs.push_back(testing::natural_pair(std::string(prefix) + std::to_string(i), pairs[i][0].get<std::string>(),
                                                pairs[i][1].get<std::string>()));
    }
    return c;
}

void check_against_oracle(const nlohmann::json &o) {
    const auto model = train_em(from_pairs(o["pairs"]), o["iterations"].get<std::size_t>());
    const auto &history = model.log_likelihood_history();
    REQUIRE(history.size() == o["history"].size());
    for (std::size_t k = 0; k < history.size(); ++k) {
        CAPTURE(k);
        CHECK(history[k] == doctest::Approx(o["history"][k].get<double>()).epsilon(1e-10));
    }
    CHECK(model.final_log_likelihood() == doctest::Approx(history.back()).epsilon(1e-12));
    for (const auto &[f, row] : o["t"].items()) {
        for (const auto &[e, p] : row.items()) {
            CAPTURE(f);
            CAPTURE(e);
            CHECK(model.probability(f, e) == doctest::Approx(p.get<double>()).epsilon(1e-9));
        }
    }
}

} // namespace

TEST_CASE("EM matches the dense reference on the toy corpus") {
    const auto o = oracle()["toy"];
    check_against_oracle(o);
    const auto model = train_em(from_pairs(o["pairs"]), 10);
    for (const auto &[f, e] : o["argmax"].items()) CHECK(model.best_translation(f) == e.get<std::string>());
    CHECK(model.iterations_run() == 10);
    CHECK_FALSE(model.best_translation("Katze").has_value());
}

TEST_CASE("EM matches the dense reference on a noisy corpus") { check_against_oracle(oracle()["random"]); }

TEST_CASE("uniform initialization") {
    const auto c = from_pairs(oracle()["toy"]["pairs"]);
    const auto m = initialize_uniform(c);
    // 4 target words plus the null token
    CHECK(m.probability("Haus", "book") == doctest::Approx(0.2));
    CHECK(m.probability("Haus", null_token) == doctest::Approx(0.2));
    CHECK(m.probability("Katze", "book") == 0.0);
    CHECK(m.max_normalization_error() < 1e-12);
    CHECK(m.source_vocab().size() == 4);
    CHECK(m.target_vocab().size() == 4);
    CHECK_THROWS_AS(train_em(c, 0), std::invalid_argument);
}

TEST_CASE("rows stay normalized and the log-likelihood never decreases") {
    testing::Gen g(77);
    for (int round = 0; round < 25; ++round) {
        const auto src = testing::vocabulary(g, g.size(3, 15), testing::mixed_alphabet());
        const auto tgt = testing::vocabulary(g, g.size(3, 15), testing::latin_alphabet());
        corpus::ParallelCorpus c{{}, "de", "en"};
        for (std::size_t i = g.size(1, 25); i > 0; --i) {
            c.pairs.push_back(testing::natural_pair("r" + std::to_string(i), g.line(src, 1, 6), g.line(tgt, 1, 6)));
        }
        const auto m = train_em(c, g.size(1, 8));
        CHECK(m.max_normalization_error() < 1e-9);
        const auto &h = m.log_likelihood_history();
        CHECK(h.size() == m.iterations_run() + 1);
        for (std::size_t k = 1; k < h.size(); ++k) CHECK(h[k] >= h[k - 1] - 1e-9);
    }
}

TEST_CASE("copy corpus is learned exactly") {
    const auto o = oracle()["copy"];
    REQUIRE(o["argmax_is_identity"].get<bool>());
    const auto c = from_pairs(o["pairs"]);
    const auto m = train_em(c, o["iterations"].get<std::size_t>());
    for (const auto &f : m.source_vocab()) CHECK(m.best_translation(f) == f);
    const auto hyp = m.translate(c.sources());
    const auto refs = c.targets();
    CHECK(metrics::corpus_bleu_lines(hyp, refs).bleu == doctest::Approx(100.0));
}

TEST_CASE("decoding copies unknown words and drops null alignments") {
    const corpus::ParallelCorpus c{{testing::natural_pair("1", "ja Hund", "dog"), testing::natural_pair("2", "ja Katze", "cat"),
                                    testing::natural_pair("3", "ja Hund", "dog"), testing::natural_pair("4", "ja", "")},
                                   "de", "en"};
    const auto m = train_em(c, 15);
    CHECK(m.best_translation("ja") == std::string(null_token));
    const std::vector<std::string> lines{"ja Hund Zebra", "", "Katze  ja"};
    CHECK(m.translate(lines) == std::vector<std::string>{"dog Zebra", "", "cat"});
}

TEST_CASE("serialization round trip preserves translations") {
    const auto o = oracle()["random"];
    const auto c = from_pairs(o["pairs"]);
    const auto m = train_em(c, 6);
    const auto text = m.serialize();
    CHECK(text.starts_with("lexicon-v1\t6\t"));
    const auto back = LexiconModel::parse(text);
    CHECK(back.serialize() == text);
    CHECK(back.translate(c.sources()) == m.translate(c.sources()));
    CHECK(back.iterations_run() == 6);
    CHECK(back.final_log_likelihood() == doctest::Approx(m.final_log_likelihood()));
    CHECK(back.probability("Hund", "dog") == doctest::Approx(m.probability("Hund", "dog")).epsilon(1e-11));

    CHECK_THROWS_AS(LexiconModel::parse(""), DataError);
    CHECK_THROWS_AS(LexiconModel::parse("bpe-v1 10\n"), DataError);
    CHECK_THROWS_AS(LexiconModel::parse("lexicon-v1\t1\t-2.0\nHund\tdog\n"), DataError);
    CHECK_THROWS_AS(LexiconModel::parse("lexicon-v1\t1\t-2.0\nHund\tdog\tviel\n"), DataError);
}

TEST_CASE("empty training corpus") {
    CHECK_THROWS_AS(train_em(corpus::ParallelCorpus{{}, "de", "en"}, 3), EmptyCorpus);
}

TEST_CASE("experiment fills the three by three matrix") {
    testing::Gen g(3);
    const auto vocab = testing::vocabulary(g, 30, testing::latin_alphabet());
    auto make = [&](std::string_view prefix, std::size_t n, corpus::Origin origin) {
        auto c = g.corpus(n, vocab, 2, 8, prefix);
        for (auto &p : c.pairs) {
            p.target = p.source;
            p.origin = origin;
            if (origin == corpus::Origin::synthetic) p.seed_word = "s";
        }
        return c;
    };
    ExperimentInputs in{make("nt", 60, corpus::Origin::natural), make("st", 60, corpus::Origin::synthetic),
                        make("sv", 20, corpus::Origin::synthetic), make("nv", 20, corpus::Origin::natural),
                        make("te", 30, corpus::Origin::natural)};
    in.iterations = 3;
    in.label = "gl";
    const auto r = run_experiment(in);
    CHECK(r.matrix.rows() == std::vector<std::string>{"Synth-gl", "Nat-gl", "Aug-gl"});
    CHECK(r.matrix.columns() == std::vector<std::string>{"Synth-val", "Nat-val", "Test"});
    CHECK(r.matrix.cell_count() == 9);
    CHECK(r.models.size() == 3);
    const auto scores = r.test_scores();
    REQUIRE(scores.size() == 3);
    CHECK(scores[2].label == "Aug-gl");
    CHECK(scores[2].score == r.matrix.score("Aug-gl", "Test"));

    auto no_synth_val = in;
    no_synth_val.syn_valid.reset();
    CHECK(run_experiment(no_synth_val).matrix.cell_count() == 6);

    auto leaky = in;
    leaky.test.pairs.push_back(in.nat_train.pairs[0]);
    CHECK_THROWS_AS(run_experiment(leaky), LeakageError);
    leaky = in;
    leaky.syn_valid->pairs.push_back(in.syn_train.pairs[4]);
    CHECK_THROWS_AS(run_experiment(leaky), LeakageError);
}

TEST_CASE("on the natural fixture, training on natural data beats no data") {
    const auto train = corpus::read_plain_pair(testing::natural_fixture("nat-train"), "de", "en");
    const auto test = corpus::read_plain_pair(testing::natural_fixture("test"), "de", "en");
    const auto m = train_em(train, 10);
    const auto hyp = m.translate(test.sources());
    const auto copy = test.sources();
    const auto refs = test.targets();
    CHECK(metrics::corpus_bleu_lines(hyp, refs).bleu > metrics::corpus_bleu_lines(copy, refs).bleu + 20.0);
}
