#include "support/test_support.hpp"

#include "cforge/bpe.hpp"
#include "cforge/error.hpp"
#include "cforge/fs_util.hpp"
#include "cforge/text.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <set>

using namespace cforge;
using namespace cforge::bpe;

namespace {

nlohmann::json oracle_cases() {
    return nlohmann::json::parse(fs::read_file(testing::source_dir() / "tests/data/oracles/bpe.json"));
}

std::map<std::string, std::size_t> counts_of(const nlohmann::json &j) {
    std::map<std::string, std::size_t> out;
    for (const auto &[word, n] : j.items()) out[word] = n.get<std::size_t>();
    return out;
}

corpus::ParallelCorpus one_sided(const std::vector<std::string> &lines) {
    corpus::ParallelCorpus c{{}, "de", "en"};
    for (std::size_t i = 0; i < lines.size(); ++i) {
        c.pairs.push_back(testing::natural_pair("b-" + std::to_string(i), lines[i], "x"));
    }
    return c;
}

// Words ending in "@@" cannot survive the marker convention.
std::vector<std::string> safe_vocabulary(testing::Gen &g, std::size_t n) {
    std::vector<std::string> v;
    while (v.size() < n) {
        auto w = g.word(testing::mixed_alphabet(), 1, 9);
        if (!w.ends_with("@@")) v.push_back(std::move(w));
    }
    return v;
}

} // namespace

TEST_CASE("training matches the brute-force reference") {
    for (const auto &c : oracle_cases()) {
        CAPTURE(c["name"].get<std::string>());
        const auto model = train_bpe_from_counts(counts_of(c["counts"]), c["target"].get<std::size_t>());
        REQUIRE(model.merges.size() == c["merges"].size());
        for (std::size_t i = 0; i < model.merges.size(); ++i) {
            CAPTURE(i);
            CHECK(model.merges[i].left == c["merges"][i][0].get<std::string>());
            CHECK(model.merges[i].right == c["merges"][i][1].get<std::string>());
        }
        CHECK(model.vocab == counts_of(c["vocab"]));
    }
}

TEST_CASE("classic example: first merges and stop rule") {
    const std::map<std::string, std::size_t> counts{{"low", 5}, {"lower", 2}, {"newest", 6}, {"widest", 3}};
    const auto model = train_bpe_from_counts(counts, 100);
    REQUIRE(model.merges.size() >= 2);
    CHECK(model.merges[0] == Merge{"e", "s"});
    CHECK(model.merges[1] == Merge{"es", "t</w>"});

    const auto single = train_bpe_from_counts({{"aaaa", 1}}, 100);
    CHECK(single.merges == std::vector<Merge>{{"a", "a"}});
}

TEST_CASE("vocabulary target caps the number of symbols") {
    testing::Gen g(11);
    const auto vocab = testing::vocabulary(g, 300, testing::latin_alphabet());
    std::map<std::string, std::size_t> counts;
    for (const auto &w : vocab) counts[w] += g.size(1, 20);
    for (std::size_t target : {20u, 40u, 80u}) {
        const auto model = train_bpe_from_counts(counts, target);
        CHECK(model.vocab.size() <= std::max<std::size_t>(target, 2 * testing::latin_alphabet().size()));
    }
    const auto big = train_bpe_from_counts(counts, 100000);
    const auto capped = train_bpe_from_counts(counts, 40);
    CHECK(capped.merges.size() < big.merges.size());
    // the capped merge list is a prefix of the uncapped one
    CHECK(std::equal(capped.merges.begin(), capped.merges.end(), big.merges.begin()));
}

TEST_CASE("encode marks non-final pieces") {
    const auto model = train_bpe_from_counts({{"low", 5}, {"lower", 2}, {"newest", 6}, {"widest", 3}}, 100);
    const Encoder enc(model);
    const auto pieces = enc.encode("lowest newest");
    CHECK(pieces.back() == "newest");
    CHECK(decode(pieces) == "lowest newest");
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
        if (pieces[i].ends_with("@@")) CHECK(pieces[i].size() > 2);
    }
    CHECK(enc.segment_word("low") == std::vector<std::string>{"low</w>"});

    const BpeModel empty{};
    CHECK(encode(empty, "ab c") == std::vector<std::string>{"a@@", "b", "c"});
    CHECK(encode(empty, "   ").empty());
    CHECK(encode(empty, "Straße") == std::vector<std::string>{"S@@", "t@@", "r@@", "a@@", "ß@@", "e"});
}

TEST_CASE("encode then decode restores whitespace-normalized lines") {
    testing::Gen g(2024);
    const auto vocab = safe_vocabulary(g, 400);
    std::vector<std::string> train;
    for (int i = 0; i < 300; ++i) train.push_back(g.line(vocab, 1, 12));
    const corpus::ParallelCorpus corpora[] = {one_sided(train)};
    const auto model = train_bpe(corpora, 120);
    const Encoder enc(model);

    testing::Gen h(7);
    const auto unseen = safe_vocabulary(h, 200);
    for (int i = 0; i < 1000; ++i) {
        std::string line;
        for (const auto &t : g.tokens(g.coin() ? vocab : unseen, 0, 15)) {
            line += std::string(g.size(0, 2), ' ') + t + (g.coin(0.1) ? "\t" : "");
        }
        const auto tokens = enc.encode(line);
        CHECK(decode(tokens) == text::normalize_spaces(line));
        for (const auto &t : tokens) CHECK_FALSE(t.empty());
    }
}

TEST_CASE("training uses both sides and is deterministic") {
    corpus::ParallelCorpus c{{}, "de", "en"};
    for (int i = 0; i < 20; ++i) c.pairs.push_back(testing::natural_pair(std::to_string(i), "zzz", "qqq"));
    const corpus::ParallelCorpus corpora[] = {c};
    const auto model = train_bpe(corpora, 100);
    const Encoder enc(model);
    CHECK(enc.encode("zzz qqq") == std::vector<std::string>{"zzz", "qqq"});

    testing::Gen g(5);
    const auto vocab = testing::vocabulary(g, 200, testing::mixed_alphabet());
    const corpus::ParallelCorpus big[] = {g.corpus(200, vocab, 1, 10)};
    CHECK(train_bpe(big, 150).serialize() == train_bpe(big, 150).serialize());
}

TEST_CASE("empty training data is rejected") {
    const corpus::ParallelCorpus empty[] = {corpus::ParallelCorpus{{}, "de", "en"}};
    CHECK_THROWS_AS(train_bpe(empty, 100), EmptyCorpus);
    CHECK_THROWS_AS(train_bpe_from_counts({}, 100), EmptyCorpus);
}

TEST_CASE("serialization round trip") {
    testing::Gen g(99);
    for (int round = 0; round < 20; ++round) {
        const auto vocab = testing::vocabulary(g, 50, testing::mixed_alphabet());
        std::map<std::string, std::size_t> counts;
        for (const auto &w : vocab) counts[w] += g.size(1, 9);
        const auto model = train_bpe_from_counts(counts, g.size(10, 200));
        const auto text = model.serialize();
        const auto back = BpeModel::parse(text);
        CHECK(back.merges == model.merges);
        CHECK(back.target_vocab_size == model.target_vocab_size);
        CHECK(back.serialize() == text);
        const auto line = g.line(vocab, 1, 8);
        CHECK(Encoder(back).encode(line) == Encoder(model).encode(line));
    }
}

TEST_CASE("parse rejects malformed models") {
    CHECK_THROWS_AS(BpeModel::parse(""), DataError);
    CHECK_THROWS_AS(BpeModel::parse("#version: 0.2\na b\n"), DataError);
    CHECK_THROWS_AS(BpeModel::parse("bpe-v1 abc\n"), DataError);
    CHECK_THROWS_AS(BpeModel::parse("bpe-v1 10\nonlyone\n"), DataError);
    CHECK_THROWS_AS(BpeModel::parse("bpe-v1 10\na b c\n"), DataError);
    const auto ok = BpeModel::parse("bpe-v1 10\ne s\nes t</w>\n");
    CHECK(ok.merges.size() == 2);
    CHECK(ok.target_vocab_size == 10);
}
