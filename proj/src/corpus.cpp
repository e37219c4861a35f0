#include "cforge/corpus.hpp"

#include "cforge/error.hpp"
#include "cforge/rng.hpp"
#include "cforge/text.hpp"

#include <algorithm>
#include <unordered_set>

namespace cforge::corpus {

std::string_view to_string(Origin origin) {
    return origin == Origin::natural ? "natural" : "synthetic";
}

Origin origin_from_string(std::string_view s) {
    if (s == "natural") return Origin::natural;
    if (s == "synthetic") return Origin::synthetic;
    throw DataError("unknown origin '" + std::string(s) + "'");
}

void SentencePair::validate() const {
    auto check_text = [&](const std::string &value, const char *field) {
        if (text::trim(value).empty()) {
            throw DataError("pair '" + id + "': " + field + " is empty");
        }
        if (text::has_line_break(value)) {
            throw DataError("pair '" + id + "': " + field + " contains a line break");
        }
    };
    if (id.empty()) throw DataError("pair with empty id");
    check_text(source, "source");
    check_text(target, "target");
    if (origin == Origin::synthetic && (!seed_word || seed_word->empty())) {
        throw DataError("pair '" + id + "': synthetic pair without seed_word");
    }
    if (origin == Origin::natural && seed_word) {
        throw DataError("pair '" + id + "': natural pair carries a seed_word");
    }
}

void ParallelCorpus::validate() const {
    std::unordered_set<std::string_view> ids;
    ids.reserve(pairs.size());
    for (const auto &p : pairs) {
        p.validate();
        if (!ids.insert(p.id).second) {
            throw DataError("duplicate pair id '" + p.id + "'");
        }
    }
}

std::size_t ParallelCorpus::source_tokens() const {
    std::size_t total = 0;
    for (const auto &p : pairs) total += count_tokens(p.source);
    return total;
}

std::vector<std::string> ParallelCorpus::sources() const {
    std::vector<std::string> out;
    out.reserve(pairs.size());
    for (const auto &p : pairs) out.push_back(p.source);
    return out;
}

std::vector<std::string> ParallelCorpus::targets() const {
    std::vector<std::string> out;
    out.reserve(pairs.size());
    for (const auto &p : pairs) out.push_back(p.target);
    return out;
}

ParallelCorpus concat(const ParallelCorpus &a, const ParallelCorpus &b) {
    if (a.source_lang != b.source_lang || a.target_lang != b.target_lang) {
        throw DataError("cannot concatenate corpora with different language codes (" + a.source_lang + "-" +
                        a.target_lang + " vs " + b.source_lang + "-" + b.target_lang + ")");
    }
    ParallelCorpus out = a;
    out.pairs.insert(out.pairs.end(), b.pairs.begin(), b.pairs.end());
    out.validate();
    return out;
}

void SplitSpec::validate() const {
    if (train_token_threshold == 0 || valid_token_threshold == 0 ||
        (test_token_threshold && *test_token_threshold == 0)) {
        throw ConfigError("split thresholds must be > 0");
    }
}

std::size_t count_tokens(std::string_view text) { return text::split_tokens(text).size(); }

std::string dedup_key(std::string_view item, DedupMode mode) {
    std::string key = text::trim(text::nfc(item));
    if (mode == DedupMode::seed_word) key = text::nfc(text::case_fold(key));
    return key;
}

std::vector<std::string> dedup(const std::vector<std::string> &items, DedupMode mode) {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (const auto &item : items) {
        std::string cleaned = text::trim(text::nfc(item));
        if (cleaned.empty()) continue;
        if (seen.insert(dedup_key(cleaned, mode)).second) out.push_back(std::move(cleaned));
    }
    return out;
}

namespace {

std::vector<std::size_t> shuffled_order(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    DeterministicRng rng(seed);
    rng.shuffle(order);
    return order;
}

// Consumes order[cursor..] until `threshold` source tokens are covered.
ParallelCorpus take_prefix(const ParallelCorpus &corpus, const std::vector<std::size_t> &order,
                           const std::vector<std::size_t> &lengths, std::size_t &cursor, std::size_t threshold,
                           std::string_view split_name) {
    ParallelCorpus out = corpus.like();
    std::size_t tokens = 0;
    const std::size_t start = cursor;
    while (cursor < order.size() && tokens < threshold) {
        const std::size_t idx = order[cursor++];
        tokens += lengths[idx];
        out.pairs.push_back(corpus.pairs[idx]);
    }
    if (tokens < threshold) {
        cursor = start;
        throw InsufficientData(std::string(split_name) + ": only " + std::to_string(tokens) +
                                   " source tokens available, need " + std::to_string(threshold),
                               tokens, threshold);
    }
    return out;
}

std::vector<std::size_t> source_lengths(const ParallelCorpus &corpus) {
    std::vector<std::size_t> lengths;
    lengths.reserve(corpus.pairs.size());
    for (const auto &p : corpus.pairs) lengths.push_back(count_tokens(p.source));
    return lengths;
}

} // namespace

Sample sample_to_threshold(const ParallelCorpus &corpus, std::size_t threshold, std::uint64_t rng_seed) {
    if (threshold == 0) throw std::invalid_argument("sample_to_threshold: threshold must be > 0");
    const auto lengths = source_lengths(corpus);
    const auto order = shuffled_order(corpus.pairs.size(), rng_seed);
    std::size_t cursor = 0;
    Sample sample{take_prefix(corpus, order, lengths, cursor, threshold, "sample"), corpus.like()};
    for (std::size_t i = cursor; i < order.size(); ++i) sample.remainder.pairs.push_back(corpus.pairs[order[i]]);
    return sample;
}

Splits make_splits(const ParallelCorpus &corpus, const SplitSpec &spec) {
    spec.validate();
    const auto lengths = source_lengths(corpus);
    std::size_t needed = spec.train_token_threshold + spec.valid_token_threshold + spec.test_token_threshold.value_or(0);
    std::size_t available = 0;
    for (auto n : lengths) available += n;
    if (available < needed) {
        throw InsufficientData("corpus has " + std::to_string(available) + " source tokens, splits need at least " +
                                   std::to_string(needed),
                               available, needed);
    }
    const auto order = shuffled_order(corpus.pairs.size(), spec.rng_seed);
    std::size_t cursor = 0;
    Splits splits;
    splits.train = take_prefix(corpus, order, lengths, cursor, spec.train_token_threshold, "train");
    splits.valid = take_prefix(corpus, order, lengths, cursor, spec.valid_token_threshold, "valid");
    if (spec.test_token_threshold) {
        splits.test = take_prefix(corpus, order, lengths, cursor, *spec.test_token_threshold, "test");
    }
    return splits;
}

void require_disjoint(const ParallelCorpus &training, const ParallelCorpus &held_out, std::string_view what) {
    std::unordered_set<std::string_view> ids;
    for (const auto &p : training.pairs) ids.insert(p.id);
    for (const auto &p : held_out.pairs) {
        if (ids.contains(p.id)) {
            throw LeakageError(std::string(what) + ": pair '" + p.id + "' appears in both training and held-out data");
        }
    }
}

} // namespace cforge::corpus
